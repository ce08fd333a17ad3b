#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace unruh {

// Range and argument problems are reported with std::invalid_argument.
// Everything below signals that a computation could not be completed to the
// requested accuracy or size.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionCeilingExceeded : public NumericFailure {
 public:
  DimensionCeilingExceeded(std::size_t required, std::size_t ceiling)
      : NumericFailure("matrix dimension " + std::to_string(required) +
                       " exceeds the ceiling " + std::to_string(ceiling) +
                       "; raise the ceiling to at least " +
                       std::to_string(required)),
        required_(required),
        ceiling_(ceiling) {}

  std::size_t required() const noexcept { return required_; }
  std::size_t ceiling() const noexcept { return ceiling_; }

 private:
  std::size_t required_;
  std::size_t ceiling_;
};

}  // namespace unruh
