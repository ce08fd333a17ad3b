#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "format.hpp"

namespace unruh {

/// Bookkeeping for a truncated double series.
struct SeriesInfo {
  std::size_t order = 0;    // largest index summed
  double last_shell = 0.0;  // contribution of the last growth step
};

struct NegativityResult {
  double negativity_sum = 0.0;  // N <= 0
  double log_negativity = 0.0;  // log2(1 - 2N) >= 0
  std::optional<std::vector<double>> spectrum;
  double tail_bound = 0.0;  // |N_exact - N| <= tail_bound
  std::size_t negative_count = 0;
  std::optional<SeriesInfo> series;

  /// Largest log-negativity consistent with the error bound.
  double log_negativity_upper() const;
  /// Smallest log-negativity consistent with the error bound.
  double log_negativity_lower() const;
};

/// log2(1 - 2N), computed through log1p so tiny N keep full precision.
inline double log_negativity_of(double n) {
  if (n == 0.0) return 0.0;
  return std::log1p(-2.0 * n) / std::numbers::ln2;
}

inline double NegativityResult::log_negativity_upper() const {
  return log_negativity_of(negativity_sum - tail_bound);
}

inline double NegativityResult::log_negativity_lower() const {
  const double n = negativity_sum + tail_bound;
  return n < 0.0 ? log_negativity_of(n) : 0.0;
}

/// Eigenvalues smaller in magnitude than this are treated as roundoff.
inline double default_clamp(std::size_t dimension) {
  return 1e-12 * static_cast<double>(dimension);
}

inline NegativityResult from_sum(double negativity_sum, double tail) {
  NegativityResult r;
  r.negativity_sum = negativity_sum;
  r.log_negativity = log_negativity_of(negativity_sum);
  r.tail_bound = tail;
  return r;
}

/// Sums the eigenvalues below -clamp.
inline NegativityResult from_spectrum(std::span<const double> eigs, double clamp) {
  if (!(clamp >= 0.0)) throw std::invalid_argument("clamp must be >= 0");
  double n = 0.0;
  std::size_t count = 0;
  for (double e : eigs) {
    if (e < -clamp) {
      n += e;
      ++count;
    }
  }
  auto r = from_sum(n, 0.0);
  r.negative_count = count;
  r.spectrum = std::vector<double>(eigs.begin(), eigs.end());
  return r;
}

/// Negativity of a block-diagonal partial transpose from per-block negative
/// eigenvalues. A positive entry means an upstream formula was applied
/// outside its regime and is rejected.
inline NegativityResult from_block_sum(std::span<const double> blocks, double tail) {
  if (!(tail >= 0.0)) throw std::invalid_argument("tail must be >= 0");
  double n = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i] > 0.0) {
      throw NumericFailure("block " + std::to_string(i) +
                           " has positive negativity " + format_number(blocks[i]));
    }
    if (blocks[i] < 0.0) ++count;
    n += blocks[i];
  }
  auto r = from_sum(n, tail);
  r.negative_count = count;
  return r;
}

/// Thrown when an adaptive series reaches its ceiling before meeting the
/// tolerance. Carries the partial result, whose tail_bound is rigorous.
class SeriesNotConverged : public NumericFailure {
 public:
  SeriesNotConverged(const NegativityResult& partial, double tol)
      : NumericFailure(describe(partial, tol)), partial_(partial) {}

  const NegativityResult& partial() const noexcept { return partial_; }
  double bound() const noexcept { return partial_.tail_bound; }

 private:
  static std::string describe(const NegativityResult& p, double tol) {
    const std::size_t order = p.series ? p.series->order : 0;
    return "series not converged to tolerance " + format_number(tol) +
           " at order " + std::to_string(order) +
           ": partial sum N = " + format_number(p.negativity_sum) +
           ", tail bound " + format_number(p.tail_bound) +
           ", log-negativity in [" + format_number(p.log_negativity_lower()) +
           ", " + format_number(p.log_negativity_upper()) + "]";
  }

  NegativityResult partial_;
};

}  // namespace unruh
