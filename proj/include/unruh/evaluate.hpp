#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "boson.hpp"
#include "fermion.hpp"
#include "measures.hpp"
#include "partition.hpp"
#include "states.hpp"

namespace unruh {

/// How a single negativity is computed.
///  closed    - the published closed form / block series, verbatim
///  numeric   - partial transpose of the (truncated) density plus eigensolve
///  automatic - the most accurate validated route for the case at hand
enum class Method { automatic, closed, numeric };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::automatic: return "automatic";
    case Method::closed: return "closed";
    case Method::numeric: return "numeric";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  for (auto m : {Method::automatic, Method::closed, Method::numeric})
    if (s == to_string(m)) return m;
  throw std::invalid_argument("unknown method '" + std::string(s) +
                              "'; expected automatic, closed or numeric");
}

struct Evaluation {
  NegativityResult result;
  Method used = Method::numeric;
};

/// Route chosen by Method::automatic. Fermionic quantities are always
/// computed numerically: the matrices are 8x8 and exact. Bosonic GHZ uses
/// the block series (with the S-AR/R-AS blocks in corrected form), bosonic
/// W AR/AS the published block series, everything else the truncated
/// numeric pipeline.
inline Method automatic_route(FieldStatistics field, StateKind state, Quantity q) {
  if (field == FieldStatistics::fermion) return Method::numeric;
  if (state == StateKind::ghz) return Method::closed;
  if (q == Quantity::ar || q == Quantity::as) return Method::closed;
  return Method::numeric;
}

inline Evaluation evaluate(FieldStatistics field, StateKind state, Quantity q, double p1,
                           double p2, const Truncation& trunc = {},
                           Method method = Method::automatic) {
  const bool automatic = method == Method::automatic;
  if (automatic) method = automatic_route(field, state, q);

  if (field == FieldStatistics::fermion) {
    const auto s = fermion::Scenario::make(state, p1, p2);
    if (method == Method::numeric) return {fermion::numeric_log_negativity(s, q), method};
    const auto n = fermion::closed_negativity(state, q, p1, p2);
    if (!n) {
      throw std::invalid_argument("no closed form for fermionic " +
                                  std::string(to_string(state)) + " " +
                                  std::string(to_string(q)));
    }
    return {from_sum(*n, 0.0), method};
  }

  const auto s = boson::Scenario::make(state, p1, p2, trunc);
  if (method == Method::numeric) return {boson::numeric_log_negativity(s, q), method};
  const auto form = automatic ? boson::Form::corrected : boson::Form::printed;
  auto r = boson::closed_log_negativity(state, q, p1, p2, trunc, form);
  if (!r) {
    throw std::invalid_argument("no closed form for bosonic " +
                                std::string(to_string(state)) + " " +
                                std::string(to_string(q)));
  }
  return {*r, method};
}

}  // namespace unruh
