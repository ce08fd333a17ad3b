#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "boson.hpp"
#include "fermion.hpp"
#include "partition.hpp"

namespace unruh {

/// One comparison of a published closed form against the numeric oracle.
/// Values are negativities N (not logarithmic).
struct FormulaCheck {
  std::string formula;  // e.g. "fermion W AR"
  double p1 = 0.0, p2 = 0.0;
  double printed = 0.0;
  double numeric = 0.0;
  double tolerance = 0.0;

  double delta() const { return std::abs(printed - numeric); }
  bool agrees() const { return delta() <= tolerance; }
};

inline constexpr double kFermionOracleTolerance = 1e-9;
inline constexpr double kBosonOracleTolerance = 1e-6;

/// Every fermionic closed form at one point.
inline std::vector<FormulaCheck> fermion_formula_checks(double u1, double u2) {
  std::vector<FormulaCheck> out;
  auto add = [&](StateKind st, Quantity q) {
    const auto s = fermion::Scenario::make(st, u1, u2);
    out.push_back({"fermion " + std::string(st == StateKind::ghz ? "GHZ " : "W ") +
                       std::string(to_string(q)),
                   u1, u2, *fermion::closed_negativity(st, q, u1, u2),
                   fermion::numeric_log_negativity(s, q).negativity_sum,
                   kFermionOracleTolerance});
  };
  for (auto q : kTripartite) add(StateKind::ghz, q);
  for (auto q : kBipartite) add(StateKind::w, q);
  return out;
}

/// Every bosonic block-series formula at one point. The series is summed to
/// convergence; the numeric side uses the given truncation. The tolerance
/// adds both rigorous error bounds to the fixed 1e-6.
inline std::vector<FormulaCheck> boson_formula_checks(double r1, double r2,
                                                      const Truncation& numeric_trunc) {
  std::vector<FormulaCheck> out;
  auto add = [&](StateKind st, Quantity q) {
    const auto s = boson::Scenario::make(st, r1, r2, numeric_trunc);
    const auto num = boson::numeric_log_negativity(s, q);
    Truncation series_trunc;
    const auto ser =
        *boson::closed_log_negativity(st, q, r1, r2, series_trunc, boson::Form::printed);
    out.push_back({"boson " + std::string(st == StateKind::ghz ? "GHZ " : "W ") +
                       std::string(to_string(q)),
                   r1, r2, ser.negativity_sum, num.negativity_sum,
                   kBosonOracleTolerance + num.tail_bound + ser.tail_bound});
  };
  for (auto q : kTripartite) add(StateKind::ghz, q);
  for (auto q : kBipartite) add(StateKind::w, q);
  return out;
}

}  // namespace unruh
