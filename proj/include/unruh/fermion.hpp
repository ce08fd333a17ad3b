#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "measures.hpp"
#include "partition.hpp"
#include "states.hpp"

namespace unruh::fermion {

struct Scenario {
  StateKind state;
  AccelParam u1;  // Rob, region I
  AccelParam u2;  // Steven, region I'

  static Scenario make(StateKind state, double u1, double u2) {
    return {state, AccelParam::fermionic(u1), AccelParam::fermionic(u2)};
  }
};

/// Pure five-partite ket with regions II and II' traced out; 8x8 over (A, I, I').
inline LabeledDensity rindler_density(const Scenario& s) {
  const auto k = build_state(s.state, FieldStatistics::fermion, s.u1, s.u2);
  return unruh::reduced_density(k.ket, {"II", "II'"});
}

/// Two-party reduction (4x4) for RS, AR or AS.
inline LabeledDensity reduced_density(const Scenario& s, Quantity pair) {
  if (is_tripartite(pair)) {
    throw std::invalid_argument("reduced_density needs RS, AR or AS, got " +
                                std::string(to_string(pair)));
  }
  const auto rho = rindler_density(s);
  return partial_trace(rho.matrix, rho.layout, {dropped_label(pair)});
}

inline LabeledDensity density_for(const Scenario& s, Quantity q) {
  return is_tripartite(q) ? rindler_density(s) : reduced_density(s, q);
}

inline ComplexMatrix transposed_density(const Scenario& s, Quantity q) {
  const auto rho = density_for(s, q);
  return partial_transpose(rho.matrix, rho.layout, transposed_label(q));
}

/// Negativity from the eigenvalues of the partial transpose.
inline NegativityResult numeric_log_negativity(const Scenario& s, Quantity q) {
  const auto pt = transposed_density(s, q);
  const auto eig = hermitian_eigenvalues(pt);
  return from_spectrum(eig, default_clamp(static_cast<std::size_t>(pt.rows())));
}

/// Smallest eigenvalue of the partial transpose, with its sign. Used to
/// locate where entanglement disappears.
inline double min_transposed_eigenvalue(const Scenario& s, Quantity q) {
  return hermitian_eigenvalues(transposed_density(s, q)).front();
}

/// Closed-form negative eigenvalues of the GHZ partial transposes.
inline double ghz_closed_negativity(Quantity q, double u1, double u2) {
  const double s1 = std::pow(std::sin(u1), 2), s2 = std::pow(std::sin(u2), 2);
  const double c1 = std::pow(std::cos(u1), 2), c2 = std::pow(std::cos(u2), 2);
  switch (q) {
    case Quantity::a_rs:
      return 0.25 * s1 * s2 - 0.25 * std::sqrt(s1 * s1 * s2 * s2 + 4 * c1 * c2);
    case Quantity::r_as:
      return 0.25 * s1 * c2 - 0.25 * std::sqrt(s1 * s1 * c2 * c2 + 4 * c1 * c2);
    case Quantity::s_ar:
      return 0.25 * s2 * c1 - 0.25 * std::sqrt(s2 * s2 * c1 * c1 + 4 * c2 * c1);
    default:
      throw std::invalid_argument("no GHZ closed form for " + std::string(to_string(q)));
  }
}

/// Closed-form W bipartite negativities (<= 0) as published. Note the published
/// AR expression carries u2 and the AS expression u1.
inline double w_bipartite_closed_negativity(Quantity pair, double u1, double u2) {
  const double x = std::pow(std::cos(u1), 2), y = std::pow(std::cos(u2), 2);
  switch (pair) {
    case Quantity::rs:
      // The published expression is the smaller eigenvalue; it turns positive
      // once the pair is separable.
      return std::min(0.0, 0.5 - (x + y) / 3 + x * y / 3 -
                               std::sqrt(9 - 12 * (x + y) + 12 * x * y +
                                         4 * (x * x + y * y)) / 6);
    case Quantity::ar: return 1.0 / 6 - std::sqrt(1 + 4 * y * y) / 6;
    case Quantity::as: return 1.0 / 6 - std::sqrt(1 + 4 * x * x) / 6;
    default:
      throw std::invalid_argument("no W bipartite closed form for " +
                                  std::string(to_string(pair)));
  }
}

/// Closed form for any quantity that has one; nullopt for the tripartite W cuts.
inline std::optional<double> closed_negativity(StateKind state, Quantity q, double u1,
                                               double u2) {
  if (state == StateKind::ghz) {
    if (is_tripartite(q)) return ghz_closed_negativity(q, u1, u2);
    return 0.0;  // every GHZ reduction is diagonal
  }
  if (is_tripartite(q)) return std::nullopt;
  return w_bipartite_closed_negativity(q, u1, u2);
}

/// Solves cos u2 = sqrt2 sin u1 / sqrt(2 - cos^2 u1) for u2; nullopt when the
/// solution leaves [0, pi/4).
inline std::optional<double> rs_zero_curve(double u1) {
  const double c = std::cos(u1);
  const double rhs = std::sqrt(2.0) * std::sin(u1) / std::sqrt(2.0 - c * c);
  if (rhs > 1.0) return std::nullopt;
  const double u2 = std::acos(rhs);
  if (!(u2 >= 0.0 && u2 < kQuarterPi)) return std::nullopt;
  return u2;
}

/// Pauli-decomposition forms of the density matrices, exactly as published,
/// in Alice-Rob-Steven factor order.
namespace printed {

inline ComplexMatrix S(int a, int b, int c) { return pauli_string({a, b, c}); }
inline ComplexMatrix S(int a, int b) { return pauli_string({a, b}); }

inline ComplexMatrix ghz_minkowski() {
  return (S(1, 1, 1) - S(1, 2, 2) - S(2, 1, 2) - S(2, 2, 1) + S(3, 3, 0) + S(3, 0, 3) +
          S(0, 3, 3) + S(0, 0, 0)) /
         8.0;
}

// Terms shared by the Rindler GHZ matrix and its partial transposes.
inline ComplexMatrix ghz_common(double u1, double u2) {
  const double cc = std::cos(u1) * std::cos(u2);
  const double k = std::cos(2 * u1) * std::cos(2 * u2);
  return (cc * S(1, 1, 1) + 0.5 * (k - 1) * S(3, 3, 3) +
          std::pow(std::cos(u1), 2) * S(3, 3, 0) + std::pow(std::cos(u2), 2) * S(3, 0, 3) +
          0.5 * (k + 1) * S(0, 3, 3) - std::pow(std::sin(u1), 2) * S(0, 3, 0) -
          std::pow(std::sin(u2), 2) * S(0, 0, 3) + S(0, 0, 0)) /
         8.0;
}

inline ComplexMatrix ghz_rindler(double u1, double u2) {
  const double cc = std::cos(u1) * std::cos(u2);
  return ghz_common(u1, u2) - cc / 8.0 * (S(1, 2, 2) + S(2, 1, 2) + S(2, 2, 1));
}

/// Published partial transposes of ghz_rindler with respect to A, I or I'.
inline ComplexMatrix ghz_partial_transpose(Quantity q, double u1, double u2) {
  const double cc = std::cos(u1) * std::cos(u2);
  const auto base = ghz_common(u1, u2);
  switch (q) {
    case Quantity::a_rs: return base - cc / 8.0 * (S(1, 2, 2) - S(2, 1, 2) - S(2, 2, 1));
    case Quantity::r_as: return base - cc / 8.0 * (-S(1, 2, 2) + S(2, 1, 2) - S(2, 2, 1));
    case Quantity::s_ar: return base - cc / 8.0 * (-S(1, 2, 2) - S(2, 1, 2) + S(2, 2, 1));
    default: throw std::invalid_argument("tripartite quantity expected");
  }
}

/// GHZ reduction to (I, I') after tracing Alice.
inline ComplexMatrix ghz_rs(double u1, double u2) {
  const double k = std::cos(2 * u1) * std::cos(2 * u2);
  return (0.5 * (k + 1) * S(3, 3) - std::pow(std::sin(u1), 2) * S(3, 0) -
          std::pow(std::sin(u2), 2) * S(0, 3) + S(0, 0)) /
         4.0;
}

inline ComplexMatrix w_minkowski() {
  return (2.0 * (S(1, 1, 3) + S(2, 2, 3) + S(1, 3, 1) + S(2, 3, 2) + S(3, 1, 1) +
                 S(3, 2, 2) + S(1, 0, 1) + S(1, 1, 0) + S(2, 2, 0) + S(2, 0, 2) +
                 S(0, 1, 1) + S(0, 2, 2)) -
          3.0 * S(3, 3, 3) - S(3, 0, 3) - S(0, 3, 3) - S(3, 3, 0) + S(3, 0, 0) +
          S(0, 3, 0) + S(0, 0, 3) + 3.0 * S(0, 0, 0)) /
         24.0;
}

inline ComplexMatrix w_rindler(double u1, double u2) {
  const double c1 = std::cos(u1), c2 = std::cos(u2);
  const double d1 = std::cos(2 * u1), d2 = std::cos(2 * u2);
  return (2 * c1 * d2 * (S(1, 1, 3) + S(2, 2, 3)) + 2 * c2 * (S(1, 0, 1) + S(2, 0, 2)) +
          2 * c1 * (S(1, 1, 0) + S(2, 2, 0)) + 2 * d1 * c2 * (S(1, 3, 1) + S(2, 3, 2)) +
          2 * c1 * c2 * (S(3, 1, 1) + S(3, 2, 2) + S(0, 1, 1) + S(0, 2, 2)) -
          (d1 * d2 + d1 + d2) * S(3, 3, 3) - S(3, 3, 0) - S(3, 0, 3) + S(3, 0, 0) +
          (d1 * d2 - d1 - d2) * S(0, 3, 3) + (2 * d1 - 1) * S(0, 3, 0) +
          (2 * d2 - 1) * S(0, 0, 3) + 3.0 * S(0, 0, 0)) /
         24.0;
}

inline ComplexMatrix w_rs(double u1, double u2) {
  const double d1 = std::cos(2 * u1), d2 = std::cos(2 * u2);
  return (2 * std::cos(u1) * std::cos(u2) * (S(1, 1) + S(2, 2)) +
          (d1 * d2 - d1 - d2) * S(3, 3) + (2 * d1 - 1) * S(3, 0) + (2 * d2 - 1) * S(0, 3) +
          3.0 * S(0, 0)) /
         12.0;
}

// AR and AS share one shape with u1 and u2 respectively.
inline ComplexMatrix w_alice_pair(double u) {
  return (2 * std::cos(u) * (S(1, 1) + S(2, 2)) - S(3, 3) + S(3, 0) +
          (2 * std::cos(2 * u) - 1) * S(0, 3) + 3.0 * S(0, 0)) /
         12.0;
}

inline ComplexMatrix w_ar(double u1) { return w_alice_pair(u1); }
inline ComplexMatrix w_as(double u2) { return w_alice_pair(u2); }

}  // namespace printed

}  // namespace unruh::fermion
