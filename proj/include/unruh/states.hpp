#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

#include "format.hpp"
#include "linalg.hpp"

namespace unruh {

enum class FieldStatistics { fermion, boson };
enum class StateKind { ghz, w };
enum class Occupation { vacuum = 0, one = 1 };

inline std::string_view to_string(FieldStatistics s) {
  return s == FieldStatistics::fermion ? "fermion" : "boson";
}
inline std::string_view to_string(StateKind k) {
  return k == StateKind::ghz ? "ghz" : "w";
}

inline constexpr double kQuarterPi = std::numbers::pi / 4.0;

/// Unruh parameter of one accelerated mode: u for fermions (tan u =
/// exp(-πωc/a)), r for bosons (tanh r = exp(-πωc/a)).
class AccelParam {
 public:
  enum class Kind { fermionic_u, bosonic_r };

  /// u in [0, π/4]. The closed end is the a -> infinity limit.
  static AccelParam fermionic(double u) {
    if (!(u >= 0.0 && u <= kQuarterPi)) {
      throw std::invalid_argument("fermionic u = " + format_number(u) +
                                  " outside the valid range [0, pi/4)");
    }
    return AccelParam(Kind::fermionic_u, u);
  }

  static AccelParam bosonic(double r) {
    if (!(r >= 0.0 && std::isfinite(r))) {
      throw std::invalid_argument("bosonic r = " + format_number(r) +
                                  " outside the valid range [0, inf)");
    }
    return AccelParam(Kind::bosonic_r, r);
  }

  static AccelParam of(FieldStatistics s, double value) {
    return s == FieldStatistics::fermion ? fermionic(value) : bosonic(value);
  }

  Kind kind() const { return kind_; }
  double value() const { return value_; }
  FieldStatistics statistics() const {
    return kind_ == Kind::fermionic_u ? FieldStatistics::fermion
                                      : FieldStatistics::boson;
  }

 private:
  AccelParam(Kind k, double v) : kind_(k), value_(v) {}
  Kind kind_;
  double value_;
};

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct PhysicalAccel {
  double a = 0.0;      // proper acceleration, m/s^2
  double omega = 1.0;  // mode angular frequency, rad/s
};

/// Maps a proper acceleration to the Unruh parameter of the given statistics.
inline AccelParam accel_to_param(const PhysicalAccel& p, FieldStatistics stats) {
  if (!(p.a >= 0.0) || std::isnan(p.a)) {
    throw std::invalid_argument("acceleration a = " + format_number(p.a) +
                                " must be >= 0");
  }
  if (!(p.omega > 0.0 && std::isfinite(p.omega))) {
    throw std::invalid_argument("frequency omega = " + format_number(p.omega) +
                                " must be > 0");
  }
  if (p.a == 0.0) return AccelParam::of(stats, 0.0);

  const double x = std::numbers::pi * p.omega * kSpeedOfLight / p.a;
  const double e = std::exp(-x);
  if (stats == FieldStatistics::fermion) {
    return AccelParam::fermionic(std::min(std::atan(e), kQuarterPi));
  }
  constexpr double kEdge = 1.0 - 1e-15;
  if (e >= kEdge) {
    const double a_max = std::numbers::pi * p.omega * kSpeedOfLight / -std::log(kEdge);
    throw std::invalid_argument(
        "r overflow: exp(-pi*omega*c/a) = " + format_number(e) +
        " >= 1 - 1e-15; need a < " + format_number(a_max) + " m/s^2 at omega = " +
        format_number(p.omega));
  }
  return AccelParam::bosonic(std::atanh(e));
}

/// Fock-space truncation and series-convergence settings.
struct Truncation {
  std::size_t n_max = 12;             // Fock cutoff per bosonic mode
  double series_tol = 1e-8;           // absolute tolerance on N
  bool adaptive = true;               // grow n_max until converged
  std::size_t max_dimension = 512;    // ceiling on dense matrix size
  std::size_t series_ceiling = 4096;  // largest series order tried

  void validate() const {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    if (!(series_tol > 0.0)) throw std::invalid_argument("series_tol must be > 0");
  }
};

/// Which accelerated observer a mode belongs to; fixes the factor labels.
enum class Observer { rob, steven };

inline std::string region_one(Observer o) { return o == Observer::rob ? "I" : "I'"; }
inline std::string region_two(Observer o) { return o == Observer::rob ? "II" : "II'"; }

struct ModeExpansion {
  Ket ket;            // over (region I, region II) of the observer
  double tail = 0.0;  // 1 - squared norm, exact
};

/// Minkowski |0> or |1> rewritten in the fermionic Rindler basis:
/// |0> -> cos u |00> + sin u |11>, |1> -> |10>.
inline ModeExpansion fermion_mode_expansion(Occupation occ, const AccelParam& u,
                                            Observer who = Observer::rob) {
  if (u.kind() != AccelParam::Kind::fermionic_u) {
    throw std::invalid_argument("fermionic expansion needs a fermionic u");
  }
  SubsystemLayout layout({{region_one(who), 2}, {region_two(who), 2}});
  ComplexVector v = ComplexVector::Zero(4);
  if (occ == Occupation::vacuum) {
    v(0) = std::cos(u.value());
    v(3) = std::sin(u.value());
  } else {
    v(2) = 1.0;
  }
  return {Ket{std::move(layout), std::move(v)}, 0.0};
}

namespace detail {

// Weight lost when the vacuum expansion is cut after n = cutoff.
inline double vacuum_tail(double q, std::size_t cutoff) {
  return std::pow(q, static_cast<double>(cutoff + 1));
}

// Same for the one-particle expansion: (1-q)^2 Σ_{n>N} (n+1) q^n.
inline double one_particle_tail(double q, std::size_t cutoff) {
  const double n = static_cast<double>(cutoff);
  return std::pow(q, n + 1.0) * ((n + 2.0) - (n + 1.0) * q);
}

}  // namespace detail

/// Minkowski |0> or |1> rewritten in the bosonic Rindler basis, with Fock
/// sums cut at n = cutoff. Both factors get dimension cutoff+2 so the
/// |cutoff+1> component of the one-particle state fits. The result is not
/// renormalized; the lost weight is reported as the tail.
inline ModeExpansion boson_mode_expansion(Occupation occ, const AccelParam& r,
                                          std::size_t cutoff,
                                          Observer who = Observer::rob) {
  if (r.kind() != AccelParam::Kind::bosonic_r) {
    throw std::invalid_argument("bosonic expansion needs a bosonic r");
  }
  const std::size_t d = cutoff + 2;
  SubsystemLayout layout({{region_one(who), d}, {region_two(who), d}});
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));

  const double t = std::tanh(r.value());
  const double ch = std::cosh(r.value());
  const double q = t * t;
  double tn = 1.0;  // tanh^n r, with tanh^0 = 1 also at r = 0
  for (std::size_t n = 0; n <= cutoff; ++n) {
    if (occ == Occupation::vacuum) {
      v(static_cast<Eigen::Index>(n * d + n)) = tn / ch;
    } else {
      v(static_cast<Eigen::Index>((n + 1) * d + n)) =
          tn * std::sqrt(static_cast<double>(n + 1)) / (ch * ch);
    }
    tn *= t;
  }
  const double tail = occ == Occupation::vacuum ? detail::vacuum_tail(q, cutoff)
                                                : detail::one_particle_tail(q, cutoff);
  return {Ket{std::move(layout), std::move(v)}, tail};
}

/// A five-partite ket over (A, I, II, I', II') and its exact missing weight.
struct RindlerKet {
  Ket ket;
  double tail = 0.0;
};

namespace detail {

inline void require_statistics(FieldStatistics stats, const AccelParam& p1,
                               const AccelParam& p2) {
  if (p1.statistics() != stats || p2.statistics() != stats) {
    throw std::invalid_argument(
        "mixed statistics: " + std::string(to_string(stats)) +
        " state requested with " + std::string(to_string(p1.statistics())) +
        " and " + std::string(to_string(p2.statistics())) + " parameters");
  }
}

inline ModeExpansion expand(FieldStatistics stats, Occupation occ,
                            const AccelParam& p, const Truncation& trunc,
                            Observer who) {
  return stats == FieldStatistics::fermion
             ? fermion_mode_expansion(occ, p, who)
             : boson_mode_expansion(occ, p, trunc.n_max, who);
}

inline Ket alice(Occupation occ) {
  ComplexVector v = ComplexVector::Zero(2);
  v(static_cast<int>(occ)) = 1.0;
  return Ket{SubsystemLayout({{"A", 2}}), std::move(v)};
}

inline Ket product(const Ket& a, const ModeExpansion& rob,
                   const ModeExpansion& steven) {
  return kron(kron(a, rob.ket), steven.ket);
}

}  // namespace detail

/// (|0>E0(1)E0(2) + |1>E1(1)E1(2)) / sqrt 2, where Ek(i) is the Rindler
/// expansion of Minkowski |k> for observer i (1 = Rob, 2 = Steven).
inline RindlerKet build_ghz(FieldStatistics stats, const AccelParam& p1,
                            const AccelParam& p2, const Truncation& trunc = {}) {
  detail::require_statistics(stats, p1, p2);
  using enum Occupation;
  const auto r0 = detail::expand(stats, vacuum, p1, trunc, Observer::rob);
  const auto r1 = detail::expand(stats, one, p1, trunc, Observer::rob);
  const auto s0 = detail::expand(stats, vacuum, p2, trunc, Observer::steven);
  const auto s1 = detail::expand(stats, one, p2, trunc, Observer::steven);

  Ket a = detail::product(detail::alice(vacuum), r0, s0);
  const Ket b = detail::product(detail::alice(one), r1, s1);
  a.amplitudes = (a.amplitudes + b.amplitudes) / std::sqrt(2.0);

  const double norm2 = ((1 - r0.tail) * (1 - s0.tail) + (1 - r1.tail) * (1 - s1.tail)) / 2;
  return {std::move(a), 1.0 - norm2};
}

/// (|1>E0E0 + |0>E1E0 + |0>E0E1) / sqrt 3 with the same conventions.
inline RindlerKet build_w(FieldStatistics stats, const AccelParam& p1,
                          const AccelParam& p2, const Truncation& trunc = {}) {
  detail::require_statistics(stats, p1, p2);
  using enum Occupation;
  const auto r0 = detail::expand(stats, vacuum, p1, trunc, Observer::rob);
  const auto r1 = detail::expand(stats, one, p1, trunc, Observer::rob);
  const auto s0 = detail::expand(stats, vacuum, p2, trunc, Observer::steven);
  const auto s1 = detail::expand(stats, one, p2, trunc, Observer::steven);

  Ket k = detail::product(detail::alice(one), r0, s0);
  k.amplitudes += detail::product(detail::alice(vacuum), r1, s0).amplitudes;
  k.amplitudes += detail::product(detail::alice(vacuum), r0, s1).amplitudes;
  k.amplitudes /= std::sqrt(3.0);

  const double w00 = (1 - r0.tail) * (1 - s0.tail);
  const double w10 = (1 - r1.tail) * (1 - s0.tail);
  const double w01 = (1 - r0.tail) * (1 - s1.tail);
  return {std::move(k), 1.0 - (w00 + w10 + w01) / 3.0};
}

inline RindlerKet build_state(StateKind kind, FieldStatistics stats,
                              const AccelParam& p1, const AccelParam& p2,
                              const Truncation& trunc = {}) {
  return kind == StateKind::ghz ? build_ghz(stats, p1, p2, trunc)
                                : build_w(stats, p1, p2, trunc);
}

}  // namespace unruh
