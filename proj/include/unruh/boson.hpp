#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "measures.hpp"
#include "partition.hpp"
#include "states.hpp"

namespace unruh::boson {

struct Scenario {
  StateKind state;
  AccelParam r1;  // Rob, region I
  AccelParam r2;  // Steven, region I'
  Truncation trunc{};

  static Scenario make(StateKind state, double r1, double r2, Truncation trunc = {}) {
    trunc.validate();
    return {state, AccelParam::bosonic(r1), AccelParam::bosonic(r2), trunc};
  }
};

/// Density matrix of the truncated state plus its error budget. `tail` is
/// the weight missing from the ket; `negativity_bound` bounds the error of
/// any negativity computed from this matrix (at most 2 * tail).
struct TruncatedDensity {
  ComplexMatrix rho;
  SubsystemLayout layout;
  double tail = 0.0;
  double negativity_bound = 0.0;
};

/// Size of the (A, I, I') matrix for a Fock cutoff.
inline std::size_t tripartite_dimension(std::size_t n_max) {
  return 2 * (n_max + 2) * (n_max + 2);
}

inline void check_dimension(const Truncation& t) {
  const std::size_t dim = tripartite_dimension(t.n_max);
  if (dim > t.max_dimension) throw DimensionCeilingExceeded(dim, t.max_dimension);
}

inline RindlerKet scenario_ket(const Scenario& s) {
  s.trunc.validate();
  check_dimension(s.trunc);
  return build_state(s.state, FieldStatistics::boson, s.r1, s.r2, s.trunc);
}

inline std::vector<std::string> traced_labels(Quantity q) {
  std::vector<std::string> drop{"II", "II'"};
  if (!is_tripartite(q)) drop.push_back(dropped_label(q));
  return drop;
}

/// Density over the factors a quantity needs: (A, I, I') for the tripartite
/// cuts, the two remaining parties otherwise. Always obtained by tracing
/// the pure five-partite ket.
inline TruncatedDensity density_for(const Scenario& s, Quantity q) {
  const auto k = scenario_ket(s);
  const auto drop = traced_labels(q);
  auto rd = unruh::reduced_density(k.ket, drop);
  return {std::move(rd.matrix), std::move(rd.layout), k.tail, 2.0 * k.tail};
}

inline TruncatedDensity rindler_density_truncated(const Scenario& s) {
  return density_for(s, Quantity::a_rs);
}

inline TruncatedDensity w_reduced_density(const Scenario& s, Quantity pair) {
  if (s.state != StateKind::w || is_tripartite(pair)) {
    throw std::invalid_argument("w_reduced_density needs a W scenario and RS, AR or AS");
  }
  return density_for(s, pair);
}

inline NegativityResult numeric_log_negativity(const Scenario& s, Quantity q) {
  const auto d = density_for(s, q);
  const auto pt = partial_transpose(d.rho, d.layout, transposed_label(q));
  const auto eig = hermitian_eigenvalues(pt);
  auto r = from_spectrum(eig, default_clamp(static_cast<std::size_t>(pt.rows())));
  r.tail_bound = d.negativity_bound;
  return r;
}

inline NegativityResult w_tripartite_log_negativity_numeric(const Scenario& s,
                                                            Quantity q) {
  if (s.state != StateKind::w || !is_tripartite(q)) {
    throw std::invalid_argument("expected a W scenario and A-RS, R-AS or S-AR");
  }
  return numeric_log_negativity(s, q);
}

/// Compression of the exact density onto Fock levels 0..n_max of I and I'.
/// Every ket component inside that window is present in the truncated ket,
/// so cropping the truncated density gives the compression exactly. Its
/// partial transpose is the compression of the exact partial transpose, so
/// by interlacing it never shows negativity the exact state lacks.
inline LabeledDensity compressed_density(const Scenario& s, Quantity q) {
  const auto d = density_for(s, q);
  const std::size_t keep = s.trunc.n_max + 1;
  std::vector<Factor> factors;
  std::vector<std::size_t> dims;
  for (const auto& f : d.layout.factors()) {
    const bool fock = f.label == "I" || f.label == "I'";
    factors.push_back({f.label, fock ? keep : f.dim});
    dims.push_back(f.dim);
  }
  SubsystemLayout out_layout(std::move(factors));
  // Flat indices of the retained basis states, in order.
  std::vector<Eigen::Index> idx;
  const std::size_t n = d.layout.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rest = i;
    bool ok = true;
    for (std::size_t f = dims.size(); f-- > 0;) {
      const std::size_t digit = rest % dims[f];
      rest /= dims[f];
      if (digit >= out_layout[f].dim) ok = false;
    }
    if (ok) idx.push_back(static_cast<Eigen::Index>(i));
  }
  const auto m = static_cast<Eigen::Index>(idx.size());
  ComplexMatrix out(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) out(a, b) = d.rho(idx[a], idx[b]);
  return {std::move(out), std::move(out_layout)};
}

inline double min_transposed_eigenvalue_compressed(const Scenario& s, Quantity q) {
  const auto d = compressed_density(s, q);
  return hermitian_eigenvalues(partial_transpose(d.matrix, d.layout, transposed_label(q)))
      .front();
}

/// How a per-block closed form is evaluated. `printed` follows the
/// published expression verbatim; `corrected` is the form that agrees with
/// the numeric partial transpose where the two differ.
enum class Form { printed, corrected };

namespace detail {

struct Hyper {
  double t, c, s, q;  // tanh, cosh, sinh, tanh^2
  explicit Hyper(double r)
      : t(std::tanh(r)), c(std::cosh(r)), s(std::sinh(r)), q(t * t) {}
};

inline double powi(double x, std::size_t n) {
  return std::pow(x, static_cast<double>(n));
}

// pref * (S - sqrt(S^2 + X)) without cancellation; zero when pref is zero.
inline double lower_root(double pref, double S, double X) {
  if (pref == 0.0 || X == 0.0) return 0.0;
  return -pref * X / (S + std::sqrt(S * S + X));
}

// n / x with the convention that n = 0 contributes nothing even at x = 0.
inline double ratio(double n, double x) { return n == 0.0 ? 0.0 : n / x; }

inline double geo_tail(double q, std::size_t N) {
  return powi(q, N + 1) / (1.0 - q);
}
inline double lin_tail(double q, std::size_t N) {
  const double n = static_cast<double>(N);
  return powi(q, N + 1) * ((n + 2) - (n + 1) * q) / ((1 - q) * (1 - q));
}
inline double log_all(double q) { return -std::log1p(-q); }
inline double lin_all(double q) { return 1.0 / ((1 - q) * (1 - q)); }

}  // namespace detail

/// Negative eigenvalue of the (n, m) block of the GHZ partial transpose.
/// R-AS is S-AR with r1 and r2 interchanged.
inline double ghz_block_negativity(Quantity q, std::size_t n, std::size_t m, double r1,
                                   double r2, Form form = Form::printed) {
  if (q == Quantity::r_as) return ghz_block_negativity(Quantity::s_ar, n, m, r2, r1, form);
  const detail::Hyper h1(r1), h2(r2);
  const double C = h1.c * h1.c * h2.c * h2.c;
  const double pref = detail::powi(h1.q, n) * detail::powi(h2.q, m) / (4 * C);
  const double dn = static_cast<double>(n), dm = static_cast<double>(m);
  switch (q) {
    case Quantity::a_rs: {
      const double S = h1.q * h2.q + detail::ratio(dn * dm, h1.s * h1.s * h2.s * h2.s);
      return detail::lower_root(pref, S, 4 * (dn + dm + 1) / C);
    }
    case Quantity::s_ar: {
      const double first = form == Form::printed ? h1.s : h1.c;
      const double S = h2.q + detail::ratio((dn + 1) * dm, first * first * h2.s * h2.s);
      return detail::lower_root(pref, S, 4 * (dn + 1) / C);
    }
    default:
      throw std::invalid_argument("GHZ blocks exist for A-RS, R-AS, S-AR only");
  }
}

/// Signed smaller eigenvalue of the published (n, m) block for the W RS
/// reduction, with a and b as printed.
inline double w_rs_block_eigenvalue(std::size_t n, std::size_t m, double r1, double r2) {
  const detail::Hyper h1(r1), h2(r2);
  const double C = h1.c * h1.c * h2.c * h2.c;
  const double pref = detail::powi(h1.q, n) * detail::powi(h2.q, m) / (6 * C);
  if (pref == 0.0) return 0.0;
  const double dn = static_cast<double>(n), dm = static_cast<double>(m);
  const double a =
      1 + detail::ratio(dn, h1.q * h1.c) + detail::ratio(dm, h2.q * h2.c);
  const double b = 2 * h1.q * h2.q + (dn + 1) * h2.q / (h1.c * h1.c) +
                   (dm + 1) * h1.q / (h2.c * h2.c);
  const double Y = 4 * (dn + 1) * (dm + 1) / C;
  // a + b - sqrt((a-b)^2 + Y), rationalized.
  return pref * (4 * a * b - Y) / (a + b + std::sqrt((a - b) * (a - b) + Y));
}

inline double w_rs_block_negativity(std::size_t n, std::size_t m, double r1, double r2) {
  return std::min(w_rs_block_eigenvalue(n, m, r1, r2), 0.0);
}

/// Signed smaller eigenvalue of the n-th block of the W AR partial transpose
/// (AS: pass r2). Its sign is that of sinh^2 r - 1 for every n.
inline double w_ar_block_eigenvalue(std::size_t n, double r) {
  const detail::Hyper h(r);
  const double pref = detail::powi(h.q, n) / (6 * h.c * h.c);
  if (pref == 0.0) return 0.0;
  const double A = 1 + detail::ratio(static_cast<double>(n), h.s * h.s) + h.q;
  const double D = A * A - 4 * h.q + 4 / (h.c * h.c);
  // A - sqrt(D) = (A^2 - D) / (A + sqrt D), and A^2 - D = 4 (sinh^2 r - 1) / cosh^2 r.
  return pref * 4 * (h.s * h.s - 1) / (h.c * h.c) / (A + std::sqrt(D));
}

inline double w_ar_block_negativity(std::size_t n, double r) {
  return std::min(w_ar_block_eigenvalue(n, r), 0.0);
}

namespace detail {

inline constexpr std::size_t kGrowth = 4;

// Sums block(n, m) over the square [0..N]^2 in square shells, growing N by
// kGrowth until the last growth step adds less than tol and the rigorous
// tail bound outside the square is below tol.
template <class Block, class Tail>
NegativityResult square_series(Block&& block, Tail&& tail, const Truncation& t) {
  t.validate();
  auto shell = [&](std::size_t k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) acc += block(k, i) + block(i, k);
    return acc + block(k, k);
  };
  std::size_t N = t.n_max;
  double total = 0.0, last = 0.0;
  for (std::size_t k = 0; k <= N; ++k) {
    const double sh = shell(k);
    total += sh;
    if (k + kGrowth > N) last += sh;
  }
  auto result = [&] {
    auto r = from_sum(total, tail(N));
    r.series = SeriesInfo{N, last};
    return r;
  };
  if (!t.adaptive) return result();
  while (!(std::abs(last) < t.series_tol && tail(N) < t.series_tol)) {
    if (N + kGrowth > t.series_ceiling) throw SeriesNotConverged(result(), t.series_tol);
    last = 0.0;
    for (std::size_t k = N + 1; k <= N + kGrowth; ++k) last += shell(k);
    total += last;
    N += kGrowth;
  }
  return result();
}

template <class Block, class Tail>
NegativityResult line_series(Block&& block, Tail&& tail, const Truncation& t) {
  t.validate();
  std::size_t N = t.n_max;
  double total = 0.0, last = 0.0;
  for (std::size_t k = 0; k <= N; ++k) {
    const double b = block(k);
    total += b;
    if (k + kGrowth > N) last += b;
  }
  auto result = [&] {
    auto r = from_sum(total, tail(N));
    r.series = SeriesInfo{N, last};
    return r;
  };
  if (!t.adaptive) return result();
  while (!(std::abs(last) < t.series_tol && tail(N) < t.series_tol)) {
    if (N + kGrowth > t.series_ceiling) throw SeriesNotConverged(result(), t.series_tol);
    last = 0.0;
    for (std::size_t k = N + 1; k <= N + kGrowth; ++k) last += block(k);
    total += last;
    N += kGrowth;
  }
  return result();
}

// Bound on the A-RS blocks with n > N (all m). Uses |block| <= pref *
// min(sqrt X, X / 2S).
inline double a_rs_half_tail(const Hyper& h1, const Hyper& h2, std::size_t N) {
  const double C = h1.c * h1.c * h2.c * h2.c;
  const double q1 = h1.q, q2 = h2.q;
  const double g = geo_tail(q1, N);
  // m >= 1: pref * 2 q1 q2 (1/m + 2/n)
  const double body = q1 * q2 / (2 * C) *
                      (g * log_all(q2) + 2 * g / static_cast<double>(N + 1) * q2 / (1 - q2));
  // m = 0
  double row = lin_tail(q1, N) / (2 * std::pow(C, 1.5));
  if (q1 * q2 > 0) row = std::min(row, lin_tail(q1, N) / (2 * C * C * q1 * q2));
  return body + row;
}

inline double a_rs_tail(double r1, double r2, std::size_t N) {
  const Hyper h1(r1), h2(r2);
  return a_rs_half_tail(h1, h2, N) + a_rs_half_tail(h2, h1, N);
}

// Bound for S-AR blocks outside the square, valid for both forms.
inline double s_ar_tail(double r1, double r2, std::size_t N) {
  const Hyper h1(r1), h2(r2);
  const double C = h1.c * h1.c * h2.c * h2.c;
  const double q1 = h1.q, q2 = h2.q;
  // m >= 1: pref * 2 q2 / m
  const double n_out = q2 / (2 * C) * geo_tail(q1, N) * log_all(q2);
  const double m_out =
      q2 / (2 * C) / (1 - q1) * geo_tail(q2, N) / static_cast<double>(N + 1);
  // m = 0, n > N
  double row = lin_tail(q1, N) / (2 * std::pow(C, 1.5));
  if (q2 > 0) row = std::min(row, lin_tail(q1, N) / (2 * C * C * q2));
  return n_out + m_out + row;
}

inline double w_rs_tail(double r1, double r2, std::size_t N) {
  const Hyper h1(r1), h2(r2);
  const double C = h1.c * h1.c * h2.c * h2.c;
  return (lin_tail(h1.q, N) * lin_all(h2.q) + lin_all(h1.q) * lin_tail(h2.q, N)) /
         (3 * C * h1.c * h2.c);
}

inline double w_ar_tail(double r, std::size_t N) {
  const Hyper h(r);
  return geo_tail(h.q, N) / (3 * std::pow(h.c, 4));
}

}  // namespace detail

/// log2(1 - 2 sum N_nm) for a GHZ tripartite cut.
inline NegativityResult ghz_log_negativity_series(Quantity q, double r1, double r2,
                                                  const Truncation& t = {},
                                                  Form form = Form::printed) {
  if (!is_tripartite(q)) {
    throw std::invalid_argument("GHZ series exists for A-RS, R-AS, S-AR only");
  }
  auto block = [&](std::size_t n, std::size_t m) {
    return ghz_block_negativity(q, n, m, r1, r2, form);
  };
  auto tail = [&](std::size_t N) {
    switch (q) {
      case Quantity::a_rs: return detail::a_rs_tail(r1, r2, N);
      case Quantity::s_ar: return detail::s_ar_tail(r1, r2, N);
      default: return detail::s_ar_tail(r2, r1, N);
    }
  };
  return detail::square_series(block, tail, t);
}

/// Sum of the published W RS block negativities.
inline NegativityResult w_rs_log_negativity_series(double r1, double r2,
                                                   const Truncation& t = {}) {
  auto block = [&](std::size_t n, std::size_t m) {
    return w_rs_block_negativity(n, m, r1, r2);
  };
  auto tail = [&](std::size_t N) { return detail::w_rs_tail(r1, r2, N); };
  return detail::square_series(block, tail, t);
}

/// W AR (r1) or AS (r2) from the block sum starting at n = 0.
inline NegativityResult w_pair_log_negativity_series(Quantity pair, double r1, double r2,
                                                     const Truncation& t = {}) {
  if (pair != Quantity::ar && pair != Quantity::as) {
    throw std::invalid_argument("W pair series exists for AR and AS only");
  }
  const double r = pair == Quantity::ar ? r1 : r2;
  auto block = [&](std::size_t n) { return w_ar_block_negativity(n, r); };
  auto tail = [&](std::size_t N) { return detail::w_ar_tail(r, N); };
  return detail::line_series(block, tail, t);
}

/// Closed-form (block series) evaluation where one exists. GHZ reductions
/// are diagonal, hence exactly zero. The W tripartite cuts have none.
inline std::optional<NegativityResult> closed_log_negativity(StateKind state, Quantity q,
                                                             double r1, double r2,
                                                             const Truncation& t = {},
                                                             Form form = Form::printed) {
  if (state == StateKind::ghz) {
    if (is_tripartite(q)) return ghz_log_negativity_series(q, r1, r2, t, form);
    return from_sum(0.0, 0.0);
  }
  if (is_tripartite(q)) return std::nullopt;
  if (q == Quantity::rs) return w_rs_log_negativity_series(r1, r2, t);
  return w_pair_log_negativity_series(q, r1, r2, t);
}

}  // namespace unruh::boson
