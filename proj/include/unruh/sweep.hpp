#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "boson.hpp"
#include "evaluate.hpp"
#include "fermion.hpp"
#include "format.hpp"
#include "partition.hpp"
#include "states.hpp"

namespace unruh {

/// Evenly spaced samples start..stop inclusive.
struct Axis {
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 2;

  double at(std::size_t i) const {
    if (i + 1 == steps) return stop;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
};

inline void validate_axis(const Axis& a, FieldStatistics field, std::string_view name,
                          std::size_t min_steps) {
  const std::string n(name);
  if (a.steps < min_steps) {
    throw std::invalid_argument(n + ": steps must be >= " + std::to_string(min_steps));
  }
  if (!(std::isfinite(a.start) && std::isfinite(a.stop) && a.start >= 0 && a.stop >= 0)) {
    throw std::invalid_argument(n + ": range must be finite and >= 0");
  }
  if (a.stop < a.start) throw std::invalid_argument(n + ": stop must be >= start");
  if (field == FieldStatistics::fermion && !(a.stop < kQuarterPi)) {
    throw std::invalid_argument(n + ": fermionic u must stay below pi/4 = " +
                                format_number(kQuarterPi));
  }
}

inline std::string param_name(FieldStatistics f, int which) {
  return std::string(f == FieldStatistics::fermion ? "u" : "r") + std::to_string(which);
}

struct SweepSpec {
  FieldStatistics field = FieldStatistics::fermion;
  StateKind state = StateKind::ghz;
  std::vector<Quantity> quantities;
  Axis axis1, axis2;
  Truncation trunc{};
  Method method = Method::automatic;

  void validate() const {
    if (quantities.empty()) throw std::invalid_argument("at least one quantity is required");
    validate_axis(axis1, field, param_name(field, 1), 2);
    validate_axis(axis2, field, param_name(field, 2), 2);
    trunc.validate();
  }
};

/// Values are log-negativities; rows run axis1-major, both ascending.
struct SweepTable {
  SweepSpec spec;
  std::vector<std::vector<double>> rows;  // p1, p2, q1, q2, ...
};

inline SweepTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepTable t{spec, {}};
  for (std::size_t i = 0; i < spec.axis1.steps; ++i) {
    for (std::size_t j = 0; j < spec.axis2.steps; ++j) {
      const double p1 = spec.axis1.at(i), p2 = spec.axis2.at(j);
      std::vector<double> row{p1, p2};
      for (auto q : spec.quantities) {
        row.push_back(
            evaluate(spec.field, spec.state, q, p1, p2, spec.trunc, spec.method)
                .result.log_negativity);
      }
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

namespace detail {

inline std::string quantity_list(const std::vector<Quantity>& qs) {
  std::string s;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (i) s += ",";
    s += to_string(qs[i]);
  }
  return s;
}

inline double round9(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

}  // namespace detail

inline std::vector<std::string> sweep_columns(const SweepSpec& s) {
  std::vector<std::string> c{param_name(s.field, 1), param_name(s.field, 2)};
  for (auto q : s.quantities) c.emplace_back(to_string(q));
  return c;
}

inline std::string to_csv(const SweepTable& t) {
  const auto& s = t.spec;
  std::ostringstream out;
  out << "# unruhneg sweep\n";
  out << "# field=" << to_string(s.field) << " state=" << to_string(s.state)
      << " method=" << to_string(s.method) << "\n";
  auto axis = [&](const Axis& a, int which) {
    out << "# " << param_name(s.field, which) << ": start=" << format_number(a.start)
        << " stop=" << format_number(a.stop) << " steps=" << a.steps << "\n";
  };
  axis(s.axis1, 1);
  axis(s.axis2, 2);
  out << "# quantities=" << detail::quantity_list(s.quantities) << "\n";
  if (s.field == FieldStatistics::boson) {
    out << "# n_max=" << s.trunc.n_max << " series_tol=" << format_number(s.trunc.series_tol)
        << " adaptive=" << (s.trunc.adaptive ? "true" : "false")
        << " max_dimension=" << s.trunc.max_dimension
        << " series_ceiling=" << s.trunc.series_ceiling << "\n";
  }
  out << "# values: logarithmic negativity in bits\n";
  const auto cols = sweep_columns(s);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << "\n";
  }
  return out.str();
}

inline nlohmann::ordered_json spec_json(const SweepSpec& s) {
  nlohmann::ordered_json j;
  j["field"] = to_string(s.field);
  j["state"] = to_string(s.state);
  j["method"] = to_string(s.method);
  j["quantities"] = nlohmann::ordered_json::array();
  for (auto q : s.quantities) j["quantities"].push_back(to_string(q));
  auto axis = [](const Axis& a) {
    return nlohmann::ordered_json{{"start", detail::round9(a.start)},
                                  {"stop", detail::round9(a.stop)},
                                  {"steps", a.steps}};
  };
  j["axis1"] = axis(s.axis1);
  j["axis2"] = axis(s.axis2);
  if (s.field == FieldStatistics::boson) {
    j["truncation"] = {{"n_max", s.trunc.n_max},
                       {"series_tol", s.trunc.series_tol},
                       {"adaptive", s.trunc.adaptive},
                       {"max_dimension", s.trunc.max_dimension},
                       {"series_ceiling", s.trunc.series_ceiling}};
  }
  return j;
}

inline std::string to_json(const SweepTable& t) {
  nlohmann::ordered_json j;
  j["spec"] = spec_json(t.spec);
  j["columns"] = sweep_columns(t.spec);
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (double v : row) r.push_back(detail::round9(v));
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Zero curves

struct ZeroCurveSpec {
  FieldStatistics field = FieldStatistics::fermion;
  StateKind state = StateKind::w;
  Quantity quantity = Quantity::rs;
  Axis axis;                   // samples of the parameter held fixed
  double search_max = -1.0;    // upper end of the root search; < 0 picks a default
  std::size_t scan_points = 64;
  Truncation trunc{};

  double search_limit() const {
    if (search_max >= 0) return search_max;
    return field == FieldStatistics::fermion ? kQuarterPi - 1e-12 : 3.0;
  }

  void validate() const {
    validate_axis(axis, field, "axis", 1);
    if (scan_points < 2) throw std::invalid_argument("scan_points must be >= 2");
    const double top = search_limit();
    if (!(top > 0)) throw std::invalid_argument("search range must be > 0");
    if (field == FieldStatistics::fermion && !(top < kQuarterPi)) {
      throw std::invalid_argument("fermionic search range must stay below pi/4");
    }
    trunc.validate();
  }
};

/// Which parameter the curve solves for. AR depends on r1 alone and AS on r2
/// alone, so those solve for their own parameter; everything else fixes the
/// first parameter and solves for the second.
inline int solved_parameter(Quantity q) { return q == Quantity::ar ? 1 : 2; }

struct ZeroPoint {
  double fixed = 0.0;               // value of the sampled parameter
  std::optional<double> root;       // value of the solved parameter
  std::optional<double> analytic;   // fermion W RS: published curve
  std::optional<double> residual;   // signal at the root
};

/// Signed entanglement signal: negative while the partial transpose has a
/// negative eigenvalue, >= 0 once it is positive semidefinite.
inline double zero_signal(const ZeroCurveSpec& z, double p1, double p2) {
  if (z.field == FieldStatistics::fermion) {
    return fermion::min_transposed_eigenvalue(fermion::Scenario::make(z.state, p1, p2),
                                              z.quantity);
  }
  if (z.state == StateKind::w && (z.quantity == Quantity::ar || z.quantity == Quantity::as)) {
    const double r = z.quantity == Quantity::ar ? p1 : p2;
    double s = 0.0;
    for (std::size_t n = 0; n <= z.trunc.n_max; ++n) s += boson::w_ar_block_eigenvalue(n, r);
    return s;
  }
  return boson::min_transposed_eigenvalue_compressed(
      boson::Scenario::make(z.state, p1, p2, z.trunc), z.quantity);
}

/// Finds where the signal turns from negative to non-negative along the
/// solved parameter, by a scan for the first sign change followed by
/// bisection down to adjacent doubles.
inline std::optional<double> find_zero(const std::function<double(double)>& f, double lo,
                                       double hi, std::size_t scan_points,
                                       double threshold) {
  auto negative = [&](double x) { return f(x) < -threshold; };
  double a = lo;
  bool neg_a = negative(a);
  for (std::size_t i = 1; i < scan_points; ++i) {
    const double b = i + 1 == scan_points
                         ? hi
                         : lo + (hi - lo) * static_cast<double>(i) /
                                    static_cast<double>(scan_points - 1);
    const bool neg_b = negative(b);
    if (neg_a && !neg_b) {
      double x0 = a, x1 = b;  // negative at x0, not at x1
      while (true) {
        const double mid = 0.5 * (x0 + x1);
        if (mid <= x0 || mid >= x1) break;
        (negative(mid) ? x0 : x1) = mid;
      }
      return 0.5 * (x0 + x1);
    }
    a = b;
    neg_a = neg_b;
  }
  return std::nullopt;
}

inline std::vector<ZeroPoint> trace_zero_curve(const ZeroCurveSpec& z) {
  z.validate();
  const int solve = solved_parameter(z.quantity);
  const double threshold = 1e-13;
  std::vector<ZeroPoint> out;
  for (std::size_t i = 0; i < z.axis.steps; ++i) {
    ZeroPoint pt;
    pt.fixed = z.axis.at(i);
    auto f = [&](double x) {
      return solve == 2 ? zero_signal(z, pt.fixed, x) : zero_signal(z, x, pt.fixed);
    };
    pt.root = find_zero(f, 0.0, z.search_limit(), z.scan_points, threshold);
    if (pt.root) pt.residual = f(*pt.root);
    if (z.field == FieldStatistics::fermion && z.state == StateKind::w &&
        z.quantity == Quantity::rs) {
      pt.analytic = fermion::rs_zero_curve(pt.fixed);
    }
    out.push_back(pt);
  }
  return out;
}

inline std::string zero_curve_csv(const ZeroCurveSpec& z, const std::vector<ZeroPoint>& pts) {
  const int solve = solved_parameter(z.quantity);
  const std::string fixed = param_name(z.field, solve == 2 ? 1 : 2);
  const std::string solved = param_name(z.field, solve);
  const bool analytic = z.field == FieldStatistics::fermion && z.state == StateKind::w &&
                        z.quantity == Quantity::rs;
  std::ostringstream out;
  out << "# unruhneg zero-curve\n";
  out << "# field=" << to_string(z.field) << " state=" << to_string(z.state)
      << " quantity=" << to_string(z.quantity) << "\n";
  out << "# " << fixed << ": start=" << format_number(z.axis.start)
      << " stop=" << format_number(z.axis.stop) << " steps=" << z.axis.steps << "\n";
  out << "# " << solved << " searched in [0, " << format_number(z.search_limit())
      << "] with " << z.scan_points << " scan points\n";
  if (z.field == FieldStatistics::boson) out << "# n_max=" << z.trunc.n_max << "\n";
  out << fixed << "," << solved << (analytic ? ",analytic" : "") << "\n";
  auto opt = [](const std::optional<double>& v) {
    return v ? format_number(*v) : std::string("none");
  };
  for (const auto& p : pts) {
    out << format_number(p.fixed) << "," << opt(p.root);
    if (analytic) out << "," << opt(p.analytic);
    out << "\n";
  }
  return out.str();
}

inline std::string zero_curve_json(const ZeroCurveSpec& z, const std::vector<ZeroPoint>& pts) {
  const int solve = solved_parameter(z.quantity);
  nlohmann::ordered_json j;
  j["field"] = to_string(z.field);
  j["state"] = to_string(z.state);
  j["quantity"] = to_string(z.quantity);
  j["fixed"] = param_name(z.field, solve == 2 ? 1 : 2);
  j["solved"] = param_name(z.field, solve);
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : pts) {
    nlohmann::ordered_json e;
    e["fixed"] = detail::round9(p.fixed);
    e["root"] = p.root ? nlohmann::ordered_json(detail::round9(*p.root)) : nlohmann::ordered_json("none");
    if (p.analytic || (z.field == FieldStatistics::fermion && z.quantity == Quantity::rs &&
                       z.state == StateKind::w)) {
      e["analytic"] =
          p.analytic ? nlohmann::ordered_json(detail::round9(*p.analytic)) : nlohmann::ordered_json("none");
    }
    j["points"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

}  // namespace unruh
