// Command-line front end: point evaluation, parameter sweeps, zero curves.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "unruh/unruh.hpp"

namespace {

using namespace unruh;

constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kUsage = 2;
constexpr int kNumeric = 3;

// Inputs this close to pi/4 are the infinite-acceleration limit, which the
// fermionic parameter range excludes.
constexpr double kQuarterPiGuard = 1e-7;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParamFlags {
  std::optional<double> u1, u2, r1, r2, a1, a2, omega;
};

void add_param_flags(CLI::App* cmd, ParamFlags& p) {
  cmd->add_option("--u1", p.u1, "fermionic Unruh parameter for Rob, in [0, pi/4)");
  cmd->add_option("--u2", p.u2, "fermionic Unruh parameter for Steven, in [0, pi/4)");
  cmd->add_option("--r1", p.r1, "bosonic Unruh parameter for Rob, >= 0");
  cmd->add_option("--r2", p.r2, "bosonic Unruh parameter for Steven, >= 0");
  cmd->add_option("--a1", p.a1, "Rob's proper acceleration in m/s^2 (needs --omega)");
  cmd->add_option("--a2", p.a2, "Steven's proper acceleration in m/s^2 (needs --omega)");
  cmd->add_option("--omega", p.omega, "mode angular frequency in rad/s");
}

void check_fermionic_u(const std::string& name, double u) {
  if (!(u >= 0.0 && u < kQuarterPi - kQuarterPiGuard)) {
    throw UsageError(name + " = " + format_number(u) +
                     " is outside the valid range [0, pi/4) = [0, " +
                     format_number(kQuarterPi) + "); values within 1e-7 of pi/4 count as pi/4");
  }
}

void check_bosonic_r(const std::string& name, double r) {
  if (!(r >= 0.0 && std::isfinite(r))) {
    throw UsageError(name + " = " + format_number(r) +
                     " is outside the valid range [0, inf)");
  }
}

std::pair<double, double> resolve_params(FieldStatistics field, const ParamFlags& p) {
  const bool has_u = p.u1 || p.u2, has_r = p.r1 || p.r2, has_a = p.a1 || p.a2;
  if ((has_u + has_r + has_a) > 1) {
    throw UsageError("mix of --u*, --r* and --a* flags; use one family");
  }
  if (has_u && field != FieldStatistics::fermion) {
    throw UsageError("--u1/--u2 apply to --field fermion; use --r1/--r2 for bosons");
  }
  if (has_r && field != FieldStatistics::boson) {
    throw UsageError("--r1/--r2 apply to --field boson; use --u1/--u2 for fermions");
  }
  if (p.omega && !has_a) throw UsageError("--omega is only used with --a1/--a2");
  if (has_a) {
    if (!p.omega) throw UsageError("--a1/--a2 require --omega");
    auto conv = [&](const std::optional<double>& a) {
      if (!a) return 0.0;
      return accel_to_param(PhysicalAccel{*a, *p.omega}, field).value();
    };
    const double v1 = conv(p.a1), v2 = conv(p.a2);
    if (field == FieldStatistics::fermion) {
      check_fermionic_u("u1 (from --a1)", v1);
      check_fermionic_u("u2 (from --a2)", v2);
    }
    return {v1, v2};
  }
  if (field == FieldStatistics::fermion) {
    const double u1 = p.u1.value_or(0.0), u2 = p.u2.value_or(0.0);
    check_fermionic_u("u1", u1);
    check_fermionic_u("u2", u2);
    return {u1, u2};
  }
  const double r1 = p.r1.value_or(0.0), r2 = p.r2.value_or(0.0);
  check_bosonic_r("r1", r1);
  check_bosonic_r("r2", r2);
  return {r1, r2};
}

FieldStatistics parse_field(const std::string& s) {
  return s == "fermion" ? FieldStatistics::fermion : FieldStatistics::boson;
}
StateKind parse_state(const std::string& s) {
  return s == "ghz" ? StateKind::ghz : StateKind::w;
}

std::vector<Quantity> parse_quantities(const std::vector<std::string>& names) {
  std::vector<Quantity> out;
  for (const auto& n : names) {
    std::stringstream ss(n);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(parse_quantity(item));
    }
  }
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot open output file '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw std::ios_base::failure("failed writing output file '" + path + "'");
}

Axis parse_axis(const std::vector<double>& v, const std::string& name) {
  if (v.size() != 3) throw UsageError(name + " takes START STOP STEPS");
  if (!(v[2] >= 1 && v[2] == std::floor(v[2]))) {
    throw UsageError(name + ": STEPS must be a positive integer");
  }
  return Axis{v[0], v[1], static_cast<std::size_t>(v[2])};
}

struct Common {
  std::string field, state;
  std::size_t nmax = 12;
  double tol = 1e-8;
  bool fixed = false;
  std::string out, format;
};

void add_common(CLI::App* cmd, Common& c, const std::string& default_format) {
  cmd->add_option("--field", c.field, "field statistics")
      ->required()
      ->check(CLI::IsMember({"fermion", "boson"}));
  cmd->add_option("--state", c.state, "tripartite state")
      ->required()
      ->check(CLI::IsMember({"ghz", "w"}));
  cmd->add_option("--nmax", c.nmax, "Fock cutoff per bosonic mode")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", c.tol, "series tolerance on the negativity")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--fixed-nmax", c.fixed, "do not grow the series order beyond --nmax");
  cmd->add_option("--out", c.out, "output file (default: stdout)");
  c.format = default_format;
}

Truncation make_trunc(const Common& c) {
  Truncation t;
  t.n_max = c.nmax;
  t.series_tol = c.tol;
  t.adaptive = !c.fixed;
  return t;
}

std::string point_text(Quantity q, const Evaluation& e, const std::string& oracle) {
  std::ostringstream out;
  out << "quantity        " << to_string(q) << "\n";
  out << "log_negativity  " << format_number(e.result.log_negativity) << "\n";
  out << "negativity      " << format_number(e.result.negativity_sum) << "\n";
  out << "tail_bound      " << format_number(e.result.tail_bound) << "\n";
  out << "method          " << to_string(e.used) << "\n";
  if (e.result.series) {
    out << "series_order    " << e.result.series->order << "\n";
    out << "last_shell      " << format_number(e.result.series->last_shell) << "\n";
  }
  out << oracle;
  return out.str();
}

int run_point(FieldStatistics field, StateKind state, Quantity q, double p1, double p2,
              const Truncation& t, Method method, bool oracle, const std::string& format,
              const std::string& out) {
  const auto e = evaluate(field, state, q, p1, p2, t, method);

  std::optional<FormulaCheck> check;
  std::string note;
  if (oracle) {
    std::optional<double> closed;
    double tol = kFermionOracleTolerance;
    double numeric = 0.0;
    if (field == FieldStatistics::fermion) {
      closed = fermion::closed_negativity(state, q, p1, p2);
      numeric = fermion::numeric_log_negativity(fermion::Scenario::make(state, p1, p2), q)
                    .negativity_sum;
    } else {
      const auto n = boson::numeric_log_negativity(boson::Scenario::make(state, p1, p2, t), q);
      numeric = n.negativity_sum;
      if (auto c = boson::closed_log_negativity(state, q, p1, p2, t, boson::Form::printed)) {
        closed = c->negativity_sum;
        tol = kBosonOracleTolerance + n.tail_bound + c->tail_bound;
      }
    }
    if (closed) {
      check = FormulaCheck{std::string(to_string(q)), p1, p2, *closed, numeric, tol};
    } else {
      note = "no published closed form for this quantity";
    }
  }

  std::string text;
  if (format == "json") {
    nlohmann::ordered_json j;
    j["field"] = to_string(field);
    j["state"] = to_string(state);
    j["quantity"] = to_string(q);
    j["p1"] = p1;
    j["p2"] = p2;
    j["log_negativity"] = e.result.log_negativity;
    j["negativity"] = e.result.negativity_sum;
    j["tail_bound"] = e.result.tail_bound;
    j["method"] = to_string(e.used);
    if (e.result.series) {
      j["series_order"] = e.result.series->order;
      j["last_shell"] = e.result.series->last_shell;
    }
    if (oracle) {
      if (check) {
        j["oracle"] = {{"closed_form", check->printed},
                       {"numeric", check->numeric},
                       {"delta", check->delta()},
                       {"tolerance", check->tolerance},
                       {"agrees", check->agrees()}};
      } else {
        j["oracle"] = note;
      }
    }
    text = j.dump(2) + "\n";
  } else {
    std::string o;
    if (oracle) {
      if (check) {
        o = "oracle_closed   " + format_number(check->printed) + "\n" +
            "oracle_numeric  " + format_number(check->numeric) + "\n" +
            "oracle_delta    " + format_number(check->delta()) + "\n" +
            "oracle_tol      " + format_number(check->tolerance) + "\n" +
            "oracle_agrees   " + (check->agrees() ? "yes" : "NO") + "\n";
      } else {
        o = "oracle          " + note + "\n";
      }
    }
    text = point_text(q, e, o);
  }
  emit(text, out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tripartite GHZ/W logarithmic negativity under the Unruh effect"};
  app.require_subcommand(1);

  // point
  Common pc;
  ParamFlags pp;
  std::string pq, pmethod = "automatic";
  bool poracle = false;
  auto* point = app.add_subcommand("point", "evaluate one negativity");
  add_common(point, pc, "text");
  add_param_flags(point, pp);
  point->add_option("--quantity", pq, "A-RS, R-AS, S-AR, RS, AR or AS")->required();
  point->add_option("--method", pmethod, "automatic, closed or numeric")
      ->capture_default_str()
      ->check(CLI::IsMember({"automatic", "closed", "numeric"}));
  point->add_flag("--oracle", poracle, "compare the closed form against the numeric oracle");
  point->add_option("--format", pc.format, "text or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json"}));

  // sweep
  Common sc;
  std::vector<std::string> sq;
  std::vector<double> ax1, ax2;
  std::string smethod = "automatic";
  auto* sweep = app.add_subcommand("sweep", "evaluate quantities on a 2-D grid");
  add_common(sweep, sc, "csv");
  sweep->add_option("--quantity", sq, "quantities, comma separated or repeated")->required();
  sweep->add_option("--axis1", ax1, "START STOP STEPS for the first parameter")->expected(3);
  sweep->add_option("--axis2", ax2, "START STOP STEPS for the second parameter")->expected(3);
  sweep->add_option("--method", smethod, "automatic, closed or numeric")
      ->capture_default_str()
      ->check(CLI::IsMember({"automatic", "closed", "numeric"}));
  sweep->add_option("--format", sc.format, "csv or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));

  // zero-curve
  Common zc;
  std::string zq;
  std::vector<double> zax;
  std::optional<double> zmax;
  std::size_t zscan = 64;
  auto* zero = app.add_subcommand("zero-curve", "trace where a negativity vanishes");
  add_common(zero, zc, "csv");
  zero->add_option("--quantity", zq, "quantity whose zero set is traced")->required();
  zero->add_option("--axis", zax, "START STOP STEPS for the sampled parameter")->expected(3);
  zero->add_option("--search-max", zmax, "upper end of the root search range");
  zero->add_option("--scan", zscan, "scan points used to bracket the root")
      ->capture_default_str()
      ->check(CLI::Range(2, 100000));
  zero->add_option("--format", zc.format, "csv or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (point->parsed()) {
      const auto field = parse_field(pc.field);
      const auto [p1, p2] = resolve_params(field, pp);
      return run_point(field, parse_state(pc.state), parse_quantity(pq), p1, p2,
                       make_trunc(pc), parse_method(pmethod), poracle, pc.format, pc.out);
    }
    if (sweep->parsed()) {
      SweepSpec spec;
      spec.field = parse_field(sc.field);
      spec.state = parse_state(sc.state);
      spec.quantities = parse_quantities(sq);
      const bool ferm = spec.field == FieldStatistics::fermion;
      spec.axis1 = ax1.empty() ? (ferm ? Axis{0, kQuarterPi - 1e-6, 17} : Axis{0, 2, 9})
                               : parse_axis(ax1, "--axis1");
      spec.axis2 = ax2.empty() ? spec.axis1 : parse_axis(ax2, "--axis2");
      spec.trunc = make_trunc(sc);
      spec.method = parse_method(smethod);
      spec.validate();
      const auto table = run_sweep(spec);
      emit(sc.format == "json" ? to_json(table) : to_csv(table), sc.out);
      return kOk;
    }
    if (zero->parsed()) {
      ZeroCurveSpec z;
      z.field = parse_field(zc.field);
      z.state = parse_state(zc.state);
      z.quantity = parse_quantity(zq);
      const bool ferm = z.field == FieldStatistics::fermion;
      z.axis = zax.empty() ? (ferm ? Axis{0, kQuarterPi - 1e-6, 16} : Axis{0, 2, 9})
                           : parse_axis(zax, "--axis");
      if (zmax) z.search_max = *zmax;
      z.scan_points = zscan;
      z.trunc = make_trunc(zc);
      const auto pts = trace_zero_curve(z);
      emit(zc.format == "json" ? zero_curve_json(z, pts) : zero_curve_csv(z, pts), zc.out);
      return kOk;
    }
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const SeriesNotConverged& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
