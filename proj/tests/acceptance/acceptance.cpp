// Acceptance checks. Prints one PASS/FAIL line per criterion, followed by
// indented detail lines. `--criterion N` runs a single criterion.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "unruh/unruh.hpp"

using namespace unruh;

namespace {

constexpr double kTop = std::numbers::pi / 4 - 1e-6;
const double kWZero = std::log(1 + std::sqrt(2.0));

struct Report {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { details.push_back("note " + what); }
};

std::string fmt(double x) { return format_number(x); }

double fgrid(int i) { return kTop * i / 16.0; }
double bgrid(int i) { return 0.25 * i; }

Truncation cut(std::size_t n) {
  Truncation t;
  t.n_max = n;
  return t;
}

double f_lneg(StateKind st, Quantity q, double u1, double u2) {
  return fermion::numeric_log_negativity(fermion::Scenario::make(st, u1, u2), q).log_negativity;
}

double b_auto(StateKind st, Quantity q, double r1, double r2, const Truncation& t = {}) {
  return evaluate(FieldStatistics::boson, st, q, r1, r2, t).result.log_negativity;
}

// Log-negativity of the inertial W state across any 1-vs-2 cut.
double inertial_w_tripartite() { return 2 * std::log2(std::sqrt(1.0 / 3) + std::sqrt(2.0 / 3)); }

// ---------------------------------------------------------------------------

Report inertial_limits() {
  Report r;
  for (auto q : kTripartite) {
    const double f = f_lneg(StateKind::ghz, q, 0, 0);
    r.check(std::abs(f - 1) < 1e-10, "fermion GHZ " + std::string(to_string(q)) + " = " + fmt(f));
    const double b = b_auto(StateKind::ghz, q, 0, 0);
    r.check(std::abs(b - 1) < 1e-10, "boson GHZ " + std::string(to_string(q)) + " = " + fmt(b));
    const double bn =
        boson::numeric_log_negativity(boson::Scenario::make(StateKind::ghz, 0, 0), q)
            .log_negativity;
    r.check(std::abs(bn - 1) < 1e-10,
            "boson GHZ " + std::string(to_string(q)) + " (numeric) = " + fmt(bn));
  }
  const double w3 = inertial_w_tripartite();
  r.note("W tripartite oracle log2((sqrt(1/3) + sqrt(2/3))^2) = " + fmt(w3) +
         "; the quoted decimal 0.958110 differs from this expression by 3.4e-5");
  for (auto q : kTripartite) {
    const double f = f_lneg(StateKind::w, q, 0, 0);
    r.check(std::abs(f - w3) < 1e-8, "fermion W " + std::string(to_string(q)) + " = " + fmt(f));
    const double b = b_auto(StateKind::w, q, 0, 0);
    r.check(std::abs(b - w3) < 1e-8, "boson W " + std::string(to_string(q)) + " = " + fmt(b));
  }
  for (auto q : kBipartite) {
    const double f = f_lneg(StateKind::w, q, 0, 0);
    r.check(std::abs(f - 0.4978) < 1e-4 && std::abs(f - 0.5) < 0.01,
            "fermion W " + std::string(to_string(q)) + " = " + fmt(f));
    const double b = b_auto(StateKind::w, q, 0, 0);
    r.check(std::abs(b - 0.4978) < 1e-4 && std::abs(b - 0.5) < 0.01,
            "boson W " + std::string(to_string(q)) + " = " + fmt(b));
  }
  return r;
}

Report oracle_equivalence() {
  Report r;
  struct Tally {
    int points = 0, failures = 0;
    FormulaCheck worst;
    double worst_excess = -1;
  };
  std::map<std::string, Tally> tallies;
  std::vector<std::string> order;
  auto record = [&](const FormulaCheck& c) {
    if (!tallies.count(c.formula)) order.push_back(c.formula);
    auto& t = tallies[c.formula];
    ++t.points;
    if (!c.agrees()) ++t.failures;
    const double excess = c.delta() - c.tolerance;
    if (excess > t.worst_excess || t.worst_excess < -0.5) {
      t.worst = c;
      t.worst_excess = excess;
    }
  };
  for (int i = 0; i <= 16; ++i)
    for (int j = 0; j <= 16; ++j)
      for (const auto& c : fermion_formula_checks(fgrid(i), fgrid(j))) record(c);
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j <= 8; ++j)
      for (const auto& c : boson_formula_checks(bgrid(i), bgrid(j), cut(12))) record(c);
  for (const auto& name : order) {
    const auto& t = tallies[name];
    std::ostringstream s;
    s << name << ": " << (t.points - t.failures) << "/" << t.points << " points agree";
    if (t.failures) {
      s << "; worst at (" << fmt(t.worst.p1) << ", " << fmt(t.worst.p2)
        << "): published " << fmt(t.worst.printed) << ", numeric " << fmt(t.worst.numeric)
        << ", tolerance " << fmt(t.worst.tolerance);
    }
    r.check(t.failures == 0, s.str());
  }

  // Diagnostics for the failing published forms.
  int swapped_ok = 0, swapped_n = 0;
  for (int i = 0; i <= 16; ++i) {
    for (int j = 0; j <= 16; ++j) {
      const double u1 = fgrid(i), u2 = fgrid(j);
      const auto s = fermion::Scenario::make(StateKind::w, u1, u2);
      const double ar = fermion::w_bipartite_closed_negativity(Quantity::ar, u2, u1);
      const double as = fermion::w_bipartite_closed_negativity(Quantity::as, u2, u1);
      swapped_ok += std::abs(ar - fermion::numeric_log_negativity(s, Quantity::ar).negativity_sum) <
                    kFermionOracleTolerance;
      swapped_ok += std::abs(as - fermion::numeric_log_negativity(s, Quantity::as).negativity_sum) <
                    kFermionOracleTolerance;
      swapped_n += 2;
    }
  }
  r.note("fermion W AR/AS with u1 and u2 exchanged in the published expressions: " +
         std::to_string(swapped_ok) + "/" + std::to_string(swapped_n) + " points agree");
  int corrected_ok = 0, corrected_n = 0;
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; j <= 8; ++j) {
      for (auto q : {Quantity::r_as, Quantity::s_ar}) {
        const auto num = boson::numeric_log_negativity(
            boson::Scenario::make(StateKind::ghz, bgrid(i), bgrid(j), cut(12)), q);
        const auto ser =
            boson::ghz_log_negativity_series(q, bgrid(i), bgrid(j), {}, boson::Form::corrected);
        corrected_ok += std::abs(num.negativity_sum - ser.negativity_sum) <=
                        kBosonOracleTolerance + num.tail_bound + ser.tail_bound;
        ++corrected_n;
      }
    }
  }
  r.note("boson GHZ R-AS/S-AR blocks with cosh^2 r in place of the published sinh^2 r: " +
         std::to_string(corrected_ok) + "/" + std::to_string(corrected_n) + " points agree");
  return r;
}

Report fermionic_survival() {
  Report r;
  const double limit = log_negativity_of((1 - std::sqrt(17.0)) / 16);
  const double closed = log_negativity_of(fermion::ghz_closed_negativity(Quantity::a_rs, kTop, kTop));
  const double a = f_lneg(StateKind::ghz, Quantity::a_rs, kTop, kTop);
  r.check(std::abs(a - closed) < 1e-6,
          "GHZ A-RS at pi/4 - 1e-6 = " + fmt(a) + ", closed form at the same point " + fmt(closed));
  r.check(std::abs(a - limit) < 1e-5 && std::abs(a - 0.4755) < 5e-5,
          "within 1e-5 of the pi/4 value log2(1 - 2(1 - sqrt17)/16) = " + fmt(limit) +
              " (offset " + fmt(std::abs(a - limit)) + " from the 1e-6 step)");
  for (auto q : kTripartite) {
    const double v = f_lneg(StateKind::ghz, q, kTop, kTop);
    r.check(v > 0.4, "GHZ " + std::string(to_string(q)) + " = " + fmt(v) + " > 0.4");
  }
  return r;
}

Report disentanglement_curves() {
  Report r;
  ZeroCurveSpec z;
  z.field = FieldStatistics::fermion;
  z.state = StateKind::w;
  z.quantity = Quantity::rs;
  z.axis = {0.0, std::numbers::pi / 4 - 1e-9, 16};
  int matched = 0, roots = 0;
  bool ok = true;
  double worst = 0;
  for (const auto& p : trace_zero_curve(z)) {
    if (p.root.has_value() != p.analytic.has_value()) {
      ok = false;
      r.note("u1 = " + fmt(p.fixed) + ": numeric and analytic disagree on existence");
      continue;
    }
    if (!p.root) continue;
    ++roots;
    const double d = std::abs(*p.root - *p.analytic);
    worst = std::max(worst, d);
    if (d < 1e-8) ++matched;
  }
  r.check(ok && matched == roots && roots > 0,
          "fermion W RS: " + std::to_string(matched) + "/" + std::to_string(roots) +
              " numeric roots within 1e-8 of the analytic curve (max deviation " + fmt(worst) +
              "), remaining samples have no root in range");

  for (auto q : {Quantity::ar, Quantity::as}) {
    ZeroCurveSpec b;
    b.field = FieldStatistics::boson;
    b.state = StateKind::w;
    b.quantity = q;
    b.axis = {0.0, 2.0, 9};
    double dev = 0;
    bool all = true;
    for (const auto& p : trace_zero_curve(b)) {
      if (!p.root) {
        all = false;
        continue;
      }
      dev = std::max(dev, std::abs(*p.root - kWZero));
    }
    r.check(all && dev < 1e-6, "boson W " + std::string(to_string(q)) +
                                   " zero at ln(1 + sqrt2) for every sample, max deviation " +
                                   fmt(dev));
  }
  bool indep = true;
  for (std::size_t n = 0; n <= 20; ++n) {
    indep = indep && std::abs(boson::w_ar_block_negativity(n, kWZero)) < 1e-10 &&
            boson::w_ar_block_negativity(n, kWZero - 1e-6) < 0 &&
            boson::w_ar_block_negativity(n, kWZero + 1e-6) == 0;
  }
  r.check(indep, "every block n = 0..20 changes sign at ln(1 + sqrt2)");
  return r;
}

Report reduction_diagonality() {
  Report r;
  double worst = 0;
  bool zero = true;
  for (int i = 0; i <= 16; ++i) {
    for (int j = 0; j <= 16; ++j) {
      const auto s = fermion::Scenario::make(StateKind::ghz, fgrid(i), fgrid(j));
      for (auto q : kBipartite) {
        worst = std::max(worst, max_off_diagonal(fermion::reduced_density(s, q).matrix));
        zero = zero && fermion::numeric_log_negativity(s, q).log_negativity == 0.0;
      }
    }
  }
  r.check(worst < 1e-10 && zero,
          "fermion GHZ RS/AR/AS: max off-diagonal " + fmt(worst) + ", all log-negativities 0");
  worst = 0;
  zero = true;
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; j <= 8; ++j) {
      const auto s = boson::Scenario::make(StateKind::ghz, bgrid(i), bgrid(j), cut(12));
      for (auto q : kBipartite) {
        worst = std::max(worst, max_off_diagonal(boson::density_for(s, q).rho));
        zero = zero && boson::numeric_log_negativity(s, q).log_negativity == 0.0;
      }
    }
  }
  r.check(worst < 1e-10 && zero,
          "boson GHZ RS/AR/AS (n_max 12): max off-diagonal " + fmt(worst) +
              ", all log-negativities 0");
  return r;
}

Report ordering_properties() {
  Report r;
  auto tripartite = [](auto&& f, double p1, double p2) {
    return std::array<double, 3>{f(Quantity::a_rs, p1, p2), f(Quantity::r_as, p1, p2),
                                 f(Quantity::s_ar, p1, p2)};
  };
  auto fghz = [](Quantity q, double a, double b) { return f_lneg(StateKind::ghz, q, a, b); };
  auto fw = [](Quantity q, double a, double b) { return f_lneg(StateKind::w, q, a, b); };
  auto bghz = [](Quantity q, double a, double b) { return b_auto(StateKind::ghz, q, a, b); };
  auto bw = [](Quantity q, double a, double b) { return b_auto(StateKind::w, q, a, b); };

  struct Grid {
    std::string name;
    int last;
    double (*at)(int);
  };
  const Grid fg{"fermion 17x17", 16, fgrid}, bg{"boson 9x9", 8, bgrid};

  auto ordering = [&](const std::string& label, auto&& f, const Grid& g, bool dominant) {
    int bad = 0, total = 0;
    std::string example;
    for (int i = 0; i <= g.last; ++i) {
      for (int j = 0; j <= g.last; ++j) {
        const auto v = tripartite(f, g.at(i), g.at(j));
        const bool ok = dominant ? v[0] >= std::max(v[1], v[2]) - 1e-12
                                 : v[0] <= std::min(v[1], v[2]) + 1e-12;
        ++total;
        if (!ok) {
          ++bad;
          if (example.empty()) {
            example = "; e.g. at (" + fmt(g.at(i)) + ", " + fmt(g.at(j)) + ") A-RS " +
                      fmt(v[0]) + ", R-AS " + fmt(v[1]) + ", S-AR " + fmt(v[2]);
          }
        }
      }
    }
    r.check(bad == 0, label + " " + g.name + ": holds at " + std::to_string(total - bad) + "/" +
                          std::to_string(total) + " points" + example);
  };
  ordering("GHZ A-RS >= max(R-AS, S-AR)", fghz, fg, true);
  ordering("GHZ A-RS >= max(R-AS, S-AR)", bghz, bg, true);
  ordering("W A-RS <= min(R-AS, S-AR)", fw, fg, false);
  ordering("W A-RS <= min(R-AS, S-AR)", bw, bg, false);

  auto symmetry = [&](const std::string& label, auto&& f, const Grid& g) {
    double worst = 0;
    for (int i = 0; i <= g.last; ++i) {
      for (int j = 0; j <= g.last; ++j) {
        const auto v = tripartite(f, g.at(i), g.at(j));
        const auto w = tripartite(f, g.at(j), g.at(i));
        worst = std::max({worst, std::abs(v[0] - w[0]), std::abs(v[1] - w[2]),
                          std::abs(v[2] - w[1])});
      }
    }
    r.check(worst <= 1e-12, label + " " + g.name + " swap symmetry, max deviation " + fmt(worst));
  };
  symmetry("GHZ", fghz, fg);
  symmetry("W", fw, fg);
  symmetry("GHZ", bghz, bg);
  symmetry("W", bw, bg);
  return r;
}

Report asymptotic_erasure() {
  Report r;
  try {
    const auto v = boson::ghz_log_negativity_series(Quantity::a_rs, 5, 5);
    r.check(v.log_negativity_upper() < 0.01,
            "GHZ A-RS at r = 5 converged: " + fmt(v.log_negativity) + " (upper bound " +
                fmt(v.log_negativity_upper()) + ")");
  } catch (const SeriesNotConverged& e) {
    const auto& p = e.partial();
    r.note("series reached order " + std::to_string(p.series->order) +
           " before meeting tolerance 1e-8; partial N = " + fmt(p.negativity_sum) +
           ", rigorous tail bound " + fmt(p.tail_bound));
    r.check(p.log_negativity_upper() < 0.01,
            "GHZ A-RS at r = 5 certified in [" + fmt(p.log_negativity_lower()) + ", " +
                fmt(p.log_negativity_upper()) + "], below 0.01");
  }
  SweepSpec s;
  s.field = FieldStatistics::boson;
  s.state = StateKind::ghz;
  s.quantities = {Quantity::a_rs, Quantity::r_as, Quantity::s_ar};
  s.axis1 = s.axis2 = {0.0, 2.0, 9};
  const auto t = run_sweep(s);
  int bad = 0;
  for (std::size_t q = 2; q < 5; ++q) {
    for (std::size_t i = 0; i < 9; ++i) {
      for (std::size_t j = 0; j + 1 < 9; ++j) {
        bad += t.rows[i * 9 + j + 1][q] > t.rows[i * 9 + j][q] + 1e-12;
        bad += t.rows[(j + 1) * 9 + i][q] > t.rows[j * 9 + i][q] + 1e-12;
      }
    }
  }
  r.check(bad == 0, "9x9 GHZ sweep over r in [0, 2] non-increasing along every row and column (" +
                        std::to_string(bad) + " violations)");
  return r;
}

Report small_r_regime() {
  Report r;
  const std::vector<double> rs{0.0, 0.1, 0.2, 0.3};
  double worst = 0;
  double v6[3][4][4];
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = 0; j < rs.size(); ++j) {
      for (int k = 0; k < 3; ++k) {
        const auto q = kTripartite[k];
        const double a = boson::w_tripartite_log_negativity_numeric(
                             boson::Scenario::make(StateKind::w, rs[i], rs[j], cut(1)), q)
                             .log_negativity;
        const double b = boson::w_tripartite_log_negativity_numeric(
                             boson::Scenario::make(StateKind::w, rs[i], rs[j], cut(6)), q)
                             .log_negativity;
        v6[k][i][j] = b;
        worst = std::max(worst, std::abs(a - b));
      }
    }
  }
  r.check(boson::tripartite_dimension(1) == 18, "n_max = 1 gives an 18x18 matrix");
  r.check(worst < 0.05, "n_max 1 vs 6 for r1, r2 <= 0.3: max difference " + fmt(worst));
  int bad = 0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j + 1 < 4; ++j)
        bad += (v6[k][i][j + 1] > v6[k][i][j] + 1e-12) + (v6[k][j + 1][i] > v6[k][j][i] + 1e-12);
  r.check(bad == 0, "W tripartite surfaces decrease in each r (" + std::to_string(bad) +
                        " violations)");
  return r;
}

Report determinism() {
  Report r;
  SweepSpec f;
  f.field = FieldStatistics::fermion;
  f.state = StateKind::w;
  f.quantities = {Quantity::a_rs, Quantity::r_as, Quantity::s_ar, Quantity::rs};
  f.axis1 = f.axis2 = {0.0, kTop, 17};
  const auto a = to_csv(run_sweep(f)), b = to_csv(run_sweep(f));
  r.check(a == b, "fermion W sweep CSV identical across runs (" + std::to_string(a.size()) +
                      " bytes)");
  SweepSpec g;
  g.field = FieldStatistics::boson;
  g.state = StateKind::ghz;
  g.quantities = {Quantity::a_rs, Quantity::s_ar};
  g.axis1 = g.axis2 = {0.0, 2.0, 9};
  const auto c = to_csv(run_sweep(g)), d = to_csv(run_sweep(g));
  r.check(c == d, "boson GHZ sweep CSV identical across runs (" + std::to_string(c.size()) +
                      " bytes)");
  return r;
}

struct Criterion {
  int id;
  const char* title;
  Report (*run)();
};

const Criterion kCriteria[] = {
    {1, "inertial limits", inertial_limits},
    {2, "closed-form / numeric oracle equivalence", oracle_equivalence},
    {3, "fermionic survival at large acceleration", fermionic_survival},
    {4, "disentanglement curves", disentanglement_curves},
    {5, "GHZ reduction diagonality", reduction_diagonality},
    {6, "ordering and swap symmetry", ordering_properties},
    {7, "bosonic asymptotic erasure", asymptotic_erasure},
    {8, "bosonic W small-r regime", small_r_regime},
    {9, "deterministic sweep output", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  bool all = true;
  for (const auto& c : kCriteria) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.check(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " ("
              << fmt(std::round(secs * 100) / 100) << " s)\n";
    for (const auto& d : r.details) std::cout << "    " << d << "\n";
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
