#include "meanlab/suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "meanlab/calculus.hpp"
#include "meanlab/elliptic.hpp"
#include "meanlab/harmonic.hpp"
#include "meanlab/inequality.hpp"
#include "meanlab/means.hpp"

namespace meanlab::suite {

namespace {

using report::CheckRecord;
using Records = std::vector<CheckRecord>;

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) { return report::format_number(v); }

CheckRecord slack_record(std::string check, std::string name, double slack,
                         std::string relation, std::optional<double> z = {}) {
  CheckRecord r;
  r.check = std::move(check);
  r.name = std::move(name);
  r.z = z;
  r.relation = std::move(relation);
  r.margin = slack;
  r.pass = slack >= 0.0;
  return r;
}

CheckRecord pair_record(std::string check, std::string name,
                        const PositivePair& p, double slack,
                        std::string relation) {
  auto r = slack_record(std::move(check), std::move(name), slack,
                        std::move(relation), relative_half_spread(p));
  r.x = p.x();
  r.y = p.y();
  return r;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

// 1. mean_of_seiffert(seiffert_of_mean(M)) == M
Records correspondence() {
  const std::string check = "C01-correspondence";
  constexpr double kTol = 1e-12;
  auto pairs = inequality::pair_grid(40, 1e-4, 0.99, 10);
  Records out;
  for (const auto& id : catalog_ids()) {
    const auto& mean = catalog_mean(id);
    auto round_trip = mean_of_seiffert(seiffert_of_mean(mean));
    double worst = 0.0;
    const PositivePair* at = &pairs.front();
    for (const auto& p : pairs) {
      double d = rel_diff(round_trip(p), mean(p));
      if (d > worst) {
        worst = d;
        at = &p;
      }
    }
    out.push_back(pair_record(check, id, *at, kTol - worst,
                              "max rel |M' - M| <= 1e-12 over 50 pairs"));
  }
  return out;
}

std::vector<PositivePair> identity_pairs() {
  return inequality::pair_grid(16, 1e-3, 0.99, 4);
}

// 2. 1/M = int_0^1 dt/N^{t} for the eight catalog pairs.
Records harmonic_identities() {
  const std::string check = "C02-harmonic-identity";
  auto pairs = identity_pairs();
  Records out;
  for (const auto& e : harmonic::pair_catalog()) {
    auto rep = harmonic::verify_identity(e.represented, e.representer, pairs);
    CheckRecord r = slack_record(check, e.represented + "<-" + e.representer,
                                 rep.tolerance - rep.max_abs_residual(),
                                 "|M*J - 1| and |m - I(n)| <= 1e-9 over 20 pairs");
    r.pass = rep.all_pass();
    out.push_back(std::move(r));
  }
  return out;
}

// 3. TANH and G are not harmonically representable.
Records negative_results() {
  const std::string check = "C03-negative-results";
  Records out;
  auto grid = harmonic::default_z_grid();

  auto tanh_mean = seiffert_of_mean(catalog_mean("TANH"));
  auto vt = harmonic::check_representable(tanh_mean, grid);
  {
    bool ok = vt.status == harmonic::Status::falsified &&
              vt.violated_bound == harmonic::Bound::lower &&
              *vt.witness_slope < 1.0 / (1.0 + *vt.witness_z);
    CheckRecord r = slack_record(check, "TANH falsified", -vt.margin,
                                 "m'(z) < 1/(1+z) at witness", vt.witness_z);
    r.pass = ok;
    r.detail = vt.note;
    out.push_back(std::move(r));
  }
  {
    // Slope at z = 1 from the left, compared with the quoted 0.41997.
    double slope = calculus::derivative_estimate(
        [](double z) { return std::tanh(z); }, 1.0, calculus::Domain{0.0, 1.0});
    double closed = 1.0 / std::pow(std::cosh(1.0), 2);
    double err = std::max(std::abs(slope - 0.41997), std::abs(closed - 0.41997));
    CheckRecord r = slack_record(check, "tanh'(1)", 5e-5 - err,
                                 "|tanh'(1) - 0.41997| < 5e-5 and < 1/2", 1.0);
    r.value = slope;
    r.pass = r.pass && slope < 0.5;
    out.push_back(std::move(r));
  }

  auto g = seiffert_of_mean(catalog_mean("G"));
  auto vg = harmonic::check_representable(g, grid);
  {
    bool ok = vg.status == harmonic::Status::falsified &&
              vg.violated_bound == harmonic::Bound::upper;
    CheckRecord r = slack_record(check, "G falsified", -vg.margin,
                                 "m'(z) > 1/(1-z) at witness", vg.witness_z);
    r.pass = ok;
    r.detail = vg.note;
    out.push_back(std::move(r));
  }
  {
    double n = harmonic::construct_candidate(g)(0.9);
    double err = std::abs(n - 10.867061078079);
    CheckRecord r = slack_record(check, "G candidate at 0.9", 1e-9 - err,
                                 "n(0.9) = 10.867061078079 > 9", 0.9);
    r.value = n;
    r.pass = r.pass && n > 0.9 / 0.1;
    out.push_back(std::move(r));
  }
  return out;
}

// 4. AGM(1-z, 1+z) (2/pi) K(z) = 1
Records gauss_identity() {
  const std::string check = "C04-gauss-identity";
  Records out;
  for (int i = 1; i <= 19; ++i) {
    double z = 0.05 * i;
    double lhs = elliptic::agm(pair_with_spread(z)) * 2.0 / kPi *
                 elliptic::ellip_k(z, elliptic::KMethod::series);
    out.push_back(slack_record(check, "z=" + fmt(z), 1e-12 - std::abs(lhs - 1.0),
                               "|AGM(1-z,1+z) (2/pi) K(z) - 1| <= 1e-12", z));
  }
  return out;
}

// 5. K by three routes; K' against finite differences.
Records elliptic_cross_validation() {
  const std::string check = "C05-elliptic-cross";
  using elliptic::KMethod;
  Records out;
  for (int i = 1; i <= 18; ++i) {
    double z = 0.05 * i;
    double ka = elliptic::ellip_k(z, KMethod::agm);
    double ks = elliptic::ellip_k(z, KMethod::series);
    double kq = elliptic::ellip_k(z, KMethod::quadrature);
    double worst = std::max({rel_diff(ka, ks), rel_diff(ka, kq), rel_diff(ks, kq)});
    out.push_back(slack_record(check, "K z=" + fmt(z), 1e-12 - worst,
                               "pairwise rel diff of agm/series/quadrature <= 1e-12",
                               z));
  }
  for (int i = 1; i <= 9; ++i) {
    double z = 0.1 * i;
    double fd = calculus::derivative_estimate(
        [](double s) { return elliptic::ellip_k(s); }, z, 1e-5,
        calculus::Domain{0.0, elliptic::kModulusCap});
    double d = rel_diff(elliptic::ellip_k_prime(z), fd);
    out.push_back(slack_record(check, "K' z=" + fmt(z), 1e-6 - d,
                               "rel |K'(z) - central difference| <= 1e-6", z));
  }
  return out;
}

// 6. c_1 = 3/4, c_{m+1}/c_m = (2m+1)(2m+3)/(2m+2)^2, c_m < 1.
Records coefficient_facts() {
  const std::string check = "C06-coefficients";
  Records out;
  {
    bool ok = elliptic::agm_coefficient_exact(1) == mpq_class(3, 4) &&
              elliptic::agm_coefficient(1) == 0.75;
    CheckRecord r;
    r.check = check;
    r.name = "c(1)";
    r.relation = "c(1) = 3/4 exactly";
    r.value = elliptic::agm_coefficient(1);
    r.pass = ok;
    out.push_back(std::move(r));
  }
  constexpr std::size_t kMax = 1000;
  std::size_t ratio_failures = 0;
  std::size_t bound_failures = 0;
  mpq_class current = elliptic::agm_coefficient_exact(1);
  for (std::size_t m = 1; m <= kMax; ++m) {
    mpq_class next = elliptic::agm_coefficient_exact(m + 1);
    if (next / current != elliptic::agm_coefficient_ratio(m)) ++ratio_failures;
    if (!(current < 1)) ++bound_failures;
    current = std::move(next);
  }
  {
    CheckRecord r;
    r.check = check;
    r.name = "ratio m<=1000";
    r.relation = "c(m+1)/c(m) = (2m+1)(2m+3)/(2m+2)^2 in exact arithmetic";
    r.pass = ratio_failures == 0;
    r.detail = std::to_string(ratio_failures) + " mismatches";
    out.push_back(std::move(r));
  }
  {
    CheckRecord r;
    r.check = check;
    r.name = "c(m) < 1, m<=1000";
    r.relation = "c(m) < 1 in exact arithmetic";
    r.pass = bound_failures == 0;
    r.detail = std::to_string(bound_failures) + " violations";
    out.push_back(std::move(r));
  }
  return out;
}

// 7. The eight chains, plus spot values at (1,3).
Records inequality_chains() {
  const std::string check = "C07-chains";
  Records out;
  auto grid = inequality::default_pair_grid();
  for (const auto& name : inequality::builtin_chain_names()) {
    auto rep = inequality::run_chain_suite(inequality::builtin_chain(name), grid);
    CheckRecord r = slack_record(check, name, rep.min_margin,
                                 "all adjacent margins > 0 on the default grid");
    r.pass = rep.pass && rep.min_margin > 0.0 && rep.skipped == 0;
    if (rep.failing_point) {
      const auto& p = rep.points[*rep.failing_point];
      r.x = p.pair.x();
      r.y = p.pair.y();
      r.z = p.z;
    }
    out.push_back(std::move(r));
  }

  struct Spot {
    std::string chain;
    std::vector<double> expected;
  };
  // Independent closed forms at (x,y) = (1,3): A = 2, G^2 = 3, z = 1/2.
  const std::vector<Spot> spots = {
      {"hh-L-H", {12.0 / 7.0, 360.0 / 201.0, 2.0 / std::log(3.0), 1.875}},
      {"hh-T-C", {20.0 / 9.0, 1.0 / std::atan(0.5), 2.125}},
      {"hh-P-G",
       {4.0 * std::sqrt(3.0) / (2.0 + std::sqrt(3.0)), 1.89560358653187,
        6.0 / kPi, std::sqrt(3.75)}},
      {"hh-AGM-V",
       {1.78124478453274, 1.84110379021637, 1.86361678324490, 1.90512583779969}},
  };
  PositivePair p13(1.0, 3.0);
  for (const auto& s : spots) {
    auto rep = inequality::run_chain_suite(inequality::builtin_chain(s.chain), {p13});
    const auto& values = rep.points.front().values;
    double worst = 0.0;
    bool sizes = values.size() == s.expected.size();
    for (std::size_t k = 0; sizes && k < values.size(); ++k)
      worst = std::max(worst, rel_diff(values[k], s.expected[k]));
    CheckRecord r = pair_record(check, s.chain + " at (1,3)", p13, 5e-6 - worst,
                                "terms match closed forms to 5 significant digits");
    r.pass = sizes && r.pass && rep.pass;
    out.push_back(std::move(r));
  }
  return out;
}

// 8. Envelope lemmas and their identification with 2n(u/2), (u+n(u))/2.
Records envelope_lemmas() {
  const std::string check = "C08-envelope-lemmas";
  Records out;
  struct Case {
    inequality::LemmaKind kind;
    std::string name;
    std::string representer;
  };
  const std::vector<Case> cases = {{inequality::LemmaKind::arctan, "arctan", "C"},
                                   {inequality::LemmaKind::arsinh, "arsinh", "R"}};
  for (const auto& c : cases) {
    auto n = seiffert_of_mean(catalog_mean(c.representer));
    double min_gap = std::numeric_limits<double>::infinity();
    double worst_match = 0.0;
    for (int i = 1; i <= 1000; ++i) {
      double u = i / 1001.0;
      auto e = inequality::envelope_lemma(c.kind, u);
      min_gap = std::min({min_gap, e.upper - e.value, e.value - e.lower});
      worst_match = std::max({worst_match, std::abs(e.upper - 2.0 * n(0.5 * u)),
                              std::abs(e.lower - 0.5 * (u + n(u)))});
    }
    out.push_back(slack_record(check, c.name + " strict", min_gap,
                               "lower < value < upper on 1000 points"));
    out.back().pass = min_gap > 0.0;
    out.push_back(slack_record(check, c.name + " = HH terms of " + c.representer,
                               1e-12 - worst_match,
                               "|upper - 2n(u/2)|, |lower - (u+n(u))/2| <= 1e-12"));
  }
  return out;
}

// 9. Monotonicity, envelope, vanishing at 0 and shape preservation of I.
Records operator_properties() {
  const std::string check = "C09-operator";
  Records out;
  const calculus::QuadratureConfig cfg{};
  const calculus::QuadratureConfig fine{1e-13, 60};
  auto zs = calculus::GridSpec{0.02, 0.98, 49}.points();
  const calculus::GridSpec shape_grid{0.01, 0.99, 99};

  std::vector<std::string> ids = catalog_ids();
  std::vector<SeiffertFunction> fs;
  std::vector<std::vector<double>> fvals, ivals;
  for (const auto& id : ids) {
    fs.push_back(seiffert_of_mean(catalog_mean(id)));
    std::vector<double> fv, iv;
    for (double z : zs) {
      fv.push_back(fs.back()(z));
      iv.push_back(calculus::apply_i_operator(fs.back(), z, cfg));
    }
    fvals.push_back(std::move(fv));
    ivals.push_back(std::move(iv));
  }

  for (std::size_t k = 0; k < ids.size(); ++k) {
    double slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < zs.size(); ++i) {
      double z = zs[i];
      slack = std::min({slack, ivals[k][i] - std::log1p(z),
                        -std::log1p(-z) - ivals[k][i]});
    }
    out.push_back(slack_record(check, "envelope " + ids[k], slack + 2 * cfg.abs_tolerance,
                               "log(1+z) <= I(f)(z) <= -log(1-z)"));
    double near_zero = std::abs(calculus::apply_i_operator(fs[k], 1e-6, cfg));
    out.push_back(slack_record(check, "vanishing " + ids[k], 2e-6 - near_zero,
                               "|I(f)(1e-6)| <= 2e-6", 1e-6));
  }

  std::size_t compared = 0;
  double mono_slack = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = 0; b < ids.size(); ++b) {
      if (a == b) continue;
      bool below = true;
      for (std::size_t i = 0; i < zs.size() && below; ++i)
        below = fvals[a][i] <= fvals[b][i];
      if (!below) continue;
      ++compared;
      for (std::size_t i = 0; i < zs.size(); ++i)
        mono_slack = std::min(mono_slack, ivals[b][i] + 2 * cfg.abs_tolerance -
                                              ivals[a][i]);
    }
  }
  {
    CheckRecord r = slack_record(check, "monotonicity", mono_slack,
                                 "f <= g on grid implies I(f) <= I(g) + 2 tol");
    r.detail = std::to_string(compared) + " ordered pairs";
    r.pass = r.pass && compared > 0;
    out.push_back(std::move(r));
  }

  for (std::size_t k = 0; k < ids.size(); ++k) {
    auto shape = calculus::probe_shape(fs[k].value, shape_grid);
    auto i_f = calculus::i_operator(fs[k], fine);
    auto i_shape = calculus::probe_shape(i_f.value, shape_grid);
    auto pts = shape_grid.points();
    auto check_side = [&](bool convex) {
      double slack = std::numeric_limits<double>::infinity();
      for (double z : pts) {
        double iz = i_f(z);
        double fz = fs[k](z);
        double s = convex ? std::min(iz - z, fz - iz) : std::min(z - iz, iz - fz);
        slack = std::min(slack, s + 2 * fine.abs_tolerance);
      }
      bool preserved = convex ? i_shape.is_convex() : i_shape.is_concave();
      CheckRecord r = slack_record(
          check, std::string(convex ? "convexity " : "concavity ") + ids[k], slack,
          convex ? "I(f) convex and z <= I(f) <= f" : "I(f) concave and z >= I(f) >= f");
      r.pass = r.pass && preserved;
      out.push_back(std::move(r));
    };
    if (shape.is_convex()) check_side(true);
    if (shape.is_concave()) check_side(false);
    if (!shape.is_convex() && !shape.is_concave()) {
      CheckRecord r;
      r.check = check;
      r.name = "shape " + ids[k];
      r.relation = "f convex or concave on the probe grid";
      r.pass = false;
      out.push_back(std::move(r));
    }
  }
  return out;
}

// 10. G satisfies the logarithmic envelope but is not representable.
Records one_directional() {
  const std::string check = "C10-one-directional";
  Records out;
  const auto& g = catalog_mean("G");
  auto pairs = inequality::pair_grid(16, 0.05, 0.9, 4);
  auto env = harmonic::log_envelope_check(g, pairs);
  double slack = std::numeric_limits<double>::infinity();
  for (const auto& p : env.points)
    slack = std::min({slack, (p.value - p.lower) / p.pair.arithmetic(),
                      (p.upper - p.value) / p.pair.arithmetic()});
  CheckRecord r = slack_record(check, "G log envelope", slack,
                               "|x-y|/(2log(A/min)) <= G <= |x-y|/(2log(max/A))");
  r.pass = env.all_pass();
  out.push_back(std::move(r));

  auto v = harmonic::check_representable(seiffert_of_mean(g),
                                         harmonic::default_z_grid());
  CheckRecord f = slack_record(check, "G not representable", -v.margin,
                               "check_representable falsifies G", v.witness_z);
  f.pass = v.status == harmonic::Status::falsified;
  out.push_back(std::move(f));
  return out;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "C01-correspondence", "correspondence round-trip", correspondence},
      {2, "C02-harmonic-identity", "harmonic identities", harmonic_identities},
      {3, "C03-negative-results", "negative results", negative_results},
      {4, "C04-gauss-identity", "Gauss identity", gauss_identity},
      {5, "C05-elliptic-cross", "elliptic cross-validation",
       elliptic_cross_validation},
      {6, "C06-coefficients", "coefficient facts", coefficient_facts},
      {7, "C07-chains", "inequality chains", inequality_chains},
      {8, "C08-envelope-lemmas", "envelope lemmas", envelope_lemmas},
      {9, "C09-operator", "operator properties", operator_properties},
      {10, "C10-one-directional", "one-directional implication", one_directional},
  };
  return all;
}

std::string json_without_timestamp(report::ReportDocument doc) {
  doc.timestamp.clear();
  return report::to_json(doc);
}

namespace {

report::ReportDocument run_once() {
  report::ReportDocument doc;
  for (const auto& c : criteria()) {
    Records rs;
    try {
      rs = c.run();
    } catch (const std::exception& e) {
      CheckRecord r;
      r.check = c.key;
      r.name = c.title;
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
      rs.push_back(std::move(r));
    }
    for (auto& r : rs) doc.records.push_back(std::move(r));
  }
  report::order_records(doc);
  return doc;
}

}  // namespace

report::ReportDocument run_suite(bool determinism_check) {
  auto doc = run_once();
  if (determinism_check) {
    auto again = run_once();
    CheckRecord r;
    r.check = "C11-determinism";
    r.name = "repeat run";
    r.relation = "two runs render identical JSON apart from the timestamp";
    r.pass = json_without_timestamp(doc) == json_without_timestamp(again);
    doc.records.push_back(std::move(r));
  }
  doc.timestamp = report::utc_timestamp();
  return doc;
}

}  // namespace meanlab::suite
