#include "meanlab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "meanlab/harmonic.hpp"
#include "meanlab/inequality.hpp"
#include "meanlab/report.hpp"
#include "meanlab/suite.hpp"

namespace meanlab::cli {

namespace {

using report::CheckRecord;
using report::ReportDocument;

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed " + what + ": '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v))
    throw std::invalid_argument("malformed " + what + ": '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(std::string s) {
  auto first = s.find_first_not_of(" \t\r");
  auto last = s.find_last_not_of(" \t\r");
  return first == std::string::npos ? std::string() : s.substr(first, last - first + 1);
}

CheckRecord value_record(std::string check, std::string name, double value) {
  CheckRecord r;
  r.check = std::move(check);
  r.name = std::move(name);
  r.value = value;
  return r;
}

struct Options {
  std::string format = "text";
  std::string out_path;
  std::string mean;
  std::string repr;
  std::string chain;
  std::string zgrid;
  std::string pairs = "default";
  std::vector<double> numbers;
  double t = 0.5;
  std::optional<double> tol;
  bool all = false;
};

double resolve_tolerance(const Options& o, double fallback) {
  double tol = fallback;
  if (o.tol) {
    tol = *o.tol;
  } else if (auto env = tolerance_from_env()) {
    tol = *env;
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  return tol;
}

std::vector<double> z_points(const Options& o) {
  if (!o.zgrid.empty()) return parse_zgrid(o.zgrid).points();
  if (!o.numbers.empty()) return o.numbers;
  return harmonic::default_z_grid().points();
}

ReportDocument cmd_eval(const Options& o) {
  if (o.numbers.size() != 2) throw std::invalid_argument("eval expects two arguments x y");
  PositivePair p(o.numbers[0], o.numbers[1]);
  const auto& m = catalog_mean(o.mean);
  auto r = value_record("eval", m.id(), m(p));
  r.x = p.x();
  r.y = p.y();
  r.z = relative_half_spread(p);
  return {.records = {r}};
}

ReportDocument cmd_seiffert(const Options& o) {
  auto f = seiffert_of_mean(catalog_mean(o.mean));
  ReportDocument doc;
  for (double z : z_points(o)) {
    if (!(z >= 0.0 && z < 1.0)) throw std::invalid_argument("z must lie in [0,1)");
    auto r = value_record("seiffert", o.mean, f(z));
    r.z = z;
    r.relation = "z/(1+z) <= f(z) <= z/(1-z)";
    r.pass = z == 0.0 || within_seiffert_bounds(z, *r.value);
    doc.records.push_back(std::move(r));
  }
  return doc;
}

ReportDocument cmd_deform(const Options& o) {
  if (o.numbers.size() != 2)
    throw std::invalid_argument("deform expects two arguments x y");
  PositivePair p(o.numbers[0], o.numbers[1]);
  auto m = deform_mean(catalog_mean(o.mean), DeformParameter(o.t));
  auto r = value_record("deform", m.id(), m(p));
  r.x = p.x();
  r.y = p.y();
  r.z = relative_half_spread(p);
  return {.records = {r}};
}

ReportDocument cmd_harmonic_check(const Options& o) {
  auto grid = o.zgrid.empty() ? harmonic::default_z_grid() : parse_zgrid(o.zgrid);
  auto v = harmonic::check_representable(seiffert_of_mean(catalog_mean(o.mean)), grid);
  CheckRecord r;
  r.check = "harmonic-check";
  r.name = o.mean;
  r.z = v.witness_z;
  r.relation = "1/(1+z) <= m'(z) <= 1/(1-z)";
  r.margin = v.margin;
  r.pass = v.status == harmonic::Status::representable;
  r.detail = harmonic::to_string(v.status) + "; " + v.note;
  return {.records = {r}};
}

ReportDocument cmd_harmonic_construct(const Options& o) {
  auto m = seiffert_of_mean(catalog_mean(o.mean));
  auto n = harmonic::construct_candidate(m);
  std::optional<SeiffertFunction> expected;
  std::string representer;
  for (const auto& e : harmonic::pair_catalog()) {
    if (e.represented == o.mean) {
      representer = e.representer;
      expected = seiffert_of_mean(catalog_mean(e.representer));
    }
  }
  ReportDocument doc;
  for (double z : z_points(o)) {
    if (!(z > 0.0 && z < 1.0)) throw std::invalid_argument("z must lie in (0,1)");
    auto r = value_record("harmonic-construct", o.mean, n(z));
    r.z = z;
    if (expected) {
      double ref = (*expected)(z);
      r.relation = "z m'(z) = f_" + representer + "(z) to 1e-8";
      r.margin = 1e-8 - std::abs(*r.value - ref) / std::abs(ref);
      r.pass = *r.margin >= 0.0;
    }
    doc.records.push_back(std::move(r));
  }
  return doc;
}

ReportDocument cmd_harmonic_verify(const Options& o) {
  double tol = resolve_tolerance(o, harmonic::kIdentityTolerance);
  auto rep = harmonic::verify_identity(o.mean, o.repr, load_pairs(o.pairs), {}, tol);
  ReportDocument doc;
  for (const auto& p : rep.points) {
    CheckRecord r;
    r.check = "harmonic-verify";
    r.name = o.mean + "<-" + o.repr;
    r.x = p.pair.x();
    r.y = p.pair.y();
    r.z = p.z;
    r.relation = "|M*J - 1| and |m - I(n)| <= " + report::format_number(tol);
    r.margin = tol - std::max(std::abs(p.product_residual), std::abs(p.seiffert_residual));
    r.pass = p.pass;
    r.detail = p.error;
    doc.records.push_back(std::move(r));
  }
  return doc;
}

ReportDocument cmd_ineq_run(const Options& o) {
  double tol = resolve_tolerance(o, inequality::kChainTolerance);
  auto spec = inequality::builtin_chain(o.chain);
  auto rep = inequality::run_chain_suite(spec, load_pairs(o.pairs), tol);
  std::string relation;
  for (std::size_t k = 0; k < spec.terms.size(); ++k) {
    if (k) relation += spec.direction == inequality::Direction::convex ? " <= " : " >= ";
    relation += spec.terms[k].label;
  }
  ReportDocument doc;
  for (const auto& p : rep.points) {
    CheckRecord r;
    r.check = "ineq";
    r.name = o.chain;
    r.x = p.pair.x();
    r.y = p.pair.y();
    r.z = p.z;
    r.relation = relation;
    if (p.error.empty()) r.margin = p.min_margin;
    r.pass = p.pass;
    r.detail = p.error;
    doc.records.push_back(std::move(r));
  }
  return doc;
}

}  // namespace

calculus::GridSpec parse_zgrid(const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts.size() != 3 && parts.size() != 4)
    throw std::invalid_argument("malformed grid '" + spec + "', expected start:end:count[:log]");
  calculus::GridSpec g{parse_double(parts[0], "grid start"),
                       parse_double(parts[1], "grid end"), 0};
  double count = parse_double(parts[2], "grid count");
  if (count < 2 || count != std::floor(count) || count > 1e7)
    throw std::invalid_argument("malformed grid count '" + parts[2] + "'");
  g.count = static_cast<std::size_t>(count);
  if (parts.size() == 4) {
    if (parts[3] != "log") throw std::invalid_argument("malformed grid spacing '" + parts[3] + "'");
    g.spacing = calculus::Spacing::log;
  }
  g.points();  // validates
  return g;
}

std::vector<PositivePair> load_pairs(const std::string& spec) {
  if (spec == "default") return inequality::pair_grid(16, 1e-3, 0.99, 4);
  std::ifstream in(spec);
  if (!in) throw std::invalid_argument("cannot read pair file: " + spec);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "x,y")
    throw std::invalid_argument("pair file must start with header 'x,y': " + spec);
  std::vector<PositivePair> pairs;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cols = split(line, ',');
    if (cols.size() != 2)
      throw std::invalid_argument(spec + ":" + std::to_string(lineno) + ": expected two columns");
    pairs.emplace_back(parse_double(trim(cols[0]), "x"), parse_double(trim(cols[1]), "y"));
  }
  if (pairs.empty()) throw std::invalid_argument("pair file has no rows: " + spec);
  return pairs;
}

std::optional<double> tolerance_from_env() {
  const char* raw = std::getenv("MEANLAB_TOL");
  if (!raw || !*raw) return std::nullopt;
  double v = parse_double(raw, "MEANLAB_TOL");
  if (!(v > 0.0)) throw std::invalid_argument("MEANLAB_TOL must be positive");
  return v;
}

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  Options o;
  CLI::App app{"Bivariate means, Seiffert functions and harmonic representations",
               "meanlab"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", o.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", o.out_path, "write the report to this file");

  auto* eval = app.add_subcommand("eval", "evaluate M(x,y)");
  eval->add_option("--mean", o.mean, "catalog id")->required();
  eval->add_option("args", o.numbers, "x y")->expected(2)->required();

  auto* seif = app.add_subcommand("seiffert", "print f_M(z)");
  seif->add_option("--mean", o.mean, "catalog id")->required();
  seif->add_option("--zgrid", o.zgrid, "start:end:count[:log]");
  seif->add_option("z", o.numbers, "points in [0,1)");

  auto* def = app.add_subcommand("deform", "evaluate M^{t}(x,y)");
  def->add_option("--mean", o.mean, "catalog id")->required();
  def->add_option("--t", o.t, "deformation parameter in (0,1]")->required();
  def->add_option("args", o.numbers, "x y")->expected(2)->required();

  auto* harm = app.add_subcommand("harmonic", "harmonic representations");
  harm->require_subcommand(1);
  auto* hcheck = harm->add_subcommand("check", "grid check of 1/(1+z) <= m' <= 1/(1-z)");
  hcheck->add_option("--mean", o.mean, "catalog id")->required();
  hcheck->add_option("--zgrid", o.zgrid, "start:end:count[:log]");
  auto* hcons = harm->add_subcommand("construct", "print n(z) = z m'(z)");
  hcons->add_option("--mean", o.mean, "catalog id")->required();
  hcons->add_option("--zgrid", o.zgrid, "start:end:count[:log]");
  hcons->add_option("z", o.numbers, "points in (0,1)");
  auto* hver = harm->add_subcommand("verify", "check 1/M = int_0^1 dt/N^{t}");
  hver->add_option("--mean", o.mean, "represented mean")->required();
  hver->add_option("--repr", o.repr, "representing mean")->required();
  hver->add_option("--pairs", o.pairs, "default or a CSV file with header x,y");
  hver->add_option("--tol", o.tol, "identity tolerance");

  auto* ineq = app.add_subcommand("ineq", "Hermite-Hadamard chains");
  ineq->require_subcommand(1);
  auto* irun = ineq->add_subcommand("run", "run a built-in chain");
  irun->add_option("--chain", o.chain, "chain name")->required();
  irun->add_option("--pairs", o.pairs, "default or a CSV file with header x,y");
  irun->add_option("--tol", o.tol, "margin tolerance");

  auto* suite_cmd = app.add_subcommand("suite", "run the reproduction suite");
  suite_cmd->add_flag("--all", o.all, "every criterion")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitPass : kExitError;
  }

  try {
    if (const char* raw = std::getenv("MEANLAB_TOL"); raw && *raw) tolerance_from_env();
    ReportDocument doc;
    if (*eval) {
      doc = cmd_eval(o);
    } else if (*seif) {
      doc = cmd_seiffert(o);
    } else if (*def) {
      doc = cmd_deform(o);
    } else if (*hcheck) {
      doc = cmd_harmonic_check(o);
    } else if (*hcons) {
      doc = cmd_harmonic_construct(o);
    } else if (*hver) {
      doc = cmd_harmonic_verify(o);
    } else if (*irun) {
      doc = cmd_ineq_run(o);
    } else if (*suite_cmd) {
      doc = suite::run_suite();
    }
    report::order_records(doc);
    if (doc.timestamp.empty()) doc.timestamp = report::utc_timestamp();
    report::emit_report(doc, report::parse_format(o.format), out, o.out_path);
    return doc.all_pass() ? kExitPass : kExitFail;
  } catch (const std::exception& e) {
    err << "meanlab: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace meanlab::cli
