#include "qsys/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "qsys/affine_weyl.hpp"
#include "qsys/kr_qsystem.hpp"
#include "qsys/precision.hpp"
#include "qsys/restricted_solver.hpp"

namespace qsys {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string family = "D";
  int rank = 0;
  int level = 0;
  double tol = kDefaultTol;
  std::string format = "text";
  std::string out_path;
  int max_rank = 12;
  int max_level = 12;
  std::vector<std::string> grid;
  std::string coords;
  bool against_table = false;
  bool dilog = false;
};

struct Range {
  int lo = 0;
  int hi = 0;
};

Range parse_range(const std::string& spec, char key) {
  static const std::regex re(R"(([a-z])=(\d+)(?:\.\.(\d+))?)");
  std::smatch m;
  if (!std::regex_match(spec, m, re) || m[1].str()[0] != key)
    throw UsageError("bad grid range '" + spec + "', expected " + key + "=LO..HI");
  Range r{std::stoi(m[2]), m[3].matched ? std::stoi(m[3]) : std::stoi(m[2])};
  if (r.lo > r.hi) throw UsageError("empty grid range '" + spec + "'");
  return r;
}

void validate(const RunConfig& cfg, int rank, int level) {
  if (!(cfg.tol > 0)) throw UsageError("--tol must be positive");
  if (rank < 1 || rank > cfg.max_rank)
    throw UsageError("rank " + std::to_string(rank) + " outside 1.." + std::to_string(cfg.max_rank) +
                     " (raise with --max-rank)");
  if (level < 1 || level > cfg.max_level)
    throw UsageError("level " + std::to_string(level) + " outside 1.." + std::to_string(cfg.max_level) +
                     " (raise with --max-level)");
}

DynkinData dynkin_for(const RunConfig& cfg, int rank) {
  try {
    return build_dynkin(parse_family(cfg.family), rank);
  } catch (const UnsupportedType& e) {
    throw UsageError(e.what());
  }
}

/// Writes to --out when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& fallback) : os_(&fallback) {
    if (!cfg.out_path.empty()) {
      file_.open(cfg.out_path);
      if (!file_) throw UsageError("cannot open output file '" + cfg.out_path + "'");
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

std::string check_line(const CheckOutcome& c) {
  std::ostringstream os;
  os << (c.applicable ? (c.pass ? "PASS " : "FAIL ") : "n/a  ") << std::left << std::setw(30) << c.name;
  if (c.applicable) os << " worst " << std::setprecision(3) << std::scientific << c.worst;
  if (!c.pass) os << "  first failure at (a=" << c.fail_a << ", m=" << c.fail_m << "): " << c.detail;
  return os.str();
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  validate(cfg, cfg.rank, cfg.level);
  const DynkinData d = dynkin_for(cfg, cfg.rank);
  const QTable table = build_qtable(d, cfg.level);
  Sink sink(cfg, out);
  if (cfg.format == "json") *sink << to_json(table).dump(2) << '\n';
  else if (cfg.format == "csv") *sink << to_csv(table);
  else *sink << to_text(table);
  return kExitPass;
}

VerificationReport full_verification(const DynkinData& d, int level, double tol) {
  const QTable table = build_qtable(d, level);
  VerificationReport rep = verify_all(table, d, tol);
  const VerificationReport forcing = check_forcing(table, d);
  rep.checks.insert(rep.checks.end(), forcing.checks.begin(), forcing.checks.end());
  return rep;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::pair<int, int>> runs;
  if (!cfg.grid.empty()) {
    Range rr{cfg.rank, cfg.rank};
    Range kr{cfg.level, cfg.level};
    for (const auto& g : cfg.grid) {
      if (!g.empty() && g[0] == 'r') rr = parse_range(g, 'r');
      else if (!g.empty() && g[0] == 'k') kr = parse_range(g, 'k');
      else throw UsageError("bad grid range '" + g + "'");
    }
    for (int r = rr.lo; r <= rr.hi; ++r)
      for (int k = kr.lo; k <= kr.hi; ++k) runs.emplace_back(r, k);
  } else {
    runs.emplace_back(cfg.rank, cfg.level);
  }
  for (const auto& [r, k] : runs) validate(cfg, r, k);
  for (const auto& [r, k] : runs) dynkin_for(cfg, r);

  Sink sink(cfg, out);
  nlohmann::json reports = nlohmann::json::array();
  int passed = 0;
  for (const auto& [r, k] : runs) {
    const DynkinData d = dynkin_for(cfg, r);
    const VerificationReport rep = full_verification(d, k, cfg.tol);
    passed += rep.pass() ? 1 : 0;
    if (cfg.format == "json") {
      reports.push_back(to_json(rep));
      continue;
    }
    if (runs.size() == 1) {
      *sink << rep.title << '\n';
      for (const auto& c : rep.checks) *sink << "  " << check_line(c) << '\n';
      *sink << (rep.pass() ? "PASS" : "FAIL") << '\n';
    } else {
      *sink << (rep.pass() ? "PASS " : "FAIL ") << d.name() << " k=" << k;
      if (const CheckOutcome* f = rep.first_failure())
        *sink << "  " << f->name << " at (a=" << f->fail_a << ", m=" << f->fail_m << "): " << f->detail;
      *sink << '\n';
    }
  }
  if (cfg.format == "json") {
    *sink << (runs.size() == 1 ? reports.front() : nlohmann::json(reports)).dump(2) << '\n';
  } else if (runs.size() > 1) {
    *sink << passed << "/" << runs.size() << " passed\n";
  }
  return passed == static_cast<int>(runs.size()) ? kExitPass : kExitFailure;
}

std::vector<int> parse_coords(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad coordinate '" + item + "' in --coords");
    }
  }
  return out;
}

int cmd_reduce(const RunConfig& cfg, std::ostream& out) {
  validate(cfg, cfg.rank, cfg.level);
  const DynkinData d = dynkin_for(cfg, cfg.rank);
  const std::vector<int> coords = parse_coords(cfg.coords);
  if (coords.size() != static_cast<std::size_t>(d.rank + 1))
    throw UsageError("--coords needs " + std::to_string(d.rank + 1) + " values (lambda_0..lambda_r)");
  const AffineWeight w = make_affine(d, coords);
  if (w.level != cfg.level)
    throw UsageError("coordinates have level " + std::to_string(w.level) + ", expected " + std::to_string(cfg.level));
  const ReductionResult res = reduce_to_alcove(d, w);
  Sink sink(cfg, out);
  if (cfg.format == "json") {
    nlohmann::json j{{"input", w.coords}, {"level", w.level}, {"reflections", res.reflections}};
    if (res.is_zero()) j["outcome"] = "zero";
    else j.update({{"outcome", "dominant"}, {"rep", res.rep.coords}, {"sign", res.sign}});
    *sink << j.dump(2) << '\n';
  } else if (res.is_zero()) {
    *sink << "zero: " << w.to_string() << " is fixed by an odd element of the shifted action\n";
  } else {
    *sink << "dominant " << res.rep.to_string() << " sign " << (res.sign > 0 ? "+1" : "-1") << " ("
          << res.reflections << " reflections)\n";
  }
  return kExitPass;
}

constexpr long double kSolveResidualTol = 1e-12L;
constexpr long double kAgainstTableTol = 1e-8L;

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  validate(cfg, cfg.rank, cfg.level);
  const DynkinData d = dynkin_for(cfg, cfg.rank);
  Sink sink(cfg, out);
  RestrictedSolution sol;
  try {
    sol = solve_restricted(d, cfg.level);
  } catch (const NoConvergence& e) {
    *sink << "FAIL " << e.what() << '\n';
    return kExitFailure;
  }
  bool ok = sol.residual <= kSolveResidualTol;

  std::optional<long double> table_dev;
  if (cfg.against_table) {
    const QTable table = build_qtable(d, cfg.level, cfg.level);
    long double dev = 0;
    for (int a = 1; a <= d.rank; ++a)
      for (int m = 0; m <= cfg.level; ++m)
        dev = std::max(dev, std::fabs(sol.at(a, m) - table.numeric(a, m).convert_to<long double>()));
    table_dev = dev;
    ok = ok && dev <= kAgainstTableTol;
  }
  std::optional<DilogReport> dilog;
  std::string dilog_error;
  if (cfg.dilog) {
    try {
      dilog = dilog_identity(sol, d);
      ok = ok && std::fabs(dilog->delta()) <= static_cast<long double>(cfg.tol);
    } catch (const XOutOfRange& e) {
      dilog_error = e.what();
      ok = false;
    }
  }

  if (cfg.format == "json") {
    nlohmann::json j = to_json(sol, dilog ? &*dilog : nullptr);
    if (table_dev) j["table_deviation"] = static_cast<double>(*table_dev);
    if (!dilog_error.empty()) j["dilog_error"] = dilog_error;
    j["pass"] = ok;
    *sink << j.dump(2) << '\n';
  } else {
    *sink << "positive solution of the level " << cfg.level << " restricted Q-system of type " << d.name() << '\n';
    *sink << std::setprecision(15);
    for (int a = 1; a <= d.rank; ++a) {
      *sink << "  a=" << a << ":";
      for (int m = 0; m <= cfg.level; ++m) *sink << ' ' << static_cast<double>(sol.at(a, m));
      *sink << '\n';
    }
    *sink << std::setprecision(3) << std::scientific;
    *sink << "residual " << static_cast<double>(sol.residual) << ", iterations " << sol.iterations
          << (sol.used_fallback ? " (fixed-point fallback used)" : "") << '\n';
    if (table_dev) *sink << "max deviation from quantum-dimension table " << static_cast<double>(*table_dev) << '\n';
    if (dilog) {
      *sink << std::setprecision(15) << std::defaultfloat;
      *sink << "dilogarithm sum " << static_cast<double>(dilog->lhs) << ", expected " << static_cast<double>(dilog->rhs)
            << ", delta " << std::scientific << std::setprecision(3) << static_cast<double>(dilog->delta()) << '\n';
    }
    if (!dilog_error.empty()) *sink << "dilogarithm check failed: " << dilog_error << '\n';
    *sink << (ok ? "PASS" : "FAIL") << '\n';
  }
  return ok ? kExitPass : kExitFailure;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool needs_rank_level) {
  sub->add_option("-f,--family", cfg.family, "Dynkin family (A or D)")->check(CLI::IsMember({"A", "D", "a", "d"}));
  auto* r = sub->add_option("-r,--rank", cfg.rank, "rank r");
  auto* k = sub->add_option("-k,--level", cfg.level, "level k");
  if (needs_rank_level) {
    r->required();
    k->required();
  }
  sub->add_option("--tol", cfg.tol, "absolute tolerance");
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option("--out", cfg.out_path, "write output to this file");
  sub->add_option("--max-rank", cfg.max_rank, "largest accepted rank");
  sub->add_option("--max-level", cfg.max_level, "largest accepted level");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Quantum-dimension solutions of Q-systems of type A and D", "qsys"};
  app.require_subcommand(1);

  auto* table = app.add_subcommand("table", "build the z^(a)_m table with provenance");
  add_common(table, cfg, true);
  auto* verify = app.add_subcommand("verify", "check the Q-system and the KNS properties");
  add_common(verify, cfg, false);
  verify->add_option("--grid", cfg.grid, "sweep, e.g. --grid r=4..7 k=1..5")->expected(1, 2);
  auto* reduce = app.add_subcommand("reduce", "reduce an affine weight to the dominant alcove");
  add_common(reduce, cfg, true);
  reduce->add_option("-c,--coords", cfg.coords, "lambda_0,...,lambda_r (comma separated)")->required();
  auto* solve = app.add_subcommand("solve", "solve the level-k restricted Q-system");
  add_common(solve, cfg, true);
  solve->add_flag("--against-table", cfg.against_table, "compare with the quantum-dimension table");
  solve->add_flag("--dilog", cfg.dilog, "evaluate the dilogarithm identity");
  auto* dilog = app.add_subcommand("dilog", "solve and evaluate the dilogarithm identity");
  add_common(dilog, cfg, true);
  dilog->add_flag("--against-table", cfg.against_table, "compare with the quantum-dimension table");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    set_working_precision(precision_from_env());
    if (!cfg.grid.empty() && (cfg.grid.size() != 2 && (cfg.rank == 0 || cfg.level == 0)))
      throw UsageError("--grid needs both r=LO..HI and k=LO..HI unless -r/-k are given");
    if (*verify && cfg.grid.empty() && (cfg.rank == 0 || cfg.level == 0))
      throw UsageError("verify needs -r and -k, or --grid");
    if (*table) return cmd_table(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    if (*reduce) return cmd_reduce(cfg, out);
    if (*solve) return cmd_solve(cfg, out);
    if (*dilog) {
      cfg.dilog = true;
      return cmd_solve(cfg, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace qsys
