// Acceptance checks: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "qsys/kr_qsystem.hpp"
#include "qsys/restricted_solver.hpp"
#include "reference_tables.hpp"

using namespace qsys;

namespace {

using Clock = std::chrono::steady_clock;

struct Result {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string str(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

std::string cell(int a, int m) { return "(" + std::to_string(a) + "," + std::to_string(m) + ")"; }

double num(const Real& x) { return x.convert_to<double>(); }

constexpr int kRankLo = 4, kRankHi = 8, kLevelLo = 1, kLevelHi = 6;

Result criterion1() {
  Result res;
  const auto t0 = Clock::now();
  const DynkinData d = build_dynkin(Family::D, 5);
  const QTable t = build_qtable(d, 4);
  for (int a = 1; a <= 5; ++a) {
    for (int m = 5; m <= 11; ++m)
      if (!t.value(a, m).is_zero()) res.fail("cell " + cell(a, m) + " is " + t.value(a, m).tag());
    if (t.value(a, 12).tag() != "+1") res.fail("cell " + cell(a, 12) + " is " + t.value(a, 12).tag());
    for (int m = 1; m <= 3; ++m)
      if (std::abs(num(t.numeric(a, m) - t.numeric(a, 4 - m))) > 1e-9) res.fail("symmetry at " + cell(a, m));
  }
  const auto expected = testing::d5_level4_expansions();
  for (int a : {2, 3})
    for (int m = 0; m <= 4; ++m) {
      testing::Expansion got;
      for (const auto& term : t.cell(a, m).reduced) got[term.rep.coords] += term.coeff;
      if (got != expected.at({a, m})) res.fail("expansion of " + cell(a, m) + " is " + format_reduced(t.cell(a, m).reduced));
    }
  const double secs = seconds_since(t0);
  if (secs >= 1.0) res.fail("took " + std::to_string(secs) + " s");
  if (res.pass) res.detail = "rows 5..11 exact zero, row 12 all +1, expansions match, " + str(secs) + " s";
  return res;
}

Result criterion2() {
  Result res;
  const auto t0 = Clock::now();
  int cases = 0;
  for (int r = kRankLo; r <= kRankHi; ++r)
    for (int k = kLevelLo; k <= kLevelHi; ++k) {
      const DynkinData d = build_dynkin(Family::D, r);
      const QTable t = build_qtable(d, k);
      const VerificationReport rep = verify_kns(t, d, 1e-9);
      ++cases;
      if (const CheckOutcome* f = rep.first_failure())
        res.fail("D" + std::to_string(r) + " k=" + std::to_string(k) + ": " + f->name + " at " +
                 cell(f->fail_a, f->fail_m));
      if (r % 4 == 2 || r % 4 == 3)
        for (int a : {r - 1, r}) {
          const QDimValue& v = t.value(a, k + d.coxeter);
          if (!(v.is_int() && v.int_value == -1))
            res.fail("D" + std::to_string(r) + " k=" + std::to_string(k) + ": fork cell " + cell(a, k + d.coxeter) +
                     " is " + v.tag());
        }
    }
  const double secs = seconds_since(t0);
  if (secs >= 120.0) res.fail("took " + std::to_string(secs) + " s");
  if (res.pass) res.detail = std::to_string(cases) + " cases, six clauses each, fork cells exact, " + str(secs) + " s";
  return res;
}

Result criterion3() {
  Result res;
  double worst = 0;
  for (int r = kRankLo; r <= kRankHi; ++r)
    for (int k = kLevelLo; k <= kLevelHi; ++k) {
      const DynkinData d = build_dynkin(Family::D, r);
      const QSystemReport rep = verify_qsystem(build_qtable(d, k), d, 1e-9);
      worst = std::max(worst, rep.max_residual);
      if (rep.max_residual > 1e-9)
        res.fail("D" + std::to_string(r) + " k=" + std::to_string(k) + ": residual " + str(rep.max_residual) + " at " +
                 cell(rep.worst_a, rep.worst_m));
    }
  if (res.pass) res.detail = "max residual " + str(worst);
  return res;
}

Result criterion4() {
  Result res;
  double worst = 0;
  int weights = 0;
  struct Case {
    Family f;
    int r;
    int kmax;
  };
  for (const Case c : {Case{Family::D, 4, 3}, Case{Family::A, 2, 4}, Case{Family::A, 1, 6}}) {
    const DynkinData d = build_dynkin(c.f, c.r);
    for (int k = 1; k <= c.kmax; ++k) {
      std::vector<int> lam(static_cast<std::size_t>(d.rank), 0);
      std::function<void(int, int)> rec = [&](int i, int budget) {
        if (i == d.rank) {
          const Weight w(lam);
          const double diff = static_cast<double>(
              std::fabs(qdim(w, k, d).numeric.convert_to<long double>() - qdim_oracle(w, k, d)));
          worst = std::max(worst, diff);
          ++weights;
          if (diff > 1e-10) res.fail(d.name() + " k=" + std::to_string(k) + " differs by " + str(diff));
          return;
        }
        for (int v = 0; v * d.mark(i + 1) <= budget; ++v) {
          lam[static_cast<std::size_t>(i)] = v;
          rec(i + 1, budget - v * d.mark(i + 1));
        }
        lam[static_cast<std::size_t>(i)] = 0;
      };
      rec(0, k);
    }
  }
  if (res.pass) res.detail = std::to_string(weights) + " weights, max difference " + str(worst);
  return res;
}

Result criterion5() {
  Result res;
  const DynkinData d = build_dynkin(Family::D, 5);
  const int k = 4;
  const QDimEvaluator eval(d, k);
  const auto autos = diagram_automorphisms(d);
  std::mt19937_64 rng(20240515);
  std::uniform_int_distribution<int> coord(-8, 8);
  std::uniform_int_distribution<int> node(0, d.rank);
  std::uniform_int_distribution<int> length(1, 20);
  std::uniform_int_distribution<std::size_t> pick(0, autos.size() - 1);
  auto random_weight = [&] {
    std::vector<int> c(static_cast<std::size_t>(d.rank));
    for (int& x : c) x = coord(rng);
    return affinize(d, Weight(c), k);
  };
  double worst_sign = 0, worst_auto = 0;
  for (int i = 0; i < 1000; ++i) {
    const AffineWeight w = random_weight();
    std::vector<int> word(static_cast<std::size_t>(length(rng)));
    for (int& x : word) x = node(rng);
    const double sign = word.size() % 2 ? -1.0 : 1.0;
    const double diff = std::abs(num(eval.affine(shifted_action(d, word, w)).numeric) - sign * num(eval.affine(w).numeric));
    worst_sign = std::max(worst_sign, diff);
  }
  for (int i = 0; i < 1000; ++i) {
    const AffineWeight w = random_weight();
    const double diff = std::abs(num(eval.affine(permute(autos[pick(rng)], w)).numeric) - num(eval.affine(w).numeric));
    worst_auto = std::max(worst_auto, diff);
  }
  if (worst_sign > 1e-12) res.fail("Weyl sign deviation " + str(worst_sign));
  if (worst_auto > 1e-12) res.fail("automorphism deviation " + str(worst_auto));
  if (res.pass) res.detail = "2 x 1000 checks, max deviation " + str(std::max(worst_sign, worst_auto));
  return res;
}

Result criterion6() {
  Result res;
  long double worst_res = 0, worst_dev = 0, worst_restart = 0;
  for (int r = kRankLo; r <= kRankHi; ++r)
    for (int k = std::max(2, kLevelLo); k <= kLevelHi; ++k) {
      const std::string tag = "D" + std::to_string(r) + " k=" + std::to_string(k);
      const DynkinData d = build_dynkin(Family::D, r);
      RestrictedSolution sol;
      try {
        sol = solve_restricted(d, k);
      } catch (const NoConvergence& e) {
        res.fail(tag + ": " + e.what());
        continue;
      }
      worst_res = std::max(worst_res, sol.residual);
      if (!(sol.residual < 1e-12L)) res.fail(tag + ": residual " + str(static_cast<double>(sol.residual)));
      const QTable t = build_qtable(d, k, k);
      for (int a = 1; a <= r; ++a)
        for (int m = 0; m <= k; ++m) {
          const long double dev = std::fabs(sol.at(a, m) - t.numeric(a, m).convert_to<long double>());
          worst_dev = std::max(worst_dev, dev);
          if (dev > 1e-8L) res.fail(tag + ": table deviation at " + cell(a, m));
        }
      const MultistartReport ms = multistart_probe(d, k, 20, 1000003ULL * static_cast<unsigned>(r) + static_cast<unsigned>(k));
      worst_restart = std::max(worst_restart, ms.max_deviation);
      if (ms.converged != ms.starts || ms.max_deviation > 1e-8L)
        res.fail(tag + ": " + std::to_string(ms.converged) + "/20 restarts converged, deviation " +
                 str(static_cast<double>(ms.max_deviation)));
    }
  if (res.pass)
    res.detail = "max residual " + str(static_cast<double>(worst_res)) + ", table deviation " +
                 str(static_cast<double>(worst_dev)) + ", restart spread " + str(static_cast<double>(worst_restart));
  return res;
}

Result criterion7() {
  Result res;
  long double worst = 0;
  for (int r = kRankLo; r <= kRankHi; ++r)
    for (int k = kLevelLo; k <= kLevelHi; ++k) {
      const DynkinData d = build_dynkin(Family::D, r);
      try {
        const DilogReport rep = dilog_identity(solve_restricted(d, k), d);
        worst = std::max(worst, std::fabs(rep.delta()));
        if (std::fabs(rep.delta()) > 1e-9L)
          res.fail("D" + std::to_string(r) + " k=" + std::to_string(k) + ": delta " + str(static_cast<double>(rep.delta())));
      } catch (const std::exception& e) {
        res.fail("D" + std::to_string(r) + " k=" + std::to_string(k) + ": " + e.what());
      }
    }
  const DynkinData a1 = build_dynkin(Family::A, 1);
  const DilogReport closed = dilog_identity(solve_restricted(a1, 2), a1);
  const long double off = std::fabs(closed.lhs - 0.5L);
  if (off > 1e-12L) res.fail("A1 k=2 gives " + std::to_string(static_cast<double>(closed.lhs)));
  if (res.pass)
    res.detail = "max |lhs - rhs| " + str(static_cast<double>(worst)) + ", A1 k=2 off by " + str(static_cast<double>(off));
  return res;
}

Result criterion8() {
  Result res;
  int cells = 0;
  for (int r = kRankLo; r <= kRankHi; ++r)
    for (int k = kLevelLo; k <= kLevelHi; ++k) {
      const DynkinData d = build_dynkin(Family::D, r);
      const QTable t = build_qtable(d, k);
      const VerificationReport rep = check_forcing(t, d);
      cells += r * (d.coxeter - 1);
      if (const CheckOutcome* f = rep.first_failure())
        res.fail("D" + std::to_string(r) + " k=" + std::to_string(k) + ": " + f->detail);
    }
  if (res.pass) res.detail = std::to_string(cells) + " forced cells match the table tags";
  return res;
}

}  // namespace

int main() {
  set_working_precision(precision_from_env());
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"D5 level 4 worked example", criterion1},
      {"KNS properties on D4..D8 x k=1..6", criterion2},
      {"Q-system residuals on the grid", criterion3},
      {"qdim agrees with the Weyl-group oracle", criterion4},
      {"Weyl sign and automorphism invariance", criterion5},
      {"restricted solver matches the table", criterion6},
      {"dilogarithm identity", criterion7},
      {"zero and unit forcing", criterion8},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    failures += r.pass ? 0 : 1;
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " -- " << r.detail
              << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
