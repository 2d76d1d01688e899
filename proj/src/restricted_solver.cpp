#include "qsys/restricted_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace qsys {

NoConvergence::NoConvergence(int max_iter_, long double best_residual_)
    : std::runtime_error("restricted Q-system solver did not converge within " + std::to_string(max_iter_) +
                         " iterations (best residual " + std::to_string(static_cast<double>(best_residual_)) + ")"),
      max_iter(max_iter_),
      best_residual(best_residual_) {}

RestrictedSystem::RestrictedSystem(const DynkinData& dynkin, int level)
    : dynkin_(&dynkin), rank_(dynkin.rank), level_(level) {
  if (level < 1) throw InvalidLevel("restricted Q-system requires level k >= 1, got " + std::to_string(level));
}

long double RestrictedSystem::log_q(const LVector& u, int a, int m) const {
  if (m <= 0 || m >= level_) return 0.0L;
  return u(index(a, m));
}

LVector RestrictedSystem::residual(const LVector& u) const {
  LVector f(unknowns());
  for (int a = 1; a <= rank_; ++a)
    for (int m = 1; m < level_; ++m) {
      long double adj = -2.0L * log_q(u, a, m);
      for (int b : dynkin_->neighbors(a)) adj += log_q(u, b, m);
      const long double ends = log_q(u, a, m - 1) + log_q(u, a, m + 1) - 2.0L * log_q(u, a, m);
      f(index(a, m)) = 1.0L - std::exp(adj) - std::exp(ends);
    }
  return f;
}

LMatrix RestrictedSystem::jacobian(const LVector& u) const {
  const int n = unknowns();
  LMatrix j = LMatrix::Zero(n, n);
  for (int a = 1; a <= rank_; ++a)
    for (int m = 1; m < level_; ++m) {
      const int row = index(a, m);
      long double adj = -2.0L * log_q(u, a, m);
      for (int b : dynkin_->neighbors(a)) adj += log_q(u, b, m);
      const long double x = std::exp(adj);
      const long double y = std::exp(log_q(u, a, m - 1) + log_q(u, a, m + 1) - 2.0L * log_q(u, a, m));
      j(row, row) = 2.0L * (x + y);
      for (int b : dynkin_->neighbors(a)) j(row, index(b, m)) -= x;
      if (m - 1 >= 1) j(row, index(a, m - 1)) -= y;
      if (m + 1 < level_) j(row, index(a, m + 1)) -= y;
    }
  return j;
}

LMatrix RestrictedSystem::jacobian_fd(const LVector& u, long double step) const {
  const int n = unknowns();
  LMatrix j(n, n);
  for (int c = 0; c < n; ++c) {
    LVector up = u;
    LVector down = u;
    up(c) += step;
    down(c) -= step;
    j.col(c) = (residual(up) - residual(down)) / (2.0L * step);
  }
  return j;
}

LVector RestrictedSystem::initial_guess() const {
  LVector u(unknowns());
  for (int a = 1; a <= rank_; ++a)
    for (int m = 1; m < level_; ++m)
      u(index(a, m)) = std::log(1.0L + static_cast<long double>(m) * (level_ - m) / level_);
  return u;
}

LVector RestrictedSystem::fixed_point_sweep(const LVector& u, long double damping) const {
  LVector next = u;
  for (int a = 1; a <= rank_; ++a)
    for (int m = 1; m < level_; ++m) {
      long double prod = 1.0L;
      for (int b : dynkin_->neighbors(a)) prod *= std::exp(log_q(next, b, m));
      const long double ends = std::exp(log_q(next, a, m - 1) + log_q(next, a, m + 1));
      const long double target = 0.5L * std::log(prod + ends);
      next(index(a, m)) = (1.0L - damping) * next(index(a, m)) + damping * target;
    }
  return next;
}

namespace {

long double max_abs(const LVector& v) { return v.size() == 0 ? 0.0L : v.cwiseAbs().maxCoeff(); }

struct NewtonOutcome {
  LVector u;
  long double residual;
  int iterations;
  bool converged;
};

NewtonOutcome newton(const RestrictedSystem& sys, LVector u, const SolverOptions& opts) {
  LVector f = sys.residual(u);
  long double norm2 = f.squaredNorm();
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    if (max_abs(f) <= opts.tol) {
      // A couple of polishing steps, kept only while they help.
      for (int polish = 0; polish < 2; ++polish) {
        const LVector trial = u + sys.jacobian(u).fullPivLu().solve(-f);
        const LVector ft = sys.residual(trial);
        if (!ft.allFinite() || !(max_abs(ft) < max_abs(f))) break;
        u = trial;
        f = ft;
      }
      return {u, max_abs(f), it, true};
    }
    const LVector step = sys.jacobian(u).fullPivLu().solve(-f);
    if (!step.allFinite()) break;
    bool accepted = false;
    for (long double t = 1.0L; t > 1e-12L; t *= 0.5L) {
      const LVector trial = u + t * step;
      const LVector ft = sys.residual(trial);
      const long double n2 = ft.squaredNorm();
      if (ft.allFinite() && n2 < (1.0L - 1e-4L * t) * norm2) {
        u = trial;
        f = ft;
        norm2 = n2;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // stagnation
  }
  return {u, max_abs(f), it, max_abs(f) <= opts.tol};
}

RestrictedSolution package(const DynkinData& dynkin, int level, const LVector& u, long double residual, int iters,
                           bool fallback, const RestrictedSystem& sys) {
  RestrictedSolution sol;
  sol.family = dynkin.family;
  sol.rank = dynkin.rank;
  sol.level = level;
  sol.values.assign(static_cast<std::size_t>(dynkin.rank), std::vector<long double>(static_cast<std::size_t>(level + 1)));
  for (int a = 1; a <= dynkin.rank; ++a)
    for (int m = 0; m <= level; ++m)
      sol.values[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(m)] =
          (m == 0 || m == level) ? 1.0L : std::exp(u(sys.index(a, m)));
  sol.residual = residual;
  sol.iterations = iters;
  sol.used_fallback = fallback;
  return sol;
}

}  // namespace

RestrictedSolution solve_restricted_from(const DynkinData& dynkin, int level, const LVector& start,
                                         const SolverOptions& opts) {
  const RestrictedSystem sys(dynkin, level);
  if (start.size() != sys.unknowns()) throw std::invalid_argument("solve_restricted: start vector has wrong size");
  if (sys.unknowns() == 0) return package(dynkin, level, start, 0.0L, 0, false, sys);

  NewtonOutcome first = newton(sys, start, opts);
  if (first.converged) return package(dynkin, level, first.u, first.residual, first.iterations, false, sys);

  LVector u = first.u.allFinite() ? first.u : sys.initial_guess();
  for (int i = 0; i < opts.fixed_point_sweeps; ++i) u = sys.fixed_point_sweep(u);
  NewtonOutcome second = newton(sys, u, opts);
  const int total = first.iterations + opts.fixed_point_sweeps + second.iterations;
  if (second.converged) return package(dynkin, level, second.u, second.residual, total, true, sys);
  throw NoConvergence(opts.max_iter, std::min(first.residual, second.residual));
}

RestrictedSolution solve_restricted(const DynkinData& dynkin, int level, const SolverOptions& opts) {
  const RestrictedSystem sys(dynkin, level);
  return solve_restricted_from(dynkin, level, sys.initial_guess(), opts);
}

long double unscaled_residual(const RestrictedSolution& sol, const DynkinData& dynkin) {
  long double worst = 0;
  for (int a = 1; a <= sol.rank; ++a)
    for (int m = 1; m < sol.level; ++m) {
      long double prod = 1.0L;
      for (int b : dynkin.neighbors(a)) prod *= sol.at(b, m);
      const long double q = sol.at(a, m);
      worst = std::max(worst, std::fabs(q * q - prod - sol.at(a, m - 1) * sol.at(a, m + 1)));
    }
  return worst;
}

SolutionPropertyReport check_positive_solution_properties(const RestrictedSolution& sol, long double tol) {
  SolutionPropertyReport rep;
  const int k = sol.level;
  for (int a = 1; a <= sol.rank; ++a) {
    for (int m = 0; m <= k; ++m) {
      if (!(sol.at(a, m) > 0) && rep.positivity) {
        rep.positivity = false;
        rep.fail_a = a;
        rep.fail_m = m;
      }
      const long double d = std::fabs(sol.at(a, m) - sol.at(a, k - m));
      rep.max_asymmetry = std::max(rep.max_asymmetry, d);
      if (d > 10.0L * tol && rep.symmetry) {
        rep.symmetry = false;
        rep.fail_a = a;
        rep.fail_m = m;
      }
    }
    for (int m = 1; m <= k / 2; ++m)
      if (!(sol.at(a, m - 1) < sol.at(a, m)) && rep.unimodality) {
        rep.unimodality = false;
        rep.fail_a = a;
        rep.fail_m = m;
      }
  }
  return rep;
}

MultistartReport multistart_probe(const DynkinData& dynkin, int level, int starts, std::uint64_t seed,
                                  const SolverOptions& opts) {
  const RestrictedSystem sys(dynkin, level);
  const RestrictedSolution ref = solve_restricted(dynkin, level, opts);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<long double> factor(0.5L, 1.5L);
  MultistartReport rep;
  rep.starts = starts;
  for (int s = 0; s < starts; ++s) {
    LVector u = sys.initial_guess();
    for (int i = 0; i < u.size(); ++i) u(i) *= factor(rng);
    try {
      const RestrictedSolution sol = solve_restricted_from(dynkin, level, u, opts);
      ++rep.converged;
      for (int a = 1; a <= sol.rank; ++a)
        for (int m = 0; m <= level; ++m)
          rep.max_deviation = std::max(rep.max_deviation, std::fabs(sol.at(a, m) - ref.at(a, m)));
    } catch (const NoConvergence&) {
    }
  }
  return rep;
}

namespace {

/// Li2 by its power series; used on [0, 1/2] where the ratio is at most 1/2.
long double li2_series(long double x) {
  long double term = x;
  long double sum = 0;
  for (int n = 1; n < 200; ++n) {
    const long double add = term / (static_cast<long double>(n) * n);
    sum += add;
    if (add < 1e-22L * sum) break;
    term *= x;
  }
  return sum;
}

}  // namespace

long double rogers_L(long double x) {
  constexpr long double pi2_6 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 6.0L;
  if (!(x >= 0.0L && x <= 1.0L)) throw DomainError("rogers_L: argument outside [0, 1]");
  if (x == 0.0L) return 0.0L;
  if (x == 1.0L) return pi2_6;
  const long double mixed = std::log(x) * std::log1p(-x);
  if (x <= 0.5L) return li2_series(x) + 0.5L * mixed;
  // Li2(x) = pi^2/6 - log(x) log(1-x) - Li2(1-x)
  return pi2_6 - li2_series(1.0L - x) - 0.5L * mixed;
}

DilogReport dilog_identity(const RestrictedSolution& sol, const DynkinData& dynkin) {
  DilogReport rep;
  const int k = sol.level;
  const int h = dynkin.coxeter;
  long double sum = 0;
  for (int a = 1; a <= sol.rank; ++a)
    for (int m = 1; m < k; ++m) {
      long double prod = 1.0L;
      for (int b : dynkin.neighbors(a)) prod *= sol.at(b, m);
      const long double x = prod / (sol.at(a, m) * sol.at(a, m));
      if (!(x > 0.0L && x < 1.0L))
        throw XOutOfRange("x^(" + std::to_string(a) + ")_" + std::to_string(m) + " = " +
                          std::to_string(static_cast<double>(x)) + " is outside (0, 1)");
      rep.x_values[{a, m}] = x;
      sum += rogers_L(x);
    }
  const long double pi = std::numbers::pi_v<long double>;
  rep.lhs = 6.0L / (pi * pi) * sum;
  rep.rhs = static_cast<long double>((k - 1) * h * sol.rank) / (h + k);
  return rep;
}

nlohmann::json to_json(const RestrictedSolution& sol, const DilogReport* dilog) {
  nlohmann::json values = nlohmann::json::object();
  for (int a = 1; a <= sol.rank; ++a) {
    std::vector<double> row;
    for (int m = 0; m <= sol.level; ++m) row.push_back(static_cast<double>(sol.at(a, m)));
    values[std::to_string(a)] = row;
  }
  nlohmann::json j{{"family", std::string(1, family_letter(sol.family))},
                   {"rank", sol.rank},
                   {"level", sol.level},
                   {"residual", static_cast<double>(sol.residual)},
                   {"iterations", sol.iterations},
                   {"used_fallback", sol.used_fallback},
                   {"values", std::move(values)}};
  if (dilog)
    j["dilog"] = {{"lhs", static_cast<double>(dilog->lhs)},
                  {"rhs", static_cast<double>(dilog->rhs)},
                  {"delta", static_cast<double>(dilog->delta())}};
  return j;
}

}  // namespace qsys
