#pragma once

// Numerical positive solution of the level-k restricted Q-system and the
// Rogers dilogarithm sum built from it.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qsys/lie_core.hpp"

namespace qsys {

using LVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

class InvalidLevel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(int max_iter, long double best_residual);
  int max_iter;
  long double best_residual;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class XOutOfRange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The r(k-1) equations in logarithmic unknowns u = log Q^(a)_m, 1 <= m <= k-1,
/// written in the scaled form
///   F_{a,m}(u) = 1 - prod_b Q^b_m / (Q^a_m)^2 - Q^a_{m-1} Q^a_{m+1} / (Q^a_m)^2,
/// with Q^a_0 = Q^a_k = 1.
class RestrictedSystem {
 public:
  RestrictedSystem(const DynkinData& dynkin, int level);

  int unknowns() const { return rank_ * (level_ - 1); }
  int index(int a, int m) const { return (a - 1) * (level_ - 1) + (m - 1); }
  int rank() const { return rank_; }
  int level() const { return level_; }

  LVector residual(const LVector& u) const;
  /// Analytic Jacobian dF/du.
  LMatrix jacobian(const LVector& u) const;
  /// Central-difference Jacobian, for cross-checking.
  LMatrix jacobian_fd(const LVector& u, long double step = 1e-6L) const;

  /// Deterministic start log(1 + m(k-m)/k).
  LVector initial_guess() const;
  /// Damped fixed-point sweep Q <- sqrt(prod_b Q^b + Q_{m-1} Q_{m+1}).
  LVector fixed_point_sweep(const LVector& u, long double damping = 0.5L) const;

 private:
  long double log_q(const LVector& u, int a, int m) const;

  const DynkinData* dynkin_;
  int rank_;
  int level_;
};

struct SolverOptions {
  long double tol = 1e-14L;  // on max |F|
  int max_iter = 200;        // Newton steps per attempt
  int fixed_point_sweeps = 200;
};

struct RestrictedSolution {
  Family family = Family::A;
  int rank = 0;
  int level = 0;
  std::vector<std::vector<long double>> values;  // values[a - 1][m], 0 <= m <= k
  long double residual = 0;                      // max |F| in the scaled form
  int iterations = 0;
  bool used_fallback = false;

  long double at(int a, int m) const {
    return values.at(static_cast<std::size_t>(a - 1)).at(static_cast<std::size_t>(m));
  }
};

RestrictedSolution solve_restricted(const DynkinData& dynkin, int level, const SolverOptions& opts = {});

/// Same, starting from the given log-coordinates instead of the default guess.
RestrictedSolution solve_restricted_from(const DynkinData& dynkin, int level, const LVector& start,
                                         const SolverOptions& opts = {});

/// Max |(Q^a_m)^2 - prod_b Q^b_m - Q^a_{m-1} Q^a_{m+1}| over the interior equations.
long double unscaled_residual(const RestrictedSolution& sol, const DynkinData& dynkin);

struct SolutionPropertyReport {
  bool symmetry = true;
  bool unimodality = true;
  bool positivity = true;
  long double max_asymmetry = 0;
  int fail_a = 0;
  int fail_m = -1;
  bool pass() const { return symmetry && unimodality && positivity; }
};

/// z_m = z_{k-m} within 10 tol and z_{m-1} < z_m for 1 <= m <= floor(k/2).
SolutionPropertyReport check_positive_solution_properties(const RestrictedSolution& sol,
                                                          long double tol = 1e-12L);

struct MultistartReport {
  int starts = 0;
  int converged = 0;
  long double max_deviation = 0;  // from the deterministic solution
};

/// Newton from randomized positive starts (log coordinates scaled by a factor in [0.5, 1.5]).
MultistartReport multistart_probe(const DynkinData& dynkin, int level, int starts, std::uint64_t seed,
                                  const SolverOptions& opts = {});

/// L(x) = Li2(x) + log(x) log(1 - x) / 2, with L(0) = 0 and L(1) = pi^2 / 6.
long double rogers_L(long double x);

struct DilogReport {
  long double lhs = 0;  // (6 / pi^2) sum L(x^(a)_m)
  long double rhs = 0;  // (k - 1) h r / (h + k)
  std::map<std::pair<int, int>, long double> x_values;
  long double delta() const { return lhs - rhs; }
};

DilogReport dilog_identity(const RestrictedSolution& sol, const DynkinData& dynkin);

nlohmann::json to_json(const RestrictedSolution& sol, const DilogReport* dilog = nullptr);

}  // namespace qsys
