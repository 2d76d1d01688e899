#pragma once

// Kirillov-Reshetikhin character decompositions, the quantum-dimension
// solution table z^(a)_m, and the checks run against it.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qsys/affine_weyl.hpp"
#include "qsys/lie_core.hpp"
#include "qsys/qdim.hpp"

namespace qsys {

struct KRTerm {
  Weight weight;
  int multiplicity = 1;
};

/// Q^(a)_m as a sum of irreducible characters chi_omega.
struct KRDecomposition {
  int node = 0;
  int m = 0;
  std::vector<KRTerm> terms;
};

/// For D_r with a <= r-2 the terms are all k_a w_a + k_{a-2} w_{a-2} + ... with
/// the k's summing to m (w_0 = 0), listed lexicographically descending in
/// (k_a, k_{a-2}, ...). Otherwise the single term m w_a.
KRDecomposition kr_decompose(int a, int m, const DynkinData& dynkin);

/// Number of terms kr_decompose produces, by stars and bars.
unsigned long long kr_term_count(int a, int m, const DynkinData& dynkin);

/// A dominant representative together with its signed multiplicity.
struct ReducedTerm {
  AffineWeight rep;
  int coeff = 0;
};

struct QCell {
  QDimValue value;
  Real raw_sum;                            // sum of qdim_affine over provenance
  std::vector<AffineWeight> provenance;    // level-k affinizations of the KR terms
  std::vector<ReducedTerm> reduced;        // provenance after alcove reduction, cancelled
};

struct QTable {
  Family family = Family::A;
  int rank = 0;
  int level = 0;
  int coxeter = 0;
  int m_max = 0;
  std::vector<QCell> cells;  // (a - 1) * (m_max + 1) + m

  QCell& cell(int a, int m);
  const QCell& cell(int a, int m) const;
  const QDimValue& value(int a, int m) const { return cell(a, m).value; }
  const Real& numeric(int a, int m) const { return cell(a, m).value.numeric; }
};

/// Builds z^(a)_m for a in I and 0 <= m <= m_max (default k + h).
QTable build_qtable(const DynkinData& dynkin, int level, std::optional<int> m_max = std::nullopt);

/// Reduced expansion in the notation D(2w0+w2) + D(4w0).
std::string format_reduced(const std::vector<ReducedTerm>& reduced);

// ---------------------------------------------------------------------------
// Verification reports

struct CheckOutcome {
  CheckOutcome() = default;
  explicit CheckOutcome(std::string n) : name(std::move(n)) {}

  std::string name;
  bool applicable = true;
  bool pass = true;
  int fail_a = 0;   // first failing cell, when any
  int fail_m = -1;
  double worst = 0;  // largest deviation seen
  std::string detail;

  void fail_at(int a, int m, std::string why);
};

struct VerificationReport {
  std::string title;
  std::vector<CheckOutcome> checks;

  bool pass() const;
  const CheckOutcome* first_failure() const;
  const CheckOutcome* find(const std::string& name) const;
};

struct EquationResidual {
  int a = 0;
  int m = 0;
  double residual = 0;
};

struct QSystemReport {
  double tol = 0;
  double max_residual = 0;
  int worst_a = 0;
  int worst_m = 0;
  double max_abs_cell = 0;
  bool pass = true;
  std::vector<EquationResidual> residuals;
};

constexpr double kDefaultTol = 1e-9;

/// Residuals of (Q^a_m)^2 = prod_b Q^b_m + Q^a_{m-1} Q^a_{m+1} for 1 <= m < m_max.
/// Passes iff max residual <= tol * (1 + max |cell|^2).
QSystemReport verify_qsystem(const QTable& table, const DynkinData& dynkin, double tol = kDefaultTol);

/// positivity, symmetry, unit_boundary, unimodality, zeros, k_plus_h.
VerificationReport verify_kns(const QTable& table, const DynkinData& dynkin, double tol = kDefaultTol);

/// Midpoint identities for the middle nodes of D_r and the symmetry of the
/// single-term nodes.
VerificationReport midpoint_checks(const QTable& table, const DynkinData& dynkin, double tol = kDefaultTol);

/// Predicts the exact tags of rows k+2..k+h from rows <= k+1 and the node-1
/// column by the zero/unit forcing rules of the recursion, then compares them
/// cell by cell with the table.
struct ForcingPrediction {
  // tags[a - 1][m - (k + 2)]: "0", "+1", "-1", "+-1" or "" when nothing is forced
  std::vector<std::vector<std::string>> tags;
};
ForcingPrediction predict_forced_rows(const QTable& table, const DynkinData& dynkin);
VerificationReport check_forcing(const QTable& table, const DynkinData& dynkin);

/// Rebuilds rows 2..k from rows 0 and 1 via
/// Q_{m+1} = (Q_m^2 - prod_b Q^b_m) / Q_{m-1} and compares with the table.
VerificationReport check_first_row_propagation(const QTable& table, const DynkinData& dynkin,
                                               double rel_tol = 1e-8);

/// Runs verify_qsystem, verify_kns and midpoint_checks.
VerificationReport verify_all(const QTable& table, const DynkinData& dynkin, double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json to_json(const QTable& table);
QTable table_from_json(const nlohmann::json& j);
std::string to_csv(const QTable& table);
std::string to_text(const QTable& table);

nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const QSystemReport& report);

}  // namespace qsys
