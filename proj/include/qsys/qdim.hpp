#pragma once

// Quantum dimensions D_lambda-hat = chi_lambda(rho / (h + k)) via the sine
// product over positive roots, with exact zero / exact +-1 detection done in
// integer arithmetic before any floating point is touched.

#include <stdexcept>
#include <string>
#include <vector>

#include "qsys/affine_weyl.hpp"
#include "qsys/lie_core.hpp"
#include "qsys/precision.hpp"

namespace qsys {

struct QDimValue {
  enum class Exact { Zero, Int, Generic };

  Exact exact = Exact::Generic;
  int int_value = 0;  // +-1 when exact == Int
  Real numeric;

  static QDimValue zero();
  static QDimValue unit(int sign);
  static QDimValue generic(Real value);

  bool is_zero() const { return exact == Exact::Zero; }
  bool is_int() const { return exact == Exact::Int; }
  bool is_generic() const { return exact == Exact::Generic; }

  /// "0", "+1", "-1" or "generic".
  std::string tag() const;
  static Exact parse_tag(const std::string& tag, int* int_value);
};

/// Evaluates quantum dimensions at a fixed (dynkin, level). Caches sin(pi j / N).
class QDimEvaluator {
 public:
  QDimEvaluator(const DynkinData& dynkin, int level);

  QDimValue operator()(const Weight& weight) const;
  QDimValue affine(const AffineWeight& w) const;

  int level() const { return level_; }
  int modulus() const { return modulus_; }
  const DynkinData& dynkin() const { return *dynkin_; }

 private:
  const DynkinData* dynkin_;
  int level_;
  int modulus_;                 // N = h + k
  std::vector<Real> sines_;     // sin(pi j / N), j = 0..N
  std::vector<int> denominator_;  // folded magnitudes of the heights, sorted
};

QDimValue qdim(const Weight& weight, int level, const DynkinData& dynkin);

/// Classical part of w at level w.level.
QDimValue qdim_affine(const AffineWeight& w, const DynkinData& dynkin);

class RankTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Order of the finite Weyl group of the given type.
unsigned long long weyl_group_order(const DynkinData& dynkin);

/// Independent evaluation of chi_lambda(rho / (h + k)) as a quotient of
/// alternating exponential sums over the finite Weyl group. Intended for tests.
/// Throws RankTooLarge when |W| > 10^6.
long double qdim_oracle(const Weight& weight, int level, const DynkinData& dynkin);

}  // namespace qsys
