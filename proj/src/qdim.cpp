#include "qsys/qdim.hpp"

#include <algorithm>

namespace qsys {

QDimValue QDimValue::zero() {
  QDimValue v;
  v.exact = Exact::Zero;
  v.numeric = 0;
  return v;
}

QDimValue QDimValue::unit(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("QDimValue::unit: sign must be +-1");
  QDimValue v;
  v.exact = Exact::Int;
  v.int_value = sign;
  v.numeric = sign;
  return v;
}

QDimValue QDimValue::generic(Real value) {
  QDimValue v;
  v.exact = Exact::Generic;
  v.numeric = std::move(value);
  return v;
}

std::string QDimValue::tag() const {
  switch (exact) {
    case Exact::Zero: return "0";
    case Exact::Int: return int_value > 0 ? "+1" : "-1";
    case Exact::Generic: break;
  }
  return "generic";
}

QDimValue::Exact QDimValue::parse_tag(const std::string& tag, int* int_value) {
  if (tag == "0") return Exact::Zero;
  if (tag == "+1" || tag == "-1") {
    if (int_value) *int_value = tag == "+1" ? 1 : -1;
    return Exact::Int;
  }
  if (tag == "generic") return Exact::Generic;
  throw std::invalid_argument("unknown exact tag '" + tag + "'");
}

QDimEvaluator::QDimEvaluator(const DynkinData& dynkin, int level)
    : dynkin_(&dynkin), level_(level), modulus_(dynkin.coxeter + level) {
  if (level < 1) throw std::invalid_argument("quantum dimension requires level k >= 1");
  working_precision_bits();
  const Real pi = pi_real();
  sines_.reserve(static_cast<std::size_t>(modulus_ + 1));
  for (int j = 0; j <= modulus_; ++j) sines_.push_back(boost::multiprecision::sin(pi * j / modulus_));
  for (const Root& alpha : dynkin.roots) {
    // 1 <= ht alpha <= h - 1 < N, so no denominator factor vanishes.
    if (alpha.height < 1 || alpha.height >= modulus_)
      throw std::logic_error("root height outside (0, N); denominator would vanish");
    denominator_.push_back(std::min(alpha.height, modulus_ - alpha.height));
  }
  std::sort(denominator_.begin(), denominator_.end());
}

QDimValue QDimEvaluator::operator()(const Weight& weight) const {
  if (weight.rank() != dynkin_->rank) throw RankMismatch("qdim: rank mismatch");
  const long n_mod = modulus_;
  const Weight shifted = weight + Weight::rho(dynkin_->rank);
  int sign = 1;
  std::vector<int> numerator;
  numerator.reserve(dynkin_->roots.size());
  for (const Root& alpha : dynkin_->roots) {
    const long n = pairing(shifted, alpha);
    // sin(pi n / N) = (-1)^q sin(pi t / N) with n = qN + t, 0 <= t < N.
    long t = n % n_mod;
    long q = n / n_mod;
    if (t < 0) {
      t += n_mod;
      --q;
    }
    if (t == 0) return QDimValue::zero();
    if (q % 2 != 0) sign = -sign;
    numerator.push_back(static_cast<int>(std::min<long>(t, n_mod - t)));
  }
  std::sort(numerator.begin(), numerator.end());
  if (numerator == denominator_) return QDimValue::unit(sign);

  // Cancel the common part of the two sorted multisets before multiplying.
  Real num = 1;
  Real den = 1;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < numerator.size() || j < denominator_.size()) {
    if (j == denominator_.size() || (i < numerator.size() && numerator[i] < denominator_[j])) {
      num *= sines_[static_cast<std::size_t>(numerator[i++])];
    } else if (i == numerator.size() || denominator_[j] < numerator[i]) {
      den *= sines_[static_cast<std::size_t>(denominator_[j++])];
    } else {
      ++i;
      ++j;
    }
  }
  Real value = num / den;
  if (sign < 0) value = -value;
  return QDimValue::generic(std::move(value));
}

QDimValue QDimEvaluator::affine(const AffineWeight& w) const {
  if (w.level != level_) throw LevelMismatch("qdim evaluator level mismatch");
  return (*this)(w.classical());
}

QDimValue qdim(const Weight& weight, int level, const DynkinData& dynkin) {
  return QDimEvaluator(dynkin, level)(weight);
}

QDimValue qdim_affine(const AffineWeight& w, const DynkinData& dynkin) {
  if (mark_sum(dynkin, w.coords) != w.level) throw LevelMismatch("affine weight coordinates do not sum to its level");
  return qdim(w.classical(), w.level, dynkin);
}

}  // namespace qsys
