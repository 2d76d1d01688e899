// Brute-force character evaluation over the finite Weyl group. Shares no code
// with the sine-product path in qdim.cpp beyond the root-system data.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <queue>

#include <Eigen/Dense>

#include "qsys/qdim.hpp"

namespace qsys {

unsigned long long weyl_group_order(const DynkinData& dynkin) {
  unsigned long long order = 1;
  if (dynkin.family == Family::A) {
    for (int i = 2; i <= dynkin.rank + 1; ++i) order *= static_cast<unsigned long long>(i);
  } else {
    for (int i = 2; i <= dynkin.rank; ++i) order *= static_cast<unsigned long long>(i);
    order <<= (dynkin.rank - 1);
  }
  return order;
}

long double qdim_oracle(const Weight& weight, int level, const DynkinData& dynkin) {
  constexpr unsigned long long kMaxOrder = 1'000'000;
  if (weyl_group_order(dynkin) > kMaxOrder)
    throw RankTooLarge("Weyl group of " + dynkin.name() + " too large for the brute-force oracle");
  if (weight.rank() != dynkin.rank) throw RankMismatch("qdim_oracle: rank mismatch");
  if (level < 1) throw std::invalid_argument("qdim_oracle: level must be >= 1");

  const int r = dynkin.rank;
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> cartan(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      cartan(i, j) = dynkin.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  // (mu | rho) = sum of the simple-root coordinates of mu = 1^T C^{-1} mu.
  const Eigen::Matrix<long double, Eigen::Dynamic, 1> rho_dual =
      cartan.transpose().fullPivLu().solve(Eigen::Matrix<long double, Eigen::Dynamic, 1>::Ones(r));

  auto form_with_rho = [&](const std::vector<int>& mu) {
    long double s = 0;
    for (int i = 0; i < r; ++i) s += rho_dual(i) * mu[static_cast<std::size_t>(i)];
    return s;
  };
  auto simple_reflection = [&](std::vector<int>& mu, int i) {
    const int mi = mu[static_cast<std::size_t>(i)];
    for (int j = 0; j < r; ++j)
      mu[static_cast<std::size_t>(j)] -= mi * dynkin.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };

  struct Element {
    std::vector<int> image;  // w(lambda + rho)
    int sign;
  };
  std::map<std::vector<int>, Element> orbit;  // keyed by w(rho)
  std::queue<std::vector<int>> frontier;
  const std::vector<int> rho(static_cast<std::size_t>(r), 1);
  std::vector<int> lr = weight.coords;
  for (int& c : lr) ++c;
  orbit.emplace(rho, Element{lr, 1});
  frontier.push(rho);
  while (!frontier.empty()) {
    const std::vector<int> key = frontier.front();
    frontier.pop();
    const Element el = orbit.at(key);
    for (int i = 0; i < r; ++i) {
      std::vector<int> next_key = key;
      simple_reflection(next_key, i);
      if (orbit.count(next_key)) continue;
      Element next{el.image, -el.sign};
      simple_reflection(next.image, i);
      orbit.emplace(next_key, std::move(next));
      frontier.push(std::move(next_key));
    }
  }

  const long double scale = 2.0L * std::numbers::pi_v<long double> / (dynkin.coxeter + level);
  std::complex<long double> num = 0;
  std::complex<long double> den = 0;
  for (const auto& [w_rho, el] : orbit) {
    num += static_cast<long double>(el.sign) * std::polar(1.0L, scale * form_with_rho(el.image));
    den += static_cast<long double>(el.sign) * std::polar(1.0L, scale * form_with_rho(w_rho));
  }
  return (num / den).real();
}

}  // namespace qsys
