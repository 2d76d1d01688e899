#include "qsys/affine_weyl.hpp"

#include <algorithm>
#include <sstream>

namespace qsys {

bool AffineWeight::dominant() const {
  return std::all_of(coords.begin(), coords.end(), [](int c) { return c >= 0; });
}

Weight AffineWeight::classical() const { return Weight(std::vector<int>(coords.begin() + 1, coords.end())); }

std::string AffineWeight::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
  os << ")@" << level;
  return os.str();
}

int mark_sum(const DynkinData& dynkin, std::span<const int> coords) {
  if (coords.size() != dynkin.marks.size()) throw RankMismatch("affine weight has wrong number of coordinates");
  int s = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) s += dynkin.marks[i] * coords[i];
  return s;
}

AffineWeight make_affine(const DynkinData& dynkin, std::vector<int> coords) {
  AffineWeight w;
  w.level = mark_sum(dynkin, coords);
  w.coords = std::move(coords);
  return w;
}

AffineWeight affinize(const DynkinData& dynkin, const Weight& weight, int level) {
  if (weight.rank() != dynkin.rank) throw RankMismatch("affinize: rank mismatch");
  AffineWeight w;
  w.level = level;
  w.coords.reserve(static_cast<std::size_t>(dynkin.rank + 1));
  int classical = 0;
  for (int i = 1; i <= dynkin.rank; ++i) classical += dynkin.mark(i) * weight.coord(i);
  w.coords.push_back(level - classical);
  w.coords.insert(w.coords.end(), weight.coords.begin(), weight.coords.end());
  return w;
}

namespace {

void reflect_in_place(const DynkinData& dynkin, int node, std::vector<int>& c) {
  const auto i = static_cast<std::size_t>(node);
  const int ci = c[i];
  if (ci == 0) return;
  const auto& row = dynkin.extended_cartan[i];
  for (std::size_t j = 0; j < c.size(); ++j) c[j] -= ci * row[j];
}

void check_node(const DynkinData& dynkin, int node) {
  if (node < 0 || node > dynkin.rank)
    throw std::out_of_range("node index " + std::to_string(node) + " outside 0.." + std::to_string(dynkin.rank));
}

}  // namespace

AffineWeight reflect(const DynkinData& dynkin, int node, AffineWeight w) {
  check_node(dynkin, node);
  if (w.coords.size() != dynkin.marks.size()) throw RankMismatch("reflect: wrong number of coordinates");
  reflect_in_place(dynkin, node, w.coords);
  return w;
}

AffineWeight shifted_action(const DynkinData& dynkin, std::span<const int> word, AffineWeight w) {
  if (w.coords.size() != dynkin.marks.size()) throw RankMismatch("shifted_action: wrong number of coordinates");
  for (int& c : w.coords) ++c;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    check_node(dynkin, *it);
    reflect_in_place(dynkin, *it, w.coords);
  }
  for (int& c : w.coords) --c;
  return w;
}

ReductionResult reduce_to_alcove(const DynkinData& dynkin, const AffineWeight& w, std::size_t cap) {
  if (w.level < 1) throw std::invalid_argument("reduce_to_alcove: level must be >= 1");
  if (w.coords.size() != dynkin.marks.size()) throw RankMismatch("reduce_to_alcove: wrong number of coordinates");

  std::vector<int> mu = w.coords;
  for (int& c : mu) ++c;
  ReductionResult out;
  int sign = 1;
  for (;;) {
    if (std::any_of(mu.begin(), mu.end(), [](int c) { return c == 0; })) {
      out.outcome = ReductionResult::Outcome::Zero;
      out.sign = 0;
      return out;
    }
    auto neg = std::find_if(mu.begin(), mu.end(), [](int c) { return c < 0; });
    if (neg == mu.end()) break;
    if (out.reflections >= cap)
      throw IterationCapExceeded("alcove reduction exceeded " + std::to_string(cap) + " reflections for " +
                                 w.to_string());
    reflect_in_place(dynkin, static_cast<int>(neg - mu.begin()), mu);
    sign = -sign;
    ++out.reflections;
  }
  for (int& c : mu) --c;
  out.outcome = ReductionResult::Outcome::Dominant;
  out.rep = AffineWeight{w.level, std::move(mu)};
  out.sign = sign;
  return out;
}

namespace {

void extend_automorphism(const IntMatrix& c, NodePermutation& pi, std::vector<bool>& used, std::size_t next,
                         std::vector<NodePermutation>& out) {
  const std::size_t n = c.size();
  if (next == n) {
    out.push_back(pi);
    return;
  }
  for (std::size_t target = 0; target < n; ++target) {
    if (used[target]) continue;
    bool ok = true;
    for (std::size_t j = 0; j <= next && ok; ++j) {
      const auto tj = j == next ? target : static_cast<std::size_t>(pi[j]);
      ok = c[target][tj] == c[next][j];
    }
    if (!ok) continue;
    used[target] = true;
    pi[next] = static_cast<int>(target);
    extend_automorphism(c, pi, used, next + 1, out);
    used[target] = false;
  }
}

}  // namespace

std::vector<NodePermutation> diagram_automorphisms(const DynkinData& dynkin) {
  const std::size_t n = dynkin.extended_cartan.size();
  NodePermutation pi(n, -1);
  std::vector<bool> used(n, false);
  std::vector<NodePermutation> out;
  extend_automorphism(dynkin.extended_cartan, pi, used, 0, out);
  return out;
}

std::set<int> orbit_of_zero(const DynkinData& dynkin) {
  std::set<int> orbit;
  for (const auto& pi : diagram_automorphisms(dynkin)) orbit.insert(pi[0]);
  return orbit;
}

AffineWeight permute(const NodePermutation& pi, const AffineWeight& w) {
  if (pi.size() != w.coords.size()) throw RankMismatch("permute: size mismatch");
  AffineWeight out{w.level, std::vector<int>(w.coords.size(), 0)};
  for (std::size_t i = 0; i < pi.size(); ++i) out.coords[static_cast<std::size_t>(pi[i])] = w.coords[i];
  return out;
}

}  // namespace qsys
