#include "qsys/lie_core.hpp"

#include <algorithm>
#include <set>

namespace qsys {

char family_letter(Family f) { return f == Family::A ? 'A' : 'D'; }

Family parse_family(const std::string& s) {
  if (s == "A" || s == "a") return Family::A;
  if (s == "D" || s == "d") return Family::D;
  throw UnsupportedType("unsupported family '" + s + "' (expected A or D)");
}

Weight Weight::fundamental(int rank, int node, int mult) {
  Weight w = zero(rank);
  if (node < 0 || node > rank) throw std::out_of_range("fundamental weight index out of range");
  if (node > 0) w.coords[static_cast<std::size_t>(node - 1)] = mult;
  return w;
}

bool Weight::dominant() const {
  return std::all_of(coords.begin(), coords.end(), [](int c) { return c >= 0; });
}

Weight& Weight::operator+=(const Weight& other) {
  if (other.coords.size() != coords.size()) throw RankMismatch("weight rank mismatch");
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += other.coords[i];
  return *this;
}

std::string DynkinData::name() const {
  return std::string(1, family_letter(family)) + std::to_string(rank);
}

std::vector<int> DynkinData::neighbors(int a) const {
  std::vector<int> out;
  const auto& row = adjacency.at(static_cast<std::size_t>(a - 1));
  for (int b = 1; b <= rank; ++b)
    if (row[static_cast<std::size_t>(b - 1)] != 0) out.push_back(b);
  return out;
}

namespace {

IntMatrix adjacency_for(Family family, int r) {
  IntMatrix adj(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0));
  auto link = [&](int i, int j) {
    adj[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = 1;
    adj[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = 1;
  };
  if (family == Family::A) {
    for (int i = 1; i < r; ++i) link(i, i + 1);
  } else {
    for (int i = 1; i + 1 <= r - 1; ++i) link(i, i + 1);  // 1 - 2 - ... - (r-1)
    link(r - 2, r);
  }
  return adj;
}

std::vector<int> marks_for(Family family, int r) {
  std::vector<int> marks(static_cast<std::size_t>(r + 1), 1);
  if (family == Family::D)
    for (int i = 2; i <= r - 2; ++i) marks[static_cast<std::size_t>(i)] = 2;
  return marks;
}

}  // namespace

long root_inner_product(const DynkinData& dynkin, const std::vector<int>& lhs,
                        const std::vector<int>& rhs) {
  const auto r = static_cast<std::size_t>(dynkin.rank);
  if (lhs.size() != r || rhs.size() != r) throw RankMismatch("root rank mismatch");
  long s = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) s += static_cast<long>(lhs[i]) * dynkin.cartan[i][j] * rhs[j];
  return s;
}

std::vector<Root> positive_roots(const DynkinData& dynkin) {
  const int r = dynkin.rank;
  std::set<std::vector<int>> known;
  std::vector<std::vector<int>> layer;
  for (int i = 0; i < r; ++i) {
    std::vector<int> c(static_cast<std::size_t>(r), 0);
    c[static_cast<std::size_t>(i)] = 1;
    known.insert(c);
    layer.push_back(c);
  }
  std::vector<Root> out;
  int height = 1;
  while (!layer.empty()) {
    std::sort(layer.begin(), layer.end());
    std::vector<std::vector<int>> next;
    for (const auto& beta : layer) {
      out.push_back(Root{beta, height});
      for (int i = 0; i < r; ++i) {
        // alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i with
        // p - q = <beta, alpha_i^vee>.
        int p = 0;
        for (std::vector<int> down = beta;;) {
          down[static_cast<std::size_t>(i)] -= 1;
          if (!known.count(down)) break;
          ++p;
        }
        long pair = 0;
        for (int j = 0; j < r; ++j)
          pair += static_cast<long>(beta[static_cast<std::size_t>(j)]) *
                  dynkin.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        const long q = p - pair;
        if (q <= 0) continue;
        std::vector<int> up = beta;
        up[static_cast<std::size_t>(i)] += 1;
        if (known.insert(up).second) next.push_back(up);
      }
    }
    layer = std::move(next);
    ++height;
  }
  return out;
}

DynkinData build_dynkin(Family family, int rank) {
  if (family == Family::A && rank < 1)
    throw UnsupportedType("A_r requires r >= 1, got r = " + std::to_string(rank));
  if (family == Family::D && rank < 4)
    throw UnsupportedType("D_r requires r >= 4, got r = " + std::to_string(rank));

  DynkinData d;
  d.family = family;
  d.rank = rank;
  d.adjacency = adjacency_for(family, rank);
  const auto r = static_cast<std::size_t>(rank);
  d.cartan.assign(r, std::vector<int>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) d.cartan[i][j] = (i == j ? 2 : 0) - d.adjacency[i][j];
  d.marks = marks_for(family, rank);
  d.coxeter = 0;
  for (int m : d.marks) d.coxeter += m;

  d.roots = positive_roots(d);

  // theta = sum_{i>=1} a_i alpha_i; alpha_0 = -theta.
  std::vector<int> theta(d.marks.begin() + 1, d.marks.end());
  d.extended_cartan.assign(r + 1, std::vector<int>(r + 1, 0));
  d.extended_cartan[0][0] = 2;
  for (std::size_t j = 0; j < r; ++j) {
    long theta_alpha = 0;
    for (std::size_t i = 0; i < r; ++i) theta_alpha += static_cast<long>(theta[i]) * d.cartan[i][j];
    d.extended_cartan[0][j + 1] = static_cast<int>(-theta_alpha);
    d.extended_cartan[j + 1][0] = static_cast<int>(-theta_alpha);
    for (std::size_t i = 0; i < r; ++i) d.extended_cartan[i + 1][j + 1] = d.cartan[i][j];
  }
  // A_1: (theta|alpha_1) = 2, so the affine diagram is the double edge 0 = 1.
  return d;
}

long pairing(const Weight& weight, const Root& root) {
  if (weight.coords.size() != root.coeffs.size()) throw RankMismatch("pairing: rank mismatch");
  long s = 0;
  for (std::size_t i = 0; i < root.coeffs.size(); ++i)
    s += static_cast<long>(weight.coords[i]) * root.coeffs[i];
  return s;
}

}  // namespace qsys
