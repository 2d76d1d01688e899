#pragma once

// Root-system data for the simply-laced families A_r and D_r.
//
// Node labels follow the usual convention for D_r: nodes 1..r-2 form the
// tail, r-1 and r are the fork tips (both attached to r-2), and the affine
// node 0 attaches to node 2. Everything here is exact integer arithmetic.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsys {

enum class Family { A, D };

char family_letter(Family f);
Family parse_family(const std::string& s);

class UnsupportedType : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RankMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using IntMatrix = std::vector<std::vector<int>>;

/// Positive root in the simple-root basis; coeffs[i - 1] is the coefficient of alpha_i.
struct Root {
  std::vector<int> coeffs;
  int height = 0;

  int coeff(int node) const { return coeffs.at(static_cast<std::size_t>(node - 1)); }
  friend bool operator==(const Root&, const Root&) = default;
};

/// Classical weight in the fundamental-weight basis; coords[i - 1] multiplies omega_i.
struct Weight {
  std::vector<int> coords;

  Weight() = default;
  explicit Weight(std::vector<int> c) : coords(std::move(c)) {}

  static Weight zero(int rank) { return Weight(std::vector<int>(static_cast<std::size_t>(rank), 0)); }
  static Weight rho(int rank) { return Weight(std::vector<int>(static_cast<std::size_t>(rank), 1)); }
  /// mult * omega_node; node 0 stands for the zero weight.
  static Weight fundamental(int rank, int node, int mult = 1);

  int rank() const { return static_cast<int>(coords.size()); }
  int coord(int node) const { return coords.at(static_cast<std::size_t>(node - 1)); }
  bool dominant() const;

  Weight& operator+=(const Weight& other);
  friend Weight operator+(Weight lhs, const Weight& rhs) { return lhs += rhs; }
  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;
};

struct DynkinData {
  Family family = Family::A;
  int rank = 0;
  IntMatrix cartan;           // rank x rank, row/col i-1 is node i
  IntMatrix extended_cartan;  // (rank+1) x (rank+1), row/col i is node i
  IntMatrix adjacency;        // rank x rank, 0/1
  std::vector<int> marks;     // a_0..a_r, a_0 = 1
  int coxeter = 0;
  std::vector<Root> roots;    // positive roots, sorted by height

  std::string name() const;
  /// Nodes b adjacent to a (both 1-based).
  std::vector<int> neighbors(int a) const;
  int mark(int node) const { return marks.at(static_cast<std::size_t>(node)); }
  const Root& highest_root() const { return roots.back(); }
};

DynkinData build_dynkin(Family family, int rank);

/// Closure over root strings starting from the simple roots.
std::vector<Root> positive_roots(const DynkinData& dynkin);

/// (lambda | alpha) with (omega_i | alpha_j) = delta_ij.
long pairing(const Weight& weight, const Root& root);

/// (alpha | beta) for roots given in the simple-root basis.
long root_inner_product(const DynkinData& dynkin, const std::vector<int>& lhs,
                        const std::vector<int>& rhs);

}  // namespace qsys
