#pragma once

// Level-k affine weights and the shifted action of the affine Weyl group.

#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsys/lie_core.hpp"

namespace qsys {

/// sum_{i=0}^r lambda_i omega-hat_i; coords[i] is lambda_i for node i.
struct AffineWeight {
  int level = 0;
  std::vector<int> coords;

  bool dominant() const;
  /// Drops lambda_0.
  Weight classical() const;
  std::string to_string() const;

  friend bool operator==(const AffineWeight&, const AffineWeight&) = default;
  friend auto operator<=>(const AffineWeight&, const AffineWeight&) = default;
};

class IterationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LevelMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ReductionResult {
  enum class Outcome { Dominant, Zero };

  Outcome outcome = Outcome::Zero;
  AffineWeight rep;  // meaningful only for Dominant
  int sign = 0;      // +-1 for Dominant, 0 for Zero
  std::size_t reflections = 0;

  bool is_zero() const { return outcome == Outcome::Zero; }
};

/// sum_i a_i lambda_i.
int mark_sum(const DynkinData& dynkin, std::span<const int> coords);

/// Builds an AffineWeight from explicit coordinates; the level is computed from the marks.
AffineWeight make_affine(const DynkinData& dynkin, std::vector<int> coords);

/// Level-k affinization; lambda_0 may be negative.
AffineWeight affinize(const DynkinData& dynkin, const Weight& weight, int level);

/// Fundamental reflection s_node (unshifted, linear action).
AffineWeight reflect(const DynkinData& dynkin, int node, AffineWeight w);

/// Shifted action s_{i_1} ... s_{i_n} . w, the last letter acting first.
AffineWeight shifted_action(const DynkinData& dynkin, std::span<const int> word, AffineWeight w);

/// Carries w to the dominant alcove under the shifted action, tracking the
/// signature, or reports a stabilizing reflection (quantum dimension zero).
ReductionResult reduce_to_alcove(const DynkinData& dynkin, const AffineWeight& w,
                                 std::size_t cap = 1'000'000);

/// A permutation pi of the extended nodes 0..r, stored as pi[i] = image of i.
using NodePermutation = std::vector<int>;

/// All automorphisms of the extended Dynkin diagram, found by backtracking.
std::vector<NodePermutation> diagram_automorphisms(const DynkinData& dynkin);

/// { pi(0) : pi an automorphism }.
std::set<int> orbit_of_zero(const DynkinData& dynkin);

/// (pi . w)_{pi(i)} = w_i.
AffineWeight permute(const NodePermutation& pi, const AffineWeight& w);

}  // namespace qsys
