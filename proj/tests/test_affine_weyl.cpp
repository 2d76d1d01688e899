#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "qsys/affine_weyl.hpp"

using namespace qsys;

namespace {

AffineWeight random_affine(const DynkinData& d, int level, std::mt19937& rng, int spread = 6) {
  std::uniform_int_distribution<int> coord(-spread, spread);
  std::vector<int> c(static_cast<std::size_t>(d.rank + 1));
  for (std::size_t i = 1; i < c.size(); ++i) c[i] = coord(rng);
  Weight w(std::vector<int>(c.begin() + 1, c.end()));
  return affinize(d, w, level);
}

std::vector<int> random_word(const DynkinData& d, std::mt19937& rng, int max_len = 30) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> node(0, d.rank);
  std::vector<int> word(static_cast<std::size_t>(len(rng)));
  for (int& x : word) x = node(rng);
  return word;
}

// Independent reduction: reflect in the largest negative index instead of the smallest.
ReductionResult reduce_largest_first(const DynkinData& d, const AffineWeight& w) {
  std::vector<int> mu = w.coords;
  for (int& c : mu) ++c;
  int sign = 1;
  for (int guard = 0; guard < 1'000'000; ++guard) {
    if (std::find(mu.begin(), mu.end(), 0) != mu.end()) return {};
    int idx = -1;
    for (int i = static_cast<int>(mu.size()) - 1; i >= 0; --i)
      if (mu[static_cast<std::size_t>(i)] < 0) {
        idx = i;
        break;
      }
    if (idx < 0) break;
    const int ci = mu[static_cast<std::size_t>(idx)];
    for (std::size_t j = 0; j < mu.size(); ++j) mu[j] -= ci * d.extended_cartan[static_cast<std::size_t>(idx)][j];
    sign = -sign;
  }
  for (int& c : mu) --c;
  ReductionResult out;
  out.outcome = ReductionResult::Outcome::Dominant;
  out.rep = AffineWeight{w.level, mu};
  out.sign = sign;
  return out;
}

// Oracle for diagram automorphisms: try every permutation.
std::size_t brute_force_automorphism_count(const DynkinData& d) {
  std::vector<int> p(d.extended_cartan.size());
  std::iota(p.begin(), p.end(), 0);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < p.size() && ok; ++i)
      for (std::size_t j = 0; j < p.size() && ok; ++j)
        ok = d.extended_cartan[static_cast<std::size_t>(p[i])][static_cast<std::size_t>(p[j])] ==
             d.extended_cartan[i][j];
    count += ok ? 1 : 0;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

}  // namespace

TEST_CASE("affinize") {
  const DynkinData d5 = build_dynkin(Family::D, 5);
  CHECK(affinize(d5, Weight::zero(5), 3).coords == std::vector<int>{3, 0, 0, 0, 0, 0});
  CHECK(affinize(d5, Weight::fundamental(5, 2, 3), 4).coords == std::vector<int>{-2, 0, 3, 0, 0, 0});
  for (int r = 4; r <= 8; ++r) {
    const DynkinData d = build_dynkin(Family::D, r);
    for (int a : {1, r - 1, r})
      for (int m = 0; m <= 10; ++m) {
        const AffineWeight w = affinize(d, Weight::fundamental(r, a, m), 4);
        CHECK(w.coords[0] == 4 - m);
        CHECK(mark_sum(d, w.coords) == 4);
      }
  }
}

TEST_CASE("reflect: fixed hyperplane, involution, level preserved") {
  std::mt19937 rng(7);
  for (const auto& d : {build_dynkin(Family::D, 5), build_dynkin(Family::A, 3), build_dynkin(Family::A, 1)}) {
    for (int trial = 0; trial < 200; ++trial) {
      const AffineWeight w = random_affine(d, 1 + trial % 6, rng);
      for (int i = 0; i <= d.rank; ++i) {
        const AffineWeight s = reflect(d, i, w);
        CHECK(mark_sum(d, s.coords) == w.level);
        CHECK(reflect(d, i, s) == w);
        if (w.coords[static_cast<std::size_t>(i)] == 0) CHECK(s == w);
      }
    }
  }
  CHECK_THROWS_AS(reflect(build_dynkin(Family::A, 2), 3, make_affine(build_dynkin(Family::A, 2), {1, 0, 0})),
                  std::out_of_range);
}

TEST_CASE("shifted action on the D_r weights used in the midpoint identities") {
  const DynkinData d6 = build_dynkin(Family::D, 6);
  const std::vector<int> s0{0};
  // (k_4, k_2, k_0) = (1, 2, -2) at level 4 maps to (1, 1, 0) under s_0 . (-).
  const AffineWeight before = make_affine(d6, {-2, 0, 2, 0, 1, 0, 0});
  REQUIRE(before.level == 4);
  CHECK(shifted_action(d6, s0, before) == make_affine(d6, {0, 0, 1, 0, 1, 0, 0}));

  // lambda_0 = -1 is fixed by s_0.
  const AffineWeight fixed = make_affine(d6, {-1, 1, 0, 1, 1, 0, 0});
  CHECK(shifted_action(d6, s0, fixed) == fixed);

  // (k_4, k_2, k_0) = (3, 0, -2) is fixed by s_0 s_2 s_0.
  const std::vector<int> s020{0, 2, 0};
  const AffineWeight w = make_affine(d6, {-2, 0, 0, 0, 3, 0, 0});
  REQUIRE(w.level == 4);
  CHECK(shifted_action(d6, s020, w) == w);

  // Odd node: (k_5, k_3, k_1, k_0) = (1, 1, 1, -1) fixed by s_0, and (.., 0, -2) by s_0 s_2 s_0.
  const DynkinData d7 = build_dynkin(Family::D, 7);
  const AffineWeight odd1 = make_affine(d7, {-1, 1, 0, 1, 0, 1, 0, 0});
  REQUIRE(odd1.level == 4);
  CHECK(shifted_action(d7, s0, odd1) == odd1);
  const AffineWeight odd2 = make_affine(d7, {-2, 0, 0, 1, 0, 2, 0, 0});
  REQUIRE(odd2.level == 4);
  CHECK(shifted_action(d7, s020, odd2) == odd2);

  CHECK(shifted_action(d7, std::vector<int>{}, odd2) == odd2);
}

TEST_CASE("reduce_to_alcove basics") {
  const DynkinData d5 = build_dynkin(Family::D, 5);
  const AffineWeight dom = make_affine(d5, {1, 1, 0, 1, 0, 0});  // w0 + w1 + w3 at level 4
  REQUIRE(dom.level == 4);
  const ReductionResult r = reduce_to_alcove(d5, dom);
  CHECK_FALSE(r.is_zero());
  CHECK(r.rep == dom);
  CHECK(r.sign == 1);
  CHECK(r.reflections == 0);

  CHECK(reduce_to_alcove(d5, make_affine(d5, {-1, 3, 1, 0, 0, 0})).is_zero());
  CHECK(reduce_to_alcove(d5, make_affine(d5, {6, -1, 0, 0, 0, 0})).is_zero());

  // s_0 . (k_4=1, k_2=2, k_0=-2) lands on a dominant weight with sign -1.
  const DynkinData d6 = build_dynkin(Family::D, 6);
  const ReductionResult s = reduce_to_alcove(d6, make_affine(d6, {-2, 0, 2, 0, 1, 0, 0}));
  CHECK(s.rep == make_affine(d6, {0, 0, 1, 0, 1, 0, 0}));
  CHECK(s.sign == -1);

  CHECK_THROWS_AS(reduce_to_alcove(d6, make_affine(d6, {-2, 0, 2, 0, 1, 0, 0}), 0), IterationCapExceeded);
  CHECK_THROWS_AS(reduce_to_alcove(d6, make_affine(d6, {0, 0, 0, 0, 0, 0, 0})), std::invalid_argument);
}

TEST_CASE("reduce_to_alcove: result independent of the reflection order") {
  std::mt19937 rng(11);
  for (const auto& d : {build_dynkin(Family::D, 4), build_dynkin(Family::D, 6), build_dynkin(Family::A, 4)}) {
    for (int trial = 0; trial < 500; ++trial) {
      const AffineWeight w = random_affine(d, 1 + trial % 7, rng, 10);
      const ReductionResult a = reduce_to_alcove(d, w);
      const ReductionResult b = reduce_largest_first(d, w);
      CAPTURE(w.to_string());
      REQUIRE(a.is_zero() == b.is_zero());
      if (a.is_zero()) continue;
      CHECK(a.rep == b.rep);
      CHECK(a.sign == b.sign);
      CHECK(a.rep.dominant());
      CHECK(mark_sum(d, a.rep.coords) == w.level);
    }
  }
}

TEST_CASE("reduce_to_alcove: sign tracks the word length") {
  std::mt19937 rng(3);
  const DynkinData d = build_dynkin(Family::D, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    const AffineWeight w = random_affine(d, 4, rng);
    const std::vector<int> word = random_word(d, rng);
    const ReductionResult base = reduce_to_alcove(d, w);
    const ReductionResult moved = reduce_to_alcove(d, shifted_action(d, word, w));
    REQUIRE(base.is_zero() == moved.is_zero());
    if (base.is_zero()) continue;
    CHECK(base.rep == moved.rep);
    const int flips = word.size() % 2 ? -1 : 1;
    CHECK(moved.sign == base.sign * flips);
  }
}

TEST_CASE("diagram automorphisms") {
  CHECK(diagram_automorphisms(build_dynkin(Family::A, 1)).size() == 2);
  for (int r = 2; r <= 6; ++r) {
    const DynkinData d = build_dynkin(Family::A, r);
    CAPTURE(r);
    CHECK(brute_force_automorphism_count(d) == static_cast<std::size_t>(2 * (r + 1)));
    CHECK(diagram_automorphisms(d).size() == brute_force_automorphism_count(d));
    std::set<int> all;
    for (int i = 0; i <= r; ++i) all.insert(i);
    CHECK(orbit_of_zero(d) == all);
  }
  const DynkinData d4 = build_dynkin(Family::D, 4);
  CHECK(brute_force_automorphism_count(d4) == 24);
  CHECK(diagram_automorphisms(d4).size() == 24);
  CHECK(orbit_of_zero(d4) == std::set<int>{0, 1, 3, 4});

  for (int r = 5; r <= 7; ++r) {
    const DynkinData d = build_dynkin(Family::D, r);
    CAPTURE(r);
    const auto autos = diagram_automorphisms(d);
    CHECK(autos.size() == 8);
    CHECK(brute_force_automorphism_count(d) == 8);
    CHECK(orbit_of_zero(d) == std::set<int>{0, 1, r - 1, r});
    NodePermutation swap(static_cast<std::size_t>(r + 1));
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    std::swap(swap[static_cast<std::size_t>(r - 1)], swap[static_cast<std::size_t>(r)]);
    CHECK(std::find(autos.begin(), autos.end(), swap) != autos.end());
  }
}

TEST_CASE("permute preserves the level") {
  std::mt19937 rng(5);
  for (const auto& d : {build_dynkin(Family::D, 4), build_dynkin(Family::D, 5), build_dynkin(Family::A, 3)}) {
    for (const auto& pi : diagram_automorphisms(d))
      for (int trial = 0; trial < 50; ++trial) {
        const AffineWeight w = random_affine(d, 1 + trial % 5, rng);
        CHECK(mark_sum(d, permute(pi, w).coords) == w.level);
      }
  }
}
