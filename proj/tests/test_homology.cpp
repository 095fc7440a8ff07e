#include <cmath>
#include <random>

#include "doctest.h"
#include "k3map/error.hpp"
#include "k3map/homology.hpp"
#include "test_support.hpp"

using namespace k3map;
using k3map::testing::companion_literal;
using k3map::testing::random_sl;

namespace {

constexpr double kSilverSquared = 5.8284271247461901;  // (1 + sqrt 2)^2
constexpr double kGap3PairProduct = 2.2650333516631852;
constexpr double kProduct34Entropy = 2.2793815470440236;

}  // namespace

TEST_CASE("wedge pairing Gram matrix") {
  // Written out from e_i ^ e_j ^ e_k ^ e_l = sign * e_1234 in the basis 12,13,14,23,24,34.
  const IntMat expected = IntMat::from_rows({{0, 0, 0, 0, 0, 1},
                                             {0, 0, 0, 0, -1, 0},
                                             {0, 0, 0, 1, 0, 0},
                                             {0, 0, 1, 0, 0, 0},
                                             {0, -1, 0, 0, 0, 0},
                                             {1, 0, 0, 0, 0, 0}});
  CHECK(wedge_pairing_gram() == expected);
  const Signature s = signature(wedge_pairing_gram());
  CHECK(s.positive == 3);
  CHECK(s.negative == 3);
  CHECK(s.zero == 0);
}

TEST_CASE("signature of small symmetric matrices") {
  const Signature a = signature(IntMat::from_rows({{2, 1}, {1, 2}}));
  CHECK(a.positive == 2);
  CHECK(a.negative == 0);
  const Signature b = signature(IntMat::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}));
  CHECK(b.positive == 1);
  CHECK(b.negative == 1);
  CHECK(b.zero == 1);
  const Signature c = signature(scaled(IntMat::identity(16), BigInt(-2)));
  CHECK(c.negative == 16);
  CHECK_THROWS_AS(signature(IntMat::from_rows({{0, 1}, {0, 0}})), Error);
}

TEST_CASE("identity acts trivially") {
  const HomologyAction h = build_action(IntMat::identity(4));
  CHECK(h.block_matrix() == IntMat::identity(22));
  CHECK(h.permutation.is_identity());
  CHECK(homological_specrad(h).value == 1.0);
  CHECK(yomdin_bound(h).value == 0.0);
  CHECK(h.gram_w == scaled(IntMat::identity(16), BigInt(-2)));
}

TEST_CASE("block structure of the 22x22 action") {
  const IntMat t = companion_literal({1, 3, 0, 0, 1});
  const HomologyAction h = build_action(t);
  CHECK(h.permutation.cycle_type() == std::vector<std::size_t>{15, 1});
  CHECK(h.wedge_block == wedge_square(t));
  const IntMat m = h.block_matrix();
  REQUIRE(m.dim() == 22);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 16; j < 22; ++j) {
      CHECK(m(i, j) == 0);
      CHECK(m(j, i) == 0);
    }
  CHECK(preserves_form(m, h.block_gram()));
}

TEST_CASE("T congruent to I mod 2 fixes every torsion point") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const IntMat s = random_sl(rng);
    // I + 2 B with det 1: conjugate a unipotent matrix I + 2 E_ij.
    IntMat u = IntMat::identity(4);
    u(trial % 4, (trial + 1) % 4) = 2;
    const IntMat t = s * u * unimodular_inverse(s);
    const HomologyAction h = build_action(t);
    CHECK(h.perm_block == IntMat::identity(16));
  }
}

TEST_CASE("forms are preserved for random T") {
  std::mt19937_64 rng(2026);
  const IntMat gw = scaled(IntMat::identity(16), BigInt(-2));
  const IntMat gd = wedge_pairing_gram();
  for (int trial = 0; trial < 100; ++trial) {
    const IntMat t = random_sl(rng);
    const HomologyAction h = build_action(t);
    CHECK(preserves_form(h.perm_block, gw));
    CHECK(preserves_form(h.wedge_block, gd));
    const std::size_t order = h.permutation.order();
    CHECK(power(h.perm_block, static_cast<unsigned>(order)) == IntMat::identity(16));
    CHECK(order <= 20160);
  }
}

TEST_CASE("homological spectral radius examples") {
  const HomologyAction silver = build_action(companion_literal({1, 0, -6, 0, 1}));
  CHECK(homological_specrad(silver).value == doctest::Approx(kSilverSquared).epsilon(1e-12));
  CHECK(yomdin_bound(silver).value == doctest::Approx(std::log(kSilverSquared)).epsilon(1e-12));

  const HomologyAction gap = build_action(companion_literal({1, 3, 0, 0, 1}));
  CHECK(homological_specrad(gap).value == doctest::Approx(kGap3PairProduct).epsilon(1e-12));

  const HomologyAction product = build_action(companion_literal({1, 7, 14, 7, 1}));
  CHECK(yomdin_bound(product).value == doctest::Approx(kProduct34Entropy).epsilon(1e-12));
}

TEST_CASE("radius agrees for T and its inverse") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const IntMat t = random_sl(rng);
    const Bounded a = homological_specrad(build_action(t));
    const Bounded b = homological_specrad(build_action(unimodular_inverse(t)));
    CHECK(std::abs(a.value - b.value) <= a.error + b.error + 1e-12 * a.value);
  }
}

TEST_CASE("build_action rejects bad input") {
  CHECK_THROWS_AS(build_action(IntMat::identity(3)), Error);
  CHECK_THROWS_AS(build_action(IntMat::from_rows({{-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})), Error);
}
