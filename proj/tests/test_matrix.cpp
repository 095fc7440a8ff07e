#include <random>

#include "doctest.h"
#include "k3map/error.hpp"
#include "k3map/matrix.hpp"
#include "test_support.hpp"

using namespace k3map;
using k3map::testing::companion_literal;
using k3map::testing::random_sl;

namespace {
IntMat unit6(std::initializer_list<std::pair<int, int>> extra_ones_1based) {
  IntMat m = IntMat::identity(6);
  for (auto [r, c] : extra_ones_1based) m(r - 1, c - 1) = 1;
  return m;
}
}  // namespace

TEST_CASE("validate") {
  CHECK_NOTHROW(validate(IntMat::identity(4)));
  CHECK_NOTHROW(validate(companion_literal({1, 0, -6, 0, 1})));

  IntMat flip = IntMat::identity(4);
  flip(3, 3) = -1;
  try {
    validate(flip);
    FAIL("expected DetNotOne");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DetNotOne);
    CHECK(e.detail() == "-1");
  }
  CHECK_NOTHROW(validate(flip, ValidationMode::Dynamics));

  const IntMat cat = IntMat::from_rows({{2, 1}, {1, 1}});
  CHECK_THROWS_AS(validate(cat), Error);
  CHECK_NOTHROW(validate(cat, ValidationMode::Dynamics));
  CHECK_THROWS_AS(validate(IntMat::from_rows({{2, 0}, {0, 1}}), ValidationMode::Dynamics), Error);

  try {
    (void)IntMat::from_rows({{1, 0, 0}, {0, 1}});
    FAIL("expected NonSquare");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSquare);
  }
}

TEST_CASE("determinant and inverse") {
  CHECK(determinant(IntMat::from_rows({{2, 1}, {1, 1}})) == 1);
  CHECK(determinant(IntMat::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}})) == -1);
  CHECK(determinant(IntMat::from_rows({{1, 2}, {2, 4}})) == 0);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const IntMat t = random_sl(rng);
    CHECK(determinant(t) == 1);
    CHECK((t * unimodular_inverse(t)).is_identity());
  }
}

TEST_CASE("characteristic polynomial") {
  CHECK(char_poly(IntMat::identity(4)) == IntPoly{1, -4, 6, -4, 1});
  CHECK(char_poly(companion_literal({1, 0, -6, 0, 1})) == IntPoly{1, 0, -6, 0, 1});
  CHECK(char_poly(companion_literal({1, 7, 14, 7, 1})) == IntPoly{1, 7, 14, 7, 1});

  // Oracle: p(k) = det(kI - A) at several integer points.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const IntMat a = random_sl(rng, 4, 12);
    const IntPoly p = char_poly(a);
    CHECK(p.is_monic());
    CHECK(p.coeff(0) == 1);
    for (long long k = -3; k <= 3; ++k) {
      const IntMat shifted = scaled(IntMat::identity(4), BigInt(k)) - a;
      CHECK(p(BigInt(k)) == determinant(shifted));
    }
  }
}

TEST_CASE("wedge square") {
  CHECK(wedge_square(IntMat::identity(4)) == IntMat::identity(6));

  IntMat e12 = IntMat::identity(4);
  e12(0, 1) = 1;  // e2 -> e1 + e2
  // e2^e3 -> e1^e3 + e2^e3 and e2^e4 -> e1^e4 + e2^e4.
  CHECK(wedge_square(e12) == unit6({{2, 4}, {3, 5}}));
  CHECK(wedge_square(e12.transpose()) == unit6({{4, 2}, {5, 3}}));

  CHECK_THROWS_AS(wedge_square(IntMat::identity(3)), Error);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const IntMat t = random_sl(rng), s = random_sl(rng);
    CHECK(determinant(wedge_square(t)) == 1);
    CHECK(wedge_square(t * s) == wedge_square(t) * wedge_square(s));
    CHECK(wedge_square(unimodular_inverse(t)) == unimodular_inverse(wedge_square(t)));
  }
}

TEST_CASE("mod-2 permutation of the two-torsion points") {
  CHECK(mod2_perm(IntMat::identity(4)).is_identity());

  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    IntMat b(4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) b(i, j) = entry(rng);
    CHECK(mod2_perm(IntMat::identity(4) + scaled(b, 2)).is_identity());
  }

  // x^4 + x + 1 is primitive over F_2: iterate the mod-2 companion on e1.
  const IntMat c = companion_literal({1, 3, 0, 0, 1});
  int bits[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) bits[i][j] = static_cast<int>(abs(c(i, j)) % 2);
  int v[4] = {1, 0, 0, 0};
  int orbit = 0;
  do {
    int w[4] = {0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) w[i] ^= bits[i][j] & v[j];
    std::copy(w, w + 4, v);
    ++orbit;
  } while (!(v[0] == 1 && v[1] == 0 && v[2] == 0 && v[3] == 0) && orbit < 100);
  CHECK(orbit == 15);

  const TorsionPerm p = mod2_perm(c);
  CHECK(p(0) == 0);
  CHECK(p.cycle_type() == std::vector<std::size_t>{15, 1});
  CHECK(p.order() == 15);

  for (int trial = 0; trial < 30; ++trial) {
    const IntMat t = random_sl(rng), s = random_sl(rng);
    CHECK(mod2_perm(t * s) == compose(mod2_perm(t), mod2_perm(s)));
    CHECK(mod2_perm(unimodular_inverse(t)) == mod2_perm(t).inverse());
    const TorsionPerm pt = mod2_perm(t);
    CHECK(pt(0) == 0);
    CHECK(power(pt.to_matrix(), static_cast<unsigned>(pt.order())).is_identity());
  }
}
