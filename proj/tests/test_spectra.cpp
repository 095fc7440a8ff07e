#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "k3map/error.hpp"
#include "k3map/matrix.hpp"
#include "k3map/spectra.hpp"
#include "test_support.hpp"

using namespace k3map;
using k3map::testing::companion_literal;
using k3map::testing::random_sl;

namespace {

// True root inside the certified disc of some enclosure.
bool enclosed(const Spectrum& s, std::complex<double> root) {
  for (const auto& r : s.roots)
    if (std::abs(r.midpoint - root) <= r.radius + 1e-15 * std::abs(root)) return true;
  return false;
}

// Values computed with mpmath polyroots at 40 digits.
constexpr double kLogSilver2 = 1.7627471740390861;      // 2 log(1 + sqrt 2)
constexpr double kProduct34Entropy = 2.2793815470440236;  // log((3+sqrt5)/2) + log(2+sqrt3)
constexpr double kGap3Modulus = 1.5050027746363743;      // complex pair of x^4+3x+1
constexpr double kGap3Real = -1.30748610096198;
constexpr double kGap3PairProduct = 2.2650333516631852;

}  // namespace

TEST_CASE("certified roots of x^4 - 6x^2 + 1") {
  const Spectrum s = certified_roots(IntPoly{1, 0, -6, 0, 1});
  CHECK(s.outside == 2);
  CHECK(s.inside == 2);
  CHECK(s.on_circle == 0);
  CHECK(s.all_real_distinct);
  const double r2 = std::sqrt(2.0);
  for (double v : {1 + r2, -(1 + r2), r2 - 1, 1 - r2}) CHECK(enclosed(s, {v, 0.0}));
  for (const auto& r : s.roots) {
    CHECK(r.is_real);
    CHECK(r.radius <= 1e-12 * std::max(1.0, std::abs(r.midpoint)));
  }
  CHECK(s.cyclotomic_orders.empty());
}

TEST_CASE("repeated roots on the circle") {
  const Spectrum s = certified_roots(IntPoly{1, -4, 6, -4, 1});
  CHECK(s.on_circle == 4);
  REQUIRE(s.roots.size() == 1);
  CHECK(s.roots[0].multiplicity == 4);
  CHECK(s.roots[0].midpoint == std::complex<double>(1.0, 0.0));
  CHECK(s.roots[0].radius == 0.0);
  CHECK_FALSE(s.all_real_distinct);
  CHECK(s.expanded().size() == 4);
}

TEST_CASE("x^4 + 3x + 1 has three roots outside") {
  const Spectrum s = certified_roots(IntPoly{1, 3, 0, 0, 1});
  CHECK(s.outside == 3);
  CHECK(s.inside == 1);
  CHECK(s.on_circle == 0);
  CHECK_FALSE(s.all_real_distinct);
  CHECK(enclosed(s, {kGap3Real, 0.0}));
  CHECK(std::abs(s.roots[0].midpoint) == doctest::Approx(kGap3Modulus).epsilon(1e-14));
  CHECK(spectral_radius(s).value == doctest::Approx(kGap3Modulus).epsilon(1e-14));
  CHECK(pair_product_radius(s).value == doctest::Approx(kGap3PairProduct).epsilon(1e-14));
  // Product of all roots is the constant term.
  double prod = 1;
  for (const auto& r : s.expanded()) prod *= std::abs(r.midpoint);
  CHECK(prod == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("unit circle decided exactly for Salem and cyclotomic factors") {
  // Lehmer-style Salem quartic: one root 1.7221, one 0.5807, two on the circle.
  const Spectrum salem = certified_roots(IntPoly{1, -1, -1, -1, 1});
  CHECK(salem.on_circle == 2);
  CHECK(salem.outside == 1);
  CHECK(salem.inside == 1);
  CHECK(exact_unit_circle_count(IntPoly{1, -1, -1, -1, 1}) == 2);

  const Spectrum phi12 = certified_roots(IntPoly{1, 0, -1, 0, 1});
  CHECK(phi12.on_circle == 4);
  CHECK(phi12.cyclotomic_orders == std::vector<unsigned>{12});

  const Spectrum mixed = certified_roots(IntPoly{1, 1} * IntPoly{1, 1} * IntPoly{1, -3, 1});
  CHECK(mixed.on_circle == 2);
  CHECK(mixed.outside == 1);
  CHECK(mixed.inside == 1);
  CHECK(mixed.cyclotomic_orders == std::vector<unsigned>{2, 2});
}

TEST_CASE("entropy formula") {
  CHECK(entropy_formula(certified_roots(IntPoly{1, -4, 6, -4, 1})).value == 0.0);

  const EntropyValue h = entropy_formula(certified_roots(IntPoly{1, 0, -6, 0, 1}));
  CHECK(h.value == doctest::Approx(kLogSilver2).epsilon(1e-14));
  CHECK(h.error < 1e-11);
  CHECK(h.terms.size() == 2);

  const EntropyValue h34 = entropy_formula(certified_roots(IntPoly{1, 7, 14, 7, 1}));
  CHECK(h34.value == doctest::Approx(kProduct34Entropy).epsilon(1e-14));

  Spectrum undecided = certified_roots(IntPoly{1, 0, -6, 0, 1});
  undecided.roots[0].location = CircleClass::Undecided;
  try {
    (void)entropy_formula(undecided);
    FAIL("expected UndecidedCircleMembership");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UndecidedCircleMembership);
  }
}

TEST_CASE("radii") {
  const Spectrum id = certified_roots(IntPoly{1, -4, 6, -4, 1});
  CHECK(spectral_radius(id).value == 1.0);
  CHECK(pair_product_radius(id).value == 1.0);

  const Spectrum s = certified_roots(IntPoly{1, 0, -6, 0, 1});
  CHECK(spectral_radius(s).value == doctest::Approx(1 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(pair_product_radius(s).value == doctest::Approx(3 + 2 * std::sqrt(2.0)).epsilon(1e-14));

  // Oracle: spectral radius of the explicitly computed minors matrix.
  const IntMat w = wedge_square(companion_literal({1, 0, -6, 0, 1}));
  const Spectrum ws = certified_roots(char_poly(w));
  CHECK(spectral_radius(ws).value == doctest::Approx(5.8284271247461901).epsilon(1e-14));

  CHECK_THROWS_AS(pair_product_radius(certified_roots(IntPoly{1, -3, 1})), Error);
}

TEST_CASE("argument errors and refinement budget") {
  CHECK_THROWS_AS(certified_roots(IntPoly{3}), Error);
  SpectraOptions bad;
  bad.eps = 0;
  CHECK_THROWS_AS(certified_roots(IntPoly{1, 0, -6, 0, 1}, bad), Error);

  SpectraOptions tiny;
  tiny.max_rounds = 1;
  try {
    (void)certified_roots(IntPoly{1, 3, 0, 0, 1}, tiny);
    FAIL("expected RefinementBudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RefinementBudgetExceeded);
  }
}

TEST_CASE("invariants over random SL(4,Z)") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const IntMat t = random_sl(rng, 4, 12);
    const IntPoly p = char_poly(t);
    const Spectrum s = certified_roots(p);
    CHECK(s.degree() == 4);

    // Outside-sum is invariant under reversal.
    const EntropyValue h = entropy_formula(s);
    const EntropyValue hr = entropy_formula(certified_roots(reversal(p)));
    CHECK(std::abs(h.value - hr.value) <= h.error + hr.error + 1e-12);

    // Pairwise products are the eigenvalues of the wedge square.
    const Bounded pp = pair_product_radius(s);
    const Bounded ws = spectral_radius(certified_roots(char_poly(wedge_square(t))));
    CHECK(std::abs(pp.value - ws.value) <= pp.error + ws.error);

    // Power law for k = 2, 3.
    for (unsigned k : {2u, 3u}) {
      const EntropyValue hk = entropy_formula(certified_roots(char_poly(power(t, k))));
      CHECK(std::abs(hk.value - k * h.value) <= hk.error + k * h.error + 1e-12);
    }

    if (s.outside == 2) CHECK(std::abs(std::log(pp.value) - h.value) <= 1e-9);

    // Product of all moduli is |det| = 1.
    double logprod = 0;
    for (const auto& r : s.expanded()) logprod += std::log(std::abs(r.midpoint));
    CHECK(std::abs(logprod) < 1e-9);
  }
}
