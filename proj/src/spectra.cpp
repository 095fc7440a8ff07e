// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#include "k3map/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "k3map/error.hpp"

namespace k3map {

namespace mp = boost::multiprecision;

namespace {

// Approximations are carried between precision stages at the widest
// precision so that promotion never loses digits.
constexpr unsigned kStoreDigits = 400;
using StoreReal = mp::number<mp::cpp_bin_float<kStoreDigits>>;
using StoreComplex = mp::cpp_complex<kStoreDigits>;

struct FactorTargets {
  std::size_t on_circle = 0;  // distinct roots of this factor on |z| = 1
  std::size_t real = 0;       // distinct real roots of this factor
};

struct Budget {
  unsigned used = 0;
  unsigned cap = 0;
};

template <class T>
T larger(const T& a, const T& b) {
  return a < b ? b : a;
}

double round_up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }

// Count of distinct unit-circle roots of a square-free integer polynomial.
// Every unit-circle root of a real polynomial is also a root of its reversal,
// so they all divide g = gcd(q, reversal(q)). After removing x - 1 and x + 1,
// g is self-reciprocal of even degree 2m and g(x) = x^m h(x + 1/x); a root
// pair {z, 1/z} lies on the circle iff x + 1/x is real in (-2, 2).
std::size_t unit_circle_count_squarefree(const IntPoly& q) {
  IntPoly g = gcd(q, reversal(q));
  if (g.degree() < 1) return 0;
  std::size_t count = 0;
  for (long long s : {1LL, -1LL}) {
    const IntPoly linear{-s, 1};
    if (divides(linear, g)) {
      ++count;
      g = exact_quotient(g, linear);
    }
  }
  if (g.degree() >= 2) {
    const IntPoly h = trace_polynomial(g);
    count += 2 * SturmSequence(h).count_in(Rational(-2), Rational(2));
  }
  return count;
}

template <unsigned Digits>
struct Stage {
  using Real = mp::number<mp::cpp_bin_float<Digits>>;
  using Complex = mp::cpp_complex<Digits>;

  static Complex down(const StoreComplex& z) { return Complex(Real(z.real()), Real(z.imag())); }
  static StoreComplex up(const Complex& z) { return StoreComplex(StoreReal(z.real()), StoreReal(z.imag())); }

  // Returns true and fills `out` once every disc is certified, the discs are
  // pairwise disjoint, the circle/real classifications match the exact
  // counts and every double enclosure meets the eps target.
  static bool run(const IntPoly& q, std::vector<StoreComplex>& approx, const FactorTargets& targets, double eps,
                  Budget& budget, std::vector<RootEnclosure>& out) {
    const std::size_t d = static_cast<std::size_t>(q.degree());
    std::vector<Real> a;
    a.reserve(d + 1);
    for (const auto& c : q.coeffs()) a.emplace_back(c);
    std::vector<Complex> z;
    z.reserve(d);
    for (const auto& v : approx) z.push_back(down(v));

    const Real u = mp::pow(Real(10), -static_cast<int>(Digits) + 2);
    const Real stop = mp::pow(Real(10), -static_cast<int>(Digits) + 8);

    auto eval = [&](const Complex& x, Complex& p, Complex& dp) {
      p = Complex(a[d]);
      dp = Complex(0);
      for (std::size_t i = d; i-- > 0;) {
        dp = dp * x + p;
        p = p * x + Complex(a[i]);
      }
    };

    // Aberth-Ehrlich iteration.
    while (budget.used < budget.cap) {
      ++budget.used;
      Real worst = 0;
      for (std::size_t k = 0; k < d; ++k) {
        Complex p, dp;
        eval(z[k], p, dp);
        if (p == Complex(0)) continue;
        const Complex w = p / dp;
        Complex s(0);
        for (std::size_t j = 0; j < d; ++j)
          if (j != k) s += Complex(1) / (z[k] - z[j]);
        const Complex corr = w / (Complex(1) - w * s);
        z[k] -= corr;
        const Real scale = larger(Real(1), Real(mp::abs(z[k])));
        worst = larger(worst, Real(mp::abs(corr) / scale));
      }
      if (worst < stop) break;
    }
    for (std::size_t k = 0; k < d; ++k) approx[k] = up(z[k]);

    // Inclusion radii: a polynomial of degree d has a root within
    // d |p(z)| / |p'(z)| of any z. Evaluation error is bounded by a running
    // Horner bound on sum |a_i| |z|^i.
    std::vector<Real> radius(d);
    for (std::size_t k = 0; k < d; ++k) {
      Complex p, dp;
      eval(z[k], p, dp);
      const Real m = mp::abs(z[k]);
      Real sum = 0, dsum = 0, mpow = 1;
      for (std::size_t i = 0; i <= d; ++i) {
        sum += mp::abs(a[i]) * mpow;
        if (i + 1 <= d) dsum += mp::abs(a[i + 1]) * Real(static_cast<unsigned>(i + 1)) * mpow;
        mpow *= m;
      }
      const Real slack = Real(8 * (d + 1)) * u;
      const Real ep = slack * sum;
      const Real ed = slack * dsum;
      const Real adp = mp::abs(dp);
      if (adp <= ed) return false;
      radius[k] = Real(d) * (mp::abs(p) + ep) / (adp - ed) * (Real(1) + u * 10);
      if (radius[k] == 0) radius[k] = u * larger(Real(1), m);
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (mp::abs(z[i] - z[j]) <= radius[i] + radius[j]) return false;

    std::size_t ambiguous = 0;
    std::size_t touching_axis = 0;
    std::vector<CircleClass> loc(d);
    std::vector<bool> on_axis(d);
    for (std::size_t k = 0; k < d; ++k) {
      const Real m = mp::abs(z[k]);
      if (m - radius[k] > 1) {
        loc[k] = CircleClass::Outside;
      } else if (m + radius[k] < 1) {
        loc[k] = CircleClass::Inside;
      } else {
        loc[k] = CircleClass::On;
        ++ambiguous;
      }
      on_axis[k] = mp::abs(z[k].imag()) <= radius[k];
      if (on_axis[k]) ++touching_axis;
    }
    // A disc containing a unit-circle (or real) root always meets the circle
    // (or the axis); equality of counts pins down which discs those are.
    if (ambiguous != targets.on_circle || touching_axis != targets.real) return false;

    std::vector<RootEnclosure> result;
    result.reserve(d);
    for (std::size_t k = 0; k < d; ++k) {
      RootEnclosure e;
      const double re = static_cast<double>(z[k].real());
      const double im = on_axis[k] ? 0.0 : static_cast<double>(z[k].imag());
      e.midpoint = {re, im};
      e.is_real = on_axis[k];
      const Complex mid_hp{Real(re), Real(im)};
      const Real total = radius[k] + mp::abs(z[k] - mid_hp);
      e.radius = round_up(static_cast<double>(total));
      e.location = loc[k];
      if (!(e.radius <= eps * std::max(1.0, std::abs(e.midpoint)))) return false;
      result.push_back(e);
    }
    out = std::move(result);
    return true;
  }
};

std::vector<StoreComplex> initial_points(const IntPoly& q) {
  const std::size_t d = static_cast<std::size_t>(q.degree());
  const StoreReal lead(q.lead());
  StoreReal bound = 0;
  for (std::size_t i = 0; i < d; ++i) bound = larger(bound, StoreReal(mp::abs(StoreReal(q.coeffs()[i]) / lead)));
  bound += 1;
  const StoreReal center = -StoreReal(q.coeffs()[d - 1]) / (lead * StoreReal(static_cast<unsigned>(d)));
  const StoreReal two_pi = 2 * mp::acos(StoreReal(-1));
  std::vector<StoreComplex> z;
  for (std::size_t k = 0; k < d; ++k) {
    // Offset angle keeps starting points off the real axis.
    const StoreReal angle = two_pi * StoreReal(static_cast<unsigned>(k)) / StoreReal(static_cast<unsigned>(d)) + StoreReal(0.4);
    const StoreReal rad = bound * StoreReal(0.9);
    z.emplace_back(center + rad * mp::cos(angle), rad * mp::sin(angle));
  }
  return z;
}

std::vector<RootEnclosure> linear_root(const IntPoly& q) {
  const Rational root = Rational(-q.coeff(0)) / Rational(q.coeff(1));
  const double mid = static_cast<double>(root);
  const Rational diff = abs(root - Rational(mid));
  RootEnclosure e;
  e.midpoint = {mid, 0.0};
  e.radius = diff == 0 ? 0.0 : round_up(static_cast<double>(diff));
  e.is_real = true;
  const Rational mag = abs(root);
  e.location = mag > 1 ? CircleClass::Outside : (mag < 1 ? CircleClass::Inside : CircleClass::On);
  return {e};
}

std::vector<RootEnclosure> solve_squarefree(const IntPoly& q, double eps, Budget& budget) {
  if (q.degree() == 1) return linear_root(q);
  FactorTargets targets;
  targets.on_circle = unit_circle_count_squarefree(q);
  targets.real = SturmSequence(q).count_real();
  std::vector<StoreComplex> approx = initial_points(q);
  std::vector<RootEnclosure> out;
  if (Stage<50>::run(q, approx, targets, eps, budget, out)) return out;
  if (Stage<100>::run(q, approx, targets, eps, budget, out)) return out;
  if (Stage<200>::run(q, approx, targets, eps, budget, out)) return out;
  if (Stage<400>::run(q, approx, targets, eps, budget, out)) return out;
  throw Error(ErrorCode::RefinementBudgetExceeded,
              "could not certify the roots of " + to_string(q) + " to eps = " + std::to_string(eps) + " within " +
                  std::to_string(budget.cap) + " refinement rounds");
}

}  // namespace

std::vector<RootEnclosure> Spectrum::expanded() const {
  std::vector<RootEnclosure> out;
  for (const auto& r : roots)
    for (unsigned i = 0; i < r.multiplicity; ++i) out.push_back(r);
  return out;
}

std::size_t exact_unit_circle_count(const IntPoly& p) {
  std::size_t count = 0;
  for (const auto& f : square_free_decomposition(p)) count += f.multiplicity * unit_circle_count_squarefree(f.factor);
  return count;
}

bool has_distinct_real_roots(const IntPoly& p) {
  if (p.degree() < 1) return false;
  if (discriminant(p) == 0) return false;
  return SturmSequence(p).count_real() == static_cast<std::size_t>(p.degree());
}

Spectrum certified_roots(const IntPoly& p, const SpectraOptions& options) {
  if (p.degree() < 1) throw Error(ErrorCode::InvalidArgument, "certified_roots needs degree >= 1");
  if (!(options.eps > 0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  Spectrum s;
  s.poly = p;
  Budget budget{0, options.max_rounds};
  for (const auto& f : square_free_decomposition(p)) {
    for (auto e : solve_squarefree(f.factor, options.eps, budget)) {
      e.multiplicity = f.multiplicity;
      switch (e.location) {
        case CircleClass::On: s.on_circle += f.multiplicity; break;
        case CircleClass::Inside: s.inside += f.multiplicity; break;
        case CircleClass::Outside: s.outside += f.multiplicity; break;
        case CircleClass::Undecided: break;
      }
      s.roots.push_back(e);
    }
  }
  std::sort(s.roots.begin(), s.roots.end(), [](const RootEnclosure& x, const RootEnclosure& y) {
    const double mx = std::abs(x.midpoint), my = std::abs(y.midpoint);
    if (mx != my) return mx > my;
    return std::arg(x.midpoint) > std::arg(y.midpoint);
  });
  s.all_real_distinct = has_distinct_real_roots(p);
  s.cyclotomic_orders = cyclotomic_orders(p);
  return s;
}

EntropyValue entropy_formula(const Spectrum& s) {
  EntropyValue h;
  for (const auto& r : s.roots) {
    if (r.location == CircleClass::Undecided)
      throw Error(ErrorCode::UndecidedCircleMembership, "a root enclosure straddles the unit circle undecided");
    if (r.location != CircleClass::Outside) continue;
    const double m = std::abs(r.midpoint);
    const double lm = std::log(m);
    h.value += r.multiplicity * lm;
    h.error += r.multiplicity * (r.radius / (m - r.radius));
    h.terms.push_back({r, lm});
  }
  if (!h.terms.empty()) h.error += 4 * std::numeric_limits<double>::epsilon() * (std::abs(h.value) + 1.0);
  return h;
}

Bounded spectral_radius(const Spectrum& s) {
  Bounded b;
  for (const auto& r : s.roots) {
    b.value = std::max(b.value, std::abs(r.midpoint));
    b.error = std::max(b.error, r.radius);
  }
  b.error += 2 * std::numeric_limits<double>::epsilon() * b.value;
  return b;
}

Bounded pair_product_radius(const Spectrum& s) {
  if (s.degree() != 4) throw Error(ErrorCode::DimensionMismatch, "pair_product_radius needs a degree-4 spectrum");
  const auto roots = s.expanded();
  Bounded b;
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const double mi = std::abs(roots[i].midpoint), mj = std::abs(roots[j].midpoint);
      const double ri = roots[i].radius, rj = roots[j].radius;
      b.value = std::max(b.value, mi * mj);
      b.error = std::max(b.error, mi * rj + mj * ri + ri * rj);
    }
  b.error += 4 * std::numeric_limits<double>::epsilon() * b.value;
  return b;
}

Bounded log_kth_modulus(const Spectrum& s, std::size_t k) {
  auto roots = s.expanded();
  if (k == 0 || k > roots.size()) throw Error(ErrorCode::InvalidArgument, "log_kth_modulus: k out of range");
  std::vector<double> mods;
  double err = 0;
  for (const auto& r : roots) {
    const double m = std::abs(r.midpoint);
    mods.push_back(m);
    err = std::max(err, r.radius / (m - r.radius));
  }
  std::sort(mods.rbegin(), mods.rend());
  return {std::log(mods[k - 1]), err + 4 * std::numeric_limits<double>::epsilon()};
}

}  // namespace k3map
