// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "k3map/bigint.hpp"

namespace k3map {

// Dense univariate polynomial over Z. coeffs()[i] is the coefficient of x^i;
// the representation carries no trailing zeros, so the zero polynomial has
// no coefficients and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> ascending);
  IntPoly(std::initializer_list<long long> ascending);

  static IntPoly monomial(unsigned degree, const BigInt& coeff = 1);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  // Zero for indices above the degree.
  BigInt coeff(std::size_t power) const;
  const BigInt& lead() const { return coeffs_.back(); }
  bool is_monic() const { return !is_zero() && lead() == 1; }

  Rational operator()(const Rational& x) const;
  BigInt operator()(const BigInt& x) const;

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a);

IntPoly derivative(const IntPoly& p);

// x^deg p(1/x).
IntPoly reversal(const IntPoly& p);

BigInt content(const IntPoly& p);

// p / content(p) with a positive leading coefficient.
IntPoly primitive_part(const IntPoly& p);

// Greatest common divisor over Q, returned as a primitive integer polynomial
// with positive leading coefficient. gcd(0, 0) = 0.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

// Quotient a / b over Q when b divides a; the result is scaled to be
// primitive with positive leading coefficient. Throws if b does not divide a.
IntPoly exact_quotient(const IntPoly& a, const IntPoly& b);

// True when b divides a over Q.
bool divides(const IntPoly& b, const IntPoly& a);

struct SquareFreeFactor {
  IntPoly factor;  // primitive, positive leading coefficient, square-free
  unsigned multiplicity = 0;
};

// Yun's algorithm over Q. The product of factor^multiplicity equals
// primitive_part(p). Factors of degree 0 are omitted.
std::vector<SquareFreeFactor> square_free_decomposition(const IntPoly& p);

// Sturm sequence over Q (scaled to integer coefficients at every step, which
// preserves sign variations since the scale factors are positive).
class SturmSequence {
 public:
  explicit SturmSequence(const IntPoly& p);

  // Sign variations of the sequence evaluated at x.
  std::size_t variations_at(const Rational& x) const;
  std::size_t variations_at_plus_infinity() const;
  std::size_t variations_at_minus_infinity() const;

  // Number of distinct real roots in (lo, hi].
  std::size_t count_in(const Rational& lo, const Rational& hi) const;
  // Number of distinct real roots.
  std::size_t count_real() const;

 private:
  std::vector<IntPoly> chain_;
};

// Resultant via the Sylvester determinant (exact).
BigInt resultant(const IntPoly& a, const IntPoly& b);

// (-1)^(n(n-1)/2) res(p, p') / lead(p).
BigInt discriminant(const IntPoly& p);

// For a self-reciprocal p of even degree 2m (x^{2m} p(1/x) = p) returns the
// degree-m polynomial h with p(x) = x^m h(x + 1/x).
IntPoly trace_polynomial(const IntPoly& p);

// The k-th cyclotomic polynomial.
IntPoly cyclotomic(unsigned k);

// Orders k (ascending, with repetition for repeated factors) such that
// cyclotomic(k) divides p. Only k with phi(k) <= deg p are examined.
std::vector<unsigned> cyclotomic_orders(const IntPoly& p);

// Renders with descending powers, e.g. "x^4 - 6x^2 + 1".
std::string to_string(const IntPoly& p);

// Accepts integer-coefficient expressions in x built from +, -, implicit or
// explicit (*) products, ^ with non-negative integer exponents, and
// parentheses: "x^4-6x^2+1", "(x^2+3x+1)(x^2+4x+1)", "x^4 + 3*x + 1".
// Throws Error(Parse).
IntPoly parse_poly(const std::string& text);

}  // namespace k3map
