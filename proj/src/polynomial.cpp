// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#include "k3map/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "k3map/error.hpp"
#include "k3map/matrix.hpp"

namespace k3map {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

// Polynomials over Q, used internally for Euclid-style algorithms.
using RatPoly = std::vector<Rational>;

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly to_rat(const IntPoly& p) {
  return RatPoly(p.coeffs().begin(), p.coeffs().end());
}

int deg(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

RatPoly sub(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

RatPoly rat_derivative(const RatPoly& p) {
  RatPoly r;
  for (std::size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * static_cast<long long>(i));
  trim(r);
  return r;
}

std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
  if (b.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  RatPoly q;
  if (deg(a) >= deg(b)) q.assign(a.size() - b.size() + 1, Rational(0));
  while (!a.empty() && deg(a) >= deg(b)) {
    const std::size_t shift = a.size() - b.size();
    const Rational factor = a.back() / b.back();
    q[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

RatPoly make_monic(RatPoly p) {
  if (p.empty()) return p;
  const Rational l = p.back();
  for (auto& c : p) c /= l;
  return p;
}

RatPoly rat_gcd(RatPoly a, RatPoly b) {
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a));
}

// Clears denominators and the integer content using positive factors only,
// so the sign of every value is preserved.
IntPoly to_int_same_sign(const RatPoly& p) {
  if (p.empty()) return {};
  BigInt l = 1;
  for (const auto& c : p) {
    const BigInt d = denominator(c);
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  std::vector<BigInt> out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(numerator(c) * (l / denominator(c)));
  BigInt g = 0;
  for (const auto& c : out) g = boost::multiprecision::gcd(g, abs(c));
  if (g > 1)
    for (auto& c : out) c /= g;
  return IntPoly(std::move(out));
}

IntPoly to_primitive(const RatPoly& p) { return primitive_part(to_int_same_sign(p)); }

}  // namespace

// ---------------------------------------------------------------------------

IntPoly::IntPoly(std::vector<BigInt> ascending) : coeffs_(std::move(ascending)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long long> ascending) {
  for (long long c : ascending) coeffs_.emplace_back(c);
  trim();
}

IntPoly IntPoly::monomial(unsigned degree, const BigInt& coeff) {
  std::vector<BigInt> c(degree + 1, BigInt(0));
  c[degree] = coeff;
  return IntPoly(std::move(c));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPoly::coeff(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : BigInt(0);
}

Rational IntPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

BigInt IntPoly::operator()(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> r(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) r[i] += a.coeffs()[i];
  for (std::size_t i = 0; i < b.coeffs().size(); ++i) r[i] += b.coeffs()[i];
  return IntPoly(std::move(r));
}

IntPoly operator-(const IntPoly& a) {
  std::vector<BigInt> r(a.coeffs());
  for (auto& c : r) c = -c;
  return IntPoly(std::move(r));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> r(a.coeffs().size() + b.coeffs().size() - 1);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) r[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return IntPoly(std::move(r));
}

IntPoly derivative(const IntPoly& p) {
  std::vector<BigInt> r;
  for (std::size_t i = 1; i < p.coeffs().size(); ++i) r.push_back(p.coeffs()[i] * static_cast<long long>(i));
  return IntPoly(std::move(r));
}

IntPoly reversal(const IntPoly& p) {
  std::vector<BigInt> r(p.coeffs().rbegin(), p.coeffs().rend());
  return IntPoly(std::move(r));
}

BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& c : p.coeffs()) g = boost::multiprecision::gcd(g, abs(c));
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  BigInt g = content(p);
  if (p.lead() < 0) g = -g;
  std::vector<BigInt> r(p.coeffs());
  for (auto& c : r) c /= g;
  return IntPoly(std::move(r));
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) { return to_primitive(rat_gcd(to_rat(a), to_rat(b))); }

bool divides(const IntPoly& b, const IntPoly& a) {
  if (b.is_zero()) return a.is_zero();
  return divmod(to_rat(a), to_rat(b)).second.empty();
}

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
  auto [q, r] = divmod(to_rat(a), to_rat(b));
  if (!r.empty()) throw Error(ErrorCode::InvalidArgument, "exact_quotient: divisor does not divide dividend");
  return to_primitive(q);
}

std::vector<SquareFreeFactor> square_free_decomposition(const IntPoly& p) {
  std::vector<SquareFreeFactor> out;
  if (p.degree() < 1) return out;
  const RatPoly f = to_rat(p);
  const RatPoly df = rat_derivative(f);
  const RatPoly a0 = rat_gcd(f, df);
  RatPoly b = divmod(f, a0).first;
  RatPoly c = divmod(df, a0).first;
  RatPoly d = sub(c, rat_derivative(b));
  for (unsigned i = 1; deg(b) >= 1; ++i) {
    const RatPoly a = rat_gcd(b, d);
    if (deg(a) >= 1) out.push_back({to_primitive(a), i});
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = sub(c, rat_derivative(b));
  }
  return out;
}

// ---------------------------------------------------------------------------

SturmSequence::SturmSequence(const IntPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "Sturm sequence of the zero polynomial");
  chain_.push_back(p);
  if (p.degree() < 1) return;
  chain_.push_back(derivative(p));
  while (chain_.back().degree() > 0) {
    const auto r = divmod(to_rat(chain_[chain_.size() - 2]), to_rat(chain_.back())).second;
    if (r.empty()) break;
    RatPoly neg(r);
    for (auto& c : neg) c = -c;
    chain_.push_back(to_int_same_sign(neg));
  }
}

namespace {
std::size_t count_variations(const std::vector<int>& signs) {
  std::size_t v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}
}  // namespace

std::size_t SturmSequence::variations_at(const Rational& x) const {
  std::vector<int> signs;
  for (const auto& q : chain_) signs.push_back(q(x).sign());
  return count_variations(signs);
}

std::size_t SturmSequence::variations_at_plus_infinity() const {
  std::vector<int> signs;
  for (const auto& q : chain_) signs.push_back(q.lead().sign());
  return count_variations(signs);
}

std::size_t SturmSequence::variations_at_minus_infinity() const {
  std::vector<int> signs;
  for (const auto& q : chain_) signs.push_back(q.degree() % 2 == 0 ? q.lead().sign() : -q.lead().sign());
  return count_variations(signs);
}

std::size_t SturmSequence::count_in(const Rational& lo, const Rational& hi) const {
  const auto a = variations_at(lo);
  const auto b = variations_at(hi);
  return a > b ? a - b : 0;
}

std::size_t SturmSequence::count_real() const {
  return variations_at_minus_infinity() - variations_at_plus_infinity();
}

// ---------------------------------------------------------------------------

BigInt resultant(const IntPoly& a, const IntPoly& b) {
  const int m = a.degree();
  const int n = b.degree();
  if (m < 0 || n < 0) return 0;
  if (m == 0 && n == 0) return 1;
  const std::size_t size = static_cast<std::size_t>(m + n);
  IntMat s(size);
  // Rows 0..n-1 hold shifted copies of a, rows n..n+m-1 of b (descending).
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s(r, r + k) = a.coeff(m - k);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s(n + r, r + k) = b.coeff(n - k);
  return determinant(s);
}

BigInt discriminant(const IntPoly& p) {
  const int n = p.degree();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "discriminant of a constant");
  if (n == 1) return 1;
  BigInt r = resultant(p, derivative(p)) / p.lead();
  if ((n * (n - 1) / 2) % 2 == 1) r = -r;
  return r;
}

IntPoly trace_polynomial(const IntPoly& p) {
  const int d = p.degree();
  if (d < 0 || d % 2 != 0 || reversal(p) != p)
    throw Error(ErrorCode::InvalidArgument, "trace_polynomial needs a self-reciprocal polynomial of even degree");
  const unsigned m = static_cast<unsigned>(d / 2);
  // V_k(y) = x^k + x^-k with y = x + 1/x; V_0 = 2, V_1 = y.
  IntPoly v_prev{2};
  IntPoly v_cur{0, 1};
  const IntPoly y{0, 1};
  IntPoly h{};
  h = h + IntPoly(std::vector<BigInt>{p.coeff(m)});
  for (unsigned k = 1; k <= m; ++k) {
    h = h + IntPoly(std::vector<BigInt>{p.coeff(m + k)}) * v_cur;
    IntPoly next = y * v_cur - v_prev;
    v_prev = std::move(v_cur);
    v_cur = std::move(next);
  }
  return h;
}

IntPoly cyclotomic(unsigned k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "cyclotomic(0)");
  IntPoly num = IntPoly::monomial(k) - IntPoly{1};
  for (unsigned d = 1; d < k; ++d)
    if (k % d == 0) num = exact_quotient(num, cyclotomic(d));
  return num;
}

std::vector<unsigned> cyclotomic_orders(const IntPoly& p) {
  std::vector<unsigned> orders;
  if (p.degree() < 1) return orders;
  IntPoly rest = primitive_part(p);
  const unsigned n = static_cast<unsigned>(p.degree());
  const unsigned bound = 2 * n * n + 2;
  for (unsigned k = 1; k <= bound && rest.degree() >= 1; ++k) {
    unsigned phi = 0;
    for (unsigned j = 1; j <= k; ++j) phi += (std::gcd(j, k) == 1);
    if (phi > n) continue;
    const IntPoly c = cyclotomic(k);
    while (rest.degree() >= c.degree() && divides(c, rest)) {
      orders.push_back(k);
      rest = exact_quotient(rest, c);
    }
  }
  return orders;
}

// ---------------------------------------------------------------------------

std::string to_string(const IntPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const BigInt& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const BigInt mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) out << mag;
    if (i >= 1) out << 'x';
    if (i >= 2) out << '^' << i;
  }
  return out.str();
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(const std::string& text) : text_(text) {}

  IntPoly parse() {
    IntPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::Parse, "polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  IntPoly expr() {
    IntPoly acc;
    bool negate = false;
    char c = peek();
    if (c == '+' || c == '-') {
      negate = (c == '-');
      ++pos_;
    }
    IntPoly t = term();
    acc = negate ? -t : t;
    for (c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      IntPoly rhs = term();
      acc = (c == '+') ? acc + rhs : acc - rhs;
    }
    return acc;
  }

  bool starts_factor(char c) const { return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == 'X' || c == '('; }

  IntPoly term() {
    IntPoly acc = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (starts_factor(c)) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  IntPoly factor() {
    IntPoly base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const std::string digits = text_.substr(start, pos_ - start);
      if (digits.size() > 4) fail("exponent too large");
      const unsigned e = static_cast<unsigned>(std::stoul(digits));
      IntPoly r{1};
      for (unsigned i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  IntPoly primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      IntPoly inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'x' || c == 'X') {
      ++pos_;
      return IntPoly{0, 1};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return IntPoly(std::vector<BigInt>{BigInt(text_.substr(start, pos_ - start))});
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

IntPoly parse_poly(const std::string& text) { return PolyParser(text).parse(); }

}  // namespace k3map
