// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#include "k3map/families.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "k3map/error.hpp"
#include "parallel.hpp"

namespace k3map {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

bool claim_for(const FamilySpec& spec, const Classification& c) {
  return std::visit(
      overloaded{
          [&](const ProductQuadratics&) {
            return c.is_entropy_minimizer_case && c.is_anosov && c.has_4_distinct_real &&
                   c.no_invariant_complex_structure &&
                   std::abs(c.entropy.value - c.yomdin.value) <= kEntropyEqualityTolerance;
          },
          [&](const Irreducible&) {
            return c.outside_count == 2 && std::abs(c.entropy.value - c.yomdin.value) <= kEntropyEqualityTolerance;
          },
          [&](const GapFamily&) { return c.outside_count == 3 && c.conjecture_gap && c.conjecture_gap->value.value > 0; },
      },
      spec);
}

}  // namespace

FamilyKind kind_of(const FamilySpec& spec) {
  return std::visit(overloaded{[](const ProductQuadratics&) { return FamilyKind::ProductQuadratics; },
                               [](const Irreducible&) { return FamilyKind::Irreducible; },
                               [](const GapFamily&) { return FamilyKind::GapFamily; }},
                    spec);
}

std::string kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::ProductQuadratics: return "product";
    case FamilyKind::Irreducible: return "irreducible";
    case FamilyKind::GapFamily: return "gap";
  }
  return "unknown";
}

FamilyKind parse_kind(const std::string& name) {
  if (name == "product") return FamilyKind::ProductQuadratics;
  if (name == "irreducible") return FamilyKind::Irreducible;
  if (name == "gap") return FamilyKind::GapFamily;
  throw Error(ErrorCode::Parse, "unknown family '" + name + "' (expected product, irreducible or gap)");
}

IntMat companion(const IntPoly& p) {
  if (p.degree() < 1) throw Error(ErrorCode::NotMonic, "companion needs a polynomial of degree >= 1");
  if (!p.is_monic()) throw Error(ErrorCode::NotMonic, "polynomial is not monic: " + to_string(p));
  if (abs(p.coeff(0)) != 1)
    throw Error(ErrorCode::ConstantNotUnit, "constant term must be +1 or -1: " + to_string(p));
  const std::size_t n = static_cast<std::size_t>(p.degree());
  IntMat m(n);
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -p.coeff(i);
  return m;
}

IntPoly family_polynomial(const FamilySpec& spec) {
  return std::visit(
      overloaded{
          [](const ProductQuadratics& s) {
            if (s.a == s.b) throw Error(ErrorCode::BadParams, "product family needs a != b (got a = b = " + std::to_string(s.a) + ")");
            if (s.a < 2 || s.b < 2) throw Error(ErrorCode::BadParams, "product family needs a, b >= 2");
            return IntPoly{1, s.a, 1} * IntPoly{1, s.b, 1};
          },
          [](const Irreducible& s) {
            if (s.n < 2) throw Error(ErrorCode::BadParams, "irreducible family needs n >= 2");
            return IntPoly(std::vector<BigInt>{1, 0, -(BigInt(s.n) * s.n + s.n), 0, 1});
          },
          [](const GapFamily& s) {
            if (s.a < 3) throw Error(ErrorCode::BadParams, "gap family needs a >= 3");
            return IntPoly(std::vector<BigInt>{1, s.a, 0, 0, 1});
          },
      },
      spec);
}

IntMat generate(const FamilySpec& spec) { return companion(family_polynomial(spec)); }

bool is_irreducible_quartic(const IntPoly& p) {
  if (p.degree() != 4 || !p.is_monic() || abs(p.coeff(0)) != 1) return false;
  if (p(BigInt(1)) == 0 || p(BigInt(-1)) == 0) return false;
  // (x^2 + b x + c)(x^2 + d x + e) with c e = p0, c, e in {+-1}:
  // b + d = p3, bd = p2 - c - e, be + cd = p1.
  const BigInt p3 = p.coeff(3), p2 = p.coeff(2), p1 = p.coeff(1), p0 = p.coeff(0);
  for (int c : {1, -1}) {
    const BigInt e = p0 / c;
    const BigInt prod = p2 - c - e;
    const BigInt disc = p3 * p3 - 4 * prod;
    if (disc < 0) continue;
    const BigInt root = sqrt(disc);
    if (root * root != disc) continue;
    for (const BigInt& sgn : {BigInt(1), BigInt(-1)}) {
      const BigInt twice_b = p3 + sgn * root;
      if (twice_b % 2 != 0) continue;
      const BigInt b = twice_b / 2, d = p3 - b;
      if (b * e + c * d == p1) return false;
    }
  }
  return true;
}

IntRange parse_range(const std::string& text) {
  auto parse_ll = [&](const std::string& s) {
    long long v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && s[0] == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || s.empty()) throw Error(ErrorCode::Parse, "bad range '" + text + "'");
    return v;
  };
  std::size_t sep = text.find("..");
  std::size_t width = 2;
  if (sep == std::string::npos) {
    sep = text.find('-', 1);
    width = 1;
  }
  if (sep == std::string::npos) {
    const long long v = parse_ll(text);
    return {v, v};
  }
  IntRange r{parse_ll(text.substr(0, sep)), parse_ll(text.substr(sep + width))};
  if (r.hi < r.lo) throw Error(ErrorCode::Parse, "empty range '" + text + "'");
  if (r.hi - r.lo > 100000) throw Error(ErrorCode::BadParams, "range '" + text + "' is too large");
  return r;
}

std::vector<FamilySpec> enumerate_family(FamilyKind kind, IntRange first, IntRange second) {
  std::vector<FamilySpec> specs;
  switch (kind) {
    case FamilyKind::Irreducible:
      for (long long n = first.lo; n <= first.hi; ++n) specs.emplace_back(Irreducible{n});
      break;
    case FamilyKind::GapFamily:
      for (long long a = first.lo; a <= first.hi; ++a) specs.emplace_back(GapFamily{a});
      break;
    case FamilyKind::ProductQuadratics:
      for (long long a = first.lo; a <= first.hi; ++a)
        for (long long b = second.lo; b <= second.hi; ++b)
          if (a < b) specs.emplace_back(ProductQuadratics{a, b});
      if (specs.empty())
        throw Error(ErrorCode::BadParams, "product family needs a != b; no pair with a < b in the given ranges");
      break;
  }
  if (specs.empty()) throw Error(ErrorCode::BadParams, "empty parameter range");
  for (const auto& s : specs) (void)family_polynomial(s);
  return specs;
}

std::vector<FamilyRow> sweep(const std::vector<FamilySpec>& specs, const SweepOptions& options) {
  if (specs.empty()) throw Error(ErrorCode::BadParams, "sweep needs a nonempty parameter range");
  std::vector<FamilyRow> rows(specs.size());
  detail::parallel_for(specs.size(), detail::resolve_threads(options.threads), [&](std::size_t i) {
    FamilyRow& row = rows[i];
    row.spec = specs[i];
    row.poly = family_polynomial(specs[i]);
    row.classification = classify(companion(row.poly), options.spectra);
    row.irreducible = is_irreducible_quartic(row.poly);
    if (const auto* pq = std::get_if<ProductQuadratics>(&specs[i])) row.flagged = pq->a == 2 || pq->b == 2;
    row.claim_holds = claim_for(specs[i], row.classification);
  });
  return rows;
}

std::string describe_params(const FamilySpec& spec) {
  return std::visit(overloaded{[](const ProductQuadratics& s) { return "a=" + std::to_string(s.a) + ";b=" + std::to_string(s.b); },
                               [](const Irreducible& s) { return "n=" + std::to_string(s.n); },
                               [](const GapFamily& s) { return "a=" + std::to_string(s.a); }},
                    spec);
}

std::string sweep_csv(const std::vector<FamilyRow>& rows) {
  std::ostringstream out;
  out << "family,params,char_poly,entropy,entropy_error,yomdin,yomdin_error,gap,outside_count,minimizer,anosov,"
         "four_distinct_real,obstructed,irreducible,flagged,claim_holds\r\n";
  auto b = [](bool v) { return v ? "true" : "false"; };
  for (const auto& r : rows) {
    const auto& c = r.classification;
    out << kind_name(kind_of(r.spec)) << ',' << csv_field(describe_params(r.spec)) << ',' << csv_field(to_string(r.poly))
        << ',' << shortest(c.entropy.value) << ',' << shortest(c.entropy.error) << ',' << shortest(c.yomdin.value) << ','
        << shortest(c.yomdin.error) << ',' << (c.conjecture_gap ? shortest(c.conjecture_gap->value.value) : "") << ','
        << c.outside_count << ',' << b(c.is_entropy_minimizer_case) << ',' << b(c.is_anosov) << ','
        << b(c.has_4_distinct_real) << ',' << b(c.no_invariant_complex_structure) << ',' << b(r.irreducible) << ','
        << b(r.flagged) << ',' << b(r.claim_holds) << "\r\n";
  }
  return out.str();
}

}  // namespace k3map
