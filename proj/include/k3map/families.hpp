// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "k3map/classify.hpp"
#include "k3map/matrix.hpp"
#include "k3map/polynomial.hpp"

namespace k3map {

// (x^2 + a x + 1)(x^2 + b x + 1), a != b, a, b >= 2.
struct ProductQuadratics {
  long long a = 0;
  long long b = 0;
};
// x^4 - (n^2 + n) x^2 + 1, n >= 2.
struct Irreducible {
  long long n = 0;
};
// x^4 + a x + 1, a >= 3.
struct GapFamily {
  long long a = 0;
};

using FamilySpec = std::variant<ProductQuadratics, Irreducible, GapFamily>;

enum class FamilyKind { ProductQuadratics, Irreducible, GapFamily };

FamilyKind kind_of(const FamilySpec& spec);
std::string kind_name(FamilyKind kind);  // "product", "irreducible", "gap"
FamilyKind parse_kind(const std::string& name);

// Companion matrix: ones on the subdiagonal, last column -p_0, ..., -p_{n-1}.
// Throws Error(NotMonic) or Error(ConstantNotUnit).
IntMat companion(const IntPoly& p);

// Throws Error(BadParams) when the spec violates its family's constraints.
IntPoly family_polynomial(const FamilySpec& spec);
IntMat generate(const FamilySpec& spec);

// Monic quartic with unit constant term: no root +-1 and no factorization into
// two integer quadratics. Informational only.
bool is_irreducible_quartic(const IntPoly& p);

struct IntRange {
  long long lo = 0;
  long long hi = 0;  // inclusive
};

// Parses "3", "3..10" or "3-10". Throws Error(Parse).
IntRange parse_range(const std::string& text);

// All specs of `kind` over the ranges. ProductQuadratics takes unordered
// pairs {a, b} with a in `first`, b in `second`, a < b. Throws Error(BadParams)
// when the result is empty or a value violates the family's constraints.
std::vector<FamilySpec> enumerate_family(FamilyKind kind, IntRange first, IntRange second = {});

struct FamilyRow {
  FamilySpec spec;
  IntPoly poly;
  Classification classification;
  bool irreducible = false;
  // a = 2 or b = 2 in ProductQuadratics: the factor (x + 1)^2 puts -1 on the
  // unit circle.
  bool flagged = false;
  // The family's advertised behaviour holds for this row.
  bool claim_holds = false;
};

struct SweepOptions {
  SpectraOptions spectra;
  unsigned threads = 0;  // 0: K3MAP_THREADS or 1
};

std::vector<FamilyRow> sweep(const std::vector<FamilySpec>& specs, const SweepOptions& options = {});

// RFC 4180 table, one row per spec.
std::string sweep_csv(const std::vector<FamilyRow>& rows);

std::string describe_params(const FamilySpec& spec);

}  // namespace k3map
