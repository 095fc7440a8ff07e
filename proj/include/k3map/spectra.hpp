// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "k3map/polynomial.hpp"

namespace k3map {

// A real number known to lie within [value - error, value + error].
struct Bounded {
  double value = 0.0;
  double error = 0.0;
};

enum class CircleClass : std::uint8_t { Inside, On, Outside, Undecided };

// Disc {z : |z - midpoint| <= radius} containing exactly one distinct root.
struct RootEnclosure {
  std::complex<double> midpoint;
  double radius = 0.0;
  unsigned multiplicity = 1;
  CircleClass location = CircleClass::Undecided;
  bool is_real = false;  // exact: the enclosed root is real
};

// Certified roots of an integer polynomial. Counts include multiplicity.
// roots holds one enclosure per distinct root, ordered by decreasing
// modulus (ties broken by argument) so the output is deterministic.
struct Spectrum {
  IntPoly poly;
  std::vector<RootEnclosure> roots;
  std::size_t on_circle = 0;
  std::size_t inside = 0;
  std::size_t outside = 0;
  bool all_real_distinct = false;
  std::vector<unsigned> cyclotomic_orders;

  std::size_t degree() const noexcept { return on_circle + inside + outside; }
  // Each enclosure repeated by its multiplicity.
  std::vector<RootEnclosure> expanded() const;
};

struct SpectraOptions {
  double eps = 1e-12;       // bound on radius / max(1, |midpoint|)
  unsigned max_rounds = 200;  // Aberth refinement iterations across all precisions
};

// Throws Error(InvalidArgument) for degree < 1 or eps <= 0 and
// Error(RefinementBudgetExceeded) when the enclosures cannot be certified.
Spectrum certified_roots(const IntPoly& p, const SpectraOptions& options = {});

// Number of roots on the unit circle, with multiplicity, decided exactly.
std::size_t exact_unit_circle_count(const IntPoly& p);

// True iff p has deg p distinct real roots (discriminant and Sturm count).
bool has_distinct_real_roots(const IntPoly& p);

struct EntropyTerm {
  RootEnclosure root;
  double log_modulus = 0.0;  // per root; multiplicity is applied in the sum
};

struct EntropyValue {
  double value = 0.0;  // sum of log|lambda| over roots outside the unit circle
  double error = 0.0;
  std::vector<EntropyTerm> terms;
};

// Throws Error(UndecidedCircleMembership) if any root is Undecided.
EntropyValue entropy_formula(const Spectrum& s);

Bounded spectral_radius(const Spectrum& s);

// max over i < j of |lambda_i lambda_j| (roots with multiplicity).
// Throws Error(DimensionMismatch) unless the degree is 4.
Bounded pair_product_radius(const Spectrum& s);

// log of the k-th largest root modulus (1-based, with multiplicity).
Bounded log_kth_modulus(const Spectrum& s, std::size_t k);

}  // namespace k3map
