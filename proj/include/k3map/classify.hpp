// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "k3map/homology.hpp"
#include "k3map/matrix.hpp"
#include "k3map/spectra.hpp"

namespace k3map {

// Absolute tolerance for entropy == homological bound in the two-outside case.
inline constexpr double kEntropyEqualityTolerance = 1e-9;

enum class ComplexStructureVerdict {
  // T has four distinct real eigenvalues: no diffeomorphism homotopic to f_T
  // preserves a complex structure.
  Obstructed,
  // No obstruction is known; nothing is claimed either way.
  Unknown,
};

struct ConjectureGap {
  Bounded value;              // entropy - yomdin
  Bounded log_third_modulus;  // log |lambda_3|, for comparison
};

struct Classification {
  IntPoly char_poly;
  Spectrum spectrum;
  EntropyValue entropy;
  Bounded spectral_radius;
  Bounded pair_product_radius;
  Bounded homological_specrad;
  Bounded yomdin;
  std::size_t outside_count = 0;
  bool is_entropy_minimizer_case = false;  // exactly two eigenvalues outside
  bool is_anosov = false;                  // no eigenvalue on the unit circle
  bool has_4_distinct_real = false;
  bool no_invariant_complex_structure = false;
  ComplexStructureVerdict complex_structure = ComplexStructureVerdict::Unknown;
  std::optional<ConjectureGap> conjecture_gap;  // set iff outside_count == 3
};

// Obstructed iff the characteristic polynomial has four distinct real roots.
ComplexStructureVerdict complex_structure_obstruction(const IntMat& t);

// Validates t (4x4, det 1) and decides every predicate from exact counts.
Classification classify(const IntMat& t, const SpectraOptions& options = {});

// Entropy and homological bound agree to tolerance when they must, and the
// gap matches log |lambda_3| when present.
bool is_consistent(const Classification& c);

}  // namespace k3map
