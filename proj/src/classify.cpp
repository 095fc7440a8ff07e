// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#include "k3map/classify.hpp"

#include <cmath>

namespace k3map {

ComplexStructureVerdict complex_structure_obstruction(const IntMat& t) {
  validate(t, ValidationMode::K3);
  return has_distinct_real_roots(char_poly(t)) ? ComplexStructureVerdict::Obstructed : ComplexStructureVerdict::Unknown;
}

Classification classify(const IntMat& t, const SpectraOptions& options) {
  validate(t, ValidationMode::K3);
  Classification c;
  c.char_poly = char_poly(t);
  c.spectrum = certified_roots(c.char_poly, options);
  c.entropy = entropy_formula(c.spectrum);
  c.spectral_radius = spectral_radius(c.spectrum);
  c.pair_product_radius = pair_product_radius(c.spectrum);

  const HomologyAction h = build_action(t);
  c.homological_specrad = homological_specrad(h, options);
  c.yomdin = yomdin_bound(h, options);

  c.outside_count = c.spectrum.outside;
  c.is_entropy_minimizer_case = c.outside_count == 2;
  c.is_anosov = c.spectrum.on_circle == 0;
  c.has_4_distinct_real = c.spectrum.all_real_distinct;
  c.complex_structure = c.has_4_distinct_real ? ComplexStructureVerdict::Obstructed : ComplexStructureVerdict::Unknown;
  c.no_invariant_complex_structure = c.complex_structure == ComplexStructureVerdict::Obstructed;

  if (c.outside_count == 3) {
    ConjectureGap gap;
    gap.value = {c.entropy.value - c.yomdin.value, c.entropy.error + c.yomdin.error};
    gap.log_third_modulus = log_kth_modulus(c.spectrum, 3);
    c.conjecture_gap = gap;
  }
  return c;
}

bool is_consistent(const Classification& c) {
  if (c.is_entropy_minimizer_case && std::abs(c.entropy.value - c.yomdin.value) > kEntropyEqualityTolerance)
    return false;
  if (c.conjecture_gap) {
    const auto& g = *c.conjecture_gap;
    if (!(g.value.value > 0)) return false;
    if (std::abs(g.value.value - g.log_third_modulus.value) > kEntropyEqualityTolerance) return false;
  }
  if (c.entropy.value < 0) return false;
  return true;
}

}  // namespace k3map
