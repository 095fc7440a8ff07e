// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#include "k3map/homology.hpp"

#include <algorithm>
#include <cmath>

#include "k3map/error.hpp"

namespace k3map {

namespace {

IntMat block_diagonal(const IntMat& a, const IntMat& b) {
  IntMat m(a.dim() + b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) m(a.dim() + i, a.dim() + j) = b(i, j);
  return m;
}

// Sign of the permutation taking (0,1,2,3) to idx, or 0 when idx repeats.
int permutation_sign(std::array<int, 4> idx) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (idx[i] == idx[j]) return 0;
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (idx[i] > idx[j]) sign = -sign;
  return sign;
}

}  // namespace

IntMat HomologyAction::block_matrix() const { return block_diagonal(perm_block, wedge_block); }

IntMat HomologyAction::block_gram() const { return block_diagonal(gram_w, gram_wedge); }

IntMat wedge_pairing_gram() {
  IntMat g(6);
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) {
      const auto [i, j] = kPluckerBasis[r];
      const auto [k, l] = kPluckerBasis[c];
      g(r, c) = permutation_sign({i, j, k, l});
    }
  return g;
}

Signature signature(const IntMat& symmetric) {
  if (symmetric.transpose() != symmetric) throw Error(ErrorCode::InvalidArgument, "signature needs a symmetric matrix");
  const IntPoly p = char_poly(symmetric);
  // Real symmetric: all roots real. Count with multiplicity per square-free factor.
  Signature s;
  for (const auto& f : square_free_decomposition(p)) {
    const SturmSequence seq(f.factor);
    // Cauchy bound: every root lies strictly above -(1 + max |c_i / lead|).
    Rational bound = 0;
    for (int i = 0; i < f.factor.degree(); ++i)
      bound = std::max(bound, Rational(abs(f.factor.coeff(static_cast<std::size_t>(i)))) / Rational(f.factor.lead()));
    const std::size_t nonpositive = seq.count_in(-(bound + 1), Rational(0));
    const std::size_t zero = f.factor.coeff(0) == 0 ? 1 : 0;
    s.zero += f.multiplicity * zero;
    s.negative += f.multiplicity * (nonpositive - zero);
    s.positive += f.multiplicity * (seq.count_real() - nonpositive);
  }
  return s;
}

HomologyAction build_action(const IntMat& t) {
  validate(t, ValidationMode::K3);
  HomologyAction h;
  h.permutation = mod2_perm(t);
  h.perm_block = h.permutation.to_matrix();
  h.wedge_block = wedge_square(t);
  h.gram_w = scaled(IntMat::identity(16), BigInt(-2));
  h.gram_wedge = wedge_pairing_gram();
  return h;
}

bool preserves_form(const IntMat& m, const IntMat& gram) { return m.transpose() * gram * m == gram; }

Bounded homological_specrad(const HomologyAction& h, const SpectraOptions& options) {
  const Bounded wedge = spectral_radius(certified_roots(char_poly(h.wedge_block), options));
  if (wedge.value - wedge.error >= 1.0) return wedge;
  return {std::max(1.0, wedge.value), wedge.value > 1.0 ? wedge.error : 0.0};
}

Bounded yomdin_bound(const HomologyAction& h, const SpectraOptions& options) {
  const Bounded r = homological_specrad(h, options);
  if (r.value <= 1.0) return {0.0, r.error};
  return {std::log(r.value), r.error / (r.value - r.error)};
}

}  // namespace k3map
