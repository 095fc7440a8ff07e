// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "k3map/matrix.hpp"
#include "k3map/spectra.hpp"

namespace k3map {

// Rational second homology of the Kummer-type K3 manifold built from T,
// split as W (+) wedge^2 L. W is spanned by the sixteen exceptional
// (-2)-classes, which the map permutes like T permutes the 2-torsion points;
// wedge^2 L carries the induced action of T on 2-vectors.
//
// Blocks store the pushforward f_*. The cohomological action used to define
// the representation T -> (f_T^*)^{-1} is its inverse transpose and has the
// same spectrum.
struct HomologyAction {
  TorsionPerm permutation;
  IntMat perm_block;   // 16x16 permutation matrix
  IntMat wedge_block;  // 6x6, wedge_square(T)
  IntMat gram_w;       // -2 I_16
  IntMat gram_wedge;   // wedge-pairing form in the Plucker basis

  // Block-diagonal 22x22 matrix perm_block (+) wedge_block.
  IntMat block_matrix() const;
  // Block-diagonal 22x22 Gram matrix gram_w (+) gram_wedge.
  IntMat block_gram() const;
};

// delta(a, b) = coefficient of e1^e2^e3^e4 in a^b; symmetric, signature (3, 3).
IntMat wedge_pairing_gram();

// Number of positive and negative eigenvalues of a symmetric integer matrix,
// decided exactly from its characteristic polynomial by Sturm counting.
struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};
Signature signature(const IntMat& symmetric);

// Validates T (4x4, det 1) and assembles both blocks.
HomologyAction build_action(const IntMat& t);

// m^T g m == g exactly.
bool preserves_form(const IntMat& m, const IntMat& gram);

// Spectral radius of the 22x22 action: max(1, spectral radius of the wedge
// block), since the permutation block has finite order.
Bounded homological_specrad(const HomologyAction& h, const SpectraOptions& options = {});

// log of homological_specrad: the lower bound on the entropy of every map
// homotopic to f_T.
Bounded yomdin_bound(const HomologyAction& h, const SpectraOptions& options = {});

}  // namespace k3map
