// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "k3map/bigint.hpp"
#include "k3map/polynomial.hpp"

namespace k3map {

// Square integer matrix, row-major, arbitrary-precision entries.
class IntMat {
 public:
  IntMat() = default;
  explicit IntMat(std::size_t dim);
  IntMat(std::size_t dim, std::vector<BigInt> entries);

  // Throws Error(NonSquare) on ragged or non-square input.
  static IntMat from_rows(const std::vector<std::vector<BigInt>>& rows);
  static IntMat from_rows(std::initializer_list<std::initializer_list<long long>> rows);
  static IntMat identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  const BigInt& operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  BigInt& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const std::vector<BigInt>& entries() const noexcept { return entries_; }

  IntMat transpose() const;
  bool is_identity() const;

  friend bool operator==(const IntMat&, const IntMat&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<BigInt> entries_;
};

IntMat operator*(const IntMat& a, const IntMat& b);
IntMat operator+(const IntMat& a, const IntMat& b);
IntMat operator-(const IntMat& a, const IntMat& b);
IntMat scaled(const IntMat& m, const BigInt& factor);
IntMat power(const IntMat& m, unsigned exponent);

// Fraction-free Bareiss elimination; exact.
BigInt determinant(const IntMat& m);

// Exact inverse of a unimodular matrix (det = +-1), via the adjugate.
// Throws Error(DetNotOne) when |det| != 1.
IntMat unimodular_inverse(const IntMat& m);

BigInt trace(const IntMat& m);

enum class ValidationMode {
  K3,        // dim = 4 and det = 1
  Dynamics,  // any dim >= 1 and |det| = 1
};

// Throws Error(DimensionMismatch) or Error(DetNotOne, detail = determinant).
void validate(const IntMat& m, ValidationMode mode = ValidationMode::K3);

// Exact characteristic polynomial det(xI - m), Faddeev-LeVerrier over Z.
IntPoly char_poly(const IntMat& m);

// Basis order of the second exterior power of a rank-4 lattice:
// e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4 (0-based index pairs).
inline constexpr std::array<std::array<int, 2>, 6> kPluckerBasis{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// Matrix of the induced map on 2-vectors: entry (I, J) is the 2x2 minor of m
// with rows kPluckerBasis[I] and columns kPluckerBasis[J].
// Throws Error(DimensionMismatch) unless dim = 4.
IntMat wedge_square(const IntMat& m);

// Permutation of the 16 points of F_2^4 induced by v -> m v (mod 2).
// Vector (a, b, c, d) has index a + 2b + 4c + 8d.
class TorsionPerm {
 public:
  static constexpr std::size_t kSize = 16;

  TorsionPerm();  // identity
  explicit TorsionPerm(std::array<std::uint8_t, kSize> images);

  std::uint8_t operator()(std::size_t index) const { return images_[index]; }
  const std::array<std::uint8_t, kSize>& images() const noexcept { return images_; }

  bool is_identity() const;
  TorsionPerm inverse() const;
  // Sorted descending cycle lengths (fixed points included).
  std::vector<std::size_t> cycle_type() const;
  // lcm of the cycle lengths.
  std::size_t order() const;
  // 0/1 matrix P with P(images[i], i) = 1, i.e. P e_i = e_{images[i]}.
  IntMat to_matrix() const;

  friend bool operator==(const TorsionPerm&, const TorsionPerm&) = default;

 private:
  std::array<std::uint8_t, kSize> images_{};
};

// (a * b)(i) = a(b(i)).
TorsionPerm compose(const TorsionPerm& a, const TorsionPerm& b);

TorsionPerm mod2_perm(const IntMat& m);

std::string format_matrix(const IntMat& m);

}  // namespace k3map
