// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#include "k3map/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "k3map/error.hpp"

namespace k3map {

IntMat::IntMat(std::size_t dim) : dim_(dim), entries_(dim * dim, BigInt(0)) {}

IntMat::IntMat(std::size_t dim, std::vector<BigInt> entries) : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_)
    throw Error(ErrorCode::NonSquare, "expected " + std::to_string(dim_ * dim_) + " entries, got " +
                                          std::to_string(entries_.size()));
}

IntMat IntMat::from_rows(const std::vector<std::vector<BigInt>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw Error(ErrorCode::NonSquare, "empty matrix");
  std::vector<BigInt> e;
  e.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n)
      throw Error(ErrorCode::NonSquare, "matrix is not square: " + std::to_string(n) + " rows but a row of length " +
                                            std::to_string(row.size()));
    e.insert(e.end(), row.begin(), row.end());
  }
  return IntMat(n, std::move(e));
}

IntMat IntMat::from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<std::vector<BigInt>> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return from_rows(r);
}

IntMat IntMat::identity(std::size_t dim) {
  IntMat m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

IntMat IntMat::transpose() const {
  IntMat t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMat::is_identity() const { return *this == identity(dim_); }

namespace {
void require_same_dim(const IntMat& a, const IntMat& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch,
                "dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
}
}  // namespace

IntMat operator*(const IntMat& a, const IntMat& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  IntMat r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const BigInt& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

IntMat operator+(const IntMat& a, const IntMat& b) {
  require_same_dim(a, b);
  std::vector<BigInt> e(a.entries());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries()[i];
  return IntMat(a.dim(), std::move(e));
}

IntMat operator-(const IntMat& a, const IntMat& b) {
  require_same_dim(a, b);
  std::vector<BigInt> e(a.entries());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= b.entries()[i];
  return IntMat(a.dim(), std::move(e));
}

IntMat scaled(const IntMat& m, const BigInt& factor) {
  std::vector<BigInt> e(m.entries());
  for (auto& v : e) v *= factor;
  return IntMat(m.dim(), std::move(e));
}

IntMat power(const IntMat& m, unsigned exponent) {
  IntMat result = IntMat::identity(m.dim());
  IntMat base = m;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

BigInt determinant(const IntMat& m) {
  const std::size_t n = m.dim();
  if (n == 0) return 1;
  std::vector<BigInt> a(m.entries());
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * n + j]; };
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && at(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(pivot, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

namespace {
IntMat minor_matrix(const IntMat& m, std::size_t skip_row, std::size_t skip_col) {
  const std::size_t n = m.dim();
  IntMat r(n - 1);
  for (std::size_t i = 0, ri = 0; i < n; ++i) {
    if (i == skip_row) continue;
    for (std::size_t j = 0, rj = 0; j < n; ++j) {
      if (j == skip_col) continue;
      r(ri, rj++) = m(i, j);
    }
    ++ri;
  }
  return r;
}
}  // namespace

IntMat unimodular_inverse(const IntMat& m) {
  const BigInt det = determinant(m);
  if (abs(det) != 1) throw Error(ErrorCode::DetNotOne, "matrix is not unimodular (det = " + det.str() + ")", det.str());
  const std::size_t n = m.dim();
  if (n == 1) return IntMat(1, {det});
  IntMat inv(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      BigInt cof = determinant(minor_matrix(m, j, i));
      if ((i + j) % 2 == 1) cof = -cof;
      inv(i, j) = cof * det;  // det = +-1, so dividing equals multiplying
    }
  return inv;
}

BigInt trace(const IntMat& m) {
  BigInt t = 0;
  for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

void validate(const IntMat& m, ValidationMode mode) {
  if (m.dim() == 0) throw Error(ErrorCode::NonSquare, "empty matrix");
  if (mode == ValidationMode::K3 && m.dim() != 4)
    throw Error(ErrorCode::DimensionMismatch, "a 4x4 matrix is required, got " + std::to_string(m.dim()) + "x" +
                                                  std::to_string(m.dim()));
  const BigInt det = determinant(m);
  if (mode == ValidationMode::K3 && det != 1)
    throw Error(ErrorCode::DetNotOne, "determinant must be 1, got " + det.str(), det.str());
  if (mode == ValidationMode::Dynamics && abs(det) != 1)
    throw Error(ErrorCode::DetNotOne, "determinant must be +1 or -1, got " + det.str(), det.str());
}

IntPoly char_poly(const IntMat& m) {
  // c_n = 1, M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  const std::size_t n = m.dim();
  std::vector<BigInt> c(n + 1, BigInt(0));
  c[n] = 1;
  IntMat mk(n);  // M_0 = 0
  const IntMat id = IntMat::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + scaled(id, c[n - k + 1]);
    c[n - k] = -trace(m * mk) / static_cast<long long>(k);
  }
  return IntPoly(std::move(c));
}

IntMat wedge_square(const IntMat& m) {
  if (m.dim() != 4)
    throw Error(ErrorCode::DimensionMismatch, "wedge_square needs a 4x4 matrix, got " + std::to_string(m.dim()) + "x" +
                                                  std::to_string(m.dim()));
  IntMat w(6);
  for (std::size_t r = 0; r < 6; ++r) {
    const auto [i, j] = kPluckerBasis[r];
    for (std::size_t c = 0; c < 6; ++c) {
      const auto [k, l] = kPluckerBasis[c];
      w(r, c) = m(i, k) * m(j, l) - m(i, l) * m(j, k);
    }
  }
  return w;
}

// ---------------------------------------------------------------------------

TorsionPerm::TorsionPerm() { std::iota(images_.begin(), images_.end(), std::uint8_t{0}); }

TorsionPerm::TorsionPerm(std::array<std::uint8_t, kSize> images) : images_(images) {
  std::array<bool, kSize> seen{};
  for (auto v : images_) {
    if (v >= kSize || seen[v]) throw Error(ErrorCode::InvalidArgument, "TorsionPerm images are not a bijection");
    seen[v] = true;
  }
}

bool TorsionPerm::is_identity() const { return *this == TorsionPerm(); }

TorsionPerm TorsionPerm::inverse() const {
  std::array<std::uint8_t, kSize> inv{};
  for (std::size_t i = 0; i < kSize; ++i) inv[images_[i]] = static_cast<std::uint8_t>(i);
  return TorsionPerm(inv);
}

std::vector<std::size_t> TorsionPerm::cycle_type() const {
  std::vector<std::size_t> lengths;
  std::array<bool, kSize> seen{};
  for (std::size_t i = 0; i < kSize; ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

std::size_t TorsionPerm::order() const {
  std::size_t o = 1;
  for (auto len : cycle_type()) o = std::lcm(o, len);
  return o;
}

IntMat TorsionPerm::to_matrix() const {
  IntMat p(kSize);
  for (std::size_t i = 0; i < kSize; ++i) p(images_[i], i) = 1;
  return p;
}

TorsionPerm compose(const TorsionPerm& a, const TorsionPerm& b) {
  std::array<std::uint8_t, TorsionPerm::kSize> r{};
  for (std::size_t i = 0; i < TorsionPerm::kSize; ++i) r[i] = a(b(i));
  return TorsionPerm(r);
}

TorsionPerm mod2_perm(const IntMat& m) {
  if (m.dim() != 4)
    throw Error(ErrorCode::DimensionMismatch, "mod2_perm needs a 4x4 matrix");
  std::array<int, 16> bits{};
  for (std::size_t i = 0; i < 16; ++i) bits[i] = static_cast<int>(abs(m.entries()[i]) % 2);
  std::array<std::uint8_t, 16> images{};
  for (unsigned v = 0; v < 16; ++v) {
    unsigned image = 0;
    for (unsigned row = 0; row < 4; ++row) {
      int acc = 0;
      for (unsigned col = 0; col < 4; ++col) acc ^= bits[row * 4 + col] & static_cast<int>((v >> col) & 1u);
      image |= static_cast<unsigned>(acc) << row;
    }
    images[v] = static_cast<std::uint8_t>(image);
  }
  return TorsionPerm(images);
}

std::string format_matrix(const IntMat& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
  return out.str();
}

}  // namespace k3map
