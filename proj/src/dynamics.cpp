// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#include "k3map/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "k3map/error.hpp"
#include "k3map/spectra.hpp"
#include "parallel.hpp"

namespace k3map {

namespace {

constexpr std::size_t kMaxDim = 16;
constexpr double kPi = 3.14159265358979323846;

double frac(double v) { return v - std::floor(v); }

double circle(double d) {
  d = frac(d);
  return std::min(d, 1.0 - d);
}

double row_abs_norm(const Eigen::MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

// Fibonacci lattice on S^2 with n points.
std::vector<Eigen::Vector3d> fibonacci_sphere(std::size_t n) {
  std::vector<Eigen::Vector3d> pts(n);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    pts[i] = {r * std::cos(phi), r * std::sin(phi), z};
  }
  return pts;
}

Eigen::MatrixXd random_frame(std::size_t m, std::size_t k, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(m, k);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ() * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k));
}

// Uniform cells over [lo, hi)^m of width >= 2 eps. A point within eps of x
// lies in x's cell or, per coordinate, the neighbor on the nearer side.
class CellGrid {
 public:
  CellGrid(const OrbitSystem& sys, double eps) : sys_(sys), m_(sys.dim()) {
    const double span = sys.coord_hi() - sys.coord_lo();
    cells_ = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(span / (2.0 * eps))));
    cells_ = std::min<std::uint64_t>(cells_, 1u << 20);
    width_ = span / static_cast<double>(cells_);
    total_ = 1;
    dense_ = true;
    for (std::size_t i = 0; i < m_; ++i) {
      if (total_ > (std::uint64_t{1} << 24) / cells_) dense_ = false;
      total_ *= cells_;  // wraps for huge grids; only used when dense_
    }
  }

  std::uint64_t key(const double* x) const {
    std::uint64_t k = 0;
    for (std::size_t i = m_; i-- > 0;) k = k * cells_ + index(x[i]);
    return k;
  }

  // Keys of every cell that can hold a point within eps of x or its images.
  void probe_keys(const double* x, std::vector<std::uint64_t>& keys) const {
    keys.clear();
    std::array<double, kMaxDim> img{};
    for (std::size_t im = 0; im < sys_.image_count(); ++im) {
      sys_.image(im, x, img.data());
      std::array<std::uint64_t, kMaxDim> base{}, alt{};
      std::array<bool, kMaxDim> has_alt{};
      for (std::size_t i = 0; i < m_; ++i) {
        base[i] = index(img[i]);
        const double f = (img[i] - sys_.coord_lo()) / width_ - static_cast<double>(base[i]);
        if (f < 0.5) {
          has_alt[i] = base[i] > 0 || sys_.periodic();
          alt[i] = base[i] > 0 ? base[i] - 1 : cells_ - 1;
        } else {
          has_alt[i] = base[i] + 1 < cells_ || sys_.periodic();
          alt[i] = base[i] + 1 < cells_ ? base[i] + 1 : 0;
        }
      }
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m_); ++mask) {
        bool ok = true;
        std::uint64_t k = 0;
        for (std::size_t i = m_; i-- > 0;) {
          const bool use_alt = (mask >> i) & 1;
          if (use_alt && !has_alt[i]) {
            ok = false;
            break;
          }
          k = k * cells_ + (use_alt ? alt[i] : base[i]);
        }
        if (ok) keys.push_back(k);
      }
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  }

  bool dense() const { return dense_; }
  std::uint64_t total() const { return total_; }

 private:
  std::uint64_t index(double v) const {
    const double t = (v - sys_.coord_lo()) / width_;
    if (!(t > 0)) return 0;
    return std::min<std::uint64_t>(static_cast<std::uint64_t>(t), cells_ - 1);
  }

  const OrbitSystem& sys_;
  std::size_t m_;
  std::uint64_t cells_ = 1;
  double width_ = 1.0;
  std::uint64_t total_ = 1;
  bool dense_ = true;
};

constexpr std::uint32_t kNone = 0xffffffffu;

// Centers bucketed by the cell of one orbit position, as singly linked lists.
class CenterIndex {
 public:
  explicit CenterIndex(const CellGrid& grid) : grid_(grid) {
    if (grid.dense()) dense_.assign(grid.total(), kNone);
  }

  void clear(std::size_t reserve) {
    if (!dense_.empty()) std::fill(dense_.begin(), dense_.end(), kNone);
    sparse_.clear();
    next_.clear();
    next_.reserve(reserve);
  }

  void insert(std::uint32_t center, const double* x) {
    const std::uint64_t k = grid_.key(x);
    if (next_.size() <= center) next_.resize(center + 1, kNone);
    std::uint32_t& head = dense_.empty() ? sparse_.try_emplace(k, kNone).first->second : dense_[k];
    next_[center] = head;
    head = center;
  }

  std::uint32_t head(std::uint64_t k) const {
    if (!dense_.empty()) return dense_[k];
    const auto it = sparse_.find(k);
    return it == sparse_.end() ? kNone : it->second;
  }
  std::uint32_t next(std::uint32_t c) const { return next_[c]; }

 private:
  const CellGrid& grid_;
  std::vector<std::uint32_t> dense_;
  std::unordered_map<std::uint64_t, std::uint32_t> sparse_;
  std::vector<std::uint32_t> next_;
};

struct Orbits {
  std::size_t m;
  int n_max;
  std::vector<double> data;

  const double* at(std::size_t i) const { return data.data() + i * m * static_cast<std::size_t>(n_max); }
  std::size_t size() const { return data.size() / (m * static_cast<std::size_t>(n_max)); }
};

void trace(const OrbitSystem& sys, const double* x0, int steps, double* out) {
  const std::size_t m = sys.dim();
  std::copy(x0, x0 + m, out);
  for (int j = 1; j < steps; ++j) {
    std::copy(out + (j - 1) * m, out + j * m, out + j * m);
    sys.step(out + j * m);
  }
}

// d_n(a, b) <= eps, testing position `first` before the others.
bool within(const OrbitSystem& sys, const double* a, const double* b, int n, int first, double eps) {
  return sys.segment_within(a, b, n, first, eps);
}

// Visits `first`, then the remaining steps from the last one down, where
// orbits have drifted furthest apart.
template <class Far>
bool all_steps_near(std::size_t m, const double* a, const double* b, int n, int first, Far&& far) {
  if (far(a + first * m, b + first * m)) return false;
  for (int j = n - 1; j >= 0; --j)
    if (j != first && far(a + j * m, b + j * m)) return false;
  return true;
}

class BudgetHit : public std::exception {
 public:
  explicit BudgetHit(std::string why) : why_(std::move(why)) {}
  const char* what() const noexcept override { return why_.c_str(); }

 private:
  std::string why_;
};

// Size of a sub-cover obtained by deleting centers, newest first, whose
// points all stay covered.
std::size_t pruned_cover(const OrbitSystem& sys, const PointCloud& sample, const Orbits& centers,
                         const CellGrid& grid, const CenterIndex& index, int n, int slot, double eps, unsigned threads,
                         std::size_t entry_budget) {
  const std::size_t m = sys.dim();
  const std::size_t N = sample.size();
  const std::size_t C = centers.size();
  std::vector<std::uint32_t> offsets(1, 0);
  offsets.reserve(N + 1);
  std::vector<std::uint32_t> entries;

  constexpr std::size_t kBlock = 1 << 15;
  const unsigned workers = std::max(1u, threads);
  std::vector<std::vector<std::uint32_t>> flat(workers), counts(workers);
  for (std::size_t lo = 0; lo < N; lo += kBlock) {
    const std::size_t hi = std::min(N, lo + kBlock);
    const std::size_t chunk = (hi - lo + workers - 1) / workers;
    detail::parallel_for(workers, workers, [&](std::size_t w) {
      flat[w].clear();
      counts[w].clear();
      std::vector<double> buf(static_cast<std::size_t>(n) * m);
      std::vector<std::uint64_t> keys;
      const std::size_t a = lo + w * chunk, b = std::min(hi, a + chunk);
      for (std::size_t p = a; p < b; ++p) {
        trace(sys, sample.point(p), n, buf.data());
        grid.probe_keys(buf.data() + slot * m, keys);
        std::uint32_t found = 0;
        for (std::uint64_t k : keys)
          for (std::uint32_t c = index.head(k); c != kNone; c = index.next(c))
            if (within(sys, buf.data(), centers.at(c), n, slot, eps)) {
              flat[w].push_back(c);
              ++found;
            }
        counts[w].push_back(found);
      }
    });
    for (unsigned w = 0; w < workers; ++w) {
      for (std::uint32_t c : counts[w]) offsets.push_back(offsets.back() + c);
      entries.insert(entries.end(), flat[w].begin(), flat[w].end());
    }
    if (entries.size() > entry_budget) throw BudgetHit("cover lists exceed the budget");
  }

  std::vector<std::uint32_t> coverage(N);
  for (std::size_t p = 0; p < N; ++p) coverage[p] = offsets[p + 1] - offsets[p];
  std::vector<std::uint32_t> c_off(C + 1, 0);
  for (std::uint32_t c : entries) ++c_off[c + 1];
  for (std::size_t c = 0; c < C; ++c) c_off[c + 1] += c_off[c];
  std::vector<std::uint32_t> fill(c_off.begin(), c_off.end() - 1), by_center(entries.size());
  for (std::size_t p = 0; p < N; ++p)
    for (std::uint32_t e = offsets[p]; e < offsets[p + 1]; ++e) by_center[fill[entries[e]]++] = static_cast<std::uint32_t>(p);

  std::size_t alive = C;
  for (std::size_t c = C; c-- > 0;) {
    bool removable = true;
    for (std::uint32_t e = c_off[c]; e < c_off[c + 1] && removable; ++e) removable = coverage[by_center[e]] >= 2;
    if (!removable) continue;
    for (std::uint32_t e = c_off[c]; e < c_off[c + 1]; ++e) --coverage[by_center[e]];
    --alive;
  }
  return alive;
}

// Orbit position j < n at which the centers occupy the most distinct cells.
int spread_slot(const CellGrid& grid, const Orbits& centers, int n) {
  if (centers.size() == 0) return n - 1;
  int best = n - 1;
  std::size_t best_cells = 0;
  std::vector<std::uint64_t> keys(centers.size());
  for (int j = n - 1; j >= 0; --j) {
    for (std::size_t c = 0; c < centers.size(); ++c) keys[c] = grid.key(centers.at(c) + j * centers.m);
    std::sort(keys.begin(), keys.end());
    const auto cells = static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
    if (cells > best_cells) {
      best_cells = cells;
      best = j;
    }
  }
  return best;
}

}  // namespace

void OrbitSystem::image(std::size_t, const double* x, double* out) const { std::copy(x, x + dim(), out); }

TorusMap::TorusMap(const IntMat& t) : t_(t), m_(t.dim()) {
  validate(t, ValidationMode::Dynamics);
  if (m_ > kMaxDim) throw Error(ErrorCode::DimensionMismatch, "torus dimension above " + std::to_string(kMaxDim));
  entries_.resize(m_ * m_);
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < m_; ++j) entries_[i * m_ + j] = t(i, j).convert_to<double>();
}

void TorusMap::step(double* x) const {
  std::array<double, kMaxDim> y{};
  for (std::size_t i = 0; i < m_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m_; ++j) s += entries_[i * m_ + j] * x[j];
    y[i] = frac(s);
  }
  std::copy(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(m_), x);
}

bool OrbitSystem::segment_within(const double* a, const double* b, int n, int first, double eps) const {
  return all_steps_near(dim(), a, b, n, first, [&](const double* x, const double* y) { return exceeds(x, y, eps); });
}

bool TorusMap::segment_within(const double* a, const double* b, int n, int first, double eps) const {
  const std::size_t m = m_;
  return all_steps_near(m, a, b, n, first, [&](const double* x, const double* y) {
    for (std::size_t i = 0; i < m; ++i)
      if (circle(x[i] - y[i]) > eps) return true;
    return false;
  });
}

bool QuotientTorusMap::segment_within(const double* a, const double* b, int n, int first, double eps) const {
  return all_steps_near(dim(), a, b, n, first, [&](const double* x, const double* y) { return distance(x, y) > eps; });
}

double TorusMap::distance(const double* a, const double* b) const {
  double d = 0.0;
  for (std::size_t i = 0; i < m_; ++i) d = std::max(d, circle(a[i] - b[i]));
  return d;
}

double QuotientTorusMap::distance(const double* a, const double* b) const {
  double plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    plus = std::max(plus, circle(a[i] - b[i]));
    minus = std::max(minus, circle(a[i] + b[i]));
  }
  return std::min(plus, minus);
}

void QuotientTorusMap::image(std::size_t k, const double* x, double* out) const {
  for (std::size_t i = 0; i < dim(); ++i) out[i] = k == 0 ? x[i] : frac(-x[i]);
}

RayMap::RayMap(const Eigen::MatrixXd& a) : a_(a) {
  if (a.rows() != a.cols() || a.rows() < 2) throw Error(ErrorCode::NonSquare, "ray map needs a square matrix of size >= 2");
  if (a.rows() > static_cast<Eigen::Index>(kMaxDim)) throw Error(ErrorCode::DimensionMismatch, "ray map dimension too large");
  if (Eigen::FullPivLU<Eigen::MatrixXd>(a).rank() < a.rows()) throw Error(ErrorCode::InvalidArgument, "ray map needs an invertible matrix");
}

void RayMap::step(double* x) const {
  const Eigen::Index m = a_.rows();
  std::array<double, kMaxDim> y{};
  double norm = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) s += a_(i, j) * x[j];
    y[i] = s;
    norm += s * s;
  }
  norm = std::sqrt(norm);
  for (Eigen::Index i = 0; i < m; ++i) x[i] = y[i] / norm;
}

bool RayMap::exceeds(const double* a, const double* b, double eps) const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  if (eps >= kPi) return false;
  const double chord = 2.0 * std::sin(eps / 2.0);
  return s > chord * chord;
}

bool RayMap::segment_within(const double* a, const double* b, int n, int first, double eps) const {
  if (eps >= kPi) return true;
  thread_local double cached_eps = -1.0, limit = 0.0;
  if (eps != cached_eps) {
    const double chord = 2.0 * std::sin(eps / 2.0);
    limit = chord * chord;
    cached_eps = eps;
  }
  const std::size_t m = dim();
  return all_steps_near(m, a, b, n, first, [&](const double* x, const double* y) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return s > limit;
  });
}

double RayMap::distance(const double* a, const double* b) const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return 2.0 * std::asin(std::min(1.0, std::sqrt(s) / 2.0));
}

Eigen::MatrixXd to_real(const IntMat& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      r(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).convert_to<double>();
  return r;
}

PointCloud merge(const PointCloud& a, const PointCloud& b) {
  if (a.dim != b.dim) throw Error(ErrorCode::DimensionMismatch, "cannot merge samples of different dimension");
  PointCloud out;
  out.dim = a.dim;
  out.coords = a.coords;
  out.coords.insert(out.coords.end(), b.coords.begin(), b.coords.end());
  out.resolution = std::max(a.resolution, b.resolution);
  out.description = a.description + " + " + b.description;
  return out;
}

PointCloud unstable_plaque(const IntMat& t, double eps, int n_max, std::uint64_t seed, const PlaqueOptions& options) {
  validate(t, ValidationMode::Dynamics);
  if (!(eps > 0) || n_max < 1) throw Error(ErrorCode::InvalidArgument, "plaque needs eps > 0 and n_max >= 1");
  const std::size_t m = t.dim();
  const Spectrum spec = certified_roots(char_poly(t));
  const std::size_t d = spec.on_circle + spec.outside;
  const Eigen::MatrixXd a = to_real(t);
  const auto M = static_cast<Eigen::Index>(m), D = static_cast<Eigen::Index>(d);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x0(m);
  for (double& v : x0) v = unit(rng);

  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(M, D);
  if (d < m) {
    // Orthogonal iteration converges to the dominant d-dimensional invariant subspace.
    q = random_frame(m, d, rng);
    for (int it = 0; it < 20000; ++it) {
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(a * q);
      Eigen::MatrixXd next = qr.householderQ() * Eigen::MatrixXd::Identity(M, D);
      const double change = (next * next.transpose() - q * q.transpose()).norm();
      q = next;
      if (change < 1e-15) break;
    }
  }

  double growth = 0.0;
  Eigen::MatrixXd tq = q;
  for (int j = 0; j < n_max; ++j) {
    growth = std::max(growth, row_abs_norm(tq));
    tq = a * tq;
  }

  const double side = options.side_factor * eps;
  // Resolution is h * growth / 2 with h = side / c.
  auto needed = [&](double fraction) { return static_cast<std::size_t>(std::ceil(side * growth / (2.0 * fraction * eps))); };
  const std::size_t required = std::max<std::size_t>(1, needed(0.25));
  const std::size_t finest = std::max<std::size_t>(1, needed(options.finest_fraction));
  std::size_t per_axis = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(options.max_points), 1.0 / static_cast<double>(d)) + 1e-9));
  per_axis = std::min(per_axis, finest);
  if (per_axis < required)
    throw Error(ErrorCode::BudgetExceeded, "plaque needs " + std::to_string(required) + "^" + std::to_string(d) +
                                               " points for resolution eps/4; budget " + std::to_string(options.max_points));

  const double h = side / static_cast<double>(per_axis);
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= per_axis;

  PointCloud pc;
  pc.dim = m;
  pc.coords.resize(total * m);
  pc.resolution = h * growth / 2.0;
  std::vector<std::size_t> idx(d, 0);
  Eigen::VectorXd s(D);
  for (std::size_t p = 0; p < total; ++p) {
    for (std::size_t k = 0; k < d; ++k) s(static_cast<Eigen::Index>(k)) = (static_cast<double>(idx[k]) + 0.5) * h - side / 2.0;
    const Eigen::VectorXd off = q * s;
    for (std::size_t i = 0; i < m; ++i) pc.coords[p * m + i] = frac(x0[i] + off(static_cast<Eigen::Index>(i)));
    for (std::size_t k = 0; k < d && ++idx[k] == per_axis; ++k) idx[k] = 0;
  }
  std::ostringstream desc;
  desc << "unstable plaque dim " << d << ", " << per_axis << " per axis";
  pc.description = desc.str();
  return pc;
}

PointCloud torus_grid(const IntMat& t, double spacing, int n_max) {
  validate(t, ValidationMode::Dynamics);
  if (!(spacing > 0) || spacing > 1 || n_max < 1) throw Error(ErrorCode::InvalidArgument, "grid needs 0 < spacing <= 1 and n_max >= 1");
  const std::size_t m = t.dim();
  const auto per_axis = static_cast<std::size_t>(std::ceil(1.0 / spacing));
  double total_d = std::pow(static_cast<double>(per_axis), static_cast<double>(m));
  if (total_d > 1e8) throw Error(ErrorCode::BudgetExceeded, "torus grid exceeds 1e8 points");
  const auto total = static_cast<std::size_t>(total_d);
  const double h = 1.0 / static_cast<double>(per_axis);

  const Eigen::MatrixXd a = to_real(t);
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  double growth = 0.0;
  for (int j = 0; j < n_max; ++j) {
    growth = std::max(growth, row_abs_norm(p));
    p = a * p;
  }

  PointCloud pc;
  pc.dim = m;
  pc.coords.resize(total * m);
  pc.resolution = h * growth / 2.0;
  std::vector<std::size_t> idx(m, 0);
  for (std::size_t q = 0; q < total; ++q) {
    for (std::size_t i = 0; i < m; ++i) pc.coords[q * m + i] = (static_cast<double>(idx[i]) + 0.5) * h;
    for (std::size_t k = 0; k < m && ++idx[k] == per_axis; ++k) idx[k] = 0;
  }
  pc.description = "torus grid " + std::to_string(per_axis) + " per axis";
  return pc;
}

PointCloud sphere_sample(std::size_t m, double eps, std::uint64_t seed) {
  if (m < 2 || m > kMaxDim) throw Error(ErrorCode::DimensionMismatch, "sphere sample needs 2 <= m <= 16");
  if (!(eps > 0) || eps > 1) throw Error(ErrorCode::InvalidArgument, "sphere sample needs 0 < eps <= 1");
  const double a = eps / 4.0;
  PointCloud pc;
  pc.dim = m;
  if (m == 2) {
    const auto n = static_cast<std::size_t>(std::ceil(2.0 * kPi / a));
    pc.coords.resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      const double th = 2.0 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
      pc.coords[2 * i] = std::cos(th);
      pc.coords[2 * i + 1] = std::sin(th);
    }
    pc.resolution = kPi / static_cast<double>(n);
    pc.description = "circle grid " + std::to_string(n);
    return pc;
  }
  const auto n = static_cast<std::size_t>(std::ceil(4.0 * kPi / (a * a)));
  const auto pts = fibonacci_sphere(n);
  std::mt19937_64 rng(seed);
  const Eigen::MatrixXd frame = m == 3 ? Eigen::MatrixXd::Identity(3, 3) : random_frame(m, 3, rng);
  pc.coords.resize(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd v = frame * pts[i];
    for (std::size_t j = 0; j < m; ++j) pc.coords[i * m + j] = v(static_cast<Eigen::Index>(j));
  }
  pc.resolution = a;
  pc.description = (m == 3 ? "fibonacci sphere " : "fibonacci great 2-sphere ") + std::to_string(n);
  return pc;
}

double fit_slope(const std::vector<int>& n, const std::vector<std::size_t>& counts, int* window_start) {
  const std::size_t k = std::min(n.size(), counts.size());
  const std::size_t w = (k + 1) / 2;
  if (window_start) *window_start = k == 0 ? 0 : n[k - w];
  if (w < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = k - w; i < k; ++i) {
    const double x = n[i], y = std::log(static_cast<double>(counts[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double ww = static_cast<double>(w);
  return (ww * sxy - sx * sy) / (ww * sxx - sx * sx);
}

EntropyEstimate estimate_spanning(const OrbitSystem& sys, const PointCloud& sample, const EstimateOptions& options) {
  const double eps = options.eps;
  if (!(eps > 0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  if (options.n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 1");
  if (sample.dim != sys.dim() || sample.size() == 0)
    throw Error(ErrorCode::DimensionMismatch, "sample does not match the map dimension");
  if (sample.resolution > eps / 2.0) {
    std::ostringstream msg;
    msg << "sample resolution " << sample.resolution << " is coarser than eps/2 = " << eps / 2.0;
    throw Error(ErrorCode::EpsTooSmall, msg.str());
  }
  const std::size_t N = sample.size();
  if (N > options.budget || N >= kNone)
    throw Error(ErrorCode::BudgetExceeded, "sample has " + std::to_string(N) + " points; budget " + std::to_string(options.budget));

  const std::size_t m = sys.dim();
  const int n_max = options.n_max;
  const unsigned threads = detail::resolve_threads(options.threads);
  const std::size_t max_centers = options.max_centers > 0 ? options.max_centers : options.budget;

  EntropyEstimate est;
  est.eps = eps;
  est.sample_size = N;
  est.resolution = sample.resolution;
  est.seed = options.seed;
  est.sample = sample.description;

  std::vector<std::uint32_t> order(N);
  std::iota(order.begin(), order.end(), 0u);
  std::mt19937_64 rng(options.seed);
  std::shuffle(order.begin(), order.end(), rng);

  const CellGrid grid(sys, eps);
  CenterIndex index(grid);
  Orbits centers{m, n_max, {}};
  std::vector<std::size_t> raw_cover;
  std::vector<double> buf(static_cast<std::size_t>(n_max) * m);
  std::vector<std::uint64_t> keys;

  try {
    for (int n = 1; n <= n_max; ++n) {
      // Any orbit position works as a filter; pick the most spread one.
      const int slot = spread_slot(grid, centers, n);
      index.clear(centers.size());
      for (std::size_t c = 0; c < centers.size(); ++c) index.insert(static_cast<std::uint32_t>(c), centers.at(c) + slot * m);
      for (std::uint32_t p : order) {
        trace(sys, sample.point(p), n, buf.data());
        grid.probe_keys(buf.data() + slot * m, keys);
        bool covered = false;
        for (std::size_t ki = 0; ki < keys.size() && !covered; ++ki)
          for (std::uint32_t c = index.head(keys[ki]); c != kNone && !covered; c = index.next(c))
            covered = within(sys, buf.data(), centers.at(c), n, slot, eps);
        if (covered) continue;
        if (centers.size() >= max_centers) throw BudgetHit("separated set exceeds the budget at n = " + std::to_string(n));
        for (int j = n; j < n_max; ++j) {
          std::copy(buf.begin() + (j - 1) * static_cast<std::ptrdiff_t>(m), buf.begin() + j * static_cast<std::ptrdiff_t>(m),
                    buf.begin() + j * static_cast<std::ptrdiff_t>(m));
          sys.step(buf.data() + j * m);
        }
        const auto id = static_cast<std::uint32_t>(centers.size());
        centers.data.insert(centers.data.end(), buf.begin(), buf.end());
        index.insert(id, buf.data() + slot * m);
      }
      const std::size_t cover = pruned_cover(sys, sample, centers, grid, index, n, slot, eps, threads, 10 * options.budget);
      est.n_values.push_back(n);
      est.separated_counts.push_back(centers.size());
      raw_cover.push_back(cover);
    }
  } catch (const BudgetHit& hit) {
    if (!options.allow_partial || est.n_values.empty()) throw Error(ErrorCode::BudgetExceeded, hit.what());
    est.partial = true;
    est.partial_reason = hit.what();
  }

  // A cover for n + 1 also covers for n.
  est.spanning_counts = raw_cover;
  for (std::size_t i = est.spanning_counts.size(); i-- > 1;)
    est.spanning_counts[i - 1] = std::min(est.spanning_counts[i - 1], est.spanning_counts[i]);
  est.separated_slope = fit_slope(est.n_values, est.separated_counts, &est.window_start);
  est.spanning_slope = fit_slope(est.n_values, est.spanning_counts);
  return est;
}

EntropyEstimate estimate_torus_entropy(const IntMat& t, const EstimateOptions& options, const PlaqueOptions& plaque) {
  const TorusMap map(t);
  PlaqueOptions p = plaque;
  p.max_points = std::min(p.max_points, options.budget);
  return estimate_spanning(map, unstable_plaque(t, options.eps, options.n_max, options.seed, p), options);
}

EntropyEstimate estimate_ray_entropy(const Eigen::MatrixXd& a, const EstimateOptions& options) {
  const RayMap map(a);
  return estimate_spanning(map, sphere_sample(static_cast<std::size_t>(a.rows()), options.eps, options.seed), options);
}

std::string estimate_csv(const EntropyEstimate& e) {
  std::ostringstream out;
  out << "n,spanning,separated\r\n";
  for (std::size_t i = 0; i < e.n_values.size(); ++i)
    out << e.n_values[i] << ',' << e.spanning_counts[i] << ',' << e.separated_counts[i] << "\r\n";
  return out.str();
}

std::vector<InvariantSphere> nonwandering_spheres(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() < 1) throw Error(ErrorCode::NonSquare, "matrix must be square");
  const Eigen::Index m = a.rows();
  const double scale = std::max(1.0, a.norm());
  const double tol = 1e-6 * scale;
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + m);
  std::vector<std::complex<double>> reps;
  for (const auto& z : ev) {
    if (z.imag() < -tol) continue;
    const std::complex<double> w(z.real(), std::abs(z.imag()) <= tol ? 0.0 : z.imag());
    bool seen = false;
    for (const auto& r : reps) seen = seen || std::abs(r - w) <= tol;
    if (!seen) reps.push_back(w);
  }
  std::vector<InvariantSphere> out;
  for (const auto& r : reps) {
    InvariantSphere s;
    s.eigenvalue = r;
    const Eigen::MatrixXcd shifted = a.cast<std::complex<double>>() - r * Eigen::MatrixXcd::Identity(m, m);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
    svd.setThreshold(1e-8);
    const auto g = static_cast<std::size_t>(m - svd.rank());
    if (r.imag() == 0.0) {
      s.subspace_dim = g;
      s.action = r.real() > 0 ? "identity" : "antipodal";
      s.rotation_angle = r.real() > 0 ? 0.0 : kPi;
    } else {
      s.subspace_dim = 2 * g;
      s.action = "rotation";
      s.rotation_angle = std::arg(r);
    }
    s.sphere_dim = s.subspace_dim - 1;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const InvariantSphere& x, const InvariantSphere& y) {
    if (std::abs(x.eigenvalue) != std::abs(y.eigenvalue)) return std::abs(x.eigenvalue) > std::abs(y.eigenvalue);
    return std::arg(x.eigenvalue) < std::arg(y.eigenvalue);
  });
  return out;
}

}  // namespace k3map
