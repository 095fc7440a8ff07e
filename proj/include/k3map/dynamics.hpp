// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "k3map/matrix.hpp"

namespace k3map {

// A map on a compact metric space embedded in R^dim, iterated numerically.
class OrbitSystem {
 public:
  virtual ~OrbitSystem() = default;

  virtual std::size_t dim() const = 0;
  virtual void step(double* x) const = 0;
  virtual double distance(const double* a, const double* b) const = 0;
  virtual bool exceeds(const double* a, const double* b, double eps) const { return distance(a, b) > eps; }
  // a and b hold orbit segments of length n (row-major, dim() per step).
  // True iff every step is within eps; step `first` is tested first.
  virtual bool segment_within(const double* a, const double* b, int n, int first, double eps) const;

  // Hashing support: every coordinate lies in [lo, hi) and satisfies
  // |x_i - y_i| <= distance(x, y), taken modulo (hi - lo) when periodic.
  virtual double coord_lo() const = 0;
  virtual double coord_hi() const = 0;
  virtual bool periodic() const = 0;
  // Points identified with x by the metric (x itself first).
  virtual std::size_t image_count() const { return 1; }
  virtual void image(std::size_t k, const double* x, double* out) const;
};

// Linear automorphism of R^m / Z^m with the max-of-circle-distances metric.
class TorusMap : public OrbitSystem {
 public:
  explicit TorusMap(const IntMat& t);  // Throws Error(DetNotOne) unless |det| = 1.

  std::size_t dim() const override { return m_; }
  void step(double* x) const override;
  double distance(const double* a, const double* b) const override;
  bool segment_within(const double* a, const double* b, int n, int first, double eps) const override;
  double coord_lo() const override { return 0.0; }
  double coord_hi() const override { return 1.0; }
  bool periodic() const override { return true; }

  const IntMat& matrix() const { return t_; }

 private:
  IntMat t_;
  std::size_t m_;
  std::vector<double> entries_;
};

// The same map on T^m / {x ~ -x}, metric min(d(x, y), d(x, -y)).
class QuotientTorusMap : public TorusMap {
 public:
  using TorusMap::TorusMap;

  double distance(const double* a, const double* b) const override;
  bool segment_within(const double* a, const double* b, int n, int first, double eps) const override;
  std::size_t image_count() const override { return 2; }
  void image(std::size_t k, const double* x, double* out) const override;
};

// v -> A v / |A v| on the unit sphere S^{m-1}, angular metric.
class RayMap : public OrbitSystem {
 public:
  explicit RayMap(const Eigen::MatrixXd& a);  // Throws Error(InvalidArgument) if singular.

  std::size_t dim() const override { return static_cast<std::size_t>(a_.rows()); }
  void step(double* x) const override;
  double distance(const double* a, const double* b) const override;
  bool exceeds(const double* a, const double* b, double eps) const override;
  bool segment_within(const double* a, const double* b, int n, int first, double eps) const override;
  double coord_lo() const override { return -1.0; }
  double coord_hi() const override { return 1.0 + 1e-12; }
  bool periodic() const override { return false; }

 private:
  Eigen::MatrixXd a_;
};

Eigen::MatrixXd to_real(const IntMat& m);

// Finite sample of a compact set K. `resolution` bounds the distance, in the
// orbit metric d_n for every n <= the n_max it was built for, from any point
// of K to the nearest sample point.
struct PointCloud {
  std::size_t dim = 0;
  std::vector<double> coords;  // row-major, size() * dim
  double resolution = 0.0;
  std::string description;

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
  const double* point(std::size_t i) const { return coords.data() + i * dim; }
};

PointCloud merge(const PointCloud& a, const PointCloud& b);

struct PlaqueOptions {
  double side_factor = 0.5;          // plaque side = side_factor * eps
  double finest_fraction = 1.0 / 64;  // never sample finer than this * eps
  std::size_t max_points = 4'000'000;
};

// Grid on a cube of the center-unstable subspace of T (eigenvalues with
// |lambda| >= 1), through a seeded random base point. Resolution is at most
// eps / 4 under d_n for n <= n_max. Throws Error(BudgetExceeded) when that
// needs more than max_points points.
PointCloud unstable_plaque(const IntMat& t, double eps, int n_max, std::uint64_t seed, const PlaqueOptions& options = {});

// Uniform grid on all of T^m with spacing `spacing`; the resolution accounts
// for expansion of T up to n_max - 1 steps.
PointCloud torus_grid(const IntMat& t, double spacing, int n_max);

// Sample of S^{m-1} with angular spacing about eps / 4: a grid on S^1, a
// Fibonacci lattice on S^2, and for m >= 4 a Fibonacci lattice on a great
// 2-sphere through a seeded random 3-frame.
PointCloud sphere_sample(std::size_t m, double eps, std::uint64_t seed);

struct EstimateOptions {
  double eps = 0.01;
  int n_max = 8;
  std::uint64_t seed = 1;
  std::size_t budget = 20'000'000;  // sample points; cover entries are capped at 10x
  std::size_t max_centers = 0;       // 0: same as budget
  unsigned threads = 0;              // 0: K3MAP_THREADS or 1
  bool allow_partial = false;        // on budget exhaustion return what is done instead of throwing
};

struct EntropyEstimate {
  double eps = 0.0;
  std::vector<int> n_values;
  std::vector<std::size_t> spanning_counts;   // r_n
  std::vector<std::size_t> separated_counts;  // s_n
  double spanning_slope = 0.0;
  double separated_slope = 0.0;
  int window_start = 0;  // slopes fit n in [window_start, last n]
  std::size_t sample_size = 0;
  double resolution = 0.0;
  std::uint64_t seed = 0;
  std::string sample;
  bool partial = false;
  std::string partial_reason;
};

// Greedy (n, eps)-separated sets, nested in n, and a cover pruned by reverse
// deletion. Throws Error(EpsTooSmall) when sample.resolution > eps / 2,
// Error(InvalidArgument) for eps <= 0 or n_max < 1, Error(BudgetExceeded).
EntropyEstimate estimate_spanning(const OrbitSystem& map, const PointCloud& sample, const EstimateOptions& options);

// Torus map of T sampled on its unstable plaque.
EntropyEstimate estimate_torus_entropy(const IntMat& t, const EstimateOptions& options, const PlaqueOptions& plaque = {});

// Ray map of A sampled by sphere_sample.
EntropyEstimate estimate_ray_entropy(const Eigen::MatrixXd& a, const EstimateOptions& options);

// Least-squares slope of log(count) against n over the top ceil(k/2) entries.
double fit_slope(const std::vector<int>& n, const std::vector<std::size_t>& counts, int* window_start = nullptr);

std::string estimate_csv(const EntropyEstimate& e);

// Invariant subsphere S(V) of the ray map for an eigenspace V.
struct InvariantSphere {
  std::complex<double> eigenvalue;  // representative; imag > 0 for a complex pair
  std::size_t subspace_dim = 0;     // real dimension of V
  std::size_t sphere_dim = 0;       // subspace_dim - 1
  // "identity", "antipodal" or "rotation"
  std::string action;
  double rotation_angle = 0.0;  // radians, for rotations
};

std::vector<InvariantSphere> nonwandering_spheres(const Eigen::MatrixXd& a);

}  // namespace k3map
