// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3map/classify.hpp"
#include "k3map/dynamics.hpp"
#include "k3map/families.hpp"
#include "k3map/homology.hpp"

namespace k3map {

inline constexpr const char* kSchemaVersion = "1.0.0";
const char* version() noexcept;

// Row-major integers separated by whitespace or commas, optionally wrapped
// in brackets, or a JSON array of rows. dim = 0 infers a square shape.
// Throws Error(Parse) or Error(NonSquare).
IntMat parse_matrix(const std::string& text, std::size_t dim = 0);

struct DynamicsOptions {
  EstimateOptions torus;
  PlaqueOptions plaque;
  bool include_ray = true;
  double ray_eps = 0.02;
  int ray_n_max = 20;
};

struct DynamicsSection {
  EntropyEstimate torus;
  Bounded target;  // sum of log|lambda| over eigenvalues outside the circle
  bool relative = true;  // deviations relative to target, absolute when target is 0
  double separated_deviation = 0.0;
  double spanning_deviation = 0.0;
  std::optional<EntropyEstimate> ray;
  std::vector<InvariantSphere> spheres;
  bool partial = false;
};

struct Report {
  std::string command;  // "analyze", "verify-entropy" or "report"
  std::string source;
  IntMat matrix;
  BigInt determinant;
  IntPoly char_poly;
  Spectrum spectrum;
  EntropyValue entropy;
  Bounded spectral_radius;
  std::optional<Bounded> pair_product_radius;
  std::optional<HomologyAction> homology;
  std::optional<Classification> classification;
  std::optional<DynamicsSection> dynamics;
  double elapsed_seconds = 0.0;
};

// Full K3 pipeline; t must be 4x4 with det 1.
Report analyze_report(const IntMat& t, const std::string& source, const SpectraOptions& spectra = {});

// Torus and ray estimates for any square t with |det| = 1.
Report verify_entropy_report(const IntMat& t, const std::string& source, const SpectraOptions& spectra,
                             const DynamicsOptions& dynamics);

// analyze_report plus the dynamics section.
Report full_report(const IntMat& t, const std::string& source, const SpectraOptions& spectra,
                   const DynamicsOptions& dynamics);

DynamicsSection run_dynamics(const IntMat& t, const Bounded& target, const DynamicsOptions& options);

std::string report_json(const Report& r, bool include_timing);
std::string report_text(const Report& r, bool include_timing);

std::string family_json(const std::vector<FamilyRow>& rows);
std::string family_text(const std::vector<FamilyRow>& rows);

}  // namespace k3map
