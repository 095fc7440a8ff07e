// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#include "k3map/k3map.h"

#include <algorithm>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "k3map/error.hpp"
#include "k3map/report.hpp"

struct k3map_matrix {
  k3map::IntMat value;
  std::string text;
};

struct k3map_result {
  std::optional<k3map::Report> report;
  std::vector<k3map::FamilyRow> rows;
  bool is_family = false;
  std::string json;
  std::string csv;
  std::string summary;
};

namespace {

thread_local std::string t_error;
thread_local std::string t_detail;

k3map_status status_of(k3map::ErrorCode code) {
  using k3map::ErrorCode;
  switch (code) {
    case ErrorCode::Parse: return K3MAP_ERR_PARSE;
    case ErrorCode::NonSquare: return K3MAP_ERR_NON_SQUARE;
    case ErrorCode::DimensionMismatch: return K3MAP_ERR_DIMENSION_MISMATCH;
    case ErrorCode::DetNotOne: return K3MAP_ERR_DET_NOT_ONE;
    case ErrorCode::NotMonic: return K3MAP_ERR_NOT_MONIC;
    case ErrorCode::ConstantNotUnit: return K3MAP_ERR_CONSTANT_NOT_UNIT;
    case ErrorCode::BadParams: return K3MAP_ERR_BAD_PARAMS;
    case ErrorCode::RefinementBudgetExceeded: return K3MAP_ERR_REFINEMENT_BUDGET;
    case ErrorCode::UndecidedCircleMembership: return K3MAP_ERR_UNDECIDED_CIRCLE;
    case ErrorCode::BudgetExceeded: return K3MAP_ERR_BUDGET_EXCEEDED;
    case ErrorCode::EpsTooSmall: return K3MAP_ERR_EPS_TOO_SMALL;
    case ErrorCode::InvalidArgument: return K3MAP_ERR_INVALID_ARGUMENT;
  }
  return K3MAP_ERR_INTERNAL;
}

template <class Fn>
k3map_status guarded(Fn&& fn) {
  t_error.clear();
  t_detail.clear();
  try {
    fn();
    return K3MAP_OK;
  } catch (const k3map::Error& e) {
    t_error = e.what();
    t_detail = e.detail();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    t_error = "out of memory";
  } catch (const std::exception& e) {
    t_error = e.what();
  } catch (...) {
    t_error = "unknown failure";
  }
  return K3MAP_ERR_INTERNAL;
}

k3map_status null_argument(const char* what) {
  t_error = std::string(what) + " must not be NULL";
  t_detail.clear();
  return K3MAP_ERR_INVALID_ARGUMENT;
}

k3map::SpectraOptions spectra_of(const k3map_spectra_options* o) {
  k3map::SpectraOptions s;
  if (o) {
    s.eps = o->eps;
    s.max_rounds = o->max_rounds;
  }
  return s;
}

k3map::DynamicsOptions dynamics_of(const k3map_dynamics_options* o) {
  k3map_dynamics_options c;
  k3map_dynamics_defaults(&c);
  if (o) c = *o;
  k3map::DynamicsOptions d;
  d.torus.eps = c.eps;
  d.torus.n_max = c.n_max;
  d.torus.seed = c.seed;
  d.torus.budget = c.budget;
  d.torus.max_centers = c.max_centers;
  d.torus.threads = c.threads;
  d.plaque.max_points = std::min(d.plaque.max_points, c.budget);
  d.include_ray = c.include_ray != 0;
  d.ray_eps = c.ray_eps;
  d.ray_n_max = c.ray_n_max;
  return d;
}

k3map_status make_matrix(k3map::IntMat value, k3map_matrix** out) {
  auto* m = new k3map_matrix{std::move(value), {}};
  m->text = k3map::format_matrix(m->value);
  *out = m;
  return K3MAP_OK;
}

template <class Build>
k3map_status run_report(const k3map_matrix* m, k3map_result** out, Build&& build) {
  if (!m) return null_argument("matrix");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto* r = new k3map_result;
    try {
      r->report = build(m->value);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

}  // namespace

extern "C" {

const char* k3map_version(void) { return k3map::version(); }

const char* k3map_status_name(k3map_status status) {
  switch (status) {
    case K3MAP_OK: return "Ok";
    case K3MAP_ERR_PARSE: return "Parse";
    case K3MAP_ERR_NON_SQUARE: return "NonSquare";
    case K3MAP_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case K3MAP_ERR_DET_NOT_ONE: return "DetNotOne";
    case K3MAP_ERR_NOT_MONIC: return "NotMonic";
    case K3MAP_ERR_CONSTANT_NOT_UNIT: return "ConstantNotUnit";
    case K3MAP_ERR_BAD_PARAMS: return "BadParams";
    case K3MAP_ERR_REFINEMENT_BUDGET: return "RefinementBudgetExceeded";
    case K3MAP_ERR_UNDECIDED_CIRCLE: return "UndecidedCircleMembership";
    case K3MAP_ERR_BUDGET_EXCEEDED: return "BudgetExceeded";
    case K3MAP_ERR_EPS_TOO_SMALL: return "EpsTooSmall";
    case K3MAP_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case K3MAP_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* k3map_last_error(void) { return t_error.c_str(); }
const char* k3map_last_detail(void) { return t_detail.c_str(); }

void k3map_spectra_defaults(k3map_spectra_options* out) {
  if (!out) return;
  const k3map::SpectraOptions s;
  out->eps = s.eps;
  out->max_rounds = s.max_rounds;
}

void k3map_dynamics_defaults(k3map_dynamics_options* out) {
  if (!out) return;
  const k3map::DynamicsOptions d;
  out->eps = d.torus.eps;
  out->n_max = d.torus.n_max;
  out->seed = d.torus.seed;
  out->budget = d.torus.budget;
  out->max_centers = d.torus.max_centers;
  out->threads = d.torus.threads;
  out->include_ray = d.include_ray ? 1 : 0;
  out->ray_eps = d.ray_eps;
  out->ray_n_max = d.ray_n_max;
}

k3map_status k3map_matrix_parse(const char* text, size_t dim, k3map_matrix** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { make_matrix(k3map::parse_matrix(text, dim), out); });
}

k3map_status k3map_matrix_from_poly(const char* poly, k3map_matrix** out) {
  if (!poly) return null_argument("poly");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { make_matrix(k3map::companion(k3map::parse_poly(poly)), out); });
}

k3map_status k3map_matrix_identity(size_t dim, k3map_matrix** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  if (dim == 0) {
    t_error = "dimension must be positive";
    return K3MAP_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { make_matrix(k3map::IntMat::identity(dim), out); });
}

size_t k3map_matrix_dim(const k3map_matrix* m) { return m ? m->value.dim() : 0; }
const char* k3map_matrix_to_string(const k3map_matrix* m) { return m ? m->text.c_str() : ""; }
void k3map_matrix_free(k3map_matrix* m) { delete m; }

k3map_status k3map_analyze(const k3map_matrix* m, const char* source, const k3map_spectra_options* spectra,
                           k3map_result** out) {
  const std::string src = source ? source : "";
  return run_report(m, out, [&](const k3map::IntMat& t) { return k3map::analyze_report(t, src, spectra_of(spectra)); });
}

k3map_status k3map_verify_entropy(const k3map_matrix* m, const char* source, const k3map_spectra_options* spectra,
                                  const k3map_dynamics_options* dynamics, k3map_result** out) {
  const std::string src = source ? source : "";
  return run_report(m, out, [&](const k3map::IntMat& t) {
    return k3map::verify_entropy_report(t, src, spectra_of(spectra), dynamics_of(dynamics));
  });
}

k3map_status k3map_report(const k3map_matrix* m, const char* source, const k3map_spectra_options* spectra,
                          const k3map_dynamics_options* dynamics, k3map_result** out) {
  const std::string src = source ? source : "";
  return run_report(m, out, [&](const k3map::IntMat& t) {
    return k3map::full_report(t, src, spectra_of(spectra), dynamics_of(dynamics));
  });
}

k3map_status k3map_family_sweep(const char* kind, const char* first, const char* second,
                                const k3map_spectra_options* spectra, unsigned threads, k3map_result** out) {
  if (!kind) return null_argument("kind");
  if (!first) return null_argument("first");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const auto k = k3map::parse_kind(kind);
    const auto lo = k3map::parse_range(first);
    k3map::IntRange hi{};
    if (k == k3map::FamilyKind::ProductQuadratics) {
      if (!second) throw k3map::Error(k3map::ErrorCode::BadParams, "product family needs both a and b");
      hi = k3map::parse_range(second);
    }
    k3map::SweepOptions options;
    options.spectra = spectra_of(spectra);
    options.threads = threads;
    auto* r = new k3map_result;
    try {
      r->rows = k3map::sweep(k3map::enumerate_family(k, lo, hi), options);
    } catch (...) {
      delete r;
      throw;
    }
    r->is_family = true;
    *out = r;
  });
}

const char* k3map_result_json(k3map_result* r, int include_timing) {
  if (!r) return "";
  r->json = r->is_family ? k3map::family_json(r->rows) : k3map::report_json(*r->report, include_timing != 0);
  return r->json.c_str();
}

const char* k3map_result_csv(k3map_result* r) {
  if (!r) return "";
  if (r->is_family)
    r->csv = k3map::sweep_csv(r->rows);
  else if (r->report->dynamics)
    r->csv = k3map::estimate_csv(r->report->dynamics->torus);
  else
    r->csv.clear();
  return r->csv.c_str();
}

const char* k3map_result_summary(k3map_result* r, int include_timing) {
  if (!r) return "";
  r->summary = r->is_family ? k3map::family_text(r->rows) : k3map::report_text(*r->report, include_timing != 0);
  return r->summary.c_str();
}

int k3map_result_partial(const k3map_result* r) {
  return r && r->report && r->report->dynamics && r->report->dynamics->partial ? 1 : 0;
}

void k3map_result_free(k3map_result* r) { delete r; }

}  // extern "C"
