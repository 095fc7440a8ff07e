// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Data goes to stdout, diagnostics to stderr.
//
// Exit codes: 0 success, 1 usage or parse error, 2 invalid input,
// 3 spectra failure, 4 budget exceeded (partial results are still printed),
// 5 internal error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "k3map/k3map.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kSpectra = 3, kBudget = 4, kInternal = 5 };

int exit_for(k3map_status s) {
  switch (s) {
    case K3MAP_OK: return kOk;
    case K3MAP_ERR_PARSE: return kUsage;
    case K3MAP_ERR_REFINEMENT_BUDGET:
    case K3MAP_ERR_UNDECIDED_CIRCLE: return kSpectra;
    case K3MAP_ERR_BUDGET_EXCEEDED: return kBudget;
    case K3MAP_ERR_INTERNAL: return kInternal;
    default: return kInvalid;
  }
}

int fail(k3map_status s) {
  std::cerr << "k3map: error: " << k3map_status_name(s) << ": " << k3map_last_error() << "\n";
  return exit_for(s);
}

struct MatrixDeleter {
  void operator()(k3map_matrix* m) const { k3map_matrix_free(m); }
};
struct ResultDeleter {
  void operator()(k3map_result* r) const { k3map_result_free(r); }
};
using MatrixPtr = std::unique_ptr<k3map_matrix, MatrixDeleter>;
using ResultPtr = std::unique_ptr<k3map_result, ResultDeleter>;

struct Input {
  std::string matrix;
  std::string poly;
  bool identity = false;
  std::size_t dim = 0;
};

struct Output {
  bool json = false;
  std::string csv;  // "-" for stdout
  bool timing = false;
};

struct Dynamics {
  double eps = 0.0;
  int n_max = 0;
  std::uint64_t seed = 1;
  double ray_eps = 0.0;
  int ray_n_max = 0;
  bool no_ray = false;
  std::size_t budget = 0;
  std::size_t max_centers = 0;
};

int verbosity = 0;

void log(const std::string& line) {
  if (verbosity > 0) std::cerr << "k3map: " << line << "\n";
}

void add_input(CLI::App* cmd, Input& in) {
  auto* matrix = cmd->add_option("--matrix,-m", in.matrix,
                                 "row-major integers (whitespace or commas), a JSON array of rows, or @FILE");
  auto* poly = cmd->add_option("--poly,-p", in.poly, "monic polynomial, e.g. \"x^4-6x^2+1\"; uses its companion matrix");
  auto* identity = cmd->add_flag("--identity", in.identity, "identity matrix of size --dim");
  cmd->add_option("--dim,-d", in.dim, "matrix dimension (inferred from the entry count when omitted)");
  matrix->excludes(poly)->excludes(identity);
  poly->excludes(identity);
}

void add_output(CLI::App* cmd, Output& out, bool csv) {
  cmd->add_flag("--json", out.json, "emit the JSON report");
  if (csv)
    cmd->add_option("--csv", out.csv, "write the (n, spanning, separated) table to PATH, or to stdout when PATH is omitted")
        ->expected(0, 1)
        ->default_str("-");
  cmd->add_flag("--timing", out.timing, "include elapsed time in the report");
}

void add_dynamics(CLI::App* cmd, Dynamics& d) {
  cmd->add_option("--eps", d.eps, "torus scale epsilon")->check(CLI::PositiveNumber);
  cmd->add_option("--nmax", d.n_max, "largest orbit length n")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", d.seed, "random seed for base points and sphere frames");
  cmd->add_option("--ray-eps", d.ray_eps, "sphere scale epsilon")->check(CLI::PositiveNumber);
  cmd->add_option("--ray-nmax", d.ray_n_max, "largest orbit length for the sphere estimate")->check(CLI::PositiveNumber);
  cmd->add_flag("--no-ray", d.no_ray, "skip the sphere estimate");
  cmd->add_option("--budget", d.budget, "maximum sample points; centers and cover entries are capped from it");
  cmd->add_option("--max-centers", d.max_centers, "maximum centers per run (0: same as budget)");
}

std::string read_matrix_text(const std::string& spec) {
  if (spec.empty() || spec[0] != '@') return spec;
  const std::string path = spec.substr(1);
  std::ifstream file(path);
  if (!file) throw CLI::ValidationError("--matrix", "cannot read " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

k3map_status load(const Input& in, MatrixPtr& out, std::string& source) {
  k3map_matrix* m = nullptr;
  k3map_status s;
  if (!in.poly.empty()) {
    s = k3map_matrix_from_poly(in.poly.c_str(), &m);
    source = "companion(" + in.poly + ")";
  } else if (in.identity) {
    s = k3map_matrix_identity(in.dim == 0 ? 4 : in.dim, &m);
    source = "identity";
  } else if (!in.matrix.empty()) {
    s = k3map_matrix_parse(read_matrix_text(in.matrix).c_str(), in.dim, &m);
    source = in.matrix[0] == '@' ? in.matrix.substr(1) : "matrix";
  } else {
    throw CLI::RequiredError("one of --matrix, --poly or --identity");
  }
  out.reset(m);
  if (s == K3MAP_OK && in.dim != 0 && k3map_matrix_dim(m) != in.dim) {
    std::cerr << "k3map: error: polynomial degree does not match --dim\n";
    return K3MAP_ERR_DIMENSION_MISMATCH;
  }
  return s;
}

bool write_csv(const std::string& target, const char* text) {
  if (target.empty()) return true;
  if (target == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream file(target, std::ios::binary);
  if (!file) {
    std::cerr << "k3map: error: cannot write " << target << "\n";
    return false;
  }
  file << text;
  return true;
}

int emit(k3map_result* r, const Output& out) {
  if (out.json)
    std::cout << k3map_result_json(r, out.timing ? 1 : 0);
  else if (out.csv != "-")
    std::cout << k3map_result_summary(r, out.timing ? 1 : 0);
  if (!write_csv(out.csv, k3map_result_csv(r))) return kInvalid;
  if (k3map_result_partial(r)) {
    std::cerr << "k3map: warning: estimate stopped at its budget; counts are partial\n";
    return kBudget;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants and entropy checks for K3 maps built from SL(4,Z) matrices"};
  app.set_version_flag("--version", std::string(k3map_version()));
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads,-j", threads, "worker threads (0: K3MAP_THREADS or 1)");
  app.add_flag("-v,--verbose", verbosity, "log progress to stderr");

  Input input;
  Output output;
  Dynamics dyn;
  k3map_spectra_options spectra;
  k3map_spectra_defaults(&spectra);

  auto* analyze = app.add_subcommand("analyze", "spectrum, homology action and classification of a 4x4 matrix");
  add_input(analyze, input);
  add_output(analyze, output, false);
  analyze->add_option("--root-eps", spectra.eps, "relative radius of the certified root discs");

  auto* verify = app.add_subcommand("verify-entropy", "compare spanning-set estimates with the closed-form entropy");
  add_input(verify, input);
  add_output(verify, output, true);
  add_dynamics(verify, dyn);

  auto* report = app.add_subcommand("report", "analyze plus verify-entropy");
  add_input(report, input);
  add_output(report, output, true);
  add_dynamics(report, dyn);

  std::string kind;
  std::string first;
  std::string second;
  bool table = false;
  auto* family = app.add_subcommand("family", "sweep a parametric family; CSV to stdout by default");
  family->add_option("kind", kind, "product, irreducible or gap")->required();
  family->add_option("--a", first, "a or a range like 3..10 (product, gap)");
  family->add_option("--b", second, "b or a range (product)");
  family->add_option("--n", first, "n or a range (irreducible)");
  family->add_flag("--json", output.json, "emit JSON instead of CSV");
  family->add_flag("--table", table, "emit an aligned text table instead of CSV");
  family->add_option("--csv", output.csv, "write CSV to PATH instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (family->parsed()) {
      if (first.empty()) {
        std::cerr << "k3map: error: family " << kind << " needs " << (kind == "irreducible" ? "--n" : "--a") << "\n";
        return kUsage;
      }
      k3map_result* raw = nullptr;
      const k3map_status s = k3map_family_sweep(kind.c_str(), first.c_str(), second.empty() ? nullptr : second.c_str(),
                                                &spectra, threads, &raw);
      if (s != K3MAP_OK) return fail(s);
      ResultPtr r(raw);
      log("swept " + kind);
      if (output.json)
        std::cout << k3map_result_json(r.get(), 0);
      else if (table)
        std::cout << k3map_result_summary(r.get(), 0);
      if (!output.csv.empty() && output.csv != "-")
        return write_csv(output.csv, k3map_result_csv(r.get())) ? kOk : kInvalid;
      if (!output.json && !table) std::cout << k3map_result_csv(r.get());
      return kOk;
    }

    MatrixPtr m;
    std::string source;
    const k3map_status loaded = load(input, m, source);
    if (loaded != K3MAP_OK) return loaded == K3MAP_ERR_DIMENSION_MISMATCH && m ? kInvalid : fail(loaded);
    log("input " + source + ":\n" + k3map_matrix_to_string(m.get()));

    k3map_dynamics_options d;
    k3map_dynamics_defaults(&d);
    if (dyn.eps > 0) d.eps = dyn.eps;
    if (dyn.n_max > 0) d.n_max = dyn.n_max;
    d.seed = dyn.seed;
    if (dyn.ray_eps > 0) d.ray_eps = dyn.ray_eps;
    if (dyn.ray_n_max > 0) d.ray_n_max = dyn.ray_n_max;
    if (dyn.budget > 0) d.budget = dyn.budget;
    d.max_centers = dyn.max_centers;
    d.include_ray = dyn.no_ray ? 0 : 1;
    d.threads = threads;

    k3map_result* raw = nullptr;
    k3map_status s;
    if (analyze->parsed()) {
      s = k3map_analyze(m.get(), source.c_str(), &spectra, &raw);
    } else if (verify->parsed()) {
      s = k3map_verify_entropy(m.get(), source.c_str(), &spectra, &d, &raw);
    } else {
      s = k3map_report(m.get(), source.c_str(), &spectra, &d, &raw);
    }
    if (s != K3MAP_OK) return fail(s);
    ResultPtr r(raw);
    const int code = emit(r.get(), output);
    log("done in " + std::to_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()) + " s");
    return code;
  } catch (const CLI::Error& e) {
    std::cerr << "k3map: error: " << e.what() << "\n";
    return kUsage;
  }
}
