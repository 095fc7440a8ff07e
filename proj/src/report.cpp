// Copyright 2026 The k3map Authors
// SPDX-License-Identifier: Apache-2.0
#include "k3map/report.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "k3map/error.hpp"

namespace k3map {

using Json = nlohmann::ordered_json;

namespace {

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Collects a JSON array of integer rows; integers too large for 64 bits
// arrive through number_float with their source text.
class MatrixSax : public nlohmann::json_sax<nlohmann::json> {
 public:
  std::vector<std::vector<BigInt>> rows;

  bool null() override { return fail("null"); }
  bool boolean(bool) override { return fail("boolean"); }
  bool number_integer(number_integer_t v) override { return push(BigInt(v)); }
  bool number_unsigned(number_unsigned_t v) override { return push(BigInt(v)); }
  bool number_float(number_float_t, const string_t& text) override {
    if (text.find_first_of(".eE") != std::string::npos) return fail("non-integer " + text);
    return push(parse_bigint(text));
  }
  bool string(string_t&) override { return fail("string"); }
  bool binary(binary_t&) override { return fail("binary"); }
  bool start_object(std::size_t) override { return fail("object"); }
  bool key(string_t&) override { return fail("object"); }
  bool end_object() override { return fail("object"); }
  bool start_array(std::size_t) override {
    if (++depth_ > 2) return fail("nesting deeper than rows");
    if (depth_ == 2) rows.emplace_back();
    return true;
  }
  bool end_array() override {
    --depth_;
    return true;
  }
  bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& e) override {
    error = "invalid JSON at byte " + std::to_string(pos) + ": " + e.what();
    return false;
  }

  std::string error;

 private:
  bool push(BigInt v) {
    if (depth_ != 2) return fail("entries must sit inside row arrays");
    rows.back().push_back(std::move(v));
    return true;
  }
  bool fail(const std::string& what) {
    error = "unexpected " + what + " in matrix JSON";
    return false;
  }
  int depth_ = 0;
};

IntMat square_from(const std::vector<BigInt>& values, std::size_t dim) {
  if (values.empty()) throw Error(ErrorCode::Parse, "matrix has no entries");
  std::size_t n = dim;
  if (n == 0) {
    n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(values.size()))));
    if (n * n != values.size())
      throw Error(ErrorCode::NonSquare, std::to_string(values.size()) + " entries do not form a square matrix");
  } else if (n * n != values.size()) {
    throw Error(ErrorCode::NonSquare, "expected " + std::to_string(n * n) + " entries for dimension " +
                                          std::to_string(n) + ", got " + std::to_string(values.size()));
  }
  IntMat m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = values[i * n + j];
  return m;
}

Json big(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return Json(v.convert_to<std::int64_t>());
  return Json(v.str());
}

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json bounded(const Bounded& b) { return Json{{"value", num(b.value)}, {"error", num(b.error)}}; }

Json matrix_json(const IntMat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(big(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

const char* location_name(CircleClass c) {
  switch (c) {
    case CircleClass::Inside: return "inside";
    case CircleClass::On: return "on";
    case CircleClass::Outside: return "outside";
    case CircleClass::Undecided: return "undecided";
  }
  return "undecided";
}

Json root_json(const RootEnclosure& r) {
  return Json{{"midpoint", {num(r.midpoint.real()), num(r.midpoint.imag())}},
              {"radius", num(r.radius)},
              {"multiplicity", r.multiplicity},
              {"location", location_name(r.location)},
              {"is_real", r.is_real}};
}

Json poly_json(const IntPoly& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(big(c));
  return Json{{"text", to_string(p)}, {"coefficients_ascending", coeffs}};
}

Json spectrum_json(const Spectrum& s) {
  Json roots = Json::array();
  for (const auto& r : s.roots) roots.push_back(root_json(r));
  return Json{{"degree", s.degree()},
              {"roots", roots},
              {"counts", {{"inside", s.inside}, {"on_circle", s.on_circle}, {"outside", s.outside}}},
              {"all_real_distinct", s.all_real_distinct},
              {"cyclotomic_orders", s.cyclotomic_orders}};
}

Json entropy_json(const EntropyValue& e) {
  Json terms = Json::array();
  for (const auto& t : e.terms)
    terms.push_back(Json{{"root", {num(t.root.midpoint.real()), num(t.root.midpoint.imag())}},
                         {"multiplicity", t.root.multiplicity},
                         {"log_modulus", num(t.log_modulus)}});
  return Json{{"value", num(e.value)}, {"error", num(e.error)}, {"terms", terms}};
}

Json homology_json(const HomologyAction& h, const std::optional<Classification>& c) {
  const Signature sig = signature(h.gram_wedge);
  const IntMat block = h.block_matrix();
  return Json{{"torsion_permutation", h.permutation.images()},
              {"cycle_type", h.permutation.cycle_type()},
              {"permutation_order", h.permutation.order()},
              {"wedge_block", matrix_json(h.wedge_block)},
              {"block_matrix", matrix_json(block)},
              {"gram_w", matrix_json(h.gram_w)},
              {"gram_wedge", matrix_json(h.gram_wedge)},
              {"gram_wedge_signature", {{"positive", sig.positive}, {"negative", sig.negative}, {"zero", sig.zero}}},
              {"forms_preserved", preserves_form(block, h.block_gram())},
              {"specrad", c ? bounded(c->homological_specrad) : Json(nullptr)},
              {"yomdin", c ? bounded(c->yomdin) : Json(nullptr)}};
}

Json classification_json(const Classification& c) {
  Json gap = nullptr;
  if (c.conjecture_gap)
    gap = Json{{"value", num(c.conjecture_gap->value.value)},
               {"error", num(c.conjecture_gap->value.error)},
               {"log_third_modulus", bounded(c.conjecture_gap->log_third_modulus)}};
  return Json{{"outside_count", c.outside_count},
              {"is_entropy_minimizer_case", c.is_entropy_minimizer_case},
              {"is_anosov", c.is_anosov},
              {"has_4_distinct_real", c.has_4_distinct_real},
              {"no_invariant_complex_structure", c.no_invariant_complex_structure},
              {"complex_structure", c.complex_structure == ComplexStructureVerdict::Obstructed ? "obstructed" : "unknown"},
              {"yomdin", bounded(c.yomdin)},
              {"conjecture_gap", gap},
              {"consistent", is_consistent(c)}};
}

Json estimate_json(const EntropyEstimate& e) {
  return Json{{"eps", num(e.eps)},
              {"n_values", e.n_values},
              {"spanning_counts", e.spanning_counts},
              {"separated_counts", e.separated_counts},
              {"spanning_slope", num(e.spanning_slope)},
              {"separated_slope", num(e.separated_slope)},
              {"window_start", e.window_start},
              {"sample", e.sample},
              {"sample_size", e.sample_size},
              {"resolution", num(e.resolution)},
              {"seed", e.seed},
              {"partial", e.partial},
              {"partial_reason", e.partial ? Json(e.partial_reason) : Json(nullptr)}};
}

Json sphere_json(const InvariantSphere& s) {
  return Json{{"eigenvalue", {num(s.eigenvalue.real()), num(s.eigenvalue.imag())}},
              {"subspace_dim", s.subspace_dim},
              {"sphere_dim", s.sphere_dim},
              {"action", s.action},
              {"rotation_angle", num(s.rotation_angle)}};
}

Json dynamics_json(const DynamicsSection& d) {
  Json spheres = Json::array();
  for (const auto& s : d.spheres) spheres.push_back(sphere_json(s));
  return Json{{"target", bounded(d.target)},
              {"deviation_kind", d.relative ? "relative" : "absolute"},
              {"separated_deviation", num(d.separated_deviation)},
              {"spanning_deviation", num(d.spanning_deviation)},
              {"torus", estimate_json(d.torus)},
              {"ray", d.ray ? estimate_json(*d.ray) : Json(nullptr)},
              {"nonwandering_spheres", spheres},
              {"partial", d.partial}};
}

// dump(2) with arrays of scalars kept on one line.
std::string pretty(const Json& j) {
  std::istringstream in(j.dump(2));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (!line.empty() && line.back() == '[') {
      std::size_t k = i + 1;
      std::string joined;
      bool flat = true;
      for (; k < lines.size(); ++k) {
        const auto start = lines[k].find_first_not_of(' ');
        const std::string item = lines[k].substr(start);
        if (item == "]" || item == "]," ) break;
        if (item.back() == '[' || item.back() == '{') {
          flat = false;
          break;
        }
        joined += (joined.empty() ? "" : " ") + item;
      }
      if (flat && k < lines.size()) {
        out += line + joined + lines[k].substr(lines[k].find_first_not_of(' ')) + "\n";
        i = k;
        continue;
      }
    }
    out += line + "\n";
  }
  return out;
}

std::string fmt(double v, int precision = 15) {
  std::ostringstream out;
  out << std::setprecision(precision) << v;
  return out.str();
}

std::string yes(bool v) { return v ? "yes" : "no"; }

Report base_report(const IntMat& t, const std::string& command, const std::string& source, const SpectraOptions& spectra) {
  Report r;
  r.command = command;
  r.source = source;
  r.matrix = t;
  r.determinant = determinant(t);
  r.char_poly = char_poly(t);
  r.spectrum = certified_roots(r.char_poly, spectra);
  r.entropy = entropy_formula(r.spectrum);
  r.spectral_radius = spectral_radius(r.spectrum);
  if (t.dim() == 4) r.pair_product_radius = pair_product_radius(r.spectrum);
  return r;
}

}  // namespace

const char* version() noexcept { return "0.1.0"; }

IntMat parse_matrix(const std::string& text, std::size_t dim) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw Error(ErrorCode::Parse, "empty matrix text");
  const auto second = text.find_first_not_of(" \t\r\n", first + 1);
  if (text[first] == '[' && second != std::string::npos && text[second] == '[') {
    MatrixSax sax;
    if (!nlohmann::json::sax_parse(text, &sax)) throw Error(ErrorCode::Parse, sax.error);
    if (sax.rows.empty()) throw Error(ErrorCode::Parse, "matrix has no rows");
    for (const auto& row : sax.rows)
      if (row.size() != sax.rows.size())
        throw Error(ErrorCode::NonSquare, "row of length " + std::to_string(row.size()) + " in a matrix with " +
                                              std::to_string(sax.rows.size()) + " rows");
    if (dim != 0 && dim != sax.rows.size())
      throw Error(ErrorCode::NonSquare, "matrix has " + std::to_string(sax.rows.size()) + " rows, expected " + std::to_string(dim));
    std::vector<BigInt> flat;
    for (const auto& row : sax.rows) flat.insert(flat.end(), row.begin(), row.end());
    return square_from(flat, sax.rows.size());
  }
  std::string cleaned = text;
  for (char& c : cleaned)
    if (c == '[' || c == ']' || c == ',' || c == ';') c = ' ';
  std::istringstream in(cleaned);
  std::vector<BigInt> values;
  std::string token;
  while (in >> token) values.push_back(parse_bigint(token));
  return square_from(values, dim);
}

DynamicsSection run_dynamics(const IntMat& t, const Bounded& target, const DynamicsOptions& options) {
  // A budget hit before the first level completes yields an empty partial
  // estimate rather than an exception.
  auto attempt = [](const EstimateOptions& o, auto&& run) {
    try {
      return run(o);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      EntropyEstimate empty;
      empty.eps = o.eps;
      empty.seed = o.seed;
      empty.spanning_slope = empty.separated_slope = std::numeric_limits<double>::quiet_NaN();
      empty.partial = true;
      empty.partial_reason = e.what();
      return empty;
    }
  };
  DynamicsSection d;
  d.target = target;
  EstimateOptions torus = options.torus;
  torus.allow_partial = true;
  d.torus = attempt(torus, [&](const EstimateOptions& o) { return estimate_torus_entropy(t, o, options.plaque); });
  d.relative = target.value > 0;
  auto deviation = [&](double slope) { return d.relative ? (slope - target.value) / target.value : slope - target.value; };
  d.separated_deviation = deviation(d.torus.separated_slope);
  d.spanning_deviation = deviation(d.torus.spanning_slope);
  const Eigen::MatrixXd a = to_real(t);
  if (options.include_ray) {
    EstimateOptions ray = options.torus;
    ray.allow_partial = true;
    ray.eps = options.ray_eps;
    ray.n_max = options.ray_n_max;
    d.ray = attempt(ray, [&](const EstimateOptions& o) { return estimate_ray_entropy(a, o); });
  }
  d.spheres = nonwandering_spheres(a);
  d.partial = d.torus.partial || (d.ray && d.ray->partial);
  return d;
}

Report analyze_report(const IntMat& t, const std::string& source, const SpectraOptions& spectra) {
  const Stopwatch clock;
  validate(t, ValidationMode::K3);
  Report r = base_report(t, "analyze", source, spectra);
  r.homology = build_action(t);
  r.classification = classify(t, spectra);
  r.elapsed_seconds = clock.seconds();
  return r;
}

Report verify_entropy_report(const IntMat& t, const std::string& source, const SpectraOptions& spectra,
                             const DynamicsOptions& dynamics) {
  const Stopwatch clock;
  validate(t, ValidationMode::Dynamics);
  Report r = base_report(t, "verify-entropy", source, spectra);
  r.dynamics = run_dynamics(t, {r.entropy.value, r.entropy.error}, dynamics);
  r.elapsed_seconds = clock.seconds();
  return r;
}

Report full_report(const IntMat& t, const std::string& source, const SpectraOptions& spectra,
                   const DynamicsOptions& dynamics) {
  const Stopwatch clock;
  Report r = analyze_report(t, source, spectra);
  r.command = "report";
  r.dynamics = run_dynamics(t, {r.entropy.value, r.entropy.error}, dynamics);
  r.elapsed_seconds = clock.seconds();
  return r;
}

std::string report_json(const Report& r, bool include_timing) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = Json{{"name", "k3map"}, {"version", version()}};
  j["command"] = r.command;
  j["input"] = Json{{"source", r.source}, {"dim", r.matrix.dim()}, {"matrix", matrix_json(r.matrix)}, {"determinant", big(r.determinant)}};
  j["char_poly"] = poly_json(r.char_poly);
  j["spectrum"] = spectrum_json(r.spectrum);
  j["entropy"] = entropy_json(r.entropy);
  j["spectral_radius"] = bounded(r.spectral_radius);
  j["pair_product_radius"] = r.pair_product_radius ? bounded(*r.pair_product_radius) : Json(nullptr);
  j["homology"] = r.homology ? homology_json(*r.homology, r.classification) : Json(nullptr);
  j["classification"] = r.classification ? classification_json(*r.classification) : Json(nullptr);
  j["dynamics"] = r.dynamics ? dynamics_json(*r.dynamics) : Json(nullptr);
  if (include_timing) j["timing"] = Json{{"seconds", num(r.elapsed_seconds)}};
  return pretty(j);
}

std::string report_text(const Report& r, bool include_timing) {
  std::ostringstream out;
  out << "k3map " << version() << " " << r.command << "\n";
  out << "input: " << r.source << " (" << r.matrix.dim() << "x" << r.matrix.dim() << ", det " << r.determinant << ")\n";
  out << format_matrix(r.matrix);
  if (out.str().back() != '\n') out << "\n";
  out << "characteristic polynomial: " << to_string(r.char_poly) << "\n";
  out << "eigenvalues:\n";
  for (const auto& root : r.spectrum.roots) {
    out << "  " << fmt(root.midpoint.real());
    if (!root.is_real) out << (root.midpoint.imag() < 0 ? " - " : " + ") << fmt(std::abs(root.midpoint.imag())) << "i";
    out << "  |lambda| = " << fmt(std::abs(root.midpoint)) << "  " << location_name(root.location);
    if (root.multiplicity > 1) out << "  multiplicity " << root.multiplicity;
    out << "  radius " << fmt(root.radius, 3) << "\n";
  }
  out << "counts: outside " << r.spectrum.outside << ", on circle " << r.spectrum.on_circle << ", inside "
      << r.spectrum.inside << "\n";
  out << "entropy: " << fmt(r.entropy.value) << " +- " << fmt(r.entropy.error, 3) << "\n";
  out << "spectral radius: " << fmt(r.spectral_radius.value) << "\n";
  if (r.pair_product_radius) out << "pair product radius: " << fmt(r.pair_product_radius->value) << "\n";
  if (r.homology) {
    const auto ct = r.homology->permutation.cycle_type();
    out << "torsion permutation cycle type:";
    for (auto c : ct) out << " " << c;
    out << "\n";
  }
  if (r.classification) {
    const auto& c = *r.classification;
    out << "homological spectral radius: " << fmt(c.homological_specrad.value) << "\n";
    out << "yomdin bound: " << fmt(c.yomdin.value) << "\n";
    out << "entropy minimizer case (two outside): " << yes(c.is_entropy_minimizer_case) << "\n";
    out << "anosov (none on circle): " << yes(c.is_anosov) << "\n";
    out << "four distinct real eigenvalues: " << yes(c.has_4_distinct_real) << "\n";
    out << "complex structure: " << (c.complex_structure == ComplexStructureVerdict::Obstructed ? "obstructed" : "unknown") << "\n";
    if (c.conjecture_gap)
      out << "conjecture gap: " << fmt(c.conjecture_gap->value.value) << " (log|lambda_3| = "
          << fmt(c.conjecture_gap->log_third_modulus.value) << ")\n";
  }
  if (r.dynamics) {
    const auto& d = *r.dynamics;
    auto line = [&](const char* name, const EntropyEstimate& e) {
      out << name << ": eps " << fmt(e.eps, 6) << ", n <= " << (e.n_values.empty() ? 0 : e.n_values.back()) << ", sample "
          << e.sample_size << " (" << e.sample << ")\n";
      out << "  separated slope " << fmt(e.separated_slope, 6) << ", spanning slope " << fmt(e.spanning_slope, 6)
          << " (fit n >= " << e.window_start << ")" << (e.partial ? " PARTIAL: " + e.partial_reason : "") << "\n";
      out << "  n:";
      for (int n : e.n_values) out << " " << n;
      out << "\n  spanning:";
      for (auto c : e.spanning_counts) out << " " << c;
      out << "\n  separated:";
      for (auto c : e.separated_counts) out << " " << c;
      out << "\n";
    };
    line("torus estimate", d.torus);
    out << "  target " << fmt(d.target.value) << ", deviation (" << (d.relative ? "relative" : "absolute")
        << "): separated " << fmt(d.separated_deviation, 4) << ", spanning " << fmt(d.spanning_deviation, 4) << "\n";
    if (d.ray) line("ray estimate", *d.ray);
    out << "invariant subspheres:";
    for (const auto& s : d.spheres) out << " S^" << s.sphere_dim << "(" << s.action << ")";
    out << "\n";
  }
  if (include_timing) out << "elapsed: " << fmt(r.elapsed_seconds, 4) << " s\n";
  return out.str();
}

std::string family_json(const std::vector<FamilyRow>& rows) {
  Json list = Json::array();
  for (const auto& row : rows) {
    Json params = Json::object();
    std::visit(
        [&params](const auto& s) {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, ProductQuadratics>) {
            params["a"] = s.a;
            params["b"] = s.b;
          } else if constexpr (std::is_same_v<S, Irreducible>) {
            params["n"] = s.n;
          } else {
            params["a"] = s.a;
          }
        },
        row.spec);
    Json r = classification_json(row.classification);
    Json entry{{"family", kind_name(kind_of(row.spec))},
               {"params", params},
               {"char_poly", poly_json(row.poly)},
               {"entropy", Json{{"value", num(row.classification.entropy.value)}, {"error", num(row.classification.entropy.error)}}}};
    for (auto it = r.begin(); it != r.end(); ++it) entry[it.key()] = it.value();
    entry["irreducible"] = row.irreducible;
    entry["flagged"] = row.flagged;
    entry["claim_holds"] = row.claim_holds;
    list.push_back(std::move(entry));
  }
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = Json{{"name", "k3map"}, {"version", version()}};
  j["command"] = "family";
  j["rows"] = list;
  return pretty(j);
}

std::string family_text(const std::vector<FamilyRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "family" << std::setw(10) << "params" << std::setw(26) << "char poly" << std::setw(20)
      << "entropy" << std::setw(20) << "yomdin" << std::setw(20) << "gap" << "out anosov claim\n";
  for (const auto& r : rows) {
    const auto& c = r.classification;
    out << std::setw(12) << kind_name(kind_of(r.spec)) << std::setw(10) << describe_params(r.spec) << std::setw(26)
        << to_string(r.poly) << std::setw(20) << fmt(c.entropy.value) << std::setw(20) << fmt(c.yomdin.value) << std::setw(20)
        << (c.conjecture_gap ? fmt(c.conjecture_gap->value.value) : "-") << std::setw(4) << c.outside_count << std::setw(7)
        << yes(c.is_anosov) << yes(r.claim_holds) << (r.flagged ? "  (flagged: -1 on the unit circle)" : "") << "\n";
  }
  return out.str();
}

}  // namespace k3map
