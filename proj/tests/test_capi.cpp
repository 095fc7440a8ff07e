#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "k3map/k3map.h"

using nlohmann::json;

namespace {

k3map_matrix* parse(const char* text, size_t dim = 0) {
  k3map_matrix* m = nullptr;
  REQUIRE(k3map_matrix_parse(text, dim, &m) == K3MAP_OK);
  return m;
}

}  // namespace

TEST_CASE("matrix constructors") {
  k3map_matrix* m = parse("1 0 0 0  0 1 0 0  0 0 1 0  0 0 0 1");
  CHECK(k3map_matrix_dim(m) == 4);
  k3map_matrix_free(m);

  m = parse("[[2, 1], [1, 1]]");
  CHECK(k3map_matrix_dim(m) == 2);
  k3map_matrix_free(m);

  m = parse("2 1 1 1", 2);
  CHECK(k3map_matrix_dim(m) == 2);
  k3map_matrix_free(m);

  REQUIRE(k3map_matrix_from_poly("x^4 - 6x^2 + 1", &m) == K3MAP_OK);
  CHECK(k3map_matrix_dim(m) == 4);
  CHECK(std::string(k3map_matrix_to_string(m)).find("6") != std::string::npos);
  k3map_matrix_free(m);

  REQUIRE(k3map_matrix_identity(3, &m) == K3MAP_OK);
  CHECK(k3map_matrix_dim(m) == 3);
  k3map_matrix_free(m);
}

TEST_CASE("big entries survive JSON input") {
  k3map_matrix* m = parse("[[1, 123456789012345678901234567890], [0, 1]]");
  CHECK(std::string(k3map_matrix_to_string(m)).find("123456789012345678901234567890") != std::string::npos);
  k3map_matrix_free(m);
}

TEST_CASE("error statuses") {
  k3map_matrix* m = nullptr;
  CHECK(k3map_matrix_parse("1 2 3", 0, &m) == K3MAP_ERR_NON_SQUARE);
  CHECK(m == nullptr);
  CHECK(std::strlen(k3map_last_error()) > 0);
  CHECK(k3map_matrix_parse("1 x 0 1", 0, &m) == K3MAP_ERR_PARSE);
  CHECK(k3map_matrix_parse("[[1, 2], [3]]", 0, &m) == K3MAP_ERR_NON_SQUARE);
  CHECK(k3map_matrix_parse("[[1.5, 0], [0, 1]]", 0, &m) == K3MAP_ERR_PARSE);
  CHECK(k3map_matrix_parse("1 0 0 1", 3, &m) == K3MAP_ERR_NON_SQUARE);
  CHECK(k3map_matrix_from_poly("2x^2 + 1", &m) == K3MAP_ERR_NOT_MONIC);
  CHECK(k3map_matrix_from_poly("x^2 + 3x + 2", &m) == K3MAP_ERR_CONSTANT_NOT_UNIT);
  CHECK(k3map_matrix_parse(nullptr, 0, &m) == K3MAP_ERR_INVALID_ARGUMENT);

  m = parse("2 0 0 0  0 1 0 0  0 0 1 0  0 0 0 1");
  k3map_result* r = nullptr;
  CHECK(k3map_analyze(m, "t", nullptr, &r) == K3MAP_ERR_DET_NOT_ONE);
  CHECK(r == nullptr);
  CHECK(std::string(k3map_last_detail()) == "2");
  CHECK(std::string(k3map_status_name(K3MAP_ERR_DET_NOT_ONE)) == "DetNotOne");
  k3map_matrix_free(m);

  m = parse("2 1 1 1");
  CHECK(k3map_analyze(m, "t", nullptr, &r) == K3MAP_ERR_DIMENSION_MISMATCH);
  k3map_matrix_free(m);

  CHECK(k3map_family_sweep("product", "3", "3", nullptr, 1, &r) == K3MAP_ERR_BAD_PARAMS);
  CHECK(k3map_family_sweep("nope", "3", nullptr, nullptr, 1, &r) == K3MAP_ERR_PARSE);
}

TEST_CASE("analyze report") {
  k3map_matrix* m = nullptr;
  REQUIRE(k3map_matrix_from_poly("x^4-6x^2+1", &m) == K3MAP_OK);
  k3map_result* r = nullptr;
  REQUIRE(k3map_analyze(m, "poly", nullptr, &r) == K3MAP_OK);
  const json j = json::parse(k3map_result_json(r, 0));
  CHECK(j["command"] == "analyze");
  CHECK(j["entropy"]["value"].get<double>() == doctest::Approx(2 * std::log(1 + std::sqrt(2.0))).epsilon(1e-12));
  CHECK(j["classification"]["is_entropy_minimizer_case"] == true);
  CHECK(j["classification"]["complex_structure"] == "obstructed");
  CHECK(j["homology"]["block_matrix"].size() == 22);
  CHECK(j["dynamics"].is_null());
  CHECK(!j.contains("timing"));
  CHECK(json::parse(k3map_result_json(r, 1)).contains("timing"));
  CHECK(std::string(k3map_result_csv(r)).empty());
  CHECK(std::string(k3map_result_summary(r, 0)).find("entropy") != std::string::npos);
  CHECK(k3map_result_partial(r) == 0);

  k3map_result* again = nullptr;
  REQUIRE(k3map_analyze(m, "poly", nullptr, &again) == K3MAP_OK);
  CHECK(std::string(k3map_result_json(r, 0)) == k3map_result_json(again, 0));
  k3map_result_free(again);
  k3map_result_free(r);
  k3map_matrix_free(m);
}

TEST_CASE("verify entropy on a small case") {
  k3map_matrix* m = parse("2 1 1 1");
  k3map_dynamics_options d;
  k3map_dynamics_defaults(&d);
  CHECK(d.ray_eps == 0.02);
  CHECK(d.ray_n_max == 20);
  d.eps = 0.05;
  d.n_max = 6;
  d.include_ray = 0;
  k3map_result* r = nullptr;
  REQUIRE(k3map_verify_entropy(m, "cat", nullptr, &d, &r) == K3MAP_OK);
  const json j = json::parse(k3map_result_json(r, 0));
  CHECK(j["classification"].is_null());
  CHECK(j["dynamics"]["ray"].is_null());
  CHECK(j["dynamics"]["torus"]["separated_counts"].size() == 6);
  CHECK(j["dynamics"]["target"]["value"].get<double>() == doctest::Approx(0.9624236501192069));
  CHECK(std::string(k3map_result_csv(r)).rfind("n,spanning,separated\r\n", 0) == 0);
  k3map_result_free(r);

  d.max_centers = 5;
  REQUIRE(k3map_verify_entropy(m, "cat", nullptr, &d, &r) == K3MAP_OK);
  CHECK(k3map_result_partial(r) == 1);
  k3map_result_free(r);
  k3map_matrix_free(m);
}

TEST_CASE("family sweep") {
  k3map_result* r = nullptr;
  REQUIRE(k3map_family_sweep("gap", "3..10", nullptr, nullptr, 1, &r) == K3MAP_OK);
  const json j = json::parse(k3map_result_json(r, 0));
  REQUIRE(j["rows"].size() == 8);
  for (const auto& row : j["rows"]) {
    CHECK(row["outside_count"] == 3);
    CHECK(row["conjecture_gap"]["value"].get<double>() > 0);
  }
  const std::string csv = k3map_result_csv(r);
  CHECK(csv.rfind("family,params,", 0) == 0);
  k3map_result_free(r);
}
