#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fourmean/rng.hpp"
#include "fourmean/serialize.hpp"
#include "support.hpp"

using namespace fourmean;

TEST_CASE("tuple and signature json shapes") {
  const NonnegTuple t({2, 0, 0, 0});
  const json jt = t;
  CHECK(jt == json::array({2.0, 0.0, 0.0, 0.0}));
  CHECK(jt.get<NonnegTuple>().values() == t.values());

  const json js = signature(t);
  CHECK(js["n"] == 4);
  CHECK(js["sum"] == 2.0);
  CHECK(js["product"] == 0.0);
  CHECK(js["codim1"] == 0.0);

  const json jv = bound_check(t, NonnegTuple({1, 1, 0, 0}), 3);
  CHECK(jv["status"] == "equality_case");
  CHECK(jv["bound"] == 2.0);
}

TEST_CASE("round trips preserve random matrices and polynomials") {
  std::mt19937_64 rng = make_stream(19, "serialize");
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const ComplexMatrix m = testsupport::random_matrix(n, rng);
    const ComplexMatrix back = json(m).get<ComplexMatrix>();
    CHECK(back.entries() == m.entries());

    std::vector<cdouble> coeffs(1 + rng() % 6);
    for (cdouble& c : coeffs) c = cdouble(gauss(rng), gauss(rng));
    const Polynomial p(coeffs);
    const Polynomial q = json(p).get<Polynomial>();
    CHECK(q.coeffs() == p.coeffs());
  }
}

TEST_CASE("extremal result json carries witnesses and residuals") {
  SearchConfig cfg;
  cfg.restarts = 4;
  const json j = four_mean_max(4, cfg);
  CHECK(j["value"] == 2.0);
  CHECK(j["witness_x"].is_array());
  CHECK(j["witness_y"].is_array());
  CHECK(j["certificate"].size() == 3);
  CHECK(j["certified"] == true);
  CHECK(j["method"].is_string());
}

TEST_CASE("manifest round trip") {
  RunManifest m;
  m.command = "extremal";
  m.config = json{{"n", 4}, {"level", 3}};
  m.seed = 17;
  m.tool_version = "0.1.0";
  m.timestamp = "2025-01-01T00:00:00Z";
  const RunManifest back = json(m).get<RunManifest>();
  CHECK(back.command == m.command);
  CHECK(back.config == m.config);
  CHECK(back.seed == m.seed);
  CHECK(back.timestamp == m.timestamp);
}

TEST_CASE("field csv carries the manifest and one row per grid point") {
  GridSpec grid;
  grid.nx = 5;
  grid.ny = 4;
  const SingularField field = singular_field(ComplexMatrix::identity(3), grid);
  RunManifest m;
  m.command = "pseudo";
  m.tool_version = "0.1.0";
  m.timestamp = "2025-01-01T00:00:00Z";
  const std::string csv = field_to_csv(field, m);
  CHECK(csv.rfind("# manifest: ", 0) == 0);
  CHECK(csv.find("re,im,s1,s2,s3") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2 + 5 * 4);
}
