#include <catch2/catch_amalgamated.hpp>

#include "fourmean/extremal.hpp"
#include "support.hpp"

using namespace fourmean;

namespace {

SearchConfig quick_config() {
  SearchConfig cfg;
  cfg.restarts = 8;
  return cfg;
}

void check_witness(const ExtremalResult& r, int n, int level) {
  const NonnegTuple xs = r.witness_x.sorted_descending();
  const NonnegTuple ys = r.witness_y.sorted_descending();
  const double bound = static_cast<double>(n - level + 1);
  CHECK_THAT(xs[0], Catch::Matchers::WithinAbs(bound, 1e-6));
  for (int j = 1; j < n; ++j) CHECK_THAT(xs[j], Catch::Matchers::WithinAbs(0.0, 1e-6));
  for (int j = 0; j < n; ++j) {
    const double want = j < n - level + 1 ? 1.0 : 0.0;
    CHECK_THAT(ys[j], Catch::Matchers::WithinAbs(want, 1e-6));
  }
}

}  // namespace

TEST_CASE("three_mean_max reproduces n-1") {
  const SearchConfig cfg = quick_config();
  for (int n = 3; n <= 8; ++n) {
    const ExtremalResult r = three_mean_max(n, cfg);
    CHECK_THAT(r.value, Catch::Matchers::WithinAbs(static_cast<double>(n - 1), 1e-6));
    CHECK(r.certified);
    check_witness(r, n, 2);
    for (double res : r.certificate) CHECK(std::abs(res) <= 1e-7);
  }
  CHECK_THROWS_AS(three_mean_max(2, cfg), std::invalid_argument);
}

TEST_CASE("four_mean_max reproduces n-2") {
  const SearchConfig cfg = quick_config();
  for (int n = 4; n <= 8; ++n) {
    const ExtremalResult r = four_mean_max(n, cfg);
    CHECK_THAT(r.value, Catch::Matchers::WithinAbs(static_cast<double>(n - 2), 1e-6));
    CHECK(r.certified);
    check_witness(r, n, 3);
  }
  CHECK_THROWS_AS(four_mean_max(3, cfg), std::invalid_argument);
}

TEST_CASE("coarse brute-force mesh agrees with the solver at n = 4") {
  // Independent enumeration oracle; 21 points per axis keeps this test quick,
  // the acceptance suite runs the fine mesh.
  const double slack = 1.5 / 20.0;
  const auto level3 = testsupport::brute_force_max_n4(3, 21, slack);
  CHECK(level3.best >= 2.0 - 0.05);
  CHECK(level3.best <= 2.0 + 2.0 * slack);

  const auto level2 = testsupport::brute_force_max_n4(2, 21, slack);
  CHECK(level2.best >= 3.0 - 0.05);
  CHECK(level2.best <= 3.0 + 2.0 * slack);

  // The mesh optimum never exceeds the structured-search optimum plus the
  // mesh resolution allowance.
  const SearchConfig cfg = quick_config();
  CHECK(level3.best <= four_mean_max(4, cfg).value + 2.0 * slack);
  CHECK(level2.best <= three_mean_max(4, cfg).value + 2.0 * slack);
}

TEST_CASE("reduced_system_residual fixed points and errors") {
  const CandidateProfile ones{1.0, 1.0, 1.0, 1, 4};
  const auto res = reduced_system_residual(ones);
  CHECK(res[0] == 0.0);
  CHECK(res[1] == 0.0);
  CHECK(res[2] == 0.0);

  CHECK_THROWS_AS(reduced_system_residual({2.0, 0.0, 0.5, 1, 4}), std::domain_error);
  CHECK_THROWS_AS(reduced_system_residual({0.0, 1.0, 0.5, 1, 4}), std::domain_error);
}

TEST_CASE("newton from the trivial start returns the trivial root") {
  SearchConfig cfg = quick_config();
  cfg.restarts = 1;  // only the deterministic (1,1,1) start
  for (int n : {4, 6, 8}) {
    const auto roots = reduced_system_solve(n, 1, cfg);
    REQUIRE_FALSE(roots.empty());
    bool found_trivial = false;
    for (const CandidateProfile& p : roots)
      if (std::abs(p.x1 - 1.0) <= 1e-10 && std::abs(p.u - 1.0) <= 1e-10 &&
          std::abs(p.v - 1.0) <= 1e-10)
        found_trivial = true;
    CHECK(found_trivial);
  }
}

TEST_CASE("reduced-system roots never beat the bound") {
  SearchConfig cfg = quick_config();
  cfg.restarts = 120;
  for (int n = 4; n <= 6; ++n) {
    for (int r = 1; r <= n - 1; ++r) {
      const auto roots = reduced_system_solve(n, r, cfg);
      for (const CandidateProfile& p : roots) {
        const auto res = reduced_system_residual(p);
        CHECK(std::max({std::abs(res[0]), std::abs(res[1]), std::abs(res[2])}) <= 1e-10);
        if (std::abs(p.u - p.v) > 1e-8 && p.v < 1.0 - 1e-8) CHECK(p.x1 <= 1.0 + 1e-8);
      }
    }
  }
}

TEST_CASE("penalty search restricted to strictly positive tuples stays below the bound") {
  // With a positivity floor the equality corner is unreachable: every
  // feasible point visited keeps the max ratio well under 2.
  const SearchConfig cfg = quick_config();
  int feasible = 0;
  for (int i = 0; i < 8; ++i) {
    const PenaltyOutcome out = penalty_restart(4, 3, cfg, i, 1e-6);
    if (!out.feasible) continue;
    ++feasible;
    CHECK(out.value < 2.0 - 1e-3);
    CHECK(out.x.min() >= 1e-6 / 2);
    CHECK(out.y.min() >= 1e-6 / 2);
  }
  CHECK(feasible == 8);
}

TEST_CASE("search config validation") {
  SearchConfig cfg;
  cfg.restarts = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.mesh = 4;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
