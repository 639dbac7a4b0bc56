#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "fourmean/matrix.hpp"
#include "fourmean/pseudospectra.hpp"
#include "fourmean/rng.hpp"
#include "support.hpp"

using namespace fourmean;
using testsupport::random_matrix;
using testsupport::random_unitary;

namespace {
constexpr double kPi4 = std::numbers::pi / 4.0;
}

TEST_CASE("poly_eval basics") {
  std::mt19937_64 rng = make_stream(3, "pe");
  const ComplexMatrix a = random_matrix(4, rng);
  const ComplexMatrix one = poly_eval(Polynomial{{1.0}}, a);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(one(i, j) == (i == j ? cdouble(1.0) : cdouble(0.0)));

  // Linearity: (p + q)(a) = p(a) + q(a)
  const Polynomial p{{1.0, cdouble(0, 2), 3.0}};
  const Polynomial q{{cdouble(-2, 1), 0.0, 1.0, 5.0}};
  const ComplexMatrix lhs = poly_eval(p + q, a);
  const ComplexMatrix rhs = poly_eval(p, a) + poly_eval(q, a);
  CHECK((lhs - rhs).frobenius_norm() <= 1e-12 * rhs.frobenius_norm());
}

TEST_CASE("cayley-hamilton holds for random matrices") {
  std::mt19937_64 rng = make_stream(5, "ch");
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);  // 2..8
    const ComplexMatrix a = random_matrix(n, rng);
    const ComplexMatrix z = poly_eval(char_poly(a), a);
    const double norm_a = operator_norm(a);
    CHECK(operator_norm(z) <= 1e-10 * std::pow(norm_a, n));
  }
}

TEST_CASE("squaring the 4x4 pair matches the displayed entries") {
  const FRPair pair = fr_pair(0.3, kPi4);
  const ComplexMatrix a2 = poly_eval(Polynomial::monomial(2), pair.a);
  const double sec_a = 1.0 / std::cos(0.3), csc_a = 1.0 / std::sin(0.3);
  const double sec_b = 1.0 / std::cos(kPi4), csc_b = 1.0 / std::sin(kPi4);
  CHECK_THAT(a2(0, 2).real(), Catch::Matchers::WithinRel(sec_a * sec_b * csc_b, 1e-14));
  CHECK_THAT(a2(1, 3).real(), Catch::Matchers::WithinRel(csc_a * sec_b * csc_b, 1e-14));
  int nonzero = 0;
  for (const cdouble& v : a2.entries())
    if (std::abs(v) > 0.0) ++nonzero;
  CHECK(nonzero == 2);
}

TEST_CASE("singular values of simple matrices") {
  const SingularValues id = singular_values(ComplexMatrix::identity(4));
  CHECK(id.values == std::vector<double>{1, 1, 1, 1});

  const SingularValues d =
      singular_values(ComplexMatrix::diagonal({3.0, cdouble(0, 2), 0.0, -1.0}));
  CHECK_THAT(d[0], Catch::Matchers::WithinAbs(3.0, 1e-14));
  CHECK_THAT(d[1], Catch::Matchers::WithinAbs(2.0, 1e-14));
  CHECK_THAT(d[2], Catch::Matchers::WithinAbs(1.0, 1e-14));
  CHECK_THAT(d[3], Catch::Matchers::WithinAbs(0.0, 1e-14));
}

TEST_CASE("squared pair at alpha = beta = pi/4 has singular values (2sqrt2, 2sqrt2, 0, 0)") {
  // The displayed entries evaluate to sec(pi/4)*sec(pi/4)*csc(pi/4) = 2*sqrt(2).
  const FRPair pair = fr_pair(kPi4, kPi4);
  const SingularValues s = singular_values(poly_eval(Polynomial::monomial(2), pair.a));
  const double two_sqrt2 = 2.0 * std::sqrt(2.0);
  CHECK_THAT(s[0], Catch::Matchers::WithinRel(two_sqrt2, 1e-13));
  CHECK_THAT(s[1], Catch::Matchers::WithinRel(two_sqrt2, 1e-13));
  CHECK(s[2] <= 1e-13);
  CHECK(s[3] <= 1e-13);
}

TEST_CASE("svd identities on random matrices") {
  std::mt19937_64 rng = make_stream(7, "svd_prop");
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const ComplexMatrix a = random_matrix(n, rng);
    const SingularValues s = singular_values(a);

    double prod = 1.0, sumsq = 0.0;
    for (double v : s.values) {
      prod *= v;
      sumsq += v * v;
    }
    CHECK_THAT(prod, Catch::Matchers::WithinRel(std::abs(determinant(a)), 1e-8));
    const double fro = a.frobenius_norm();
    CHECK_THAT(sumsq, Catch::Matchers::WithinRel(fro * fro, 1e-10));
  }
}

TEST_CASE("singular values are unitarily invariant") {
  std::mt19937_64 rng = make_stream(9, "unitary");
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const ComplexMatrix a = random_matrix(n, rng);
    const ComplexMatrix u = random_unitary(n, rng);
    const ComplexMatrix v = random_unitary(n, rng);
    const SingularValues s = singular_values(a);
    const SingularValues t = singular_values(u * a * v);
    for (int j = 0; j < n; ++j)
      CHECK_THAT(t[j], Catch::Matchers::WithinAbs(s[j], 1e-10 * (1.0 + s[0])));
  }
}

TEST_CASE("inverse duality of singular values") {
  std::mt19937_64 rng = make_stream(11, "invdual");
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const ComplexMatrix a = random_matrix(n, rng);
    const SingularValues s = singular_values(a);
    if (s[n - 1] < 1e-3) continue;  // skip badly conditioned draws
    const SingularValues si = singular_values(inverse(a));
    for (int j = 0; j < n; ++j)
      CHECK_THAT(si[j], Catch::Matchers::WithinRel(1.0 / s[n - 1 - j], 1e-8));
  }
}

TEST_CASE("operator norm, determinant, rank on fixed cases") {
  const ComplexMatrix id = ComplexMatrix::identity(5);
  CHECK(operator_norm(id) == 1.0);
  CHECK(determinant(id) == cdouble(1.0));
  CHECK(numerical_rank(id) == 5);

  const ComplexMatrix zero(4);
  CHECK(operator_norm(zero) == 0.0);
  CHECK(determinant(zero) == cdouble(0.0));
  CHECK(numerical_rank(zero) == 0);

  const FRPair pair = fr_pair(0.3, kPi4);
  const Polynomial square = Polynomial::monomial(2);
  CHECK(numerical_rank(poly_eval(square, pair.a)) == 2);
  CHECK(numerical_rank(poly_eval(square, pair.b)) == 2);
}

TEST_CASE("char_poly fixed cases") {
  const Polynomial p = char_poly(ComplexMatrix::identity(2));
  CHECK(p.degree() == 2);
  CHECK(p.coeff(0) == cdouble(1.0));
  CHECK(p.coeff(1) == cdouble(-2.0));
  CHECK(p.coeff(2) == cdouble(1.0));

  // The strictly upper triangular 4x4 pair is nilpotent: char poly z^4.
  const FRPair pair = fr_pair(0.3, kPi4);
  const Polynomial cp = char_poly(pair.a);
  CHECK(cp.degree() == 4);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(cp.coeff(k)) <= 1e-12);

  CHECK_THROWS_AS(char_poly(ComplexMatrix(13)), std::invalid_argument);
}

TEST_CASE("char_poly of companion matrices round-trips") {
  std::mt19937_64 rng = make_stream(13, "companion");
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int deg = 2 + static_cast<int>(rng() % 6);
    std::vector<cdouble> coeffs(static_cast<std::size_t>(deg) + 1);
    for (int k = 0; k < deg; ++k) coeffs[static_cast<std::size_t>(k)] = cdouble(gauss(rng), gauss(rng));
    coeffs[static_cast<std::size_t>(deg)] = 1.0;

    ComplexMatrix companion(deg);
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[static_cast<std::size_t>(i)];
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;

    const Polynomial cp = char_poly(companion);
    double scale = 0.0;
    for (const cdouble& c : coeffs) scale = std::max(scale, std::abs(c));
    for (int k = 0; k <= deg; ++k)
      CHECK(std::abs(cp.coeff(k) - coeffs[static_cast<std::size_t>(k)]) <= 1e-10 * scale);
  }
}

TEST_CASE("char_poly of the companion of z^3 - 2z + 5") {
  ComplexMatrix c(3);
  c(0, 2) = -5.0;
  c(1, 2) = 2.0;
  c(2, 2) = 0.0;
  c(1, 0) = 1.0;
  c(2, 1) = 1.0;
  const Polynomial cp = char_poly(c);
  CHECK_THAT(cp.coeff(0).real(), Catch::Matchers::WithinAbs(5.0, 1e-12));
  CHECK_THAT(cp.coeff(1).real(), Catch::Matchers::WithinAbs(-2.0, 1e-12));
  CHECK(std::abs(cp.coeff(2)) <= 1e-12);
  CHECK(cp.coeff(3) == cdouble(1.0));
}

TEST_CASE("poly_roots recovers known roots") {
  const auto roots = poly_roots(Polynomial{{-6.0, 11.0, -6.0, 1.0}});
  std::vector<double> re;
  for (const cdouble& r : roots) {
    CHECK(std::abs(r.imag()) <= 1e-10);
    re.push_back(r.real());
  }
  std::sort(re.begin(), re.end());
  CHECK_THAT(re[0], Catch::Matchers::WithinRel(1.0, 1e-10));
  CHECK_THAT(re[1], Catch::Matchers::WithinRel(2.0, 1e-10));
  CHECK_THAT(re[2], Catch::Matchers::WithinRel(3.0, 1e-10));

  const auto ij = poly_roots(Polynomial{{1.0, 0.0, 1.0}});
  CHECK_THAT(std::abs(ij[0].imag()), Catch::Matchers::WithinRel(1.0, 1e-12));
  CHECK_THAT(std::abs(ij[1].imag()), Catch::Matchers::WithinRel(1.0, 1e-12));
}

TEST_CASE("poly_roots round-trips random root sets") {
  std::mt19937_64 rng = make_stream(15, "roots_rt");
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int deg = 2 + static_cast<int>(rng() % 5);
    std::vector<cdouble> roots(static_cast<std::size_t>(deg));
    for (cdouble& r : roots) r = cdouble(unif(rng), unif(rng));

    std::vector<cdouble> coeffs{1.0};
    for (const cdouble& r : roots) {
      std::vector<cdouble> next(coeffs.size() + 1, 0.0);
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        next[i + 1] += coeffs[i];
        next[i] -= r * coeffs[i];
      }
      coeffs = std::move(next);
    }

    auto got = poly_roots(Polynomial(coeffs));
    // Greedy matching: each recovered root must sit near a distinct input.
    std::vector<bool> used(roots.size(), false);
    for (const cdouble& g : got) {
      double best = 1e9;
      std::size_t arg = 0;
      for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        const double d = std::abs(g - roots[i]);
        if (d < best) {
          best = d;
          arg = i;
        }
      }
      used[arg] = true;
      CHECK(best <= 1e-7);
    }
  }
}

TEST_CASE("gram_char_coeffs certifies equal singular spectra") {
  // Zero matrix at z = 0: every non-leading coefficient vanishes.
  const std::vector<double> zero = gram_char_coeffs(ComplexMatrix(4), 0.0);
  for (double c : zero) CHECK(c == 0.0);

  // Unitary conjugation preserves all singular values of a - zI, hence the
  // coefficient vectors agree.
  std::mt19937_64 rng = make_stream(17, "gram");
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    const ComplexMatrix a = random_matrix(n, rng);
    const ComplexMatrix u = random_unitary(n, rng);
    const ComplexMatrix b = u.adjoint() * a * u;
    const cdouble z(std::uniform_real_distribution<double>(-2, 2)(rng),
                    std::uniform_real_distribution<double>(-2, 2)(rng));
    const std::vector<double> ca = gram_char_coeffs(a, z);
    const std::vector<double> cb = gram_char_coeffs(b, z);
    for (std::size_t k = 0; k < ca.size(); ++k)
      CHECK_THAT(cb[k], Catch::Matchers::WithinRel(ca[k], 1e-8) ||
                            Catch::Matchers::WithinAbs(ca[k], 1e-8));
  }

  // Different ranks at the origin separate immediately.
  const std::vector<double> c1 = gram_char_coeffs(ComplexMatrix::diagonal({1, 0, 0, 0}), 0.0);
  const std::vector<double> c2 = gram_char_coeffs(ComplexMatrix::diagonal({1, 1, 0, 0}), 0.0);
  double gap = 0.0;
  for (std::size_t k = 0; k < c1.size(); ++k) gap = std::max(gap, std::abs(c1[k] - c2[k]));
  CHECK(gap >= 0.5);
}

TEST_CASE("fr pair coefficient vectors agree at a fixed probe point") {
  const FRPair pair = fr_pair(0.3, kPi4);
  const cdouble z(0.7, 0.2);
  const std::vector<double> ca = gram_char_coeffs(pair.a, z);
  const std::vector<double> cb = gram_char_coeffs(pair.b, z);
  for (std::size_t k = 0; k < ca.size(); ++k)
    CHECK_THAT(cb[k], Catch::Matchers::WithinRel(ca[k], 1e-10));
}
