#pragma once

// Shared helpers and independent oracles for the test suite. Everything here
// deliberately avoids the library code paths it is used to check: integer
// arithmetic for symmetric functions and discriminants, Gram-Schmidt for
// unitaries, raw mesh enumeration for the constrained maxima.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "fourmean/matrix.hpp"

namespace testsupport {

inline fourmean::ComplexMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  fourmean::ComplexMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = fourmean::cdouble(gauss(rng), gauss(rng));
  return m;
}

// Unitary factor of a random matrix via modified Gram-Schmidt on columns.
inline fourmean::ComplexMatrix random_unitary(int n, std::mt19937_64& rng) {
  fourmean::ComplexMatrix a = random_matrix(n, rng);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      fourmean::cdouble proj = 0.0;
      for (int i = 0; i < n; ++i) proj += std::conj(a(i, k)) * a(i, j);
      for (int i = 0; i < n; ++i) a(i, j) -= proj * a(i, k);
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += std::norm(a(i, j));
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) a(i, j) /= norm;
  }
  return a;
}

// Exact integer codimension-1 elementary symmetric value, direct O(n^2).
inline long long codim1_int(const std::vector<long long>& x) {
  long long total = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    long long prod = 1;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (j != k) prod *= x[j];
    total += prod;
  }
  return total;
}

// Discriminant of the monic cubic t^3 + p t^2 + q t + r; all roots are real
// iff it is >= 0.
inline long long cubic_discriminant(long long p, long long q, long long r) {
  return 18 * p * q * r - 4 * p * p * p * r + p * p * q * q - 4 * q * q * q - 27 * r * r;
}

inline std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Coarse mesh brute force for the n = 4 constrained maximum of x1. Pure
// enumeration over (x2,x3,x4,y2,y3,y4) grids with x1 eliminated by the sum
// constraint; accepts points whose remaining constraints hold within slack.
// Exact maximum of the accepted set (the pruning below only skips points
// that cannot beat the current best).
struct BruteForceResult {
  double best = -1.0;
  long long improvements = 0;
};

inline BruteForceResult brute_force_max_n4(int level, int points_per_axis, double slack) {
  const int np = points_per_axis;
  std::vector<double> xg(static_cast<std::size_t>(np)), yg(static_cast<std::size_t>(np));
  for (int i = 0; i < np; ++i) {
    xg[static_cast<std::size_t>(i)] = 4.0 * i / (np - 1);
    yg[static_cast<std::size_t>(i)] = 1.0 * i / (np - 1);
  }

  struct Triple {
    double s, p, q;  // sum, product, e2 of the three free x coordinates
  };
  std::vector<Triple> xs;
  xs.reserve(static_cast<std::size_t>(np) * np * np);
  for (double a : xg)
    for (double b : xg)
      for (double c : xg) xs.push_back({a + b + c, a * b * c, a * b + a * c + b * c});
  std::sort(xs.begin(), xs.end(), [](const Triple& l, const Triple& r) { return l.s < r.s; });

  BruteForceResult result;
  for (double y2 : yg)
    for (double y3 : yg)
      for (double y4 : yg) {
        const double sy = 1.0 + y2 + y3 + y4;
        const double py = y2 * y3 * y4;
        const double ey = py + y2 * y3 + y2 * y4 + y3 * y4;  // e3 of (1, y2, y3, y4)
        for (const Triple& t : xs) {
          const double x1 = sy - t.s;
          if (x1 <= result.best || x1 < 0.0) break;  // s ascending, x1 descending
          if (std::abs(x1 * t.p - py) > slack) continue;
          if (level >= 3 && std::abs(t.p + x1 * t.q - ey) > slack) continue;
          result.best = x1;
          ++result.improvements;
        }
      }
  return result;
}

}  // namespace testsupport
