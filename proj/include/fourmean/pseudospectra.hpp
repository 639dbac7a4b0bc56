#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fourmean/matrix.hpp"
#include "fourmean/rng.hpp"
#include "fourmean/tuples.hpp"

namespace fourmean {

// The alpha,beta-parametrized pair of nilpotent 4x4 matrices with
// super-identical pseudospectra whose squared norm ratio approaches sqrt(2).
struct FRPair {
  double alpha = 0.0;
  double beta = 0.0;
  ComplexMatrix a;
  ComplexMatrix b;
};

inline FRPair fr_pair(double alpha, double beta) {
  constexpr double quarter_pi = std::numbers::pi / 4.0;
  if (!(alpha > 0.0) || alpha > quarter_pi)
    throw std::invalid_argument("fr_pair: alpha must lie in (0, pi/4]");
  if (!(beta > 0.0) || beta > quarter_pi)
    throw std::invalid_argument("fr_pair: beta must lie in (0, pi/4]");

  const double sec_a = 1.0 / std::cos(alpha);
  const double csc_a = 1.0 / std::sin(alpha);
  const double sec_b = 1.0 / std::cos(beta);
  const double csc_b = 1.0 / std::sin(beta);

  FRPair pair;
  pair.alpha = alpha;
  pair.beta = beta;
  pair.a = ComplexMatrix(4);
  pair.a(0, 1) = sec_a;
  pair.a(0, 3) = 1.0;
  pair.a(1, 2) = sec_b * csc_b;
  pair.a(2, 3) = csc_a;
  pair.b = ComplexMatrix(4);
  pair.b(0, 1) = sec_b;
  pair.b(0, 3) = 1.0;
  pair.b(1, 2) = sec_a * csc_a;
  pair.b(2, 3) = csc_b;
  return pair;
}

struct GridSpec {
  double re_min = -3.0, re_max = 3.0;
  double im_min = -3.0, im_max = 3.0;
  int nx = 101, ny = 101;
  std::vector<double> eps_levels;

  void validate() const {
    if (!(re_min < re_max) || !(im_min < im_max))
      throw std::invalid_argument("GridSpec: empty rectangle");
    if (nx < 2 || ny < 2) throw std::invalid_argument("GridSpec: need nx, ny >= 2");
    for (std::size_t i = 0; i < eps_levels.size(); ++i) {
      if (!(eps_levels[i] > 0.0)) throw std::invalid_argument("GridSpec: eps levels must be > 0");
      if (i > 0 && !(eps_levels[i] > eps_levels[i - 1]))
        throw std::invalid_argument("GridSpec: eps levels must be ascending");
    }
  }

  double re_at(int ix) const { return re_min + (re_max - re_min) * ix / (nx - 1); }
  double im_at(int iy) const { return im_min + (im_max - im_min) * iy / (ny - 1); }
};

// Per-grid-point descending singular values of (matrix - zI). Row-major over
// (iy, ix), im ascending outer, re ascending inner.
struct SingularField {
  GridSpec grid;
  int n = 0;
  std::vector<std::vector<double>> data;

  const std::vector<double>& at(int ix, int iy) const {
    return data[static_cast<std::size_t>(iy) * grid.nx + static_cast<std::size_t>(ix)];
  }
  double smallest(int ix, int iy) const { return at(ix, iy).back(); }
};

inline SingularField singular_field(const ComplexMatrix& m, const GridSpec& grid) {
  grid.validate();
  SingularField field;
  field.grid = grid;
  field.n = m.size();
  field.data.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const cdouble z(grid.re_at(ix), grid.im_at(iy));
      try {
        field.data.push_back(singular_values(m.shifted(z)).values);
      } catch (const std::runtime_error& e) {
        throw std::runtime_error(std::string(e.what()) + " at z = (" +
                                 std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
      }
    }
  }
  return field;
}

enum class CertificateMode { singular_values, gram_coeffs };

struct SuperIdenticalReport {
  std::size_t num_points = 0;
  double max_scaled_deviation = 0.0;
  cdouble worst_point{0.0, 0.0};
  CertificateMode mode = CertificateMode::singular_values;
  double tol = 0.0;
  bool pass = false;
};

// Default structured point set: a (2n+1) x (2n+1) Cartesian grid covering the
// disc of radius 2*max(||a||, ||b||). Each Gram characteristic coefficient is
// a polynomial of degree <= 2n in (Re z, Im z), so agreement on 2n+1 distinct
// values per axis pins the whole coefficient surface; floating-point
// agreement here is a strong certificate, not a proof.
inline std::vector<cdouble> default_certificate_points(const ComplexMatrix& a,
                                                       const ComplexMatrix& b) {
  const int n = a.size();
  const double radius = 2.0 * std::max(operator_norm(a), operator_norm(b));
  const int side = 2 * n + 1;
  std::vector<cdouble> points;
  points.reserve(static_cast<std::size_t>(side) * side);
  for (int iy = 0; iy < side; ++iy)
    for (int ix = 0; ix < side; ++ix)
      points.emplace_back(-radius + 2.0 * radius * ix / (side - 1),
                          -radius + 2.0 * radius * iy / (side - 1));
  return points;
}

// Compares the full singular spectra of a - zI and b - zI (or the Gram
// characteristic coefficient vectors) over a point set. Deviations are
// scaled by (1 + s1) in singular-value mode and per-coefficient in gram
// mode, so the verdict is meaningful across magnitudes.
inline SuperIdenticalReport super_identical_check(
    const ComplexMatrix& a, const ComplexMatrix& b, const std::vector<cdouble>& points,
    double tol = 1e-8, CertificateMode mode = CertificateMode::singular_values) {
  if (a.size() != b.size()) throw std::invalid_argument("super_identical_check: size mismatch");
  if (points.empty()) throw std::invalid_argument("super_identical_check: empty point set");

  SuperIdenticalReport rep;
  rep.num_points = points.size();
  rep.mode = mode;
  rep.tol = tol;
  for (const cdouble& z : points) {
    double dev = 0.0;
    if (mode == CertificateMode::singular_values) {
      const SingularValues sa = singular_values(a.shifted(z));
      const SingularValues sb = singular_values(b.shifted(z));
      const double scale = 1.0 + std::max(sa[0], sb[0]);
      for (int j = 0; j < sa.n(); ++j) dev = std::max(dev, std::abs(sa[j] - sb[j]) / scale);
    } else {
      const std::vector<double> ca = gram_char_coeffs(a, z);
      const std::vector<double> cb = gram_char_coeffs(b, z);
      for (std::size_t k = 0; k < ca.size(); ++k) {
        const double scale = 1.0 + std::max(std::abs(ca[k]), std::abs(cb[k]));
        dev = std::max(dev, std::abs(ca[k] - cb[k]) / scale);
      }
    }
    if (dev > rep.max_scaled_deviation) {
      rep.max_scaled_deviation = dev;
      rep.worst_point = z;
    }
  }
  rep.pass = rep.max_scaled_deviation <= tol;
  return rep;
}

struct MeanIdentityReport {
  MeanSignature sig_a;
  MeanSignature sig_b;
  double sum_residual = 0.0;
  double prod_residual = 0.0;
  double codim1_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// The bridge between pseudospectra and the tuple theorems: the squared
// singular values of p(a) and p(b) must share sum, product and codimension-1
// symmetric value. Residuals are scaled mixed-relative.
inline MeanIdentityReport mean_identities_check(const ComplexMatrix& a, const ComplexMatrix& b,
                                                const Polynomial& p, double tol = 1e-8) {
  if (a.size() != b.size()) throw std::invalid_argument("mean_identities_check: size mismatch");
  const SingularValues sa = singular_values(poly_eval(p, a));
  const SingularValues sb = singular_values(poly_eval(p, b));
  std::vector<double> xa(sa.values), xb(sb.values);
  for (double& v : xa) v *= v;
  for (double& v : xb) v *= v;

  MeanIdentityReport rep;
  rep.tol = tol;
  rep.sig_a = signature(NonnegTuple(xa));
  rep.sig_b = signature(NonnegTuple(xb));
  auto scaled = [](double p_, double q_) {
    return std::abs(p_ - q_) / std::max({1.0, std::abs(p_), std::abs(q_)});
  };
  rep.sum_residual = scaled(rep.sig_a.s, rep.sig_b.s);
  rep.prod_residual = scaled(rep.sig_a.p, rep.sig_b.p);
  rep.codim1_residual = scaled(rep.sig_a.e, rep.sig_b.e);
  rep.pass = rep.sum_residual <= tol && rep.prod_residual <= tol && rep.codim1_residual <= tol;
  return rep;
}

struct NormBoundReport {
  double norm_a = 0.0;
  double norm_b = 0.0;
  double ratio = 0.0;       // ||p(a)|| / ||p(b)||
  double reciprocal = 0.0;  // ||p(b)|| / ||p(a)||
  double bound = 0.0;       // sqrt(n - 2)
  bool zero_case = false;   // p(a) = p(b) = 0 escape hatch
  double tol = 0.0;
  bool pass = false;
};

inline NormBoundReport norm_bound_check(const ComplexMatrix& a, const ComplexMatrix& b,
                                        const Polynomial& p, double tol = 1e-9) {
  if (a.size() != b.size()) throw std::invalid_argument("norm_bound_check: size mismatch");
  if (a.size() < 4) throw std::invalid_argument("norm_bound_check: n must be >= 4");
  NormBoundReport rep;
  rep.tol = tol;
  rep.bound = std::sqrt(static_cast<double>(a.size() - 2));
  rep.norm_a = operator_norm(poly_eval(p, a));
  rep.norm_b = operator_norm(poly_eval(p, b));
  if (rep.norm_a <= tol && rep.norm_b <= tol) {
    rep.zero_case = true;
    rep.ratio = 0.0;
    rep.reciprocal = 0.0;
    rep.pass = true;
    return rep;
  }
  rep.ratio = rep.norm_a / rep.norm_b;
  rep.reciprocal = rep.norm_b / rep.norm_a;
  rep.pass = rep.ratio < rep.bound + tol && rep.reciprocal < rep.bound + tol;
  return rep;
}

struct SquareRatioReport {
  double r1 = 0.0;  // s1(A^2) / s1(B^2)
  double r2 = 0.0;  // s2(A^2) / s2(B^2)
  double expected_r1 = 0.0;  // cos(alpha) / cos(beta)
  double expected_r2 = 0.0;  // sin(alpha) / sin(beta)
  double max_ratio_deviation = 0.0;
  double max_closed_form_deviation = 0.0;  // numeric s_j vs analytic products
  bool pass = false;
};

// Squared-matrix singular value ratios against their closed forms. Because
// alpha, beta <= pi/4 we have sec <= csc, which fixes which product is s1.
inline SquareRatioReport fr_square_ratios(const FRPair& pair, double tol = 1e-10) {
  const Polynomial square = Polynomial::monomial(2);
  const SingularValues sa = singular_values(poly_eval(square, pair.a));
  const SingularValues sb = singular_values(poly_eval(square, pair.b));

  SquareRatioReport rep;
  rep.r1 = sa[0] / sb[0];
  rep.r2 = sa[1] / sb[1];
  rep.expected_r1 = std::cos(pair.alpha) / std::cos(pair.beta);
  rep.expected_r2 = std::sin(pair.alpha) / std::sin(pair.beta);
  rep.max_ratio_deviation = std::max(std::abs(rep.r1 - rep.expected_r1) / rep.expected_r1,
                                     std::abs(rep.r2 - rep.expected_r2) / rep.expected_r2);

  const double sec_a = 1.0 / std::cos(pair.alpha), csc_a = 1.0 / std::sin(pair.alpha);
  const double sec_b = 1.0 / std::cos(pair.beta), csc_b = 1.0 / std::sin(pair.beta);
  const std::array<double, 4> closed_a{csc_a * sec_b * csc_b, sec_a * sec_b * csc_b, 0.0, 0.0};
  const std::array<double, 4> closed_b{csc_b * sec_a * csc_a, sec_b * sec_a * csc_a, 0.0, 0.0};
  for (int j = 0; j < 4; ++j) {
    const double scale_a = std::max(1.0, closed_a[static_cast<std::size_t>(j)]);
    const double scale_b = std::max(1.0, closed_b[static_cast<std::size_t>(j)]);
    rep.max_closed_form_deviation =
        std::max({rep.max_closed_form_deviation,
                  std::abs(sa[j] - closed_a[static_cast<std::size_t>(j)]) / scale_a,
                  std::abs(sb[j] - closed_b[static_cast<std::size_t>(j)]) / scale_b});
  }
  rep.pass = rep.max_ratio_deviation <= tol && rep.max_closed_form_deviation <= tol;
  return rep;
}

struct SimilarityBound {
  double lower = 1.0;
  Polynomial achieving_poly;
  int achieving_index = 0;  // 1-based singular value index
  bool rank_mismatch = false;  // some s_j vanished on one side only
};

// Lower bound on inf ||W|| ||W^{-1}|| over similarities B = W^{-1} A W:
// every ratio s_j(p(B)) / s_j(p(A)) (either direction) is one. Index pairs
// where both values sit below the rank tolerance are skipped; a one-sided
// vanish means the matrices cannot be similar and is flagged instead of
// silently dividing.
inline SimilarityBound similarity_cond_lower_bound(const ComplexMatrix& a, const ComplexMatrix& b,
                                                   const std::vector<Polynomial>& polys) {
  if (a.size() != b.size())
    throw std::invalid_argument("similarity_cond_lower_bound: size mismatch");
  if (polys.empty())
    throw std::invalid_argument("similarity_cond_lower_bound: empty polynomial list");

  SimilarityBound bound;
  for (const Polynomial& p : polys) {
    const SingularValues sa = singular_values(poly_eval(p, a));
    const SingularValues sb = singular_values(poly_eval(p, b));
    const double floor = kRankTol * std::max(sa[0], sb[0]);
    for (int j = 0; j < sa.n(); ++j) {
      const bool za = sa[j] <= floor;
      const bool zb = sb[j] <= floor;
      if (za && zb) continue;
      if (za != zb) {
        bound.rank_mismatch = true;
        continue;
      }
      const double r = std::max(sa[j] / sb[j], sb[j] / sa[j]);
      if (r > bound.lower) {
        bound.lower = r;
        bound.achieving_poly = p;
        bound.achieving_index = j + 1;
      }
    }
  }
  return bound;
}

// Scan battery: the monomials z, z^2, z^3 (the extremal direction under
// squaring plus its neighbours) and seeded random degree-6 polynomials with
// standard-normal complex coefficients.
inline std::vector<Polynomial> default_poly_battery(std::uint64_t seed, int random_count = 100) {
  std::vector<Polynomial> battery;
  battery.push_back(Polynomial::monomial(1));
  battery.push_back(Polynomial::monomial(2));
  battery.push_back(Polynomial::monomial(3));
  std::mt19937_64 rng = make_stream(seed, "poly_battery");
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < random_count; ++i) {
    std::vector<cdouble> coeffs(7);
    for (cdouble& c : coeffs) c = cdouble(gauss(rng), gauss(rng));
    battery.emplace_back(std::move(coeffs));
  }
  return battery;
}

// ---------------------------------------------------------------------------
// Contour extraction
// ---------------------------------------------------------------------------

struct ContourSegment {
  double x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;
};

struct ContourDataset {
  double eps = 0.0;
  int nx = 0, ny = 0;
  std::vector<std::uint8_t> mask;  // row-major (iy, ix); 1 where s_min <= eps
  std::vector<ContourSegment> segments;
};

namespace detail {

inline std::pair<double, double> edge_interp(double xa, double ya, double fa, double xb, double yb,
                                             double fb) {
  const double t = fa == fb ? 0.5 : fa / (fa - fb);
  return {xa + t * (xb - xa), ya + t * (yb - ya)};
}

}  // namespace detail

// Sub-level sets {z : s_min(m - zI) <= eps} as masks plus marching-squares
// segment lists on s_min - eps.
inline std::vector<ContourDataset> eps_contour_export(const SingularField& field,
                                                      const std::vector<double>& eps_levels) {
  if (eps_levels.empty()) throw std::invalid_argument("eps_contour_export: no levels");
  for (std::size_t i = 0; i < eps_levels.size(); ++i) {
    if (!(eps_levels[i] > 0.0))
      throw std::invalid_argument("eps_contour_export: levels must be positive");
    if (i > 0 && !(eps_levels[i] > eps_levels[i - 1]))
      throw std::invalid_argument("eps_contour_export: levels must be ascending");
  }

  const GridSpec& g = field.grid;
  std::vector<ContourDataset> out;
  out.reserve(eps_levels.size());
  for (double eps : eps_levels) {
    ContourDataset ds;
    ds.eps = eps;
    ds.nx = g.nx;
    ds.ny = g.ny;
    ds.mask.resize(static_cast<std::size_t>(g.nx) * g.ny, 0);
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix)
        ds.mask[static_cast<std::size_t>(iy) * g.nx + ix] =
            field.smallest(ix, iy) <= eps ? 1 : 0;

    // Marching squares on f = s_min - eps; corners 0..3 are (ix,iy),
    // (ix+1,iy), (ix+1,iy+1), (ix,iy+1).
    for (int iy = 0; iy + 1 < g.ny; ++iy) {
      for (int ix = 0; ix + 1 < g.nx; ++ix) {
        const std::array<double, 4> fx{field.smallest(ix, iy) - eps,
                                       field.smallest(ix + 1, iy) - eps,
                                       field.smallest(ix + 1, iy + 1) - eps,
                                       field.smallest(ix, iy + 1) - eps};
        const std::array<double, 4> cx{g.re_at(ix), g.re_at(ix + 1), g.re_at(ix + 1), g.re_at(ix)};
        const std::array<double, 4> cy{g.im_at(iy), g.im_at(iy), g.im_at(iy + 1), g.im_at(iy + 1)};
        int code = 0;
        for (int c = 0; c < 4; ++c)
          if (fx[static_cast<std::size_t>(c)] <= 0.0) code |= 1 << c;
        if (code == 0 || code == 15) continue;

        auto edge_point = [&](int ca, int cb) {
          return detail::edge_interp(cx[static_cast<std::size_t>(ca)], cy[static_cast<std::size_t>(ca)],
                                     fx[static_cast<std::size_t>(ca)], cx[static_cast<std::size_t>(cb)],
                                     cy[static_cast<std::size_t>(cb)], fx[static_cast<std::size_t>(cb)]);
        };
        auto emit = [&](int ea0, int ea1, int eb0, int eb1) {
          const auto p1 = edge_point(ea0, ea1);
          const auto p2 = edge_point(eb0, eb1);
          ds.segments.push_back({p1.first, p1.second, p2.first, p2.second});
        };

        switch (code) {
          case 1: case 14: emit(0, 1, 0, 3); break;
          case 2: case 13: emit(0, 1, 1, 2); break;
          case 4: case 11: emit(1, 2, 2, 3); break;
          case 8: case 7: emit(2, 3, 0, 3); break;
          case 3: case 12: emit(1, 2, 0, 3); break;
          case 6: case 9: emit(0, 1, 2, 3); break;
          case 5: case 10: {
            // Saddle: split by the cell-center sign.
            const double center = 0.25 * (fx[0] + fx[1] + fx[2] + fx[3]);
            const bool center_in = center <= 0.0;
            if ((code == 5) == center_in) {
              emit(0, 1, 1, 2);
              emit(2, 3, 0, 3);
            } else {
              emit(0, 1, 0, 3);
              emit(1, 2, 2, 3);
            }
            break;
          }
          default: break;
        }
      }
    }
    out.push_back(std::move(ds));
  }
  return out;
}

}  // namespace fourmean
