#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fourmean/matrix.hpp"
#include "fourmean/realpoly.hpp"
#include "fourmean/rng.hpp"
#include "fourmean/tuples.hpp"

namespace fourmean {

// Reduced candidate of the interior critical-point analysis, normalized to
// max y = 1: x = (x1, u, ..., u), y = (v repeated r times, 1 repeated n-r).
struct CandidateProfile {
  double x1 = 0.0;
  double u = 0.0;
  double v = 0.0;
  int r = 0;
  int n = 0;
};

struct SearchConfig {
  std::uint64_t seed = 1;
  int restarts = 16;
  std::vector<double> penalty_weight_schedule = {1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8};
  int mesh = 64;
  double tol = 1e-9;

  void validate() const {
    if (restarts < 1) throw std::invalid_argument("SearchConfig: restarts must be >= 1");
    if (mesh < 8) throw std::invalid_argument("SearchConfig: mesh must be >= 8");
    if (!(tol > 0.0)) throw std::invalid_argument("SearchConfig: tol must be > 0");
    if (penalty_weight_schedule.empty())
      throw std::invalid_argument("SearchConfig: empty penalty schedule");
  }
};

enum class SearchMethod { structured, penalty_search, boundary_reduction, brute_force };

inline std::string to_string(SearchMethod m) {
  switch (m) {
    case SearchMethod::structured: return "structured";
    case SearchMethod::penalty_search: return "penalty_search";
    case SearchMethod::boundary_reduction: return "boundary_reduction";
    case SearchMethod::brute_force: return "brute_force";
  }
  return "unknown";
}

struct ExtremalResult {
  double value = 0.0;
  NonnegTuple witness_x;
  NonnegTuple witness_y;
  SearchMethod method = SearchMethod::structured;
  std::vector<double> certificate;  // raw constraint residuals at the witness
  double expected = 0.0;            // theorem value n - level + 1
  bool certified = false;           // best found matches expected within tol
};

// ---------------------------------------------------------------------------
// Reduced Lagrange system
// ---------------------------------------------------------------------------

// Residuals of the three reduced equations:
//   x1 + (n-1)u - (n-r) - r v
//   x1 u^{n-1} - v^r
//   1/x1 + (n-1)/u - (n-r) - r/v
inline std::array<double, 3> reduced_system_residual(const CandidateProfile& p) {
  if (p.n < 4) throw std::invalid_argument("reduced_system_residual: n must be >= 4");
  if (p.r < 1 || p.r > p.n - 1) throw std::invalid_argument("reduced_system_residual: bad r");
  const double n1 = static_cast<double>(p.n - 1);
  const double nr = static_cast<double>(p.n - p.r);
  const double rr = static_cast<double>(p.r);
  const double r1 = p.x1 + n1 * p.u - nr - rr * p.v;
  const double r2 = p.x1 * std::pow(p.u, p.n - 1) - std::pow(p.v, p.r);
  if (p.x1 == 0.0 || p.u == 0.0 || p.v == 0.0)
    throw std::domain_error("reduced_system_residual: zero division in reciprocal equation");
  const double r3 = 1.0 / p.x1 + n1 / p.u - nr - rr / p.v;
  return {r1, r2, r3};
}

namespace detail {

// The Newton path runs in long double: the trivial root (1,1,1) sits on a
// second-order-flat residual surface, so double precision cannot separate
// genuine roots from near-root artifacts at the 1e-8 contract scale.
using ld = long double;

struct ProfileLd {
  ld x1, u, v;
  int r, n;
};

inline std::array<ld, 3> residual_ld(const ProfileLd& p) {
  const ld n1 = static_cast<ld>(p.n - 1);
  const ld nr = static_cast<ld>(p.n - p.r);
  const ld rr = static_cast<ld>(p.r);
  return {p.x1 + n1 * p.u - nr - rr * p.v,
          p.x1 * std::pow(p.u, static_cast<ld>(p.n - 1)) - std::pow(p.v, static_cast<ld>(p.r)),
          1.0L / p.x1 + n1 / p.u - nr - rr / p.v};
}

inline std::array<std::array<ld, 3>, 3> jacobian_ld(const ProfileLd& p) {
  const ld n1 = static_cast<ld>(p.n - 1);
  const ld rr = static_cast<ld>(p.r);
  const ld un2 = std::pow(p.u, static_cast<ld>(p.n - 2));
  std::array<std::array<ld, 3>, 3> j{};
  j[0] = {1.0L, n1, -rr};
  j[1] = {un2 * p.u, n1 * p.x1 * un2, -rr * std::pow(p.v, static_cast<ld>(p.r - 1))};
  j[2] = {-1.0L / (p.x1 * p.x1), -n1 / (p.u * p.u), rr / (p.v * p.v)};
  return j;
}

// 3x3 linear solve with partial pivoting; false if effectively singular.
inline bool solve3(std::array<std::array<ld, 3>, 3> a, std::array<ld, 3> b,
                   std::array<ld, 3>& out) {
  for (int k = 0; k < 3; ++k) {
    int piv = k;
    for (int i = k + 1; i < 3; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (std::abs(a[piv][k]) < 1e-17L) return false;
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (int i = k + 1; i < 3; ++i) {
      const ld f = a[i][k] / a[k][k];
      for (int j = k; j < 3; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  for (int i = 2; i >= 0; --i) {
    ld s = b[i];
    for (int j = i + 1; j < 3; ++j) s -= a[i][j] * out[j];
    out[i] = s / a[i][i];
  }
  return true;
}

inline ld norm_inf3(const std::array<ld, 3>& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

inline ProfileLd clamp_profile(ProfileLd p) {
  p.x1 = std::clamp(p.x1, 1e-12L, 1e6L);
  p.u = std::clamp(p.u, 1e-12L, 1e6L);
  p.v = std::clamp(p.v, 1e-12L, 1.0L);
  return p;
}

// A converged point only counts as a root if a further Newton step certifies
// it: the step length bounds the distance to the true solution. Points on
// the flat curve through (1,1,1) report their actual distance here and are
// rejected; if the Jacobian is singular (the solution families), exactness
// is demanded of the residual itself.
inline std::optional<CandidateProfile> newton_from(ProfileLd p) {
  constexpr int max_iter = 160;
  constexpr int max_halvings = 30;
  bool converged = false;
  for (int it = 0; it < max_iter && !converged; ++it) {
    const auto res = residual_ld(p);
    const ld rn = norm_inf3(res);
    if (rn <= 1e-15L) {
      converged = true;
      break;
    }
    std::array<ld, 3> step{};
    if (!solve3(jacobian_ld(p), {-res[0], -res[1], -res[2]}, step)) break;
    ld alpha = 1.0L;
    bool moved = false;
    for (int h = 0; h < max_halvings; ++h) {
      ProfileLd trial = clamp_profile(
          {p.x1 + alpha * step[0], p.u + alpha * step[1], p.v + alpha * step[2], p.r, p.n});
      if (norm_inf3(residual_ld(trial)) < rn) {
        p = trial;
        moved = true;
        break;
      }
      alpha *= 0.5L;
    }
    if (!moved) break;
  }

  const auto res = residual_ld(p);
  const ld rn = norm_inf3(res);
  const ld scale = std::max({1.0L, std::abs(p.x1), std::abs(p.u)});
  if (rn > 1e-14L * scale) return std::nullopt;
  std::array<ld, 3> err{};
  if (solve3(jacobian_ld(p), {-res[0], -res[1], -res[2]}, err)) {
    if (norm_inf3(err) > 1e-9L) return std::nullopt;
  } else if (rn > 1e-17L * scale) {
    return std::nullopt;
  }
  return CandidateProfile{static_cast<double>(p.x1), static_cast<double>(p.u),
                          static_cast<double>(p.v), p.r, p.n};
}

}  // namespace detail

// Multi-start damped Newton for the reduced system over
// (x1, u, v) in (0, inf) x (0, inf) x (0, 1]. Returns distinct converged
// roots. The numerical content of the interior case analysis is that no
// root with u != v, v < 1 ever has x1 > 1.
inline std::vector<CandidateProfile> reduced_system_solve(int n, int r, const SearchConfig& cfg) {
  if (n < 4) throw std::invalid_argument("reduced_system_solve: n must be >= 4");
  if (r < 1 || r > n - 1) throw std::invalid_argument("reduced_system_solve: bad r");
  cfg.validate();

  std::vector<detail::ProfileLd> starts;
  starts.push_back({1.0L, 1.0L, 1.0L, r, n});
  std::mt19937_64 rng = make_stream(cfg.seed, "reduced_system", (static_cast<std::uint64_t>(n) << 8) + static_cast<std::uint64_t>(r));
  std::uniform_real_distribution<double> ux(0.05, static_cast<double>(n));
  std::uniform_real_distribution<double> uu(0.02, 2.0);
  std::uniform_real_distribution<double> uv(0.02, 0.999);
  for (int i = 1; i < cfg.restarts; ++i)
    starts.push_back({static_cast<detail::ld>(ux(rng)), static_cast<detail::ld>(uu(rng)),
                      static_cast<detail::ld>(uv(rng)), r, n});

  std::vector<CandidateProfile> roots;
  for (const detail::ProfileLd& s : starts) {
    const std::optional<CandidateProfile> root = detail::newton_from(s);
    if (!root) continue;
    bool duplicate = false;
    for (const CandidateProfile& q : roots) {
      const double d = std::hypot(q.x1 - root->x1, q.u - root->u, q.v - root->v);
      if (d < 1e-7) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) roots.push_back(*root);
  }
  return roots;
}

// ---------------------------------------------------------------------------
// Lemma verifiers
// ---------------------------------------------------------------------------

// f(t) = t^{2n-2} - (n-1) t^n + (n-1) t^{n-2} - 1, ascending coefficients.
inline realpoly::Coeffs poly_f_coeffs(int n) {
  if (n < 4) throw std::invalid_argument("poly_f_coeffs: n must be >= 4");
  realpoly::Coeffs c(static_cast<std::size_t>(2 * n - 1), 0.0);
  c[0] = -1.0;
  c[static_cast<std::size_t>(n - 2)] = static_cast<double>(n - 1);
  c[static_cast<std::size_t>(n)] = -static_cast<double>(n - 1);
  c[static_cast<std::size_t>(2 * n - 2)] = 1.0;
  return c;
}

struct FLemmaReport {
  int n = 0;
  double f_at_1 = 0.0;
  double df_at_1 = 0.0;
  double ddf_at_1 = 0.0;
  double dddf_at_1 = 0.0;
  int descartes_count = 0;
  std::vector<double> quotient;         // f / (t-1)^3
  double max_division_remainder = 0.0;  // worst remainder over the three divisions
  int quotient_sign_changes = 0;
  int sturm_positive_roots = -1;  // -1 when the sign count already certifies
  bool pass = false;
  std::string detail;
};

// Certifies that f has a triple root at t = 1 and no other positive root:
// residuals of f, f', f'' at 1; nonzero f''' there; exactly three sign
// changes; and a positive-root-free quotient after removing (t-1)^3,
// certified by sign count or, failing that, by Sturm counting on (0, R].
inline FLemmaReport verify_f_lemma(int n) {
  FLemmaReport rep;
  rep.n = n;
  const realpoly::Coeffs f = poly_f_coeffs(n);
  const realpoly::Coeffs f1 = realpoly::derivative(f);
  const realpoly::Coeffs f2 = realpoly::derivative(f1);
  const realpoly::Coeffs f3 = realpoly::derivative(f2);
  rep.f_at_1 = realpoly::eval(f, 1.0);
  rep.df_at_1 = realpoly::eval(f1, 1.0);
  rep.ddf_at_1 = realpoly::eval(f2, 1.0);
  rep.dddf_at_1 = realpoly::eval(f3, 1.0);
  rep.descartes_count = realpoly::descartes_sign_changes(f);

  auto l1 = [](const realpoly::Coeffs& c) {
    double s = 0.0;
    for (double v : c) s += std::abs(v);
    return s;
  };
  const bool triple_root = std::abs(rep.f_at_1) <= 1e-10 * l1(f) &&
                           std::abs(rep.df_at_1) <= 1e-10 * l1(f1) &&
                           std::abs(rep.ddf_at_1) <= 1e-10 * l1(f2);
  const bool third_nonzero = std::abs(rep.dddf_at_1) >= 1.0;

  realpoly::Coeffs q = f;
  for (int i = 0; i < 3; ++i) {
    double rem = 0.0;
    realpoly::Coeffs next = realpoly::synthetic_divide(q, 1.0, &rem);
    rep.max_division_remainder = std::max(rep.max_division_remainder, std::abs(rem) / l1(q));
    q = std::move(next);
  }
  rep.quotient = realpoly::trim(q, 1e-12);
  rep.quotient_sign_changes = realpoly::descartes_sign_changes(rep.quotient);
  bool quotient_root_free = rep.quotient_sign_changes == 0;
  if (!quotient_root_free) {
    rep.sturm_positive_roots = realpoly::sturm_count_positive(rep.quotient);
    quotient_root_free = rep.sturm_positive_roots == 0;
  }

  rep.pass = triple_root && third_nonzero && rep.descartes_count == 3 &&
             rep.max_division_remainder <= 1e-10 && quotient_root_free;
  if (!rep.pass) {
    rep.detail = "f-lemma failure at n=" + std::to_string(n);
    if (!triple_root) rep.detail += "; residual at t=1 too large";
    if (!third_nonzero) rep.detail += "; third derivative vanishes";
    if (rep.descartes_count != 3) rep.detail += "; sign-change count != 3";
    if (rep.max_division_remainder > 1e-10) rep.detail += "; division remainder too large";
    if (!quotient_root_free) rep.detail += "; quotient has positive roots";
  }
  return rep;
}

// g(u, v) = (n-1)u^n - (n-r)u^{n-1} - r v u^{n-1} + v^r, grouped so that the
// identically-zero diagonal at r = n-1 cancels exactly in floating point.
inline double g_eval(int n, int r, double u, double v) {
  const double coeff = (static_cast<double>(n - 1) * u - static_cast<double>(r) * v) -
                       static_cast<double>(n - r);
  return std::pow(u, n - 1) * coeff + std::pow(v, r);
}

inline double g_dv(int n, int r, double u, double v) {
  return static_cast<double>(r) * (std::pow(v, r - 1) - std::pow(u, n - 1));
}

struct GLemmaViolation {
  double u = 0.0;
  double v = 0.0;
  double value = 0.0;
  std::string kind;
};

struct GLemmaReport {
  int n = 0;
  int r = 0;
  int mesh = 0;
  double min_interior = 0.0;  // min of g over sampled 0 < u < v < 1
  double min_diag = 0.0;      // min of g(u,u) over (0,1)
  double max_abs_diag = 0.0;
  double min_dv = 0.0;  // min of dg/dv over sampled interior
  bool diag_identically_zero = false;
  std::vector<GLemmaViolation> violations;
  bool pass = false;
};

// Positivity certificate for g on the open triangle 0 < u < v < 1, on a
// finite mesh plus the monotonicity check in v. Finite sampling, not
// interval arithmetic; reported as a certificate with tolerance.
inline GLemmaReport verify_g_lemma(int n, int r, int mesh) {
  if (n < 4) throw std::invalid_argument("verify_g_lemma: n must be >= 4");
  if (r < 1 || r > n - 1) throw std::invalid_argument("verify_g_lemma: bad r");
  if (mesh < 16) throw std::invalid_argument("verify_g_lemma: mesh too coarse (need >= 16)");

  GLemmaReport rep;
  rep.n = n;
  rep.r = r;
  rep.mesh = mesh;
  rep.min_interior = std::numeric_limits<double>::infinity();
  rep.min_diag = std::numeric_limits<double>::infinity();
  rep.min_dv = std::numeric_limits<double>::infinity();

  const double h = 1.0 / (mesh + 1);
  for (int i = 1; i <= mesh; ++i) {
    const double u = i * h;
    const double gd = g_eval(n, r, u, u);
    rep.min_diag = std::min(rep.min_diag, gd);
    rep.max_abs_diag = std::max(rep.max_abs_diag, std::abs(gd));
    if (gd < -1e-12)
      rep.violations.push_back({u, u, gd, "diagonal"});
    for (int j = i + 1; j <= mesh; ++j) {
      const double v = j * h;
      const double g = g_eval(n, r, u, v);
      rep.min_interior = std::min(rep.min_interior, g);
      if (!(g > 0.0)) rep.violations.push_back({u, v, g, "interior"});
      const double dv = g_dv(n, r, u, v);
      rep.min_dv = std::min(rep.min_dv, dv);
      if (!(dv > 0.0)) rep.violations.push_back({u, v, dv, "dv"});
    }
  }
  rep.diag_identically_zero = (r == n - 1) && rep.max_abs_diag <= 1e-14;
  rep.pass = rep.violations.empty() && (r != n - 1 || rep.diag_identically_zero);
  return rep;
}

// ---------------------------------------------------------------------------
// Feasible pair sampling
// ---------------------------------------------------------------------------

namespace detail {

// Roots of t^k - e1 t^{k-1} + e2 t^{k-2} - ... via the companion matrix.
inline std::vector<cdouble> roots_from_elementary(const std::vector<double>& elem) {
  const int k = static_cast<int>(elem.size());
  std::vector<cdouble> coeffs(static_cast<std::size_t>(k) + 1, 0.0);
  coeffs[static_cast<std::size_t>(k)] = 1.0;
  double sign = -1.0;
  for (int j = 1; j <= k; ++j) {
    coeffs[static_cast<std::size_t>(k - j)] = sign * elem[static_cast<std::size_t>(j - 1)];
    sign = -sign;
  }
  return poly_roots(Polynomial(std::move(coeffs)));
}

}  // namespace detail

// Completes x so that (x, y) match signatures at the given level: the free
// part of x is given, the remaining `level` coordinates are the roots of the
// monic polynomial forced by the constraints. Rejects unless all roots are
// real and strictly positive (the accepted pairs feed strict-inequality
// property runs).
inline std::optional<NonnegTuple> complete_feasible_x(const NonnegTuple& y,
                                                      const std::vector<double>& x_free,
                                                      int level) {
  const int n = y.n();
  if (level != 2 && level != 3)
    throw std::invalid_argument("complete_feasible_x: level must be 2 or 3");
  const int m = level;  // number of solved coordinates
  if (static_cast<int>(x_free.size()) != n - m)
    throw std::invalid_argument("complete_feasible_x: free part has wrong length");

  const MeanSignature ys = signature(y);
  double s0 = 0.0, p0 = 1.0;
  for (double v : x_free) {
    s0 += v;
    p0 *= v;
  }
  if (!(p0 > 0.0)) return std::nullopt;

  std::vector<double> elem;
  elem.push_back(ys.s - s0);
  if (level == 2) {
    elem.push_back(ys.p / p0);
  } else {
    const double e3 = ys.p / p0;
    const double t0 = codim1_elementary(x_free);
    const double e2 = (ys.e - e3 * t0) / p0;
    elem.push_back(e2);
    elem.push_back(e3);
  }
  for (double e : elem)
    if (!(e >= 0.0)) return std::nullopt;  // nonnegative roots need nonnegative elementaries

  std::vector<double> solved;
  for (const cdouble& root : detail::roots_from_elementary(elem)) {
    if (std::abs(root.imag()) > 1e-9 * std::max(1.0, std::abs(root))) return std::nullopt;
    if (root.real() < 1e-12) return std::nullopt;
    solved.push_back(root.real());
  }

  std::vector<double> x = solved;
  x.insert(x.end(), x_free.begin(), x_free.end());
  NonnegTuple xt(std::move(x));
  if (!signatures_match(signature(xt), ys, 1e-9, level)) return std::nullopt;
  return xt;
}

// Draws y strictly positive with y1 = 1 and the free part of x uniform in
// (0, 1], then completes x. Rejection is a normal outcome; callers measure
// the acceptance rate.
inline std::optional<std::pair<NonnegTuple, NonnegTuple>> feasible_pair_sample(
    int n, int level, std::mt19937_64& rng) {
  if (level != 2 && level != 3)
    throw std::invalid_argument("feasible_pair_sample: level must be 2 or 3");
  if (n < level + 1)
    throw std::invalid_argument("feasible_pair_sample: n too small for level");

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto positive_unit = [&]() { return 1.0 - unit(rng); };  // (0, 1]

  std::vector<double> y(static_cast<std::size_t>(n));
  y[0] = 1.0;
  for (int j = 1; j < n; ++j) y[static_cast<std::size_t>(j)] = positive_unit();
  NonnegTuple yt(std::move(y));

  std::vector<double> x_free(static_cast<std::size_t>(n - level));
  for (double& v : x_free) v = positive_unit();

  std::optional<NonnegTuple> xt = complete_feasible_x(yt, x_free, level);
  if (!xt) return std::nullopt;
  return std::make_pair(std::move(*xt), std::move(yt));
}

// ---------------------------------------------------------------------------
// Penalty search
// ---------------------------------------------------------------------------

struct PenaltyOutcome {
  NonnegTuple x;
  NonnegTuple y;
  double value = 0.0;
  bool feasible = false;
};

namespace detail {

struct PenaltyProblem {
  int n;
  int level;
  double floor;  // interior clip; keeps products and reciprocals finite

  // Variables: x[0..n), y[1..n) (y[0] fixed at 1).
  int dim() const { return 2 * n - 1; }

  void residuals(const std::vector<double>& z, std::array<double, 3>& res) const {
    double sx = 0.0, px = 1.0, sy = 1.0, py = 1.0;
    for (int j = 0; j < n; ++j) {
      sx += z[static_cast<std::size_t>(j)];
      px *= z[static_cast<std::size_t>(j)];
    }
    for (int j = 1; j < n; ++j) {
      sy += z[static_cast<std::size_t>(n + j - 1)];
      py *= z[static_cast<std::size_t>(n + j - 1)];
    }
    res[0] = sx - sy;
    res[1] = px - py;
    res[2] = 0.0;
    if (level >= 3) {
      std::vector<double> xv(z.begin(), z.begin() + n);
      std::vector<double> yv;
      yv.push_back(1.0);
      yv.insert(yv.end(), z.begin() + n, z.end());
      res[2] = codim1_elementary(xv) - codim1_elementary(yv);
    }
  }

  double objective(const std::vector<double>& z, double w, std::array<double, 3>& res) const {
    residuals(z, res);
    double pen = res[0] * res[0] + res[1] * res[1];
    if (level >= 3) pen += res[2] * res[2];
    return -z[0] + w * pen;
  }

  std::vector<double> gradient(const std::vector<double>& z, double w) const {
    std::array<double, 3> res{};
    residuals(z, res);
    std::vector<double> grad(static_cast<std::size_t>(dim()), 0.0);
    grad[0] = -1.0;

    std::vector<double> xv(z.begin(), z.begin() + n);
    std::vector<double> yv;
    yv.push_back(1.0);
    yv.insert(yv.end(), z.begin() + n, z.end());

    // d(sum)/d = 1, d(prod)/dx_j = prod of the others (division-free)
    std::vector<double> px_other = partial_products(xv);
    std::vector<double> py_other = partial_products(yv);
    for (int j = 0; j < n; ++j) {
      grad[static_cast<std::size_t>(j)] += 2.0 * w * (res[0] + res[1] * px_other[static_cast<std::size_t>(j)]);
    }
    for (int j = 1; j < n; ++j) {
      grad[static_cast<std::size_t>(n + j - 1)] -=
          2.0 * w * (res[0] + res[1] * py_other[static_cast<std::size_t>(j)]);
    }
    if (level >= 3) {
      for (int j = 0; j < n; ++j)
        grad[static_cast<std::size_t>(j)] += 2.0 * w * res[2] * codim2_partial(xv, j);
      for (int j = 1; j < n; ++j)
        grad[static_cast<std::size_t>(n + j - 1)] -= 2.0 * w * res[2] * codim2_partial(yv, j);
    }
    return grad;
  }

  void clamp(std::vector<double>& z) const {
    const double hi_x = static_cast<double>(n);
    for (int j = 0; j < n; ++j)
      z[static_cast<std::size_t>(j)] = std::clamp(z[static_cast<std::size_t>(j)], floor, hi_x);
    for (int j = 1; j < n; ++j)
      z[static_cast<std::size_t>(n + j - 1)] =
          std::clamp(z[static_cast<std::size_t>(n + j - 1)], floor, 1.0);
  }

  static std::vector<double> partial_products(const std::vector<double>& v) {
    const std::size_t m = v.size();
    std::vector<double> suffix(m + 1, 1.0);
    for (std::size_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] * v[i];
    std::vector<double> out(m);
    double prefix = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      out[i] = prefix * suffix[i + 1];
      prefix *= v[i];
    }
    return out;
  }

  // d e_{m-1}(v) / d v_j = e_{m-2} of v without j.
  static double codim2_partial(const std::vector<double>& v, int j) {
    std::vector<double> rest;
    rest.reserve(v.size() - 1);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (static_cast<int>(i) != j) rest.push_back(v[i]);
    return codim1_elementary(rest);
  }
};

}  // namespace detail

// One penalty restart: feasible start from the sampler, then projected
// gradient descent through the weight schedule. The outcome is the best
// point along the trajectory that satisfies the constraints at the
// feasibility tolerance; the penalty function itself tolerates violations,
// so the final iterate is often slightly infeasible. entry_floor > 1e-12
// restricts the whole run to strictly positive tuples.
inline PenaltyOutcome penalty_restart(int n, int level, const SearchConfig& cfg,
                                      int restart_index, double entry_floor = 1e-12,
                                      double feas_tol = 1e-7) {
  detail::PenaltyProblem prob{n, level, entry_floor};
  std::mt19937_64 rng = make_stream(cfg.seed, "penalty", (static_cast<std::uint64_t>(level) << 32) +
                                                             static_cast<std::uint64_t>(restart_index));

  std::vector<double> z(static_cast<std::size_t>(prob.dim()), 1.0);
  bool seeded = false;
  for (int attempt = 0; attempt < 200 && !seeded; ++attempt) {
    auto pair = feasible_pair_sample(n, level, rng);
    if (!pair) continue;
    for (int j = 0; j < n; ++j) z[static_cast<std::size_t>(j)] = pair->first[j];
    for (int j = 1; j < n; ++j) z[static_cast<std::size_t>(n + j - 1)] = pair->second[j];
    seeded = true;
  }
  prob.clamp(z);

  auto unpack = [n](const std::vector<double>& w) {
    std::vector<double> xv(w.begin(), w.begin() + n);
    std::vector<double> yv;
    yv.push_back(1.0);
    yv.insert(yv.end(), w.begin() + n, w.end());
    return std::make_pair(NonnegTuple(std::move(xv)), NonnegTuple(std::move(yv)));
  };

  PenaltyOutcome best{NonnegTuple(std::vector<double>(static_cast<std::size_t>(n), 0.0)),
                      NonnegTuple(std::vector<double>(static_cast<std::size_t>(n), 0.0)), 0.0,
                      false};
  auto consider = [&](const std::vector<double>& w) {
    auto [xt, yt] = unpack(w);
    if (!signatures_match(signature(xt), signature(yt), feas_tol, level)) return;
    const double value = xt.max();
    if (!best.feasible || value > best.value) best = {std::move(xt), std::move(yt), value, true};
  };
  consider(z);

  std::array<double, 3> res{};
  for (double w : cfg.penalty_weight_schedule) {
    double fz = prob.objective(z, w, res);
    double step = 0.1;
    for (int it = 0; it < 250; ++it) {
      const std::vector<double> grad = prob.gradient(z, w);
      double gnorm = 0.0;
      for (double g : grad) gnorm += g * g;
      gnorm = std::sqrt(gnorm);
      if (gnorm < 1e-13) break;
      bool improved = false;
      double eta = step;
      for (int h = 0; h < 40; ++h) {
        std::vector<double> trial = z;
        for (std::size_t i = 0; i < trial.size(); ++i) trial[i] -= eta * grad[i];
        prob.clamp(trial);
        const double ft = prob.objective(trial, w, res);
        if (ft < fz - 1e-15) {
          z = std::move(trial);
          fz = ft;
          step = eta * 1.5;
          improved = true;
          break;
        }
        eta *= 0.5;
      }
      if (!improved) break;
      consider(z);
    }
  }

  if (best.feasible) return best;
  auto [xt, yt] = unpack(z);
  PenaltyOutcome out{std::move(xt), std::move(yt), 0.0, false};
  out.value = out.x.max();
  return out;
}

// ---------------------------------------------------------------------------
// Extremal solvers
// ---------------------------------------------------------------------------

namespace detail {

struct ScoredCandidate {
  NonnegTuple x;
  NonnegTuple y;
  double value = 0.0;
  SearchMethod method = SearchMethod::structured;
};

inline std::array<double, 3> signature_residuals(const NonnegTuple& x, const NonnegTuple& y) {
  const MeanSignature a = signature(x);
  const MeanSignature b = signature(y);
  return {a.s - b.s, a.p - b.p, a.e - b.e};
}

inline bool feasible_at_level(const NonnegTuple& x, const NonnegTuple& y, int level,
                              double tol = 1e-7) {
  return signatures_match(signature(x), signature(y), tol, level);
}

inline void push_candidate(std::vector<ScoredCandidate>& pool, NonnegTuple x, NonnegTuple y,
                           int level, SearchMethod method) {
  if (!feasible_at_level(x, y, level)) return;
  const double value = x.max();
  pool.push_back({std::move(x), std::move(y), value, method});
}

// Interior critical-point family of the two-constraint problem: x_j = u for
// j >= 2, each y_j in {u, 1} with k entries equal to u. Eliminating x1 by the
// product constraint leaves a 1-D root solve in u.
inline void three_mean_interior_candidates(int n, std::vector<ScoredCandidate>& pool) {
  const int grid = 4000;
  for (int k = 0; k <= n - 1; ++k) {
    auto h = [&](double u) {
      return std::pow(u, k - n + 1) + (n - 1) * u - static_cast<double>(n - k) -
             static_cast<double>(k) * u;
    };
    double prev_u = 1.0 / grid;
    double prev_h = h(prev_u);
    for (int i = 2; i <= grid; ++i) {
      const double u = static_cast<double>(i) / grid;
      const double hu = h(u);
      if ((prev_h < 0.0) != (hu < 0.0)) {
        double lo = prev_u, hi = u;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (lo + hi);
          if ((h(lo) < 0.0) != (h(mid) < 0.0))
            hi = mid;
          else
            lo = mid;
        }
        const double u_root = 0.5 * (lo + hi);
        const double x1 = std::pow(u_root, k - n + 1);
        std::vector<double> x(static_cast<std::size_t>(n), u_root);
        x[0] = x1;
        std::vector<double> y(static_cast<std::size_t>(n), 1.0);
        for (int j = 0; j < k; ++j) y[static_cast<std::size_t>(n - 1 - j)] = u_root;
        push_candidate(pool, NonnegTuple(std::move(x)), NonnegTuple(std::move(y)), 2,
                       SearchMethod::structured);
      }
      prev_u = u;
      prev_h = hu;
    }
  }
  // u = 1 solves every family (the all-ones point).
  std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
  push_candidate(pool, NonnegTuple(ones), NonnegTuple(ones), 2, SearchMethod::structured);
}

inline ExtremalResult finish(std::vector<ScoredCandidate>&& pool, int n, int level,
                             const SearchConfig& cfg) {
  if (pool.empty()) throw std::runtime_error("extremal search produced no feasible candidate");
  // Selection discounts constraint violation: a sum mismatch of delta can
  // inflate the max entry by about delta, so tolerance slack in a
  // near-feasible candidate must not outrank an exactly feasible one.
  auto score = [level](const ScoredCandidate& c) {
    const auto res = signature_residuals(c.x, c.y);
    double slack = std::abs(res[0]) + std::abs(res[1]);
    if (level >= 3) slack += std::abs(res[2]);
    return c.value - 4.0 * slack;
  };
  std::size_t best = 0;
  double best_score = score(pool[0]);
  for (std::size_t i = 1; i < pool.size(); ++i) {
    const double s = score(pool[i]);
    if (s > best_score) {
      best = i;
      best_score = s;
    }
  }

  ExtremalResult result;
  result.value = pool[best].value;
  result.witness_x = pool[best].x;
  result.witness_y = pool[best].y;
  result.method = pool[best].method;
  const auto res = signature_residuals(result.witness_x, result.witness_y);
  result.certificate.assign(res.begin(), res.begin() + (level == 2 ? 2 : 3));
  result.expected = static_cast<double>(n - level + 1);
  result.certified = result.value >= result.expected - cfg.tol &&
                     result.value <= result.expected + std::max(cfg.tol, 1e-6);
  return result;
}

}  // namespace detail

// Maximum of x1 over the two-constraint set (matching sum and product,
// y1 = 1, y_j in [0,1]). Combines the interior critical-point family, the
// boundary candidates with zeros, and penalty local search. A best value
// away from n-1 is reported as a failed certificate, never silently.
inline ExtremalResult three_mean_max(int n, const SearchConfig& cfg) {
  if (n < 3) throw std::invalid_argument("three_mean_max: n must be >= 3");
  cfg.validate();
  std::vector<detail::ScoredCandidate> pool;

  detail::three_mean_interior_candidates(n, pool);

  for (int zeros = 1; zeros <= n - 1; ++zeros) {
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    x[0] = static_cast<double>(n - zeros);
    std::vector<double> y(static_cast<std::size_t>(n), 1.0);
    for (int j = 0; j < zeros; ++j) y[static_cast<std::size_t>(n - 1 - j)] = 0.0;
    detail::push_candidate(pool, NonnegTuple(std::move(x)), NonnegTuple(std::move(y)), 2,
                           SearchMethod::boundary_reduction);
  }

  for (int i = 0; i < cfg.restarts; ++i) {
    PenaltyOutcome out = penalty_restart(n, 2, cfg, i);
    if (out.feasible)
      pool.push_back({std::move(out.x), std::move(out.y), out.value, SearchMethod::penalty_search});
  }

  return detail::finish(std::move(pool), n, 2, cfg);
}

// Maximum of x1 over the three-constraint set. Interior candidates come from
// the reduced Lagrange system over all r; the boundary case reduces to the
// two-constraint problem one dimension down with a zero appended to both
// tuples; penalty search probes everything else.
inline ExtremalResult four_mean_max(int n, const SearchConfig& cfg) {
  if (n < 4) throw std::invalid_argument("four_mean_max: n must be >= 4");
  cfg.validate();
  std::vector<detail::ScoredCandidate> pool;

  for (int r = 1; r <= n - 1; ++r) {
    for (const CandidateProfile& root : reduced_system_solve(n, r, cfg)) {
      std::vector<double> x(static_cast<std::size_t>(n), root.u);
      x[0] = root.x1;
      std::vector<double> y(static_cast<std::size_t>(n), 1.0);
      for (int j = 0; j < r; ++j) y[static_cast<std::size_t>(n - 1 - j)] = root.v;
      detail::push_candidate(pool, NonnegTuple(std::move(x)), NonnegTuple(std::move(y)), 3,
                             SearchMethod::structured);
    }
  }

  {
    const ExtremalResult sub = three_mean_max(n - 1, cfg);
    std::vector<double> x = sub.witness_x.values();
    std::vector<double> y = sub.witness_y.values();
    x.push_back(0.0);
    y.push_back(0.0);
    detail::push_candidate(pool, NonnegTuple(std::move(x)), NonnegTuple(std::move(y)), 3,
                           SearchMethod::boundary_reduction);
  }

  for (int i = 0; i < cfg.restarts; ++i) {
    PenaltyOutcome out = penalty_restart(n, 3, cfg, i);
    if (out.feasible)
      pool.push_back({std::move(out.x), std::move(out.y), out.value, SearchMethod::penalty_search});
  }

  return detail::finish(std::move(pool), n, 3, cfg);
}

}  // namespace fourmean
