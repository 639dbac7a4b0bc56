#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fourmean {

// Dense real polynomials, ascending coefficients. Small toolbox used by the
// lemma verifiers: evaluation, derivatives, synthetic division, Descartes'
// sign count and Sturm-sequence root counting.
namespace realpoly {

using Coeffs = std::vector<double>;

inline double eval(const Coeffs& c, double t) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
  return acc;
}

inline Coeffs derivative(const Coeffs& c) {
  if (c.size() <= 1) return {};
  Coeffs d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i)
    d[i - 1] = c[i] * static_cast<double>(i);
  return d;
}

inline double max_abs_coeff(const Coeffs& c) {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

inline Coeffs trim(Coeffs c, double rel_tol = 0.0) {
  const double floor = rel_tol * max_abs_coeff(c);
  while (!c.empty() && std::abs(c.back()) <= floor) c.pop_back();
  return c;
}

inline int degree(const Coeffs& c) { return static_cast<int>(c.size()) - 1; }

// Divides by (t - root). Returns quotient; *remainder gets p(root).
inline Coeffs synthetic_divide(const Coeffs& c, double root, double* remainder = nullptr) {
  if (c.size() < 2) {
    if (remainder) *remainder = c.empty() ? 0.0 : c[0];
    return {};
  }
  Coeffs q(c.size() - 1);
  double carry = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    q[i] = carry;
    carry = c[i] + carry * root;
  }
  if (remainder) *remainder = carry;
  return q;
}

// Number of strict sign changes in the coefficient sequence, zeros skipped.
// By Descartes' rule this bounds the number of positive real roots counted
// with multiplicity, and agrees with it modulo 2.
inline int descartes_sign_changes(const Coeffs& c) {
  int changes = 0;
  int prev = 0;
  for (double v : c) {
    if (v == 0.0) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

// Cauchy bound: every real root has |t| <= 1 + max |a_k| / |a_deg|.
inline double cauchy_root_bound(const Coeffs& c_in) {
  const Coeffs c = trim(c_in, 1e-14);
  if (c.size() < 2) return 1.0;
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, std::abs(c[i]));
  return 1.0 + m / std::abs(c.back());
}

namespace detail {

// Remainder of a / b, both trimmed; coefficients normalized by the max
// coefficient of the remainder to keep the chain well scaled. Positive
// scaling preserves signs, which is all Sturm counting needs.
inline Coeffs normalized_remainder(const Coeffs& a, const Coeffs& b) {
  Coeffs r = a;
  const int db = degree(b);
  while (degree(r) >= db) {
    const double f = r.back() / b.back();
    const int shift = degree(r) - db;
    for (int i = 0; i <= db; ++i)
      r[static_cast<std::size_t>(i + shift)] -= f * b[static_cast<std::size_t>(i)];
    r.pop_back();
    r = trim(std::move(r), 1e-13);
    if (r.empty()) return r;
  }
  const double m = max_abs_coeff(r);
  if (m > 0.0)
    for (double& v : r) v /= m;
  return r;
}

inline int sign_variations_at(const std::vector<Coeffs>& chain, double t) {
  int changes = 0;
  int prev = 0;
  for (const Coeffs& p : chain) {
    const double v = eval(p, t);
    if (v == 0.0) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

}  // namespace detail

inline std::vector<Coeffs> sturm_chain(const Coeffs& p_in) {
  Coeffs p = trim(p_in, 1e-14);
  if (p.empty()) throw std::invalid_argument("sturm_chain: zero polynomial");
  std::vector<Coeffs> chain;
  chain.push_back(p);
  Coeffs d = trim(derivative(p), 1e-14);
  if (d.empty()) return chain;
  chain.push_back(d);
  while (chain.back().size() > 1) {
    Coeffs r = detail::normalized_remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (double& v : r) v = -v;
    chain.push_back(std::move(r));
  }
  return chain;
}

// Number of distinct real roots in (a, b]. Endpoints must not be roots of the
// leading polynomial for an exact count; callers here always use interval
// ends strictly away from roots.
inline int sturm_count(const Coeffs& p, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("sturm_count: need a < b");
  const std::vector<Coeffs> chain = sturm_chain(p);
  return detail::sign_variations_at(chain, a) - detail::sign_variations_at(chain, b);
}

inline int sturm_count_positive(const Coeffs& p) {
  const double r = cauchy_root_bound(p);
  return sturm_count(p, 1e-30, r + 1.0);
}

}  // namespace realpoly
}  // namespace fourmean
