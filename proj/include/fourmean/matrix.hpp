#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fourmean {

using cdouble = std::complex<double>;

// Dense complex square matrix, row-major. Everything here is desk scale
// (n <= 12); the algorithms are chosen to be self-contained and testable
// rather than asymptotically clever.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  explicit ComplexMatrix(int n)
      : n_(n), entries_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    if (n < 1) throw std::invalid_argument("ComplexMatrix: n must be >= 1");
  }

  ComplexMatrix(int n, std::vector<cdouble> entries) : n_(n), entries_(std::move(entries)) {
    if (n < 1) throw std::invalid_argument("ComplexMatrix: n must be >= 1");
    if (entries_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
      throw std::invalid_argument("ComplexMatrix: entry count does not match n*n");
  }

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::initializer_list<cdouble> d) {
    ComplexMatrix m(static_cast<int>(d.size()));
    int i = 0;
    for (cdouble v : d) m(i, i) = v, ++i;
    return m;
  }

  int size() const { return n_; }

  cdouble& operator()(int i, int j) {
    return entries_[static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)];
  }
  cdouble operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)];
  }

  const std::vector<cdouble>& entries() const { return entries_; }

  bool finite() const {
    for (const cdouble& v : entries_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const cdouble& v : entries_) s += std::norm(v);
    return std::sqrt(s);
  }

  // this - z*I
  ComplexMatrix shifted(cdouble z) const {
    ComplexMatrix r = *this;
    for (int i = 0; i < n_; ++i) r(i, i) -= z;
    return r;
  }

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same(a, b);
    ComplexMatrix r = a;
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] += b.entries_[i];
    return r;
  }

  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same(a, b);
    ComplexMatrix r = a;
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] -= b.entries_[i];
    return r;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same(a, b);
    const int n = a.n_;
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const cdouble aik = a(i, k);
        if (aik == cdouble(0.0)) continue;
        for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend ComplexMatrix operator*(cdouble s, const ComplexMatrix& a) {
    ComplexMatrix r = a;
    for (cdouble& v : r.entries_) v *= s;
    return r;
  }

 private:
  static void check_same(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("ComplexMatrix: size mismatch");
  }

  int n_ = 0;
  std::vector<cdouble> entries_;
};

// Complex-coefficient polynomial, ascending. Canonical form: trailing zero
// coefficients trimmed, the zero polynomial is the empty sequence.
class Polynomial {
 public:
  Polynomial() = default;

  Polynomial(std::initializer_list<cdouble> coeffs) : coeffs_(coeffs) { normalize(); }

  explicit Polynomial(std::vector<cdouble> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

  static Polynomial monomial(int k, cdouble c = 1.0) {
    std::vector<cdouble> v(static_cast<std::size_t>(k) + 1);
    v.back() = c;
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  cdouble coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<std::size_t>(k)];
  }

  const std::vector<cdouble>& coeffs() const { return coeffs_; }

  cdouble eval(cdouble z) const {
    cdouble acc = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<cdouble> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return Polynomial(std::move(c));
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == cdouble(0.0)) coeffs_.pop_back();
  }

  std::vector<cdouble> coeffs_;
};

// Descending singular values.
struct SingularValues {
  std::vector<double> values;

  double operator[](int j) const { return values[static_cast<std::size_t>(j)]; }
  int n() const { return static_cast<int>(values.size()); }
};

// Horner evaluation of p at a matrix argument; exact for degrees 0 and 1.
inline ComplexMatrix poly_eval(const Polynomial& p, const ComplexMatrix& a) {
  const int n = a.size();
  if (p.degree() < 0) return ComplexMatrix(n);
  ComplexMatrix acc(n);
  for (int i = 0; i < n; ++i) acc(i, i) = p.coeff(p.degree());
  for (int k = p.degree() - 1; k >= 0; --k) {
    acc = acc * a;
    const cdouble c = p.coeff(k);
    for (int i = 0; i < n; ++i) acc(i, i) += c;
  }
  return acc;
}

namespace detail {

// Cyclic Jacobi for Hermitian matrices. Eigenvalues only; by the
// Demmel-Veselic analysis this reaches high relative accuracy on positive
// semidefinite Gram matrices, which is what the singular value path feeds it.
inline std::vector<double> hermitian_jacobi_eigenvalues(ComplexMatrix g) {
  const int n = g.size();
  const double norm = g.frobenius_norm();
  if (norm == 0.0) return std::vector<double>(static_cast<std::size_t>(n), 0.0);
  const double stop = 1e-14 * norm;
  const int max_sweeps = 100;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += 2.0 * std::norm(g(p, q));
    off = std::sqrt(off);
    if (off <= stop) {
      std::vector<double> eig(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = g(i, i).real();
      return eig;
    }
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cdouble apq = g(p, q);
        const double abs_apq = std::abs(apq);
        if (abs_apq <= 1e-300) continue;
        const double app = g(p, p).real();
        const double aqq = g(q, q).real();
        // Unitary 2x2 diagonalization: phase times a real rotation.
        const cdouble phase = apq / abs_apq;
        const double tau = (aqq - app) / (2.0 * abs_apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Column rotation: [p q] <- [p q] * [[c, s*phase], [-s*conj(phase), c]]
        for (int i = 0; i < n; ++i) {
          const cdouble gip = g(i, p);
          const cdouble giq = g(i, q);
          g(i, p) = c * gip - s * std::conj(phase) * giq;
          g(i, q) = s * phase * gip + c * giq;
        }
        // Matching row rotation (conjugate transpose).
        for (int j = 0; j < n; ++j) {
          const cdouble gpj = g(p, j);
          const cdouble gqj = g(q, j);
          g(p, j) = c * gpj - s * phase * gqj;
          g(q, j) = s * std::conj(phase) * gpj + c * gqj;
        }
        g(p, q) = 0.0;
        g(q, p) = 0.0;
        g(p, p) = cdouble(g(p, p).real(), 0.0);
        g(q, q) = cdouble(g(q, q).real(), 0.0);
      }
    }
  }
  throw std::runtime_error("hermitian_jacobi_eigenvalues: no convergence after sweep cap");
}

}  // namespace detail

// Descending singular values via the Hermitian eigenproblem of a*a.
// Squaring costs about half the digits for singular values near
// sqrt(eps)*s1, which the n <= 12 tolerance budgets account for.
inline SingularValues singular_values(const ComplexMatrix& a) {
  if (!a.finite()) throw std::invalid_argument("singular_values: non-finite entries");
  const ComplexMatrix gram = a.adjoint() * a;
  std::vector<double> eig = detail::hermitian_jacobi_eigenvalues(gram);
  for (double& v : eig) v = v > 0.0 ? std::sqrt(v) : 0.0;
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return SingularValues{std::move(eig)};
}

inline double operator_norm(const ComplexMatrix& a) { return singular_values(a)[0]; }

inline cdouble determinant(const ComplexMatrix& a) {
  const int n = a.size();
  ComplexMatrix lu = a;
  cdouble det = 1.0;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(lu(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(lu(i, k));
      if (v > best) best = v, pivot = i;
    }
    if (best == 0.0) return 0.0;
    if (pivot != k) {
      for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot, j));
      det = -det;
    }
    det *= lu(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cdouble f = lu(i, k) / lu(k, k);
      for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return det;
}

constexpr double kRankTol = 1e-8;

inline int numerical_rank(const ComplexMatrix& a, double tol = kRankTol) {
  const SingularValues s = singular_values(a);
  if (s[0] <= 0.0) return 0;
  int r = 0;
  for (double v : s.values)
    if (v > tol * s[0]) ++r;
  return r;
}

// Gauss-Jordan inverse with partial pivoting.
inline ComplexMatrix inverse(const ComplexMatrix& a) {
  const int n = a.size();
  ComplexMatrix w = a;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(w(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(w(i, k));
      if (v > best) best = v, pivot = i;
    }
    if (best < 1e-300) throw std::domain_error("inverse: singular matrix");
    if (pivot != k)
      for (int j = 0; j < n; ++j) {
        std::swap(w(k, j), w(pivot, j));
        std::swap(inv(k, j), inv(pivot, j));
      }
    const cdouble d = w(k, k);
    for (int j = 0; j < n; ++j) w(k, j) /= d, inv(k, j) /= d;
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const cdouble f = w(i, k);
      if (f == cdouble(0.0)) continue;
      for (int j = 0; j < n; ++j) {
        w(i, j) -= f * w(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

constexpr int kCharPolyMaxN = 12;

// Monic characteristic polynomial via the Faddeev-LeVerrier recurrence.
inline Polynomial char_poly(const ComplexMatrix& a) {
  const int n = a.size();
  if (n > kCharPolyMaxN) throw std::invalid_argument("char_poly: n exceeds desk-scale cap");
  std::vector<cdouble> coeffs(static_cast<std::size_t>(n) + 1, 0.0);
  coeffs[static_cast<std::size_t>(n)] = 1.0;
  ComplexMatrix m = a;
  for (int k = 1; k <= n; ++k) {
    cdouble tr = 0.0;
    for (int i = 0; i < n; ++i) tr += m(i, i);
    const cdouble c = -tr / static_cast<double>(k);
    coeffs[static_cast<std::size_t>(n - k)] = c;
    if (k == n) break;
    for (int i = 0; i < n; ++i) m(i, i) += c;
    m = a * m;
  }
  return Polynomial(std::move(coeffs));
}

// Non-leading characteristic coefficients of (a - zI)*(a - zI), as reals.
// Equality of these vectors between two matrices at a point z is equivalent
// to equality of all n singular values of the shifted matrices there.
inline std::vector<double> gram_char_coeffs(const ComplexMatrix& a, cdouble z) {
  const ComplexMatrix shifted = a.shifted(z);
  const ComplexMatrix gram = shifted.adjoint() * shifted;
  const Polynomial cp = char_poly(gram);
  const int n = a.size();
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const cdouble c = cp.coeff(k);
    const double scale = std::max(1.0, std::abs(c.real()));
    if (std::abs(c.imag()) > 1e-12 * scale)
      throw std::runtime_error("gram_char_coeffs: non-real coefficient, internal bug");
    out[static_cast<std::size_t>(k)] = c.real();
  }
  return out;
}

namespace detail {

// Eigenvalues of an upper-Hessenberg matrix by explicitly shifted QR with
// Givens rotations, Wilkinson shifts and occasional exceptional shifts.
// Companion matrices arrive here already in Hessenberg form.
inline std::vector<cdouble> hessenberg_qr_eigenvalues(ComplexMatrix h) {
  const int n = h.size();
  std::vector<cdouble> eig(static_cast<std::size_t>(n));
  int m = n;
  int iters_since_deflation = 0;
  const int iter_cap = 200 * n + 200;
  int total_iters = 0;

  auto trailing2x2 = [&](cdouble& l1, cdouble& l2) {
    const cdouble a = h(m - 2, m - 2), b = h(m - 2, m - 1);
    const cdouble c = h(m - 1, m - 2), d = h(m - 1, m - 1);
    const cdouble half = 0.5 * (a + d);
    const cdouble disc = std::sqrt(half * half - (a * d - b * c));
    l1 = half + disc;
    l2 = half - disc;
  };

  while (m > 0) {
    if (m == 1) {
      eig[0] = h(0, 0);
      m = 0;
      break;
    }
    const double sub = std::abs(h(m - 1, m - 2));
    const double scale = std::abs(h(m - 2, m - 2)) + std::abs(h(m - 1, m - 1));
    if (sub <= 1e-15 * std::max(scale, 1e-300)) {
      eig[static_cast<std::size_t>(m - 1)] = h(m - 1, m - 1);
      --m;
      iters_since_deflation = 0;
      continue;
    }
    if (m == 2) {
      cdouble l1, l2;
      trailing2x2(l1, l2);
      eig[0] = l1;
      eig[1] = l2;
      m = 0;
      break;
    }
    if (++total_iters > iter_cap)
      throw std::runtime_error("hessenberg_qr_eigenvalues: iteration cap exceeded");

    cdouble mu;
    if (++iters_since_deflation % 16 == 0) {
      mu = h(m - 1, m - 1) + cdouble(1.0, 0.5) * std::abs(h(m - 1, m - 2));
    } else {
      cdouble l1, l2;
      trailing2x2(l1, l2);
      const cdouble hmm = h(m - 1, m - 1);
      mu = std::abs(l1 - hmm) < std::abs(l2 - hmm) ? l1 : l2;
    }

    for (int i = 0; i < m; ++i) h(i, i) -= mu;
    // QR by Givens on the subdiagonal, then multiply back in reverse.
    std::vector<cdouble> cs(static_cast<std::size_t>(m - 1)), sn(static_cast<std::size_t>(m - 1));
    for (int k = 0; k < m - 1; ++k) {
      const cdouble a = h(k, k), b = h(k + 1, k);
      const double r = std::sqrt(std::norm(a) + std::norm(b));
      cdouble c = 1.0, s = 0.0;
      if (r > 0.0) c = a / r, s = b / r;
      cs[static_cast<std::size_t>(k)] = c;
      sn[static_cast<std::size_t>(k)] = s;
      for (int j = k; j < m; ++j) {
        const cdouble t1 = h(k, j), t2 = h(k + 1, j);
        h(k, j) = std::conj(c) * t1 + std::conj(s) * t2;
        h(k + 1, j) = -s * t1 + c * t2;
      }
    }
    for (int k = 0; k < m - 1; ++k) {
      const cdouble c = cs[static_cast<std::size_t>(k)], s = sn[static_cast<std::size_t>(k)];
      for (int i = 0; i <= std::min(k + 1, m - 1); ++i) {
        const cdouble t1 = h(i, k), t2 = h(i, k + 1);
        h(i, k) = t1 * c + t2 * s;
        h(i, k + 1) = -t1 * std::conj(s) + t2 * std::conj(c);
      }
    }
    for (int i = 0; i < m; ++i) h(i, i) += mu;
  }
  return eig;
}

}  // namespace detail

// Roots of a degree >= 1 polynomial via the companion-matrix eigenproblem.
inline std::vector<cdouble> poly_roots(const Polynomial& p) {
  const int deg = p.degree();
  if (deg < 1) throw std::invalid_argument("poly_roots: degree must be >= 1");
  ComplexMatrix companion(deg);
  const cdouble lead = p.coeff(deg);
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -p.coeff(i) / lead;
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  return detail::hessenberg_qr_eigenvalues(companion);
}

}  // namespace fourmean
