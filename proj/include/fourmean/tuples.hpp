#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fourmean {

// Mixed absolute/relative comparison used throughout the toolkit. Products of
// tuple entries span many orders of magnitude, so a pure relative test would
// be useless near zero and a pure absolute one useless for large values.
inline bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

constexpr double kDefaultTol = 1e-9;

// N-vector of nonnegative reals. Entries equal to zero are legal and carry
// meaning (they make up the equality cases of the bound theorems). No
// ordering is assumed anywhere; all operations are permutation-invariant.
class NonnegTuple {
 public:
  NonnegTuple() = default;

  explicit NonnegTuple(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 3)
      throw std::invalid_argument("NonnegTuple: need at least 3 entries");
    for (double v : values_) {
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument("NonnegTuple: entries must be finite and >= 0");
    }
  }

  int n() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return values_; }

  double max() const { return *std::max_element(values_.begin(), values_.end()); }
  double min() const { return *std::min_element(values_.begin(), values_.end()); }

  NonnegTuple sorted_descending() const {
    std::vector<double> v = values_;
    std::sort(v.begin(), v.end(), std::greater<double>());
    return NonnegTuple(std::move(v));
  }

  NonnegTuple scaled(double c) const {
    if (c < 0.0) throw std::invalid_argument("NonnegTuple: negative scale");
    std::vector<double> v = values_;
    for (double& x : v) x *= c;
    return NonnegTuple(std::move(v));
  }

 private:
  std::vector<double> values_;
};

// The triple (sum, product, codimension-1 elementary symmetric value) that
// encodes agreement of arithmetic, geometric and harmonic means without
// requiring strict positivity.
struct MeanSignature {
  int n = 0;
  double s = 0.0;  // sum
  double p = 0.0;  // product
  double e = 0.0;  // sum over k of the product of all entries except the k-th
};

enum class BoundStatus { strict, equality_case, violated, degenerate_zero };

inline std::string to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::strict: return "strict";
    case BoundStatus::equality_case: return "equality_case";
    case BoundStatus::violated: return "violated";
    case BoundStatus::degenerate_zero: return "degenerate_zero";
  }
  return "unknown";
}

// level counts the matched means: 1 = sum only, 2 = sum+product,
// 3 = sum+product+codim-1 value. The max-ratio bound is n - level + 1.
struct BoundVerdict {
  int level = 0;
  double bound = 0.0;
  double ratio = 0.0;
  BoundStatus status = BoundStatus::strict;
};

// Codimension-1 elementary symmetric value via prefix/suffix products.
// Division-free, so tuples containing zeros are handled exactly: with one
// zero entry it returns exactly the product of the remaining entries.
inline double codim1_elementary(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> suffix(n + 1, 1.0);
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] * x[i];
  double e = 0.0;
  double prefix = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    e += prefix * suffix[k + 1];
    prefix *= x[k];
  }
  return e;
}

inline MeanSignature signature(const NonnegTuple& t) {
  MeanSignature sig;
  sig.n = t.n();
  for (double v : t.values()) sig.s += v;
  sig.p = 1.0;
  for (double v : t.values()) sig.p *= v;
  sig.e = codim1_elementary(t.values());
  return sig;
}

inline bool signatures_match(const MeanSignature& a, const MeanSignature& b,
                             double tol = kDefaultTol, int level = 3) {
  if (a.n != b.n)
    throw std::invalid_argument("signatures_match: dimension mismatch");
  if (level < 1 || level > 3)
    throw std::invalid_argument("signatures_match: level must be 1, 2 or 3");
  if (!close(a.s, b.s, tol)) return false;
  if (level >= 2 && !close(a.p, b.p, tol)) return false;
  if (level >= 3 && !close(a.e, b.e, tol)) return false;
  return true;
}

struct ClassicalMeans {
  double am = 0.0;
  double gm = 0.0;
  double hm = 0.0;
};

// Harmonic mean requires strictly positive entries; am/gm are defined for all
// nonnegative tuples. For strictly positive tuples, equality of (am, gm, hm)
// between two tuples is equivalent to their MeanSignatures matching.
inline ClassicalMeans classical_means(const NonnegTuple& t) {
  ClassicalMeans m;
  const MeanSignature sig = signature(t);
  m.am = sig.s / sig.n;
  m.gm = std::pow(sig.p, 1.0 / sig.n);
  double recip = 0.0;
  for (double v : t.values()) {
    if (v == 0.0) throw std::domain_error("classical_means: zero entry, harmonic mean undefined");
    recip += 1.0 / v;
  }
  m.hm = sig.n / recip;
  return m;
}

// am and gm alone, defined for every nonnegative tuple.
inline std::pair<double, double> am_gm(const NonnegTuple& t) {
  const MeanSignature sig = signature(t);
  return {sig.s / sig.n, std::pow(sig.p, 1.0 / sig.n)};
}

namespace detail {

// Equality witness of the level-L theorem, scaled by c: x = c*(bound, 0...),
// y = c*(1 repeated n-level+1 times, then level-1 zeros).
inline bool matches_equality_pattern(const NonnegTuple& x, const NonnegTuple& y,
                                     int level, double tol) {
  const int n = x.n();
  const NonnegTuple xs = x.sorted_descending();
  const NonnegTuple ys = y.sorted_descending();
  const double c = ys[0];
  const double bound = static_cast<double>(n - level + 1);
  if (!close(xs[0], c * bound, tol)) return false;
  for (int j = 1; j < n; ++j)
    if (!close(xs[j], 0.0, tol)) return false;
  for (int j = 0; j < n; ++j) {
    const double want = (j < n - level + 1) ? c : 0.0;
    if (!close(ys[j], want, tol)) return false;
  }
  return true;
}

}  // namespace detail

// Checks the level-1/2/3 max-ratio bound for a pair of tuples whose first
// `level` signature components match. Classification:
//   ratio > bound (beyond tol)           -> violated
//   ratio == bound and witness structure -> equality_case
//   otherwise                            -> strict
// max y ~ 0 is reported as degenerate_zero (then both tuples are ~ zero).
inline BoundVerdict bound_check(const NonnegTuple& x, const NonnegTuple& y,
                                int level, double tol = kDefaultTol) {
  if (x.n() != y.n()) throw std::invalid_argument("bound_check: dimension mismatch");
  if (level < 1 || level > 3) throw std::invalid_argument("bound_check: level must be 1, 2 or 3");
  const int n = x.n();
  if (level == 3 && n < 4) throw std::invalid_argument("bound_check: level 3 needs n >= 4");
  if (level == 2 && n < 3) throw std::invalid_argument("bound_check: level 2 needs n >= 3");
  if (!signatures_match(signature(x), signature(y), tol, level))
    throw std::invalid_argument("bound_check: signature mismatch at level " + std::to_string(level));

  BoundVerdict v;
  v.level = level;
  v.bound = static_cast<double>(n - level + 1);
  const double my = y.max();
  if (my <= tol) {
    v.ratio = 0.0;
    v.status = BoundStatus::degenerate_zero;
    return v;
  }
  v.ratio = x.max() / my;
  if (v.ratio > v.bound && !close(v.ratio, v.bound, tol)) {
    v.status = BoundStatus::violated;
  } else if (close(v.ratio, v.bound, tol) &&
             detail::matches_equality_pattern(x, y, level, tol)) {
    v.status = BoundStatus::equality_case;
  } else {
    v.status = BoundStatus::strict;
  }
  return v;
}

// The extremal pair of the level-3 theorem: x = c*(n-2, 0, ..., 0),
// y = c*(1, ..., 1, 0, 0). Signatures match exactly (all components are
// products and sums of identical values) and the max ratio is n-2 for c > 0.
inline std::pair<NonnegTuple, NonnegTuple> equality_witness(int n, double c) {
  if (n < 4) throw std::invalid_argument("equality_witness: n must be >= 4");
  if (c < 0.0) throw std::invalid_argument("equality_witness: c must be >= 0");
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  x[0] = c * static_cast<double>(n - 2);
  std::vector<double> y(static_cast<std::size_t>(n), c);
  y[static_cast<std::size_t>(n) - 1] = 0.0;
  y[static_cast<std::size_t>(n) - 2] = 0.0;
  return {NonnegTuple(std::move(x)), NonnegTuple(std::move(y))};
}

}  // namespace fourmean
