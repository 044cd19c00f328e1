#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace imo {

/// Closed bounded real interval [lo, hi]. Immutable value type; endpoints
/// are always finite and ordered. Degenerate intervals [c, c] embed reals.
class Interval {
 public:
  Interval() : lo_(0.0), hi_(0.0) {}

  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw std::invalid_argument("Interval: non-finite endpoint");
    if (lo > hi)
      throw std::invalid_argument("Interval: lo > hi (" + std::to_string(lo) +
                                  " > " + std::to_string(hi) + ")");
  }

  /// Builds [min(a,b), max(a,b)]; for the min/max formulas of the
  /// gH-difference and gH-derivative definitions.
  static Interval from_unordered(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b))
      throw std::invalid_argument("Interval: non-finite endpoint");
    return a <= b ? Interval(a, b) : Interval(b, a);
  }

  static Interval point(double c) { return Interval(c, c); }
  static Interval zero() { return Interval(); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const { return 0.5 * (lo_ + hi_); }
  double width() const { return hi_ - lo_; }
  bool degenerate() const { return lo_ == hi_; }

  bool operator==(const Interval& o) const { return lo_ == o.lo_ && hi_ == o.hi_; }
  bool operator!=(const Interval& o) const { return !(*this == o); }

 private:
  double lo_;
  double hi_;
};

/// Moore addition.
inline Interval operator+(const Interval& s, const Interval& t) {
  return Interval(s.lo() + t.lo(), s.hi() + t.hi());
}

/// Moore subtraction [s.lo - t.hi, s.hi - t.lo] (not the gH-difference).
inline Interval moore_sub(const Interval& s, const Interval& t) {
  return Interval(s.lo() - t.hi(), s.hi() - t.lo());
}

/// Moore multiplication: min/max over the four endpoint products.
inline Interval operator*(const Interval& s, const Interval& t) {
  const double p1 = s.lo() * t.lo();
  const double p2 = s.lo() * t.hi();
  const double p3 = s.hi() * t.lo();
  const double p4 = s.hi() * t.hi();
  return Interval(std::min(std::min(p1, p2), std::min(p3, p4)),
                  std::max(std::max(p1, p2), std::max(p3, p4)));
}

/// Scalar multiplication; endpoints flip when the scalar is negative.
inline Interval operator*(double lambda, const Interval& s) {
  if (!std::isfinite(lambda))
    throw std::invalid_argument("Interval: non-finite scalar");
  return lambda >= 0 ? Interval(lambda * s.lo(), lambda * s.hi())
                     : Interval(lambda * s.hi(), lambda * s.lo());
}

inline Interval operator*(const Interval& s, double lambda) { return lambda * s; }

/// Generalized Hukuhara difference: [min(dlo, dhi), max(dlo, dhi)] of the
/// endpoint differences. Satisfies gh_difference(S, S) == [0, 0].
inline Interval gh_difference(const Interval& s, const Interval& t) {
  return Interval::from_unordered(s.lo() - t.lo(), s.hi() - t.hi());
}

/// Relation of S to T under the endpointwise interval order
/// (minimization sense: smaller endpoints dominate).
enum class DominanceRelation {
  StrictlyDominates,     // S beats T, strictly somewhere
  Dominates,             // S beats T (reachable only for objective vectors)
  DominatedBy,
  StrictlyDominatedBy,
  Equal,
  Incomparable,
};

const char* to_string(DominanceRelation r);

/// Classifies the ordered pair (S, T). At interval level the non-strict
/// Dominates/DominatedBy variants cannot occur: componentwise <= with some
/// difference is automatically strict, and full equality is Equal.
inline DominanceRelation compare(const Interval& s, const Interval& t) {
  if (s == t) return DominanceRelation::Equal;
  const bool s_below = s.lo() <= t.lo() && s.hi() <= t.hi();
  const bool t_below = t.lo() <= s.lo() && t.hi() <= s.hi();
  if (s_below) return DominanceRelation::StrictlyDominates;
  if (t_below) return DominanceRelation::StrictlyDominatedBy;
  return DominanceRelation::Incomparable;
}

/// max(|lo|, |hi|).
inline double norm(const Interval& s) {
  return std::max(std::abs(s.lo()), std::abs(s.hi()));
}

using IntervalVector = std::vector<Interval>;

/// Sum of componentwise interval norms.
inline double norm(const IntervalVector& v) {
  double acc = 0.0;
  for (const Interval& s : v) acc += norm(s);
  return acc;
}

/// Row-major n x n grid of intervals; symmetric when housing a gH-Hessian.
class IntervalMatrix {
 public:
  IntervalMatrix() : n_(0) {}
  explicit IntervalMatrix(int n) : n_(n), data_(static_cast<size_t>(n) * n) {}

  int size() const { return n_; }
  Interval& operator()(int r, int c) { return data_[static_cast<size_t>(r) * n_ + c]; }
  const Interval& operator()(int r, int c) const {
    return data_[static_cast<size_t>(r) * n_ + c];
  }

  bool symmetric() const {
    for (int r = 0; r < n_; ++r)
      for (int c = r + 1; c < n_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

 private:
  int n_;
  std::vector<Interval> data_;
};

}  // namespace imo
