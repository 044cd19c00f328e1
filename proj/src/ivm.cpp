#include "imo/ivm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "imo/errors.hpp"

namespace imo {

Ivm Ivm::combination(int dim, std::vector<Term> terms) {
  Ivm g;
  g.kind_ = Kind::Combination;
  g.dim_ = dim;
  g.terms_ = std::move(terms);
  return g;
}

Ivm Ivm::boundary_pair(int dim, ScalarField lower, ScalarField upper) {
  Ivm g;
  g.kind_ = Kind::BoundaryPair;
  g.dim_ = dim;
  g.lower_ = std::move(lower);
  g.upper_ = std::move(upper);
  return g;
}

void Ivm::check_dim(const Vec& x) const {
  if (x.size() != dim_)
    throw EvalError("ivm: point has dimension " + std::to_string(x.size()) +
                    ", expected " + std::to_string(dim_));
}

namespace {

double checked(double v, const char* what, int term_index) {
  if (!std::isfinite(v))
    throw EvalError(std::string("ivm: non-finite ") + what + " in term " +
                    std::to_string(term_index));
  return v;
}

}  // namespace

Interval Ivm::value(const Vec& x) const {
  check_dim(x);
  if (kind_ == Kind::BoundaryPair) {
    const double lo = lower_.eval(x), hi = upper_.eval(x);
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw EvalError("ivm: non-finite boundary value");
    if (lo > hi) throw EvalError("ivm: lower boundary exceeds upper");
    return Interval(lo, hi);
  }
  Interval acc = Interval::zero();
  for (size_t j = 0; j < terms_.size(); ++j)
    acc = acc + checked(terms_[j].field.eval(x), "value", int(j)) * terms_[j].coeff;
  return acc;
}

IntervalVector Ivm::gh_gradient(const Vec& x) const {
  check_dim(x);
  IntervalVector out(dim_, Interval::zero());
  if (kind_ == Kind::BoundaryPair) {
    const Vec glo = lower_.grad(x), ghi = upper_.grad(x);
    for (int r = 0; r < dim_; ++r)
      out[r] = Interval::from_unordered(glo[r], ghi[r]);
    return out;
  }
  for (size_t j = 0; j < terms_.size(); ++j) {
    const Vec g = terms_[j].field.grad(x);
    for (int r = 0; r < dim_; ++r)
      out[r] = out[r] + checked(g[r], "gradient", int(j)) * terms_[j].coeff;
  }
  return out;
}

IntervalMatrix Ivm::gh_hessian(const Vec& x) const {
  check_dim(x);
  IntervalMatrix out(dim_);
  if (kind_ == Kind::BoundaryPair) {
    const Mat hlo = lower_.hess(x), hhi = upper_.hess(x);
    for (int r = 0; r < dim_; ++r)
      for (int s = 0; s < dim_; ++s)
        out(r, s) = Interval::from_unordered(hlo(r, s), hhi(r, s));
    return out;
  }
  for (size_t j = 0; j < terms_.size(); ++j) {
    const Mat h = terms_[j].field.hess(x);
    for (int r = 0; r < dim_; ++r)
      for (int s = 0; s < dim_; ++s)
        out(r, s) = out(r, s) + checked(h(r, s), "hessian", int(j)) * terms_[j].coeff;
  }
  return out;
}

namespace {

// Boundary-decomposition gradient/Hessian from the term signs at x: on a
// neighborhood where no basis function changes sign, the lower boundary is
// sum_j a_j phi_j with a_j picked by sign(phi_j), so its partials are exact
// sums of term partials. Used to decide, per entry, whether the per-term
// production value coincides with the definitional one at x.
struct BoundaryDecomposition {
  Vec grad_lo, grad_hi;
  Mat hess_lo, hess_hi;
};

BoundaryDecomposition boundary_decomposition(const Ivm& g, const Vec& x) {
  const int n = g.dim();
  BoundaryDecomposition d{Vec::Zero(n), Vec::Zero(n), Mat::Zero(n, n),
                          Mat::Zero(n, n)};
  for (const Ivm::Term& t : g.terms()) {
    const double phi = t.field.eval(x);
    const double a = phi >= 0 ? t.coeff.lo() : t.coeff.hi();
    const double b = phi >= 0 ? t.coeff.hi() : t.coeff.lo();
    const Vec gr = t.field.grad(x);
    const Mat he = t.field.hess(x);
    d.grad_lo += a * gr;
    d.grad_hi += b * gr;
    d.hess_lo += a * he;
    d.hess_hi += b * he;
  }
  return d;
}

bool entry_aligned(const Interval& per_term, double def_lo, double def_hi,
                   double scale) {
  const Interval def = Interval::from_unordered(def_lo, def_hi);
  return std::abs(per_term.lo() - def.lo()) <= 1e-9 * scale &&
         std::abs(per_term.hi() - def.hi()) <= 1e-9 * scale;
}

}  // namespace

ValidationReport fd_validate(const Ivm& g, const Vec& x, double h) {
  ValidationReport rep;
  if (h <= 0) throw std::invalid_argument("fd_validate: h must be positive");
  const int n = g.dim();
  // Mixed second-order stencils lose ~eps/h^2 to roundoff; use a wider step
  // there than for the first-order quotients.
  const double hh = std::max(h, 6e-5);

  IntervalVector grad;
  IntervalMatrix hess;
  try {
    grad = g.gh_gradient(x);
    hess = g.gh_hessian(x);
  } catch (const EvalError&) {
    rep.skipped = true;
    rep.skip_reason = "point outside the domain of definition";
    return rep;
  }

  // Scales of the derivative objects; finite-difference accuracy is bounded
  // by the boundary functions' magnitude, so deviations are judged against
  // the gradient's (resp. Hessian's) own scale rather than each entry alone.
  double grad_scale = 1.0, hess_scale = 1.0;
  for (int r = 0; r < n; ++r) {
    grad_scale = std::max(grad_scale, norm(grad[r]));
    for (int s = 0; s < n; ++s) hess_scale = std::max(hess_scale, norm(hess(r, s)));
  }

  // Candidate steps for the second-order stencils: roundoff dominates small
  // steps on large-scale objectives, truncation dominates large steps on
  // sharply peaked ones; an entry passes if any candidate matches.
  const double span = 1.0 + x.cwiseAbs().maxCoeff();
  std::vector<double> hsteps{h, hh, 1e-3 * span};

  std::vector<bool> grad_ok(n, true);
  std::vector<bool> hess_ok(static_cast<size_t>(n) * n, true);

  if (g.is_combination()) {
    // Sign stability of every nondegenerate-coefficient basis function over
    // the widest stencil hull in use.
    const double hmax = *std::max_element(hsteps.begin(), hsteps.end());
    for (size_t j = 0; j < g.terms().size(); ++j) {
      const Ivm::Term& t = g.terms()[j];
      if (t.coeff.degenerate()) continue;
      bool pos = false, neg = false;
      try {
        for (int r = 0; r < n; ++r)
          for (int s = r; s < n; ++s)
            for (int dr : {-1, 0, 1})
              for (int ds : {-1, 0, 1}) {
                Vec y = x;
                y[r] += dr * hmax;
                y[s] += ds * hmax;
                const double v = t.field.eval(y);
                if (!std::isfinite(v)) throw EvalError("non-finite");
                (v > 0 ? pos : neg) = true;
                if (v == 0) pos = neg = true;
              }
      } catch (const EvalError&) {
        rep.skipped = true;
        rep.skip_reason = "stencil leaves domain of definition";
        return rep;
      }
      if (pos && neg) {
        rep.skipped = true;
        rep.skip_reason = "basis function " + std::to_string(j) +
                          " changes sign across the stencil";
        return rep;
      }
    }
    // Entry-level comparability: the per-term value must coincide with the
    // boundary-decomposition form at x.
    const BoundaryDecomposition d = boundary_decomposition(g, x);
    for (int r = 0; r < n; ++r)
      grad_ok[r] = entry_aligned(grad[r], d.grad_lo[r], d.grad_hi[r], grad_scale);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s)
        hess_ok[static_cast<size_t>(r) * n + s] =
            entry_aligned(hess(r, s), d.hess_lo(r, s), d.hess_hi(r, s), hess_scale);
  }

  rep.aligned_gradient_entries =
      static_cast<int>(std::count(grad_ok.begin(), grad_ok.end(), true));
  rep.aligned_hessian_entries =
      static_cast<int>(std::count(hess_ok.begin(), hess_ok.end(), true));
  if (rep.aligned_gradient_entries + rep.aligned_hessian_entries == 0) {
    rep.skipped = true;
    rep.skip_reason = "no entry comparable to the boundary form at this point";
    return rep;
  }

  auto lower = [&](const Vec& y) { return g.value(y).lo(); };
  auto upper = [&](const Vec& y) { return g.value(y).hi(); };

  try {
    for (int r = 0; r < n; ++r) {
      if (!grad_ok[r]) continue;
      Vec yp = x, ym = x;
      yp[r] += h;
      ym[r] -= h;
      const Interval fd = Interval::from_unordered(
          (lower(yp) - lower(ym)) / (2 * h), (upper(yp) - upper(ym)) / (2 * h));
      const double dev = std::max(std::abs(fd.lo() - grad[r].lo()),
                                  std::abs(fd.hi() - grad[r].hi())) /
                         grad_scale;
      rep.max_grad_deviation = std::max(rep.max_grad_deviation, dev);
    }
    const double f0lo = lower(x), f0hi = upper(x);
    for (int r = 0; r < n; ++r)
      for (int s = r; s < n; ++s) {
        if (!hess_ok[static_cast<size_t>(r) * n + s]) continue;
        double best = std::numeric_limits<double>::infinity();
        for (double step : hsteps) {
          double qlo, qhi;
          if (r == s) {
            Vec yp = x, ym = x;
            yp[r] += step;
            ym[r] -= step;
            qlo = (lower(yp) - 2 * f0lo + lower(ym)) / (step * step);
            qhi = (upper(yp) - 2 * f0hi + upper(ym)) / (step * step);
          } else {
            Vec ypp = x, ypm = x, ymp = x, ymm = x;
            ypp[r] += step; ypp[s] += step;
            ypm[r] += step; ypm[s] -= step;
            ymp[r] -= step; ymp[s] += step;
            ymm[r] -= step; ymm[s] -= step;
            qlo = (lower(ypp) - lower(ypm) - lower(ymp) + lower(ymm)) /
                  (4 * step * step);
            qhi = (upper(ypp) - upper(ypm) - upper(ymp) + upper(ymm)) /
                  (4 * step * step);
          }
          const Interval fd = Interval::from_unordered(qlo, qhi);
          best = std::min(best, std::max(std::abs(fd.lo() - hess(r, s).lo()),
                                         std::abs(fd.hi() - hess(r, s).hi())) /
                                    hess_scale);
        }
        rep.max_hess_deviation = std::max(rep.max_hess_deviation, best);
      }
  } catch (const EvalError&) {
    rep.skipped = true;
    rep.skip_reason = "stencil leaves domain of definition";
    return rep;
  }
  return rep;
}

}  // namespace imo
