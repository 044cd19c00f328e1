#pragma once

#include <optional>
#include <string>
#include <vector>

#include "imo/interval.hpp"
#include "imo/scalar_field.hpp"

namespace imo {

/// Interval-valued map G = [G_lower, G_upper] with exact gH-gradient and
/// gH-Hessian oracles.
///
/// Two representations:
///  - CoefficientCombination (primary): G(x) = (+)_j C_j (.) phi_j(x), a
///    Moore sum of interval coefficients times smooth basis functions.
///    Derivatives are computed per term, (+)_j C_j (.) d phi_j, which matches
///    the worked calculus the corpus problems were built for.
///  - BoundaryPair (fallback): explicit lower/upper boundary functions;
///    derivatives use the min/max rule of the gH-derivative definition.
class Ivm {
 public:
  struct Term {
    Interval coeff;
    ScalarField field;
  };

  static Ivm combination(int dim, std::vector<Term> terms);
  static Ivm boundary_pair(int dim, ScalarField lower, ScalarField upper);

  int dim() const { return dim_; }
  bool is_combination() const { return kind_ == Kind::Combination; }
  const std::vector<Term>& terms() const { return terms_; }

  Interval value(const Vec& x) const;
  IntervalVector gh_gradient(const Vec& x) const;
  IntervalMatrix gh_hessian(const Vec& x) const;

 private:
  enum class Kind { Combination, BoundaryPair };

  Ivm() = default;
  void check_dim(const Vec& x) const;

  Kind kind_ = Kind::Combination;
  int dim_ = 0;
  std::vector<Term> terms_;
  ScalarField lower_, upper_;  // BoundaryPair only
};

/// Outcome of cross-checking the analytic gH-derivatives against central
/// finite differences of the boundary functions.
struct ValidationReport {
  bool skipped = false;     // stencil left the domain, a basis function is
  std::string skip_reason;  // sign-unstable, or no entry is comparable
  // Entries where the per-term production value provably coincides with the
  // boundary-function form at x; only those are compared against the
  // difference quotients.
  int aligned_gradient_entries = 0;
  int aligned_hessian_entries = 0;
  double max_grad_deviation = 0.0;  // relative to the gradient's own scale
  double max_hess_deviation = 0.0;
};

/// Finite-difference validation of gh_gradient/gh_hessian at x with step h.
/// Evaluates the boundary functions on central-difference stencils, forms
/// [min,max] of the difference quotients per the gH-partial definition, and
/// reports the worst scale-adjusted deviation from the analytic values over
/// the comparable entries. Skips entirely when the stencil leaves the domain
/// of definition, when a nondegenerate-coefficient basis function changes
/// sign across the stencil, or when no entry's per-term value coincides with
/// the boundary-decomposition form at x (components where two terms' partial
/// derivatives pull in opposite directions are incomparable by design).
ValidationReport fd_validate(const Ivm& g, const Vec& x, double h);

}  // namespace imo
