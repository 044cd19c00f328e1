#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>

namespace imo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Smooth real-valued basis function with analytic gradient and Hessian.
/// Callbacks must be pure; fields are shared freely across threads.
struct ScalarField {
  std::function<double(const Vec&)> eval;
  std::function<Vec(const Vec&)> grad;
  std::function<Mat(const Vec&)> hess;
};

// Building blocks. Problems are assembled from these instead of hand-expanded
// Hessians; the closed-form sum/product/chain rules live in one tested place.
ScalarField sf_constant(int n, double c = 1.0);
ScalarField sf_coordinate(int n, int r);
ScalarField sf_affine(int n, Vec w, double c);          // w'x + c
ScalarField sf_shifted_square(int n, int r, double c);  // (x_r - c)^2
ScalarField sf_reciprocal_coord(int n, int r);          // 1/x_r, guarded near 0

ScalarField sf_sum(ScalarField a, ScalarField b);
ScalarField sf_scale(double k, ScalarField a);
ScalarField sf_product(ScalarField a, ScalarField b);
ScalarField sf_pow(ScalarField a, int p);  // p >= 1
ScalarField sf_exp(ScalarField a);
ScalarField sf_sin(ScalarField a);
ScalarField sf_cos(ScalarField a);
ScalarField sf_reciprocal(ScalarField a);  // 1/a, guarded near 0

inline ScalarField operator+(ScalarField a, ScalarField b) {
  return sf_sum(std::move(a), std::move(b));
}
inline ScalarField operator*(ScalarField a, ScalarField b) {
  return sf_product(std::move(a), std::move(b));
}
inline ScalarField operator*(double k, ScalarField a) {
  return sf_scale(k, std::move(a));
}

}  // namespace imo
