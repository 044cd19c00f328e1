#include "imo/scalar_field.hpp"

#include <cmath>

#include "imo/errors.hpp"

namespace imo {

ScalarField sf_constant(int n, double c) {
  return {[c](const Vec&) { return c; },
          [n](const Vec&) { return Vec(Vec::Zero(n)); },
          [n](const Vec&) { return Mat(Mat::Zero(n, n)); }};
}

ScalarField sf_coordinate(int n, int r) {
  return {[r](const Vec& x) { return x[r]; },
          [n, r](const Vec&) {
            Vec g = Vec::Zero(n);
            g[r] = 1.0;
            return g;
          },
          [n](const Vec&) { return Mat(Mat::Zero(n, n)); }};
}

ScalarField sf_affine(int n, Vec w, double c) {
  return {[w, c](const Vec& x) { return w.dot(x) + c; },
          [w](const Vec&) { return w; },
          [n](const Vec&) { return Mat(Mat::Zero(n, n)); }};
}

ScalarField sf_shifted_square(int n, int r, double c) {
  return {[r, c](const Vec& x) { return (x[r] - c) * (x[r] - c); },
          [n, r, c](const Vec& x) {
            Vec g = Vec::Zero(n);
            g[r] = 2.0 * (x[r] - c);
            return g;
          },
          [n, r](const Vec&) {
            Mat h = Mat::Zero(n, n);
            h(r, r) = 2.0;
            return h;
          }};
}

ScalarField sf_reciprocal_coord(int n, int r) {
  return sf_reciprocal(sf_coordinate(n, r));
}

ScalarField sf_sum(ScalarField a, ScalarField b) {
  return {[a, b](const Vec& x) { return a.eval(x) + b.eval(x); },
          [a, b](const Vec& x) { return Vec(a.grad(x) + b.grad(x)); },
          [a, b](const Vec& x) { return Mat(a.hess(x) + b.hess(x)); }};
}

ScalarField sf_scale(double k, ScalarField a) {
  return {[k, a](const Vec& x) { return k * a.eval(x); },
          [k, a](const Vec& x) { return Vec(k * a.grad(x)); },
          [k, a](const Vec& x) { return Mat(k * a.hess(x)); }};
}

namespace {

// Rank-one and rank-two updates written so that entries (r,s) and (s,r) are
// computed by the identical float expression; Eigen's product kernels do not
// guarantee bitwise symmetry and the gH-Hessian must be exactly symmetric.
void add_sym_outer(Mat& h, double c, const Vec& a) {
  const int n = static_cast<int>(a.size());
  for (int r = 0; r < n; ++r) {
    h(r, r) += c * (a[r] * a[r]);
    for (int s = r + 1; s < n; ++s) {
      const double v = c * (a[r] * a[s]);
      h(r, s) += v;
      h(s, r) += v;
    }
  }
}

void add_sym_cross(Mat& h, const Vec& a, const Vec& b) {
  const int n = static_cast<int>(a.size());
  for (int r = 0; r < n; ++r) {
    h(r, r) += 2.0 * (a[r] * b[r]);
    for (int s = r + 1; s < n; ++s) {
      const double v = a[r] * b[s] + b[r] * a[s];
      h(r, s) += v;
      h(s, r) += v;
    }
  }
}

}  // namespace

ScalarField sf_product(ScalarField a, ScalarField b) {
  return {[a, b](const Vec& x) { return a.eval(x) * b.eval(x); },
          [a, b](const Vec& x) {
            return Vec(a.eval(x) * b.grad(x) + b.eval(x) * a.grad(x));
          },
          [a, b](const Vec& x) {
            Mat h = a.eval(x) * b.hess(x) + b.eval(x) * a.hess(x);
            add_sym_cross(h, a.grad(x), b.grad(x));
            return h;
          }};
}

namespace {

// f(g(x)) for scalar f with f' and f''.
ScalarField chain(ScalarField g, std::function<double(double)> f,
                  std::function<double(double)> df,
                  std::function<double(double)> ddf) {
  return {[g, f](const Vec& x) { return f(g.eval(x)); },
          [g, df](const Vec& x) { return Vec(df(g.eval(x)) * g.grad(x)); },
          [g, df, ddf](const Vec& x) {
            const double u = g.eval(x);
            Mat h = df(u) * g.hess(x);
            add_sym_outer(h, ddf(u), g.grad(x));
            return h;
          }};
}

}  // namespace

ScalarField sf_pow(ScalarField a, int p) {
  if (p < 1) throw std::invalid_argument("sf_pow: exponent must be >= 1");
  return chain(
      std::move(a), [p](double u) { return std::pow(u, p); },
      [p](double u) { return p * std::pow(u, p - 1); },
      [p](double u) { return p <= 1 ? 0.0 : p * (p - 1) * std::pow(u, p - 2); });
}

ScalarField sf_exp(ScalarField a) {
  auto e = [](double u) { return std::exp(u); };
  return chain(std::move(a), e, e, e);
}

ScalarField sf_sin(ScalarField a) {
  return chain(
      std::move(a), [](double u) { return std::sin(u); },
      [](double u) { return std::cos(u); },
      [](double u) { return -std::sin(u); });
}

ScalarField sf_cos(ScalarField a) {
  return chain(
      std::move(a), [](double u) { return std::cos(u); },
      [](double u) { return -std::sin(u); },
      [](double u) { return -std::cos(u); });
}

ScalarField sf_reciprocal(ScalarField a) {
  auto guard = [](double u) {
    if (std::abs(u) < 1e-6)
      throw EvalError("reciprocal of value within 1e-6 of zero");
    return u;
  };
  return chain(
      std::move(a), [guard](double u) { return 1.0 / guard(u); },
      [guard](double u) { return -1.0 / (guard(u) * u); },
      [guard](double u) { return 2.0 / (guard(u) * u * u); });
}

}  // namespace imo
