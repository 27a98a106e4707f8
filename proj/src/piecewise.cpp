#include "radcal/piecewise.hpp"

#include <cmath>

#include "radcal/distortion.hpp"
#include "radcal/error.hpp"

namespace radcal {

PiecewiseCoeffs solve_coeffs(const PiecewiseParams& p) {
  const double r1 = p.r1();
  const double r2 = p.r2;
  if (!(r1 >= kMinKnot) || !std::isfinite(r2)) {
    throw Error(ErrorCode::DegenerateKnot, "knot radius r2/2 is below 1e-12");
  }
  const double f1 = p.f1;
  const double d1 = p.d1;
  const double f2 = p.f2;

  PiecewiseCoeffs c;
  c.r1 = r1;
  c.r2 = r2;
  c.a0 = 1.0;
  c.a1 = (-2.0 - r1 * d1 + 2.0 * f1) / r1;
  c.a2 = (1.0 + r1 * d1 - f1) / (r1 * r1);
  c.b2 = (f2 - f1 + r1 * d1 - r2 * d1) / ((r1 - r2) * (r1 - r2));
  c.b1 = d1 - 2.0 * c.b2 * r1;
  c.b0 = f1 - d1 * r1 + c.b2 * r1 * r1;
  return c;
}

std::array<double, 6> constraint_residuals(const PiecewiseCoeffs& c, const PiecewiseParams& p) {
  const double r1 = c.r1;
  return {
      c.inner(0.0) - 1.0,
      c.inner(r1) - p.f1,
      c.inner_slope(r1) - p.d1,
      c.outer(r1) - p.f1,
      c.outer_slope(r1) - p.d1,
      c.outer(c.r2) - p.f2,
  };
}

double eval(const PiecewiseCoeffs& c, double r) {
  if (!(r >= 0.0)) {
    throw Error(ErrorCode::NegativeRadius, "radius must be nonnegative");
  }
  return c.factor(r);
}

double distort_radius_pw(const PiecewiseCoeffs& c, double r) {
  return r * eval(c, r);
}

double undistort_radius_pw(const PiecewiseCoeffs& c, double r_d) {
  if (!(r_d >= 0.0)) {
    throw Error(ErrorCode::NegativeRadius, "radius must be nonnegative");
  }
  const double window = 1e-6 * c.r2;
  const double knot_distorted = c.r1 * c.inner(c.r1);

  if (r_d <= knot_distorted) {
    // a0 == 1, so the inner segment is exactly the quadratic-term model.
    const double r = undistort_radius_exact(PolyQuad{c.a1, c.a2}, r_d);
    if (r > c.r1 + window) {
      throw Error(ErrorCode::NoValidRoot, "inner segment root lies beyond the knot");
    }
    return r;
  }

  for (double root : real_polynomial_roots(c.b2, c.b1, c.b0, -r_d)) {
    if (root >= c.r1 - window && root <= c.r2 + window) {
      return root;
    }
  }
  throw Error(ErrorCode::NoValidRoot, "no outer segment root inside (r1, r2]");
}

}  // namespace radcal
