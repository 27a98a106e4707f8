#pragma once

#include <array>

namespace radcal {

/// Free parameters of the two-segment model: value f1 and slope d1 at the
/// knot r1 = r2 / 2, and value f2 at the end of the working range r2.
struct PiecewiseParams {
  double f1 = 1.0;
  double d1 = 0.0;
  double f2 = 1.0;
  double r2 = 1.0;

  [[nodiscard]] double r1() const noexcept { return r2 / 2.0; }
  friend bool operator==(const PiecewiseParams&, const PiecewiseParams&) = default;
};

/// f(r) = a0 + a1 r + a2 r^2 on [0, r1], b0 + b1 r + b2 r^2 beyond r1.
struct PiecewiseCoeffs {
  double a0 = 1.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double b0 = 1.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double r1 = 0.5;
  double r2 = 1.0;

  [[nodiscard]] double inner(double r) const noexcept { return a0 + (a1 + a2 * r) * r; }
  [[nodiscard]] double outer(double r) const noexcept { return b0 + (b1 + b2 * r) * r; }
  [[nodiscard]] double inner_slope(double r) const noexcept { return a1 + 2.0 * a2 * r; }
  [[nodiscard]] double outer_slope(double r) const noexcept { return b1 + 2.0 * b2 * r; }

  /// f(r) without argument checks; r > r2 extrapolates the outer segment.
  [[nodiscard]] double factor(double r) const noexcept { return r <= r1 ? inner(r) : outer(r); }
  /// d/dr of r f(r).
  [[nodiscard]] double forward_slope(double r) const noexcept {
    return r <= r1 ? a0 + (2.0 * a1 + 3.0 * a2 * r) * r : b0 + (2.0 * b1 + 3.0 * b2 * r) * r;
  }
  friend bool operator==(const PiecewiseCoeffs&, const PiecewiseCoeffs&) = default;
};

inline constexpr double kMinKnot = 1e-12;

/// Segment coefficients matching value 1 at the origin, (f1, d1) at r1 from
/// both sides, and f2 at r2. Throws DegenerateKnot when r1 < kMinKnot.
[[nodiscard]] PiecewiseCoeffs solve_coeffs(const PiecewiseParams& p);

/// Residuals of the six defining constraints, in order: f(0) = 1, inner
/// value at r1, inner slope at r1, outer value at r1, outer slope at r1,
/// outer value at r2.
[[nodiscard]] std::array<double, 6> constraint_residuals(const PiecewiseCoeffs& c,
                                                         const PiecewiseParams& p);

/// f(r); throws NegativeRadius for r < 0.
[[nodiscard]] double eval(const PiecewiseCoeffs& c, double r);

/// r f(r).
[[nodiscard]] double distort_radius_pw(const PiecewiseCoeffs& c, double r);

/// Closed-form inverse of r f(r). Chooses the segment from the distorted
/// radius at the knot, then takes the smallest real root of that segment's
/// cubic inside its domain. The outer domain is (r1, r2] widened by
/// 1e-6 r2 on both ends. Throws NoValidRoot when the segment has no root
/// in its domain.
[[nodiscard]] double undistort_radius_pw(const PiecewiseCoeffs& c, double r_d);

}  // namespace radcal
