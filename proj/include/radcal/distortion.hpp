#pragma once

#include <vector>

namespace radcal {

/// Even-order model: r_d = r (1 + k1 r^2 + k2 r^4).
struct PolyEven2 {
  double k1 = 0.0;
  double k2 = 0.0;

  [[nodiscard]] double factor(double r) const noexcept {
    const double r2 = r * r;
    return 1.0 + k1 * r2 + k2 * r2 * r2;
  }
  /// d/dr of r f(r).
  [[nodiscard]] double forward_slope(double r) const noexcept {
    const double r2 = r * r;
    return 1.0 + 3.0 * k1 * r2 + 5.0 * k2 * r2 * r2;
  }
  friend bool operator==(const PolyEven2&, const PolyEven2&) = default;
};

/// Quadratic-term model: r_d = r (1 + k1 r + k2 r^2). Its inverse is a cubic
/// and therefore has a closed form.
struct PolyQuad {
  double k1 = 0.0;
  double k2 = 0.0;

  [[nodiscard]] double factor(double r) const noexcept { return 1.0 + k1 * r + k2 * r * r; }
  [[nodiscard]] double forward_slope(double r) const noexcept {
    return 1.0 + 2.0 * k1 * r + 3.0 * k2 * r * r;
  }
  friend bool operator==(const PolyQuad&, const PolyQuad&) = default;
};

/// U-D maps undistorted radius to distorted (r_d = r f(r)); D-U uses the
/// same function the other way round (r = r_d f(r_d)).
enum class Direction { UndistortedToDistorted, DistortedToUndistorted };

/// Result of inverting r_d = r (1 + k1 r + k2 r^2) through the monic cubic
/// r^3 + a r^2 + b r + c = 0 and its shifted form t^3 + p t + q = 0 with
/// t = r + a/3.
struct CubicSolution {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double p = 0.0;
  double q = 0.0;
  double discriminant = 0.0;   // (q/2)^2 + (p/3)^3
  std::vector<double> roots;   // real roots, ascending; a repeated root appears with multiplicity
  double selected = 0.0;
};

inline constexpr double kRepeatedRootThreshold = 1e-14;

[[nodiscard]] double distort_radius(const PolyEven2& m, double r);
[[nodiscard]] double distort_radius(const PolyQuad& m, double r);

/// First-order inverse r = r_d (1 - k1 r_d^2 - k2 r_d^4). Approximate only.
[[nodiscard]] double undistort_radius_approx(const PolyEven2& m, double r_d);
/// The same first-order inverse pattern for the quadratic-term model,
/// r = r_d (2 - f(r_d)). Used only as a baseline against the exact inverse.
[[nodiscard]] double undistort_radius_approx(const PolyQuad& m, double r_d);

/// Solves k2 r^3 + k1 r^2 + r - r_d = 0 in closed form. Requires k2 != 0.
/// Three real roots (discriminant < 0) use the trigonometric form, one real
/// root uses Cardano radicals, |discriminant| <= kRepeatedRootThreshold
/// yields the repeated-root limit. `selected` is the root on the increasing
/// branch of r f(r) that starts at the origin, i.e. the smallest nonnegative
/// root; for k2 < 0 with three real roots this is the middle one. Every root
/// gets one Newton step; the selected one is polished until it stops moving
/// (at most three steps).
[[nodiscard]] CubicSolution solve_depressed_cubic(double k1, double k2, double r_d);

/// Exact inverse of the quadratic-term model. Falls back to the quadratic
/// k1 r^2 + r - r_d = 0 when k2 == 0 and to the identity when both are 0.
[[nodiscard]] double undistort_radius_exact(const PolyQuad& m, double r_d);

/// Real roots of c3 r^3 + c2 r^2 + c1 r + c0, ascending, each polished by
/// Newton steps on the original polynomial. Degrades to the quadratic
/// and linear cases when leading coefficients vanish. A vanishing polynomial
/// yields no roots.
[[nodiscard]] std::vector<double> real_polynomial_roots(double c3, double c2, double c1, double c0);

}  // namespace radcal
