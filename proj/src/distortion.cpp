#include "radcal/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "radcal/error.hpp"

namespace radcal {
namespace {

// A leading coefficient below this fraction of the others is treated as zero.
// Radii live in normalized coordinates, so they are O(1).
constexpr double kNegligibleLeading = 1e-13;
constexpr int kMaxPolishSteps = 3;

void require_nonnegative(double r) {
  if (!(r >= 0.0)) {
    throw Error(ErrorCode::NegativeRadius, "radius must be nonnegative");
  }
}

double eval_cubic(double c3, double c2, double c1, double c0, double r) {
  return ((c3 * r + c2) * r + c1) * r + c0;
}

// One Newton step, kept only if it does not increase the residual.
double newton_polish(double c3, double c2, double c1, double c0, double r) {
  const double f = eval_cubic(c3, c2, c1, c0, r);
  const double df = (3.0 * c3 * r + 2.0 * c2) * r + c1;
  if (f == 0.0 || df == 0.0 || !std::isfinite(df)) {
    return r;
  }
  const double next = r - f / df;
  if (!std::isfinite(next)) {
    return r;
  }
  return std::abs(eval_cubic(c3, c2, c1, c0, next)) <= std::abs(f) ? next : r;
}

double polish_until_stable(double c3, double c2, double c1, double c0, double r) {
  for (int i = 0; i < kMaxPolishSteps; ++i) {
    const double next = newton_polish(c3, c2, c1, c0, r);
    if (next == r) {
      break;
    }
    r = next;
  }
  return r;
}

struct ShiftedCubic {
  double p = 0.0;
  double q = 0.0;
  double discriminant = 0.0;
  std::vector<double> roots;
};

// Unpolished real roots of r^3 + a r^2 + b r + c.
ShiftedCubic monic_roots(double a, double b, double c) {
  ShiftedCubic out;
  const double shift = a / 3.0;
  out.p = b - a * a / 3.0;
  out.q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double half_q = out.q / 2.0;
  const double third_p = out.p / 3.0;
  out.discriminant = half_q * half_q + third_p * third_p * third_p;

  std::vector<double> t;
  if (std::abs(out.discriminant) <= kRepeatedRootThreshold) {
    if (std::abs(out.p) <= 1e-10) {
      const double triple = std::cbrt(-out.q);
      t = {triple, triple, triple};
    } else {
      const double simple = 3.0 * out.q / out.p;
      const double twice = -1.5 * out.q / out.p;
      t = {simple, twice, twice};
    }
  } else if (out.discriminant > 0.0) {
    // Pick the radical sign that avoids cancellation; the partner follows
    // from u v = -p/3.
    const double s = std::sqrt(out.discriminant);
    const double u = std::cbrt(-half_q - std::copysign(s, half_q));
    const double v = u != 0.0 ? -third_p / u : 0.0;
    t = {u + v};
  } else {
    const double m = 2.0 * std::sqrt(-third_p);
    const double cos3 = std::clamp(3.0 * out.q / (out.p * m), -1.0, 1.0);
    const double theta = std::acos(cos3) / 3.0;
    for (int k = 0; k < 3; ++k) {
      t.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0));
    }
  }
  for (double ti : t) {
    out.roots.push_back(ti - shift);
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

std::vector<double> quadratic_roots(double c2, double c1, double c0) {
  if (c2 == 0.0 || std::abs(c2) <= kNegligibleLeading * std::max(std::abs(c1), std::abs(c0))) {
    if (c1 == 0.0) {
      return {};
    }
    return {-c0 / c1};
  }
  const double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc < 0.0) {
    return {};
  }
  const double h = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
  std::vector<double> roots{h / c2};
  roots.push_back(h != 0.0 ? c0 / h : roots.front());
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

double distort_radius(const PolyEven2& m, double r) {
  require_nonnegative(r);
  return r * m.factor(r);
}

double distort_radius(const PolyQuad& m, double r) {
  require_nonnegative(r);
  return r * m.factor(r);
}

double undistort_radius_approx(const PolyEven2& m, double r_d) {
  require_nonnegative(r_d);
  const double r2 = r_d * r_d;
  return r_d * (1.0 - m.k1 * r2 - m.k2 * r2 * r2);
}

double undistort_radius_approx(const PolyQuad& m, double r_d) {
  require_nonnegative(r_d);
  return r_d * (1.0 - m.k1 * r_d - m.k2 * r_d * r_d);
}

CubicSolution solve_depressed_cubic(double k1, double k2, double r_d) {
  require_nonnegative(r_d);
  if (k2 == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "cubic solve requires k2 != 0");
  }
  CubicSolution sol;
  sol.a = k1 / k2;
  sol.b = 1.0 / k2;
  sol.c = -r_d / k2;
  if (!std::isfinite(sol.a) || !std::isfinite(sol.b) || !std::isfinite(sol.c)) {
    throw Error(ErrorCode::NumericalBreakdown, "cubic coefficients overflow");
  }

  ShiftedCubic shifted = monic_roots(sol.a, sol.b, sol.c);
  sol.p = shifted.p;
  sol.q = shifted.q;
  sol.discriminant = shifted.discriminant;
  sol.roots = std::move(shifted.roots);
  for (double& root : sol.roots) {
    root = newton_polish(k2, k1, 1.0, -r_d, root);
  }
  if (r_d == 0.0) {
    // r = 0 solves the cubic exactly; snap the nearest computed root onto it.
    auto nearest = std::min_element(sol.roots.begin(), sol.roots.end(),
                                    [](double x, double y) { return std::abs(x) < std::abs(y); });
    *nearest = 0.0;
  }
  std::sort(sol.roots.begin(), sol.roots.end());

  const double tol = 1e-12 * std::max(1.0, r_d);
  auto it = std::find_if(sol.roots.begin(), sol.roots.end(), [tol](double r) { return r >= -tol; });
  if (it == sol.roots.end()) {
    throw Error(ErrorCode::NoValidRoot, "no nonnegative undistorted radius");
  }
  double selected = polish_until_stable(k2, k1, 1.0, -r_d, std::max(0.0, *it));
  selected = std::max(0.0, selected);
  *it = selected;
  sol.selected = selected;

  const double residual = std::abs(eval_cubic(1.0, sol.a, sol.b, sol.c, selected));
  if (!(residual <= 1e-9 * std::max(1.0, std::abs(sol.c)))) {
    throw Error(ErrorCode::NumericalBreakdown, "cubic root residual too large");
  }
  return sol;
}

double undistort_radius_exact(const PolyQuad& m, double r_d) {
  require_nonnegative(r_d);
  if (m.k1 == 0.0 && m.k2 == 0.0) {
    return r_d;
  }
  double r = 0.0;
  if (m.k2 != 0.0 && std::abs(m.k2) > kNegligibleLeading * std::max(1.0, std::abs(m.k1))) {
    r = solve_depressed_cubic(m.k1, m.k2, r_d).selected;
  } else {
    // k1 r^2 + r - r_d = 0, written so that it tends to r_d as k1 -> 0.
    const double disc = 1.0 + 4.0 * m.k1 * r_d;
    if (disc < 0.0) {
      throw Error(ErrorCode::NoValidRoot, "quadratic inverse has no real root");
    }
    r = 2.0 * r_d / (1.0 + std::sqrt(disc));
    if (m.k2 != 0.0) {
      r = polish_until_stable(m.k2, m.k1, 1.0, -r_d, r);
    }
  }
  if (!(std::abs(r * m.factor(r) - r_d) < 1e-9)) {
    throw Error(ErrorCode::NumericalBreakdown, "undistortion does not reproduce r_d");
  }
  return r;
}

std::vector<double> real_polynomial_roots(double c3, double c2, double c1, double c0) {
  const double lower = std::max({std::abs(c2), std::abs(c1), std::abs(c0)});
  std::vector<double> roots;
  if (c3 == 0.0 || std::abs(c3) <= kNegligibleLeading * lower) {
    roots = quadratic_roots(c2, c1, c0);
  } else {
    roots = monic_roots(c2 / c3, c1 / c3, c0 / c3).roots;
  }
  for (double& root : roots) {
    root = polish_until_stable(c3, c2, c1, c0, root);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace radcal
