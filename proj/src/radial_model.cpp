#include "radcal/radial_model.hpp"

#include <cmath>
#include <string>

#include "radcal/error.hpp"

namespace radcal {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_nonnegative(double r) {
  if (!(r >= 0.0)) {
    throw Error(ErrorCode::NegativeRadius, "radius must be nonnegative");
  }
}

// Multiplier taking an undistorted radius r > 0 to its distorted radius.
double distortion_scale(const DistortionModel& model, Direction dir, double r) {
  if (dir == Direction::UndistortedToDistorted) {
    return radial_factor(model, r);
  }
  return undistort_radius(model, r) / r;
}

double undistortion_scale(const DistortionModel& model, Direction dir, double r_d) {
  if (dir == Direction::DistortedToUndistorted) {
    return radial_factor(model, r_d);
  }
  return undistort_radius(model, r_d) / r_d;
}

PixelPoint scale_about_principal_point(const Intrinsics& intr, const PixelPoint& p, double s) {
  return {intr.u0 + (p.u - intr.u0) * s, intr.v0 + (p.v - intr.v0) * s};
}

}  // namespace

std::string_view to_string(ModelFamily family) noexcept {
  switch (family) {
    case ModelFamily::PolyEven2: return "poly-even2";
    case ModelFamily::PolyQuad: return "poly-quad";
    case ModelFamily::Piecewise: return "piecewise";
  }
  return "unknown";
}

ModelFamily parse_model_family(std::string_view name) {
  if (name == "poly-even2") return ModelFamily::PolyEven2;
  if (name == "poly-quad") return ModelFamily::PolyQuad;
  if (name == "piecewise") return ModelFamily::Piecewise;
  throw Error(ErrorCode::InvalidArgument, "unknown model family '" + std::string(name) + "'");
}

std::size_t coefficient_count(ModelFamily family) noexcept {
  return family == ModelFamily::Piecewise ? 3 : 2;
}

ModelFamily family_of(const DistortionModel& model) noexcept {
  return std::visit(Overloaded{
                        [](const PolyEven2&) { return ModelFamily::PolyEven2; },
                        [](const PolyQuad&) { return ModelFamily::PolyQuad; },
                        [](const PiecewiseCoeffs&) { return ModelFamily::Piecewise; },
                    },
                    model);
}

DistortionModel make_model(ModelFamily family, std::span<const double> coeffs, double r2) {
  if (coeffs.size() != coefficient_count(family)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(to_string(family)) + " expects " +
                    std::to_string(coefficient_count(family)) + " coefficients");
  }
  switch (family) {
    case ModelFamily::PolyEven2: return PolyEven2{coeffs[0], coeffs[1]};
    case ModelFamily::PolyQuad: return PolyQuad{coeffs[0], coeffs[1]};
    case ModelFamily::Piecewise:
      return solve_coeffs(PiecewiseParams{coeffs[0], coeffs[1], coeffs[2], r2});
  }
  throw Error(ErrorCode::InvalidArgument, "unknown model family");
}

std::vector<double> neutral_coefficients(ModelFamily family) {
  if (family == ModelFamily::Piecewise) {
    return {1.0, 0.0, 1.0};
  }
  return {0.0, 0.0};
}

double radial_factor(const DistortionModel& model, double r) {
  require_nonnegative(r);
  return std::visit([r](const auto& m) { return m.factor(r); }, model);
}

double distort_radius(const DistortionModel& model, double r) {
  return r * radial_factor(model, r);
}

double undistort_radius(const DistortionModel& model, double r_d) {
  return std::visit(
      Overloaded{
          [](const PolyEven2&) -> double {
            throw Error(ErrorCode::UnsupportedModel,
                        "the even-order model has no exact analytical inverse");
          },
          [r_d](const PolyQuad& m) { return undistort_radius_exact(m, r_d); },
          [r_d](const PiecewiseCoeffs& c) { return undistort_radius_pw(c, r_d); },
      },
      model);
}

double apply_direction(const DistortionModel& model, Direction, double r_in) {
  return distort_radius(model, r_in);
}

double to_distorted_radius(const DistortionModel& model, Direction dir, double r) {
  return dir == Direction::UndistortedToDistorted ? distort_radius(model, r)
                                                  : undistort_radius(model, r);
}

double to_undistorted_radius(const DistortionModel& model, Direction dir, double r_d) {
  return dir == Direction::UndistortedToDistorted ? undistort_radius(model, r_d)
                                                  : distort_radius(model, r_d);
}

NormalizedPoint distort_point(const DistortionModel& model, const NormalizedPoint& p,
                              Direction dir) {
  const double r = std::hypot(p.x, p.y);
  if (r == 0.0) {
    return p;
  }
  const double s = distortion_scale(model, dir, r);
  return {p.x * s, p.y * s};
}

NormalizedPoint undistort_point(const DistortionModel& model, const NormalizedPoint& p_d,
                                Direction dir) {
  const double r_d = std::hypot(p_d.x, p_d.y);
  if (r_d == 0.0) {
    return p_d;
  }
  const double s = undistortion_scale(model, dir, r_d);
  return {p_d.x * s, p_d.y * s};
}

PixelPoint distort_pixel(const DistortionModel& model, const Intrinsics& intr,
                         const PixelPoint& p, Direction dir) {
  const NormalizedPoint n = pixel_to_normalized(intr, p);
  const double r = std::hypot(n.x, n.y);
  if (r == 0.0) {
    return p;
  }
  return scale_about_principal_point(intr, p, distortion_scale(model, dir, r));
}

PixelPoint undistort_pixel(const DistortionModel& model, const Intrinsics& intr,
                           const PixelPoint& p_d, Direction dir) {
  const NormalizedPoint n = pixel_to_normalized(intr, p_d);
  const double r_d = std::hypot(n.x, n.y);
  if (r_d == 0.0) {
    return p_d;
  }
  return scale_about_principal_point(intr, p_d, undistortion_scale(model, dir, r_d));
}

MonotonicityReport check_monotone(const DistortionModel& model, double r_max, int samples) {
  MonotonicityReport report;
  report.min_slope = std::numeric_limits<double>::infinity();
  const int n = std::max(samples, 2);
  for (int i = 0; i < n; ++i) {
    const double r = r_max * i / (n - 1);
    const double slope = std::visit([r](const auto& m) { return m.forward_slope(r); }, model);
    if (slope < report.min_slope) {
      report.min_slope = slope;
      report.at_radius = r;
    }
  }
  report.monotone = report.min_slope > 0.0;
  return report;
}

}  // namespace radcal
