#pragma once

#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "radcal/distortion.hpp"
#include "radcal/geometry.hpp"
#include "radcal/piecewise.hpp"

namespace radcal {

enum class ModelFamily { PolyEven2, PolyQuad, Piecewise };

/// CLI spelling: "poly-even2", "poly-quad", "piecewise".
[[nodiscard]] std::string_view to_string(ModelFamily family) noexcept;
[[nodiscard]] ModelFamily parse_model_family(std::string_view name);

/// Number of free distortion coefficients: 2, 2 and 3 (f1, d1, f2).
[[nodiscard]] std::size_t coefficient_count(ModelFamily family) noexcept;

using DistortionModel = std::variant<PolyEven2, PolyQuad, PiecewiseCoeffs>;

[[nodiscard]] ModelFamily family_of(const DistortionModel& model) noexcept;

/// Builds a model from its free coefficients. `r2` is only used by the
/// piecewise family.
[[nodiscard]] DistortionModel make_model(ModelFamily family, std::span<const double> coeffs,
                                         double r2 = 1.0);

/// Coefficients used before any fitting: zeros, or (1, 0, 1) for piecewise.
[[nodiscard]] std::vector<double> neutral_coefficients(ModelFamily family);

[[nodiscard]] double radial_factor(const DistortionModel& model, double r);
[[nodiscard]] double distort_radius(const DistortionModel& model, double r);

/// Exact inverse of r f(r). PolyEven2 has none and throws UnsupportedModel.
[[nodiscard]] double undistort_radius(const DistortionModel& model, double r_d);

/// r_in f(r_in). In U-D mode r_in is undistorted, in D-U mode distorted.
[[nodiscard]] double apply_direction(const DistortionModel& model, Direction dir, double r_in);

/// Maps an undistorted radius to a distorted one under either direction.
[[nodiscard]] double to_distorted_radius(const DistortionModel& model, Direction dir, double r);
/// Maps a distorted radius to an undistorted one under either direction.
[[nodiscard]] double to_undistorted_radius(const DistortionModel& model, Direction dir,
                                           double r_d);

[[nodiscard]] NormalizedPoint distort_point(
    const DistortionModel& model, const NormalizedPoint& p,
    Direction dir = Direction::UndistortedToDistorted);
[[nodiscard]] NormalizedPoint undistort_point(
    const DistortionModel& model, const NormalizedPoint& p_d,
    Direction dir = Direction::UndistortedToDistorted);

/// Radial distortion about the principal point, in pixels. The radius is
/// measured in normalized coordinates.
[[nodiscard]] PixelPoint distort_pixel(const DistortionModel& model, const Intrinsics& intr,
                                       const PixelPoint& p,
                                       Direction dir = Direction::UndistortedToDistorted);
[[nodiscard]] PixelPoint undistort_pixel(const DistortionModel& model, const Intrinsics& intr,
                                         const PixelPoint& p_d,
                                         Direction dir = Direction::UndistortedToDistorted);

struct MonotonicityReport {
  bool monotone = true;
  double min_slope = 0.0;   // smallest d(r f(r))/dr seen on the grid
  double at_radius = 0.0;
};

/// Samples d(r f(r))/dr on a uniform grid over [0, r_max].
[[nodiscard]] MonotonicityReport check_monotone(const DistortionModel& model, double r_max,
                                                int samples = 256);

}  // namespace radcal
