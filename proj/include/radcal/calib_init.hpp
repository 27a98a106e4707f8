#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "radcal/dataset.hpp"
#include "radcal/geometry.hpp"
#include "radcal/radial_model.hpp"

namespace radcal {

/// Plane-to-image homography, scaled so h(2,2) = 1 whenever |h(2,2)| > 1e-12.
struct Homography {
  Eigen::Matrix3d h = Eigen::Matrix3d::Identity();
};

/// Normalized DLT. Needs at least four non-collinear correspondences,
/// otherwise throws DegenerateConfiguration.
[[nodiscard]] Homography estimate_homography(std::span<const ModelPoint> model_pts,
                                             std::span<const PixelPoint> image_pts);

/// Closed-form intrinsics from the image of the absolute conic. Three or more
/// views are required, or two with `zero_skew` set.
[[nodiscard]] Intrinsics intrinsics_from_homographies(std::span<const Homography> hs,
                                                      bool zero_skew = false);

/// Pose from A^{-1} H. When model points are given the sign is chosen so the
/// majority of them lie in front of the camera; otherwise the plane origin
/// decides.
[[nodiscard]] Extrinsics extrinsics_from_homography(const Intrinsics& intr, const Homography& h,
                                                    std::span<const ModelPoint> model_pts = {});

/// Least-squares distortion coefficients given fixed intrinsics and poses.
/// The residual (u_d - u, v_d - v) = (u - u0, v - v0)(f(r) - 1) is linear in
/// the coefficients of both single-function families. The piecewise family
/// always starts from (1, 0, 1).
[[nodiscard]] std::vector<double> init_distortion_linear(ModelFamily family,
                                                         const Intrinsics& intr,
                                                         std::span<const Extrinsics> extrs,
                                                         const CalibrationDataset& data);

/// Intrinsics and poses from the homographies; computed once per dataset
/// and shared by every distortion family.
struct LinearInit {
  Intrinsics intrinsics;
  std::vector<Extrinsics> extrinsics;
};

struct InitialEstimate {
  ModelFamily family = ModelFamily::PolyQuad;
  Intrinsics intrinsics;
  std::vector<Extrinsics> extrinsics;
  std::vector<double> distortion;
};

/// Homographies, intrinsics, extrinsics. Requires at least three images.
[[nodiscard]] LinearInit linear_init(const CalibrationDataset& data);

/// Adds the family's distortion initialization on top of a shared init.
[[nodiscard]] InitialEstimate initial_estimate(const LinearInit& init, ModelFamily family,
                                               const CalibrationDataset& data);

}  // namespace radcal
