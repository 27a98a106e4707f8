#pragma once

#include <Eigen/Core>

namespace radcal {

/// Pinhole intrinsics. The matrix A is
///   [ alpha  gamma  u0 ]
///   [   0    beta   v0 ]
///   [   0     0      1 ]
struct Intrinsics {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 0.0;
  double u0 = 0.0;
  double v0 = 0.0;

  [[nodiscard]] Eigen::Matrix3d matrix() const;
  [[nodiscard]] bool valid() const noexcept;

  friend bool operator==(const Intrinsics&, const Intrinsics&) = default;
};

/// Builds intrinsics from an upper-triangular A (A(2,2) is normalized to 1).
Intrinsics intrinsics_from_matrix(const Eigen::Matrix3d& a);

/// Rigid world-to-camera transform: P_c = R * P_w + t.
struct Extrinsics {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  friend bool operator==(const Extrinsics& a, const Extrinsics& b) {
    return a.rotation == b.rotation && a.translation == b.translation;
  }
};

/// Point on the calibration plane (Z_w = 0).
struct ModelPoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const ModelPoint&, const ModelPoint&) = default;
};

struct PixelPoint {
  double u = 0.0;
  double v = 0.0;
  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

struct NormalizedPoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const NormalizedPoint&, const NormalizedPoint&) = default;
};

inline constexpr double kMinDepth = 1e-12;

/// Camera-frame coordinates of a plane point, R * [x, y, 0]^T + t.
[[nodiscard]] Eigen::Vector3d to_camera(const Extrinsics& extr, const ModelPoint& p);

/// Divides a camera-frame point by its depth. Throws NonPositiveDepth when
/// the depth is at or below kMinDepth.
[[nodiscard]] NormalizedPoint perspective_divide(const Eigen::Vector3d& camera_point);

/// Distortion-free projection of a plane point to pixels.
[[nodiscard]] PixelPoint project_ideal(const Intrinsics& intr, const Extrinsics& extr,
                                       const ModelPoint& p);

/// Applies A^{-1}.
[[nodiscard]] NormalizedPoint pixel_to_normalized(const Intrinsics& intr, const PixelPoint& p);

/// Applies A.
[[nodiscard]] PixelPoint normalized_to_pixel(const Intrinsics& intr, const NormalizedPoint& p);

// Axis-angle (Rodrigues) charts used by the optimizer.
[[nodiscard]] Eigen::Matrix3d rotation_from_axis_angle(const Eigen::Vector3d& w);
[[nodiscard]] Eigen::Vector3d axis_angle_from_rotation(const Eigen::Matrix3d& r);

/// Nearest orthogonal matrix with det = +1 (Frobenius sense).
[[nodiscard]] Eigen::Matrix3d nearest_rotation(const Eigen::Matrix3d& m);

/// Max entry of |R^T R - I| and |det R - 1|, whichever is larger.
[[nodiscard]] double orthonormality_error(const Eigen::Matrix3d& r);

}  // namespace radcal
