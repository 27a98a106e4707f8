#include "radcal/geometry.hpp"

#include <cmath>

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include "radcal/error.hpp"

namespace radcal {

Eigen::Matrix3d Intrinsics::matrix() const {
  Eigen::Matrix3d a;
  a << alpha, gamma, u0,
       0.0, beta, v0,
       0.0, 0.0, 1.0;
  return a;
}

bool Intrinsics::valid() const noexcept {
  return std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(gamma) &&
         std::isfinite(u0) && std::isfinite(v0) && alpha > 0.0 && beta > 0.0;
}

Intrinsics intrinsics_from_matrix(const Eigen::Matrix3d& a) {
  const Eigen::Matrix3d n = a / a(2, 2);
  Intrinsics intr{n(0, 0), n(1, 1), n(0, 1), n(0, 2), n(1, 2)};
  if (!intr.valid()) {
    throw Error(ErrorCode::IllConditioned, "intrinsic matrix has non-positive focal scale");
  }
  return intr;
}

Eigen::Vector3d to_camera(const Extrinsics& extr, const ModelPoint& p) {
  return extr.rotation.col(0) * p.x + extr.rotation.col(1) * p.y + extr.translation;
}

NormalizedPoint perspective_divide(const Eigen::Vector3d& camera_point) {
  const double depth = camera_point.z();
  if (!(depth > kMinDepth)) {
    throw Error(ErrorCode::NonPositiveDepth, "point at or behind the camera");
  }
  return {camera_point.x() / depth, camera_point.y() / depth};
}

PixelPoint project_ideal(const Intrinsics& intr, const Extrinsics& extr, const ModelPoint& p) {
  return normalized_to_pixel(intr, perspective_divide(to_camera(extr, p)));
}

NormalizedPoint pixel_to_normalized(const Intrinsics& intr, const PixelPoint& p) {
  const double y = (p.v - intr.v0) / intr.beta;
  const double x = (p.u - intr.u0 - intr.gamma * y) / intr.alpha;
  return {x, y};
}

PixelPoint normalized_to_pixel(const Intrinsics& intr, const NormalizedPoint& p) {
  return {intr.alpha * p.x + intr.gamma * p.y + intr.u0, intr.beta * p.y + intr.v0};
}

Eigen::Matrix3d rotation_from_axis_angle(const Eigen::Vector3d& w) {
  const double theta = w.norm();
  if (theta < 1e-300) {
    return Eigen::Matrix3d::Identity();
  }
  return Eigen::AngleAxisd(theta, w / theta).toRotationMatrix();
}

Eigen::Vector3d axis_angle_from_rotation(const Eigen::Matrix3d& r) {
  const Eigen::AngleAxisd aa(r);
  return aa.axis() * aa.angle();
}

Eigen::Matrix3d nearest_rotation(const Eigen::Matrix3d& m) {
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  d(2, 2) = (svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  return svd.matrixU() * d * svd.matrixV().transpose();
}

double orthonormality_error(const Eigen::Matrix3d& r) {
  const double ortho = (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  return std::max(ortho, std::abs(r.determinant() - 1.0));
}

}  // namespace radcal
