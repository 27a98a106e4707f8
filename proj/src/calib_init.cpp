#include "radcal/calib_init.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/SVD>

#include "radcal/error.hpp"

namespace radcal {
namespace {

// Similarity taking the points to centroid 0 and RMS distance sqrt(2).
// Returns false when the points are (numerically) collinear or coincident.
template <class Point, class GetX, class GetY>
bool hartley_normalization(std::span<const Point> pts, GetX gx, GetY gy, Eigen::Matrix3d& t) {
  const auto n = static_cast<double>(pts.size());
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : pts) {
    mean += Eigen::Vector2d(gx(p), gy(p));
  }
  mean /= n;
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const auto& p : pts) {
    const Eigen::Vector2d d = Eigen::Vector2d(gx(p), gy(p)) - mean;
    cov += d * d.transpose();
  }
  cov /= n;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(cov);
  const double lo = eig.eigenvalues()(0);
  const double hi = eig.eigenvalues()(1);
  if (!(hi > 0.0) || lo <= 1e-12 * hi) {
    return false;
  }
  const double s = std::sqrt(2.0 / cov.trace());
  t << s, 0.0, -s * mean.x(),
       0.0, s, -s * mean.y(),
       0.0, 0.0, 1.0;
  return true;
}

// v_ij of the absolute-conic constraints, over b = (B11, B12, B22, B13, B23, B33).
Eigen::Matrix<double, 1, 6> conic_row(const Eigen::Matrix3d& h, int i, int j) {
  Eigen::Matrix<double, 1, 6> v;
  v << h(0, i) * h(0, j),
       h(0, i) * h(1, j) + h(1, i) * h(0, j),
       h(1, i) * h(1, j),
       h(2, i) * h(0, j) + h(0, i) * h(2, j),
       h(2, i) * h(1, j) + h(1, i) * h(2, j),
       h(2, i) * h(2, j);
  return v;
}

}  // namespace

Homography estimate_homography(std::span<const ModelPoint> model_pts,
                               std::span<const PixelPoint> image_pts) {
  if (model_pts.size() != image_pts.size()) {
    throw Error(ErrorCode::ShapeError, "homography needs index-aligned point lists");
  }
  if (model_pts.size() < 4) {
    throw Error(ErrorCode::DegenerateConfiguration, "homography needs at least 4 points");
  }
  Eigen::Matrix3d tm;
  Eigen::Matrix3d ti;
  const bool model_ok = hartley_normalization(
      model_pts, [](const ModelPoint& p) { return p.x; }, [](const ModelPoint& p) { return p.y; },
      tm);
  const bool image_ok = hartley_normalization(
      image_pts, [](const PixelPoint& p) { return p.u; }, [](const PixelPoint& p) { return p.v; },
      ti);
  if (!model_ok || !image_ok) {
    throw Error(ErrorCode::DegenerateConfiguration, "points are collinear");
  }

  const auto n = static_cast<Eigen::Index>(model_pts.size());
  Eigen::MatrixXd a(2 * n, 9);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Vector3d m = tm * Eigen::Vector3d(model_pts[k].x, model_pts[k].y, 1.0);
    const Eigen::Vector3d p = ti * Eigen::Vector3d(image_pts[k].u, image_pts[k].v, 1.0);
    const double x = m.x();
    const double y = m.y();
    const double u = p.x();
    const double v = p.y();
    a.row(2 * k) << x, y, 1.0, 0.0, 0.0, 0.0, -u * x, -u * y, -u;
    a.row(2 * k + 1) << 0.0, 0.0, 0.0, x, y, 1.0, -v * x, -v * y, -v;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd hv = svd.matrixV().col(8);
  Eigen::Matrix3d hn;
  hn << hv(0), hv(1), hv(2),
        hv(3), hv(4), hv(5),
        hv(6), hv(7), hv(8);

  Homography out;
  out.h = ti.inverse() * hn * tm;
  if (std::abs(out.h(2, 2)) > 1e-12) {
    out.h /= out.h(2, 2);
  }
  const Eigen::JacobiSVD<Eigen::Matrix3d> hsvd(out.h);
  const auto& sv = hsvd.singularValues();
  if (!(sv(2) > 1e-10 * sv(0))) {
    throw Error(ErrorCode::DegenerateConfiguration, "homography is rank deficient");
  }
  return out;
}

Intrinsics intrinsics_from_homographies(std::span<const Homography> hs, bool zero_skew) {
  const std::size_t min_views = zero_skew ? 2 : 3;
  if (hs.size() < min_views) {
    throw Error(ErrorCode::InsufficientViews,
                "need at least " + std::to_string(min_views) + " homographies");
  }
  // Pixel scale taken from where the plane origin lands; keeps the conic
  // entries of comparable size.
  double scale = 0.0;
  for (const auto& hom : hs) {
    scale += std::hypot(hom.h(0, 2), hom.h(1, 2)) / std::max(std::abs(hom.h(2, 2)), 1e-300);
  }
  scale = std::max(1.0, scale / static_cast<double>(hs.size()));
  const Eigen::Matrix3d shrink = Eigen::Vector3d(1.0 / scale, 1.0 / scale, 1.0).asDiagonal();

  const auto rows = static_cast<Eigen::Index>(2 * hs.size() + (zero_skew ? 1 : 0));
  Eigen::MatrixXd v(rows, 6);
  Eigen::Index row = 0;
  for (const auto& hom : hs) {
    Eigen::Matrix3d h = shrink * hom.h;
    h /= h.norm();
    Eigen::Matrix<double, 1, 6> r12 = conic_row(h, 0, 1);
    Eigen::Matrix<double, 1, 6> rdiff = conic_row(h, 0, 0) - conic_row(h, 1, 1);
    v.row(row++) = r12 / std::max(r12.norm(), 1e-300);
    v.row(row++) = rdiff / std::max(rdiff.norm(), 1e-300);
  }
  if (zero_skew) {
    v.row(row++) << 0.0, 1.0, 0.0, 0.0, 0.0, 0.0;
  }

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(v, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  // A unique conic needs a one-dimensional null space: the next-smallest
  // singular value must stay clear of zero.
  if (sv.size() < 5 || !(sv(4) > 1e-9 * sv(0))) {
    throw Error(ErrorCode::IllConditioned, "homographies do not constrain the conic");
  }
  Eigen::Matrix<double, 6, 1> b = svd.matrixV().col(5);
  if (b(0) < 0.0) {
    b = -b;
  }
  Eigen::Matrix3d conic;
  conic << b(0), b(1), b(3),
           b(1), b(2), b(4),
           b(3), b(4), b(5);
  // conic = A^{-T} A^{-1} up to scale; its Cholesky factor is A^{-T}.
  const Eigen::LLT<Eigen::Matrix3d> llt(conic);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::IllConditioned, "absolute conic is not positive definite");
  }
  const Eigen::Matrix3d a_inv = llt.matrixU();
  Eigen::Matrix3d a = a_inv.inverse();
  a.topRows<2>() *= scale;
  if (!a.allFinite()) {
    throw Error(ErrorCode::IllConditioned, "intrinsic matrix is singular");
  }
  Intrinsics intr = intrinsics_from_matrix(a);
  if (zero_skew) {
    intr.gamma = 0.0;
  }
  return intr;
}

Extrinsics extrinsics_from_homography(const Intrinsics& intr, const Homography& h,
                                      std::span<const ModelPoint> model_pts) {
  const Eigen::Matrix3d m = intr.matrix().inverse() * h.h;
  const double norm0 = m.col(0).norm();
  if (!(norm0 > 0.0) || !m.allFinite()) {
    throw Error(ErrorCode::IllConditioned, "homography column vanishes under A^{-1}");
  }
  const double scale = 1.0 / norm0;
  Eigen::Vector3d c0 = scale * m.col(0);
  Eigen::Vector3d c1 = scale * m.col(1);
  Eigen::Vector3d t = scale * m.col(2);

  int behind = 0;
  int total = 0;
  if (model_pts.empty()) {
    behind = t.z() < 0.0 ? 1 : 0;
    total = 1;
  } else {
    for (const auto& p : model_pts) {
      const double z = c0.z() * p.x + c1.z() * p.y + t.z();
      behind += z < 0.0 ? 1 : 0;
      ++total;
    }
  }
  if (2 * behind > total) {
    c0 = -c0;
    c1 = -c1;
    t = -t;
  }

  Eigen::Matrix3d r;
  r.col(0) = c0;
  r.col(1) = c1;
  r.col(2) = c0.cross(c1);
  Extrinsics out;
  out.rotation = nearest_rotation(r);
  out.translation = t;
  return out;
}

std::vector<double> init_distortion_linear(ModelFamily family, const Intrinsics& intr,
                                           std::span<const Extrinsics> extrs,
                                           const CalibrationDataset& data) {
  if (family == ModelFamily::Piecewise) {
    return neutral_coefficients(family);
  }
  if (extrs.size() != data.images.size()) {
    throw Error(ErrorCode::ShapeError, "one pose per image is required");
  }
  const bool even = family == ModelFamily::PolyEven2;
  const auto rows = static_cast<Eigen::Index>(2 * data.observation_count());
  Eigen::MatrixXd design(rows, 2);
  Eigen::VectorXd rhs(rows);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < data.images.size(); ++i) {
    for (std::size_t j = 0; j < data.model_points.size(); ++j) {
      const NormalizedPoint n = perspective_divide(to_camera(extrs[i], data.model_points[j]));
      const PixelPoint ideal = normalized_to_pixel(intr, n);
      const PixelPoint& observed = data.images[i].points[j];
      const double r = std::hypot(n.x, n.y);
      const double basis1 = even ? r * r : r;
      const double basis2 = even ? r * r * r * r : r * r;
      const double du = ideal.u - intr.u0;
      const double dv = ideal.v - intr.v0;
      design.row(row) << du * basis1, du * basis2;
      rhs(row++) = observed.u - ideal.u;
      design.row(row) << dv * basis1, dv * basis2;
      rhs(row++) = observed.v - ideal.v;
    }
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (!(sv(0) > 0.0) || !(sv(1) > 1e-12 * sv(0))) {
    throw Error(ErrorCode::IllConditioned, "distortion design matrix is rank deficient");
  }
  const Eigen::Vector2d k = svd.solve(rhs);
  return {k(0), k(1)};
}

LinearInit linear_init(const CalibrationDataset& data) {
  data.validate(3);
  std::vector<Homography> hs;
  hs.reserve(data.images.size());
  for (const auto& img : data.images) {
    hs.push_back(estimate_homography(data.model_points, img.points));
  }
  LinearInit init;
  init.intrinsics = intrinsics_from_homographies(hs);
  for (const auto& h : hs) {
    init.extrinsics.push_back(extrinsics_from_homography(init.intrinsics, h, data.model_points));
  }
  return init;
}

InitialEstimate initial_estimate(const LinearInit& init, ModelFamily family,
                                 const CalibrationDataset& data) {
  InitialEstimate est;
  est.family = family;
  est.intrinsics = init.intrinsics;
  est.extrinsics = init.extrinsics;
  est.distortion = init_distortion_linear(family, init.intrinsics, init.extrinsics, data);
  return est;
}

}  // namespace radcal
