#include "radcal/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "radcal/error.hpp"

namespace radcal {

double SceneRandom::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double SceneRandom::normal() {
  const double u1 = 1.0 - uniform(0.0, 1.0);  // (0, 1]
  const double u2 = uniform(0.0, 1.0);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<ModelPoint> planar_grid(int rows, int cols, double spacing) {
  std::vector<ModelPoint> grid;
  grid.reserve(static_cast<std::size_t>(rows * cols));
  const double x0 = -0.5 * (cols - 1) * spacing;
  const double y0 = -0.5 * (rows - 1) * spacing;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      grid.push_back({x0 + c * spacing, y0 + r * spacing});
    }
  }
  return grid;
}

std::vector<Extrinsics> sample_poses(int count, double plane_width, std::uint64_t seed) {
  constexpr double kDeg = std::numbers::pi / 180.0;
  SceneRandom rng(seed);
  std::vector<Extrinsics> poses;
  for (int i = 0; i < count; ++i) {
    const double tilt = rng.uniform(10.0, 40.0) * kDeg;
    const double axis_angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double spin = rng.uniform(-15.0, 15.0) * kDeg;
    const double distance = rng.uniform(2.0, 4.0) * plane_width;
    const double offset_x = rng.uniform(-0.08, 0.08);
    const double offset_y = rng.uniform(-0.08, 0.08);

    const Eigen::Vector3d axis(std::cos(axis_angle), std::sin(axis_angle), 0.0);
    Extrinsics e;
    e.rotation = (Eigen::AngleAxisd(tilt, axis) *
                  Eigen::AngleAxisd(spin, Eigen::Vector3d::UnitZ()))
                     .toRotationMatrix();
    e.translation = Eigen::Vector3d(offset_x * distance, offset_y * distance, distance);
    poses.push_back(e);
  }
  return poses;
}

SyntheticScene default_scene(std::uint64_t seed, double noise_sigma) {
  SyntheticScene scene;
  scene.truth_intrinsics = Intrinsics{832.4860, 832.5157, 0.2042, 303.9605, 206.5811};
  scene.grid = planar_grid(8, 8, 1.0 / 7.0);
  scene.truth_extrinsics = sample_poses(5, 1.0, seed);
  scene.truth_family = ModelFamily::PolyQuad;
  scene.truth_coefficients = {-0.1, -0.15};
  scene.noise_sigma = noise_sigma;
  scene.seed = seed;
  return scene;
}

double truth_r2(const SyntheticScene& scene) {
  double r2 = 0.0;
  for (const auto& extr : scene.truth_extrinsics) {
    for (const auto& m : scene.grid) {
      const NormalizedPoint n = perspective_divide(to_camera(extr, m));
      r2 = std::max(r2, std::hypot(n.x, n.y));
    }
  }
  return r2;
}

DistortionModel truth_model(const SyntheticScene& scene) {
  return make_model(scene.truth_family, scene.truth_coefficients, truth_r2(scene));
}

CalibrationDataset generate(const SyntheticScene& scene) {
  if (scene.truth_extrinsics.size() < 3) {
    throw Error(ErrorCode::InsufficientViews, "a synthetic scene needs at least 3 poses");
  }
  if (scene.grid.size() < 4) {
    throw Error(ErrorCode::DegenerateConfiguration, "a synthetic grid needs at least 4 points");
  }
  const DistortionModel model = truth_model(scene);
  SceneRandom noise(scene.seed ^ 0x9E3779B97F4A7C15ULL);

  CalibrationDataset data;
  data.model_points = scene.grid;
  for (std::size_t i = 0; i < scene.truth_extrinsics.size(); ++i) {
    ImageObservations img;
    img.name = "view" + std::to_string(i + 1);
    for (const auto& m : scene.grid) {
      const PixelPoint ideal = project_ideal(scene.truth_intrinsics, scene.truth_extrinsics[i], m);
      PixelPoint observed = distort_pixel(model, scene.truth_intrinsics, ideal);
      if (scene.noise_sigma > 0.0) {
        observed.u += scene.noise_sigma * noise.normal();
        observed.v += scene.noise_sigma * noise.normal();
      }
      img.points.push_back(observed);
    }
    data.images.push_back(std::move(img));
  }
  return data;
}

double RecoveryReport::max_intrinsic_rel() const noexcept {
  return std::max({alpha_rel, beta_rel, gamma_rel, u0_rel, v0_rel});
}

RecoveryReport recovery_report(const SyntheticScene& scene, const CalibrationResult& result) {
  const Intrinsics& t = scene.truth_intrinsics;
  const Intrinsics& e = result.intrinsics;
  RecoveryReport rep;
  rep.alpha_rel = std::abs(e.alpha - t.alpha) / std::abs(t.alpha);
  rep.beta_rel = std::abs(e.beta - t.beta) / std::abs(t.beta);
  rep.gamma_rel = std::abs(e.gamma - t.gamma) / std::abs(t.alpha);
  rep.u0_rel = std::abs(e.u0 - t.u0) / std::abs(t.alpha);
  rep.v0_rel = std::abs(e.v0 - t.v0) / std::abs(t.beta);

  const std::size_t n = std::min(scene.truth_extrinsics.size(), result.extrinsics.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Extrinsics& te = scene.truth_extrinsics[i];
    const Extrinsics& fe = result.extrinsics[i];
    const Eigen::AngleAxisd delta(te.rotation.transpose() * fe.rotation);
    rep.rotation_error_deg.push_back(std::abs(delta.angle()) * 180.0 / std::numbers::pi);
    rep.translation_rel.push_back((fe.translation - te.translation).norm() /
                                  te.translation.norm());
  }

  const double r2 = truth_r2(scene);
  const DistortionModel truth = truth_model(scene);
  const DistortionModel fitted = result.model();
  constexpr int kSamples = 256;
  for (int k = 0; k < kSamples; ++k) {
    const double r = r2 * k / (kSamples - 1);
    rep.curve_sup_error = std::max(rep.curve_sup_error,
                                   std::abs(radial_factor(fitted, r) - radial_factor(truth, r)));
  }
  return rep;
}

}  // namespace radcal
