#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "radcal/dataset.hpp"
#include "radcal/geometry.hpp"
#include "radcal/optimizer.hpp"
#include "radcal/radial_model.hpp"

namespace radcal {

/// Seeded generator whose output is fully specified: mt19937_64 bits,
/// 53-bit uniforms and Box-Muller normals. std::normal_distribution is not
/// used because its output differs across standard libraries.
class SceneRandom {
 public:
  explicit SceneRandom(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  double normal();

 private:
  std::mt19937_64 engine_;
};

struct SyntheticScene {
  Intrinsics truth_intrinsics;
  std::vector<Extrinsics> truth_extrinsics;
  ModelFamily truth_family = ModelFamily::PolyQuad;
  /// (k1, k2), or (f1, d1, f2) for piecewise. The piecewise r2 is the
  /// scene's largest ideal radius, matching the optimizer's rule.
  std::vector<double> truth_coefficients;
  std::vector<ModelPoint> grid;
  double noise_sigma = 0.0;   // pixels
  std::uint64_t seed = 1;
};

/// rows x cols points centered on the origin with the given spacing.
[[nodiscard]] std::vector<ModelPoint> planar_grid(int rows, int cols, double spacing);

/// Views of a plane of width `plane_width` centered at the origin: tilt in
/// [10, 40] degrees about a random in-plane axis, a small spin about the
/// optical axis, distance in [2, 4] plane widths, and a lateral offset that
/// keeps the target inside the field of view.
[[nodiscard]] std::vector<Extrinsics> sample_poses(int count, double plane_width,
                                                   std::uint64_t seed);

/// 8x8 grid of unit width, 5 poses, PolyQuad(-0.1, -0.15), intrinsics
/// alpha = 832.4860, beta = 832.5157, gamma = 0.2042, u0 = 303.9605, v0 = 206.5811.
[[nodiscard]] SyntheticScene default_scene(std::uint64_t seed = 1, double noise_sigma = 0.5);

/// Largest ideal normalized radius of the scene.
[[nodiscard]] double truth_r2(const SyntheticScene& scene);
[[nodiscard]] DistortionModel truth_model(const SyntheticScene& scene);

/// Observations = distort_pixel(project_ideal(.)) + N(0, sigma^2) per axis.
/// Uses forward paths only.
[[nodiscard]] CalibrationDataset generate(const SyntheticScene& scene);

/// Focal lengths are compared relative to their true values. Skew and the
/// principal point have no natural scale of their own (the principal point
/// depends on where the pixel origin is), so their errors are divided by the
/// true focal length of the matching axis.
struct RecoveryReport {
  double alpha_rel = 0.0;
  double beta_rel = 0.0;
  double gamma_rel = 0.0;   // / truth alpha
  double u0_rel = 0.0;      // / truth alpha
  double v0_rel = 0.0;      // / truth beta
  std::vector<double> rotation_error_deg;
  std::vector<double> translation_rel;
  /// sup |f_fit(r) - f_truth(r)| over [0, truth r2].
  double curve_sup_error = 0.0;

  [[nodiscard]] double max_intrinsic_rel() const noexcept;
};

[[nodiscard]] RecoveryReport recovery_report(const SyntheticScene& scene,
                                             const CalibrationResult& result);

}  // namespace radcal
