#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "radcal/calib_init.hpp"
#include "radcal/dataset.hpp"
#include "radcal/geometry.hpp"
#include "radcal/radial_model.hpp"

namespace radcal {

/// Per-image pose in the optimizer's minimal chart.
struct Pose {
  Eigen::Vector3d axis_angle = Eigen::Vector3d::Zero();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  friend bool operator==(const Pose& a, const Pose& b) {
    return a.axis_angle == b.axis_angle && a.translation == b.translation;
  }
};

/// Unpacked optimization variables. The packed layout is
///   [alpha, gamma, u0, beta, v0, (w_i, t_i) for each image, distortion...]
/// with 5 + 6N + |k| entries.
struct CameraState {
  Intrinsics intrinsics;
  std::vector<Pose> poses;
  std::vector<double> distortion;
  friend bool operator==(const CameraState&, const CameraState&) = default;
};

[[nodiscard]] std::size_t parameter_count(ModelFamily family, std::size_t n_images) noexcept;
[[nodiscard]] Eigen::VectorXd pack(const CameraState& state);
[[nodiscard]] CameraState unpack(const Eigen::VectorXd& params, ModelFamily family,
                                 std::size_t n_images);

[[nodiscard]] Pose pose_from_extrinsics(const Extrinsics& extr);
[[nodiscard]] Extrinsics extrinsics_from_pose(const Pose& pose);
[[nodiscard]] CameraState state_from_estimate(const InitialEstimate& est);

/// Working range of the piecewise model: the largest ideal (undistorted)
/// normalized radius over all points of all images under the current poses.
/// Points behind the camera are skipped.
[[nodiscard]] double update_r2(const CameraState& state, const CalibrationDataset& data);
[[nodiscard]] double update_r2(const Eigen::VectorXd& params, ModelFamily family,
                               const CalibrationDataset& data);

struct ObjectiveEvaluation {
  double J = 0.0;
  /// predicted minus observed, (u, v) per observation, image-major.
  Eigen::VectorXd residuals;
  std::vector<double> per_image_sse;
  double r2 = 0.0;
  /// Observations dropped because their predicted depth was not positive.
  std::size_t excluded_points = 0;
};

/// Sum of squared reprojection errors. Prediction is ideal projection followed
/// by distortion about the principal point; r2 is recomputed from `params`.
[[nodiscard]] ObjectiveEvaluation objective(const Eigen::VectorXd& params,
                                            const CalibrationDataset& data, ModelFamily family);

/// Forward-difference Jacobian of the residual vector, step
/// max(1e-7, 1e-7 |x_k|) per parameter.
[[nodiscard]] Eigen::MatrixXd jacobian(const Eigen::VectorXd& params,
                                       const CalibrationDataset& data, ModelFamily family);

struct RefineOptions {
  double tol_x = 1e-5;
  double tol_fun = 1e-5;
  int max_iter = 120;
  int max_fun_evals = 8000;
  double initial_damping = 1e-3;
};

enum class Termination {
  StepTolerance,
  FunctionTolerance,
  MaxIterations,
  MaxFunctionEvaluations,
  ZeroObjective,
  DampingLimit,
};

[[nodiscard]] std::string_view to_string(Termination t) noexcept;
[[nodiscard]] Termination parse_termination(std::string_view name);

struct ObjectiveReport {
  double J = 0.0;
  double initial_J = 0.0;
  std::vector<double> per_image_sse;
  /// sqrt(sse_i / n): the per-image RMS point error in pixels.
  std::vector<double> per_image_rms;
  int iterations = 0;
  int function_evaluations = 0;
  bool converged = false;
  Termination termination = Termination::MaxIterations;
  std::size_t excluded_points = 0;
  friend bool operator==(const ObjectiveReport&, const ObjectiveReport&) = default;
};

struct CalibrationResult {
  ModelFamily family = ModelFamily::PolyQuad;
  std::vector<double> coefficients;
  Intrinsics intrinsics;
  std::vector<std::string> image_names;
  std::vector<Extrinsics> extrinsics;
  ObjectiveReport objective;
  /// Working range [0, r2] at the returned parameters. For the piecewise
  /// family this is the r2 the coefficients refer to.
  double r2 = 0.0;
  /// Whether r f(r) is increasing on [0, r2] (256-point grid).
  bool monotone = true;

  [[nodiscard]] DistortionModel model() const;
  friend bool operator==(const CalibrationResult&, const CalibrationResult&) = default;
};

/// Levenberg-Marquardt refinement of intrinsics, poses and distortion.
/// Throws DivergedObjective if the starting objective is not finite.
[[nodiscard]] CalibrationResult refine(const InitialEstimate& init, const CalibrationDataset& data,
                                       const RefineOptions& options = {});

}  // namespace radcal
