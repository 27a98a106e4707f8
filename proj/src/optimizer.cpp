#include "radcal/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <Eigen/Cholesky>

#include "radcal/error.hpp"

namespace radcal {
namespace {

constexpr double kMaxDamping = 1e16;

void require_params(const Eigen::VectorXd& params, ModelFamily family, std::size_t n_images) {
  if (static_cast<std::size_t>(params.size()) != parameter_count(family, n_images)) {
    throw Error(ErrorCode::InvalidArgument, "parameter vector has the wrong length");
  }
}

}  // namespace

std::size_t parameter_count(ModelFamily family, std::size_t n_images) noexcept {
  return 5 + 6 * n_images + coefficient_count(family);
}

Eigen::VectorXd pack(const CameraState& state) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(5 + 6 * state.poses.size() + state.distortion.size()));
  const Intrinsics& in = state.intrinsics;
  x.head<5>() << in.alpha, in.gamma, in.u0, in.beta, in.v0;
  Eigen::Index k = 5;
  for (const auto& pose : state.poses) {
    x.segment<3>(k) = pose.axis_angle;
    x.segment<3>(k + 3) = pose.translation;
    k += 6;
  }
  for (double c : state.distortion) {
    x(k++) = c;
  }
  return x;
}

CameraState unpack(const Eigen::VectorXd& params, ModelFamily family, std::size_t n_images) {
  require_params(params, family, n_images);
  CameraState state;
  state.intrinsics = Intrinsics{params(0), params(3), params(1), params(2), params(4)};
  Eigen::Index k = 5;
  state.poses.resize(n_images);
  for (auto& pose : state.poses) {
    pose.axis_angle = params.segment<3>(k);
    pose.translation = params.segment<3>(k + 3);
    k += 6;
  }
  state.distortion.assign(params.data() + k, params.data() + params.size());
  return state;
}

Pose pose_from_extrinsics(const Extrinsics& extr) {
  return {axis_angle_from_rotation(extr.rotation), extr.translation};
}

Extrinsics extrinsics_from_pose(const Pose& pose) {
  return {rotation_from_axis_angle(pose.axis_angle), pose.translation};
}

CameraState state_from_estimate(const InitialEstimate& est) {
  CameraState state;
  state.intrinsics = est.intrinsics;
  for (const auto& e : est.extrinsics) {
    state.poses.push_back(pose_from_extrinsics(e));
  }
  state.distortion = est.distortion;
  return state;
}

double update_r2(const CameraState& state, const CalibrationDataset& data) {
  double r2 = 0.0;
  for (std::size_t i = 0; i < state.poses.size(); ++i) {
    const Extrinsics extr = extrinsics_from_pose(state.poses[i]);
    for (const auto& m : data.model_points) {
      const Eigen::Vector3d pc = to_camera(extr, m);
      if (!(pc.z() > kMinDepth)) {
        continue;
      }
      r2 = std::max(r2, std::hypot(pc.x() / pc.z(), pc.y() / pc.z()));
    }
  }
  return r2;
}

double update_r2(const Eigen::VectorXd& params, ModelFamily family,
                 const CalibrationDataset& data) {
  return update_r2(unpack(params, family, data.images.size()), data);
}

ObjectiveEvaluation objective(const Eigen::VectorXd& params, const CalibrationDataset& data,
                              ModelFamily family) {
  const CameraState state = unpack(params, family, data.images.size());
  ObjectiveEvaluation out;
  out.r2 = update_r2(state, data);
  const DistortionModel model = make_model(family, state.distortion, out.r2);
  const Intrinsics& intr = state.intrinsics;

  out.residuals = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * data.observation_count()));
  out.per_image_sse.assign(data.images.size(), 0.0);
  Eigen::Index k = 0;
  for (std::size_t i = 0; i < data.images.size(); ++i) {
    const Extrinsics extr = extrinsics_from_pose(state.poses[i]);
    double sse = 0.0;
    for (std::size_t j = 0; j < data.model_points.size(); ++j, k += 2) {
      const Eigen::Vector3d pc = to_camera(extr, data.model_points[j]);
      if (!(pc.z() > kMinDepth)) {
        ++out.excluded_points;
        continue;
      }
      const PixelPoint ideal = normalized_to_pixel(intr, {pc.x() / pc.z(), pc.y() / pc.z()});
      const PixelPoint predicted = distort_pixel(model, intr, ideal);
      const PixelPoint& observed = data.images[i].points[j];
      const double du = predicted.u - observed.u;
      const double dv = predicted.v - observed.v;
      out.residuals(k) = du;
      out.residuals(k + 1) = dv;
      sse += du * du + dv * dv;
    }
    out.per_image_sse[i] = sse;
  }
  out.J = out.residuals.squaredNorm();
  return out;
}

Eigen::MatrixXd jacobian(const Eigen::VectorXd& params, const CalibrationDataset& data,
                         ModelFamily family) {
  const Eigen::VectorXd base = objective(params, data, family).residuals;
  Eigen::MatrixXd jac(base.size(), params.size());
  Eigen::VectorXd x = params;
  for (Eigen::Index c = 0; c < params.size(); ++c) {
    const double h = std::max(1e-7, 1e-7 * std::abs(params(c)));
    x(c) = params(c) + h;
    // The realized step is (x(c) - params(c)), which differs from h by roundoff.
    jac.col(c) = (objective(x, data, family).residuals - base) / (x(c) - params(c));
    x(c) = params(c);
  }
  return jac;
}

std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::StepTolerance: return "step-tolerance";
    case Termination::FunctionTolerance: return "function-tolerance";
    case Termination::MaxIterations: return "max-iterations";
    case Termination::MaxFunctionEvaluations: return "max-function-evaluations";
    case Termination::ZeroObjective: return "zero-objective";
    case Termination::DampingLimit: return "damping-limit";
  }
  return "unknown";
}

Termination parse_termination(std::string_view name) {
  for (auto t : {Termination::StepTolerance, Termination::FunctionTolerance,
                 Termination::MaxIterations, Termination::MaxFunctionEvaluations,
                 Termination::ZeroObjective, Termination::DampingLimit}) {
    if (to_string(t) == name) {
      return t;
    }
  }
  throw Error(ErrorCode::ParseError, "unknown termination reason '" + std::string(name) + "'");
}

DistortionModel CalibrationResult::model() const {
  return make_model(family, coefficients, r2);
}

CalibrationResult refine(const InitialEstimate& init, const CalibrationDataset& data,
                         const RefineOptions& options) {
  data.validate(1);
  if (init.extrinsics.size() != data.images.size()) {
    throw Error(ErrorCode::ShapeError, "initial estimate has one pose per image");
  }
  const ModelFamily family = init.family;
  Eigen::VectorXd x = pack(state_from_estimate(init));
  require_params(x, family, data.images.size());
  if (!x.allFinite()) {
    throw Error(ErrorCode::DivergedObjective, "initial estimate is not finite");
  }

  ObjectiveEvaluation current = objective(x, data, family);
  int evals = 1;
  if (!std::isfinite(current.J)) {
    throw Error(ErrorCode::DivergedObjective, "objective is not finite at the initial estimate");
  }
  ObjectiveReport report;
  report.initial_J = current.J;

  // Trial evaluation; any failure at a trial point counts as a rejected step.
  auto try_objective = [&](const Eigen::VectorXd& trial) -> std::optional<ObjectiveEvaluation> {
    ++evals;
    try {
      ObjectiveEvaluation e = objective(trial, data, family);
      if (std::isfinite(e.J)) {
        return e;
      }
    } catch (const Error&) {
    }
    return std::nullopt;
  };

  double damping = options.initial_damping;
  const Eigen::Index n = x.size();
  bool done = false;
  report.termination = Termination::MaxIterations;
  int iter = 0;
  while (!done && iter < options.max_iter) {
    if (current.J == 0.0) {
      report.termination = Termination::ZeroObjective;
      break;
    }
    if (evals + n > options.max_fun_evals) {
      report.termination = Termination::MaxFunctionEvaluations;
      break;
    }
    ++iter;
    const Eigen::MatrixXd jac = jacobian(x, data, family);
    evals += static_cast<int>(n);
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd gradient = jac.transpose() * current.residuals;
    Eigen::VectorXd scale = normal.diagonal();
    for (Eigen::Index c = 0; c < n; ++c) {
      scale(c) = std::max(scale(c), 1e-12);
    }

    while (true) {
      Eigen::MatrixXd damped = normal;
      damped.diagonal() += damping * scale;
      const Eigen::VectorXd step = -damped.ldlt().solve(gradient);
      double step_size = 0.0;
      for (Eigen::Index c = 0; c < n; ++c) {
        step_size = std::max(step_size, std::abs(step(c)) / (1.0 + std::abs(x(c))));
      }
      const Eigen::VectorXd trial = x + step;
      auto eval = step.allFinite() ? try_objective(trial) : std::nullopt;

      if (eval && eval->J < current.J) {
        const double decrease = (current.J - eval->J) / current.J;
        x = trial;
        current = std::move(*eval);
        damping = std::max(damping / 10.0, 1e-15);
        if (step_size < options.tol_x) {
          report.termination = Termination::StepTolerance;
          done = true;
        } else if (decrease < options.tol_fun) {
          report.termination = Termination::FunctionTolerance;
          done = true;
        }
        break;
      }
      if (step_size < options.tol_x && damping <= options.initial_damping) {
        // No decrease from an already negligible undamped step.
        report.termination = Termination::StepTolerance;
        done = true;
        break;
      }
      damping *= 10.0;
      if (damping > kMaxDamping) {
        report.termination = Termination::DampingLimit;
        done = true;
        break;
      }
      if (evals >= options.max_fun_evals) {
        report.termination = Termination::MaxFunctionEvaluations;
        done = true;
        break;
      }
    }
  }

  const CameraState state = unpack(x, family, data.images.size());
  CalibrationResult result;
  result.family = family;
  result.coefficients = state.distortion;
  result.intrinsics = state.intrinsics;
  for (std::size_t i = 0; i < data.images.size(); ++i) {
    result.image_names.push_back(data.images[i].name);
    result.extrinsics.push_back(extrinsics_from_pose(state.poses[i]));
  }
  result.r2 = current.r2;

  report.J = current.J;
  report.per_image_sse = current.per_image_sse;
  const auto n_points = static_cast<double>(data.model_points.size());
  for (double sse : current.per_image_sse) {
    report.per_image_rms.push_back(std::sqrt(sse / n_points));
  }
  report.iterations = iter;
  report.function_evaluations = evals;
  report.excluded_points = current.excluded_points;
  report.converged = report.termination == Termination::StepTolerance ||
                     report.termination == Termination::FunctionTolerance ||
                     report.termination == Termination::ZeroObjective;
  result.objective = std::move(report);
  result.monotone = check_monotone(result.model(), result.r2).monotone;
  return result;
}

}  // namespace radcal
