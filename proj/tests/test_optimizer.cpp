#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "radcal/calib_init.hpp"
#include "radcal/error.hpp"
#include "radcal/optimizer.hpp"
#include "radcal/synth.hpp"

namespace radcal {
namespace {

InitialEstimate truth_estimate(const SyntheticScene& s) {
  return {s.truth_family, s.truth_intrinsics, s.truth_extrinsics, s.truth_coefficients};
}

Eigen::VectorXd truth_params(const SyntheticScene& s) {
  return pack(state_from_estimate(truth_estimate(s)));
}

Extrinsics fronto(double z) {
  Extrinsics e;
  e.translation = Eigen::Vector3d(0.0, 0.0, z);
  return e;
}

// Three identical fronto-parallel views of the given target at distance 1.
CalibrationDataset fronto_dataset(const std::vector<ModelPoint>& pts) {
  const Intrinsics intr{800.0, 800.0, 0.0, 320.0, 240.0};
  CalibrationDataset data;
  data.model_points = pts;
  for (int i = 0; i < 3; ++i) {
    ImageObservations img{"v" + std::to_string(i), {}};
    for (const auto& p : pts) {
      img.points.push_back(project_ideal(intr, fronto(1.0), p));
    }
    data.images.push_back(img);
  }
  return data;
}

CameraState fronto_state(ModelFamily family) {
  CameraState s;
  s.intrinsics = {800.0, 800.0, 0.0, 320.0, 240.0};
  s.poses.assign(3, pose_from_extrinsics(fronto(1.0)));
  s.distortion = neutral_coefficients(family);
  return s;
}

TEST(Packing, RoundTripIsExact) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (ModelFamily f : {ModelFamily::PolyEven2, ModelFamily::PolyQuad, ModelFamily::Piecewise}) {
    CameraState s;
    s.intrinsics = {u(rng) + 900.0, u(rng) + 900.0, u(rng), u(rng) + 300.0, u(rng) + 200.0};
    for (int i = 0; i < 4; ++i) {
      s.poses.push_back({{u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}});
    }
    for (std::size_t k = 0; k < coefficient_count(f); ++k) {
      s.distortion.push_back(u(rng));
    }
    const Eigen::VectorXd x = pack(s);
    EXPECT_EQ(static_cast<std::size_t>(x.size()), parameter_count(f, 4));
    EXPECT_EQ(parameter_count(f, 4), 5 + 6 * 4 + coefficient_count(f));
    EXPECT_EQ(unpack(x, f, 4), s);
    EXPECT_EQ(pack(unpack(x, f, 4)), x);
  }
  EXPECT_EQ(parameter_count(ModelFamily::Piecewise, 5), parameter_count(ModelFamily::PolyQuad, 5) + 1);
}

TEST(Objective, ZeroAtTruthForEveryFamily) {
  const std::vector<std::pair<ModelFamily, std::vector<double>>> truths = {
      {ModelFamily::PolyEven2, {-0.2286, 0.1905}},
      {ModelFamily::PolyQuad, {-0.1, -0.15}},
      {ModelFamily::Piecewise, {0.9410, -0.2563, 0.8270}},
  };
  for (const auto& [family, coeffs] : truths) {
    SyntheticScene s = default_scene(2, 0.0);
    s.truth_family = family;
    s.truth_coefficients = coeffs;
    const CalibrationDataset data = generate(s);
    const ObjectiveEvaluation e = objective(truth_params(s), data, family);
    EXPECT_LT(e.J, 1e-16) << to_string(family);
    EXPECT_EQ(e.residuals.size(), static_cast<Eigen::Index>(2 * data.observation_count()));
    EXPECT_NEAR(e.r2, truth_r2(s), 1e-12);
  }
}

TEST(Objective, PrincipalPointShiftIncreasesJ) {
  const SyntheticScene s = default_scene(2, 0.0);
  const CalibrationDataset data = generate(s);
  Eigen::VectorXd x = truth_params(s);
  const double base = objective(x, data, s.truth_family).J;
  x(2) += 1.0;
  EXPECT_GT(objective(x, data, s.truth_family).J, base);
}

TEST(Objective, SumsPerImageErrors) {
  const SyntheticScene s = default_scene(3, 0.5);
  const CalibrationDataset data = generate(s);
  const ObjectiveEvaluation e = objective(truth_params(s), data, s.truth_family);
  const double total = std::accumulate(e.per_image_sse.begin(), e.per_image_sse.end(), 0.0);
  EXPECT_NEAR(total, e.J, 1e-12 * e.J);
  EXPECT_NEAR(e.J, e.residuals.squaredNorm(), 0.0);
}

TEST(Objective, PointsBehindCameraAreExcluded) {
  SyntheticScene s = default_scene(3, 0.0);
  const CalibrationDataset data = generate(s);
  InitialEstimate est = truth_estimate(s);
  // Put the first view's plane through the camera centre, tilted.
  est.extrinsics[0].translation = Eigen::Vector3d(0.0, 0.0, 0.05);
  const ObjectiveEvaluation e = objective(pack(state_from_estimate(est)), data, s.truth_family);
  EXPECT_GT(e.excluded_points, 0u);
  EXPECT_LT(e.excluded_points, data.model_points.size());
  EXPECT_TRUE(std::isfinite(e.J));
}

TEST(UpdateR2, KnownMaximumRadius) {
  const CalibrationDataset data = fronto_dataset({{0.62, 0.0}, {0.1, 0.2}, {-0.3, 0.1}, {0.0, 0.5}});
  EXPECT_NEAR(update_r2(fronto_state(ModelFamily::Piecewise), data), 0.62, 1e-12);
}

TEST(UpdateR2, SinglePointOnAxisIsDegenerate) {
  const CalibrationDataset data = fronto_dataset({{0.0, 0.0}});
  const CameraState st = fronto_state(ModelFamily::Piecewise);
  EXPECT_EQ(update_r2(st, data), 0.0);
  try {
    (void)objective(pack(st), data, ModelFamily::Piecewise);
    FAIL() << "expected DegenerateKnot";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateKnot);
  }
}

TEST(UpdateR2, NonDecreasingAsPointsAreAdded) {
  const SyntheticScene s = default_scene(5, 0.0);
  const CameraState st = state_from_estimate(truth_estimate(s));
  const CalibrationDataset full = generate(s);
  double previous = 0.0;
  for (std::size_t n = 1; n <= full.model_points.size(); ++n) {
    CalibrationDataset part;
    part.model_points.assign(full.model_points.begin(), full.model_points.begin() + n);
    for (const auto& img : full.images) {
      part.images.push_back({img.name, {img.points.begin(), img.points.begin() + n}});
    }
    const double r2 = update_r2(st, part);
    ASSERT_GE(r2, previous);
    previous = r2;
  }
  EXPECT_NEAR(previous, truth_r2(s), 1e-12);
}

TEST(Jacobian, PrincipalPointColumns) {
  const CalibrationDataset data = fronto_dataset({{0.1, 0.2}});
  const Eigen::MatrixXd jac =
      jacobian(pack(fronto_state(ModelFamily::PolyQuad)), data, ModelFamily::PolyQuad);
  ASSERT_EQ(jac.rows(), 6);
  EXPECT_NEAR(jac(0, 2), 1.0, 1e-6);   // du/du0
  EXPECT_NEAR(jac(0, 4), 0.0, 1e-9);   // du/dv0
  EXPECT_NEAR(jac(1, 4), 1.0, 1e-6);   // dv/dv0
}

TEST(Jacobian, CoefficientsOfCentralPointHaveNoInfluence) {
  const CalibrationDataset data = fronto_dataset({{0.0, 0.0}});
  const Eigen::VectorXd x = pack(fronto_state(ModelFamily::PolyQuad));
  const Eigen::MatrixXd jac = jacobian(x, data, ModelFamily::PolyQuad);
  const Eigen::Index k1 = x.size() - 2;
  EXPECT_TRUE(jac.col(k1).isZero(0.0));
  EXPECT_TRUE(jac.col(k1 + 1).isZero(0.0));
}

TEST(Jacobian, MatchesCentralDifferences) {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> jitter(0.0, 1.0);
  for (ModelFamily family : {ModelFamily::PolyEven2, ModelFamily::PolyQuad, ModelFamily::Piecewise}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const SyntheticScene s = default_scene(seed, 0.5);
      const CalibrationDataset data = generate(s);
      InitialEstimate est = truth_estimate(s);
      est.family = family;
      est.distortion = family == ModelFamily::Piecewise ? std::vector<double>{0.95, -0.2, 0.9}
                                                        : std::vector<double>{-0.1, -0.15};
      Eigen::VectorXd x = pack(state_from_estimate(est));
      x(0) += 5.0 * jitter(rng);
      x(2) += 3.0 * jitter(rng);
      const double dev = oracle::max_column_deviation(jacobian(x, data, family),
                                                      oracle::central_jacobian(x, data, family));
      EXPECT_LT(dev, 1e-4) << to_string(family) << " seed " << seed;
    }
  }
}

TEST(Refine, StartingAtTruthStopsQuickly) {
  const SyntheticScene s = default_scene(6, 0.0);
  const CalibrationDataset data = generate(s);
  const CalibrationResult r = refine(truth_estimate(s), data);
  EXPECT_LE(r.objective.iterations, 2);
  EXPECT_LT(r.objective.J, 1e-16);
  EXPECT_TRUE(r.objective.converged);
}

TEST(Refine, ReducesNoisyObjective) {
  const SyntheticScene s = default_scene(7, 0.5);
  const CalibrationDataset data = generate(s);
  const LinearInit init = linear_init(data);
  for (ModelFamily f : {ModelFamily::PolyEven2, ModelFamily::PolyQuad, ModelFamily::Piecewise}) {
    const CalibrationResult r = refine(initial_estimate(init, f, data), data);
    EXPECT_LT(r.objective.J, r.objective.initial_J) << to_string(f);
    EXPECT_TRUE(r.objective.converged);
    EXPECT_TRUE(r.monotone);

    // Reported J is the objective at the returned parameters.
    const InitialEstimate back{f, r.intrinsics, r.extrinsics, r.coefficients};
    const double again = objective(pack(state_from_estimate(back)), data, f).J;
    EXPECT_NEAR(again, r.objective.J, 1e-12 * r.objective.J);

    double from_rms = 0.0;
    for (double rms : r.objective.per_image_rms) {
      from_rms += static_cast<double>(data.model_points.size()) * rms * rms;
    }
    EXPECT_NEAR(from_rms, r.objective.J, 1e-12 * r.objective.J);
  }
}

TEST(Refine, PiecewiseMatchesGeneratingPolyQuad) {
  const SyntheticScene s = default_scene(8, 0.25);
  const CalibrationDataset data = generate(s);
  const LinearInit init = linear_init(data);
  const CalibrationResult quad = refine(initial_estimate(init, ModelFamily::PolyQuad, data), data);
  const CalibrationResult pw = refine(initial_estimate(init, ModelFamily::Piecewise, data), data);
  EXPECT_LE(pw.objective.J, quad.objective.J + 1e-6 * (1.0 + quad.objective.J));
  EXPECT_EQ(pw.coefficients.size(), quad.coefficients.size() + 1);
}

TEST(Refine, NonFiniteStartIsRejected) {
  const SyntheticScene s = default_scene(6, 0.0);
  InitialEstimate est = truth_estimate(s);
  est.intrinsics.alpha = std::nan("");
  try {
    (void)refine(est, generate(s));
    FAIL() << "expected DivergedObjective";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivergedObjective);
  }
}

TEST(Refine, RespectsIterationLimit) {
  const SyntheticScene s = default_scene(9, 0.5);
  const CalibrationDataset data = generate(s);
  RefineOptions opts;
  opts.max_iter = 1;
  const CalibrationResult r =
      refine(initial_estimate(linear_init(data), ModelFamily::PolyQuad, data), data, opts);
  EXPECT_EQ(r.objective.iterations, 1);
  EXPECT_EQ(r.objective.termination, Termination::MaxIterations);
  EXPECT_FALSE(r.objective.converged);
  EXPECT_LE(r.objective.J, r.objective.initial_J);
}

TEST(Termination, NamesRoundTrip) {
  for (Termination t : {Termination::StepTolerance, Termination::FunctionTolerance,
                        Termination::MaxIterations, Termination::MaxFunctionEvaluations,
                        Termination::ZeroObjective, Termination::DampingLimit}) {
    EXPECT_EQ(parse_termination(to_string(t)), t);
  }
}

}  // namespace
}  // namespace radcal
