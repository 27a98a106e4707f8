#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radcal/dataset.hpp"
#include "radcal/error.hpp"
#include "radcal/optimizer.hpp"

namespace radcal {

/// 0 success, 1 numerical failure, 2 input or usage error.
[[nodiscard]] int exit_status(ErrorCode code) noexcept;

/// Linear init followed by refinement. Needs at least three images.
[[nodiscard]] CalibrationResult cmd_calibrate(const CalibrationDataset& data, ModelFamily family,
                                              const RefineOptions& options = {});

/// One line, columns J | coefficients | alpha gamma u0 beta v0.
[[nodiscard]] std::string format_summary(const CalibrationResult& result);

struct ComparisonRow {
  ModelFamily family = ModelFamily::PolyQuad;
  std::optional<CalibrationResult> result;
  std::string error;   // set when this family failed
};

/// Fits all three families from one shared linear init. A failure in one
/// family is reported in its row and does not stop the others.
[[nodiscard]] std::vector<ComparisonRow> cmd_compare(const CalibrationDataset& data,
                                                     const RefineOptions& options = {});

[[nodiscard]] std::string format_comparison_table(std::span<const ComparisonRow> rows);
/// Header: model,J,c1,c2,c3,alpha,gamma,u0,beta,v0,iterations,status
[[nodiscard]] std::string format_comparison_csv(std::span<const ComparisonRow> rows);

struct CurveSample {
  double r = 0.0;
  double f = 0.0;
};

/// (r, f(r)) on a uniform grid over [0, result.r2], endpoints included.
[[nodiscard]] std::vector<CurveSample> cmd_curve(const CalibrationResult& result, int samples);
/// "r,f" header then one sample per line.
[[nodiscard]] std::string format_curve(std::span<const CurveSample> samples);

/// Removes distortion from observed pixels. Exact for poly-quad and
/// piecewise. The even-order model is refused with UnsupportedModel unless
/// `approximate` is set, in which case the first-order inverse is used.
/// Throws NoValidRoot naming the first point that cannot be inverted.
[[nodiscard]] std::vector<PixelPoint> cmd_undistort_points(const CalibrationResult& result,
                                                           std::span<const PixelPoint> points,
                                                           bool approximate = false);

}  // namespace radcal
