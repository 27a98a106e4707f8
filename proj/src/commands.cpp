#include "radcal/commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "radcal/calib_init.hpp"

namespace radcal {
namespace {

std::string fixed(double v, int precision = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CalibrationResult fit(const LinearInit& init, ModelFamily family, const CalibrationDataset& data,
                      const RefineOptions& options) {
  return refine(initial_estimate(init, family, data), data, options);
}

}  // namespace

int exit_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ShapeError:
    case ErrorCode::InsufficientViews:
    case ErrorCode::UnsupportedModel:
    case ErrorCode::InvalidArgument:
      return 2;
    default:
      return 1;
  }
}

CalibrationResult cmd_calibrate(const CalibrationDataset& data, ModelFamily family,
                                 const RefineOptions& options) {
  data.validate(3);
  return fit(linear_init(data), family, data, options);
}

std::string format_summary(const CalibrationResult& r) {
  std::ostringstream out;
  out << to_string(r.family) << "  J=" << fixed(r.objective.J) << "  coefs=(";
  for (std::size_t k = 0; k < r.coefficients.size(); ++k) {
    out << (k ? ", " : "") << fixed(r.coefficients[k]);
  }
  const Intrinsics& in = r.intrinsics;
  out << ")  alpha=" << fixed(in.alpha) << " gamma=" << fixed(in.gamma) << " u0=" << fixed(in.u0)
      << " beta=" << fixed(in.beta) << " v0=" << fixed(in.v0);
  return out.str();
}

std::vector<ComparisonRow> cmd_compare(const CalibrationDataset& data,
                                       const RefineOptions& options) {
  data.validate(3);
  const LinearInit init = linear_init(data);
  std::vector<ComparisonRow> rows;
  for (auto family : {ModelFamily::PolyEven2, ModelFamily::PolyQuad, ModelFamily::Piecewise}) {
    ComparisonRow row;
    row.family = family;
    try {
      row.result = fit(init, family, data, options);
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_comparison_table(std::span<const ComparisonRow> rows) {
  char line[256];
  std::ostringstream out;
  std::snprintf(line, sizeof(line), "%-11s %12s %9s %9s %9s %10s %8s %10s %10s %10s\n", "model",
                "J", "c1", "c2", "c3", "alpha", "gamma", "u0", "beta", "v0");
  out << line;
  for (const auto& row : rows) {
    if (!row.result) {
      out << std::string(to_string(row.family)) << "  failed: " << row.error << "\n";
      continue;
    }
    const CalibrationResult& r = *row.result;
    const auto& c = r.coefficients;
    const std::string c3 = c.size() > 2 ? fixed(c[2]) : std::string("-");
    std::snprintf(line, sizeof(line), "%-11s %12.4f %9.4f %9.4f %9s %10.4f %8.4f %10.4f %10.4f %10.4f\n",
                  std::string(to_string(r.family)).c_str(), r.objective.J, c[0], c[1], c3.c_str(),
                  r.intrinsics.alpha, r.intrinsics.gamma, r.intrinsics.u0, r.intrinsics.beta,
                  r.intrinsics.v0);
    out << line;
  }
  return out.str();
}

std::string format_comparison_csv(std::span<const ComparisonRow> rows) {
  std::ostringstream out;
  out << "model,J,c1,c2,c3,alpha,gamma,u0,beta,v0,iterations,status\n";
  for (const auto& row : rows) {
    out << to_string(row.family) << ",";
    if (!row.result) {
      out << ",,,,,,,,,,failed\n";
      continue;
    }
    const CalibrationResult& r = *row.result;
    const auto& c = r.coefficients;
    out << exact(r.objective.J) << "," << exact(c[0]) << "," << exact(c[1]) << ","
        << (c.size() > 2 ? exact(c[2]) : std::string()) << "," << exact(r.intrinsics.alpha) << ","
        << exact(r.intrinsics.gamma) << "," << exact(r.intrinsics.u0) << ","
        << exact(r.intrinsics.beta) << "," << exact(r.intrinsics.v0) << ","
        << r.objective.iterations << "," << to_string(r.objective.termination) << "\n";
  }
  return out.str();
}

std::vector<CurveSample> cmd_curve(const CalibrationResult& result, int samples) {
  if (samples < 2) {
    throw Error(ErrorCode::InvalidArgument, "a curve needs at least 2 samples");
  }
  const DistortionModel model = result.model();
  std::vector<CurveSample> curve;
  curve.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double r = k == samples - 1 ? result.r2 : result.r2 * k / (samples - 1);
    curve.push_back({r, radial_factor(model, r)});
  }
  return curve;
}

std::string format_curve(std::span<const CurveSample> samples) {
  std::ostringstream out;
  out << "r,f\n";
  for (const auto& s : samples) {
    out << exact(s.r) << "," << exact(s.f) << "\n";
  }
  return out.str();
}

std::vector<PixelPoint> cmd_undistort_points(const CalibrationResult& result,
                                             std::span<const PixelPoint> points,
                                             bool approximate) {
  const DistortionModel model = result.model();
  const Intrinsics& intr = result.intrinsics;
  const bool even = result.family == ModelFamily::PolyEven2;
  if (even && !approximate) {
    throw Error(ErrorCode::UnsupportedModel,
                "poly-even2 has no exact analytical inverse; pass --approx for the "
                "first-order approximation");
  }
  std::vector<PixelPoint> out;
  out.reserve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const PixelPoint& p = points[k];
    try {
      if (even) {
        const NormalizedPoint n = pixel_to_normalized(intr, p);
        const double r_d = std::hypot(n.x, n.y);
        if (r_d == 0.0) {
          out.push_back(p);
          continue;
        }
        const double s = undistort_radius_approx(std::get<PolyEven2>(model), r_d) / r_d;
        out.push_back({intr.u0 + (p.u - intr.u0) * s, intr.v0 + (p.v - intr.v0) * s});
      } else {
        out.push_back(undistort_pixel(model, intr, p));
      }
    } catch (const Error& e) {
      throw Error(e.code(), "point " + std::to_string(k) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace radcal
