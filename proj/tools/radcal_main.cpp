#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radcal/commands.hpp"
#include "radcal/io.hpp"
#include "radcal/synth.hpp"

namespace {

void add_refine_flags(CLI::App* cmd, radcal::RefineOptions& opts) {
  cmd->add_option("--tol-x", opts.tol_x, "Step tolerance")->capture_default_str();
  cmd->add_option("--tol-fun", opts.tol_fun, "Relative objective decrease tolerance")
      ->capture_default_str();
  cmd->add_option("--max-iter", opts.max_iter, "Iteration limit")->capture_default_str();
  cmd->add_option("--max-fun-evals", opts.max_fun_evals, "Residual evaluation limit")
      ->capture_default_str();
}

const std::vector<std::string> kModelNames{"poly-even2", "poly-quad", "piecewise"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar camera calibration with radial distortion models"};
  app.require_subcommand(1);

  radcal::RefineOptions refine_opts;
  std::string data_path;
  std::string out_path;
  std::string model_name = "poly-quad";

  auto* calibrate = app.add_subcommand("calibrate", "Fit one distortion model to a dataset");
  calibrate->add_option("--data", data_path, "Dataset file")->required();
  calibrate->add_option("--model", model_name, "Distortion model")
      ->check(CLI::IsMember(kModelNames))
      ->capture_default_str();
  calibrate->add_option("--out", out_path, "Result file");
  add_refine_flags(calibrate, refine_opts);

  auto* compare = app.add_subcommand("compare", "Fit all three models from one shared init");
  compare->add_option("--data", data_path, "Dataset file")->required();
  compare->add_option("--out", out_path, "CSV file with one row per model");
  add_refine_flags(compare, refine_opts);

  std::string result_path;
  int samples = 101;
  auto* curve = app.add_subcommand("curve", "Sample f(r) of a fitted model");
  curve->add_option("--result", result_path, "Result file")->required();
  curve->add_option("--samples", samples, "Grid size")->capture_default_str();
  curve->add_option("--out", out_path, "Output CSV (stdout when omitted)");

  std::string points_path;
  bool approximate = false;
  auto* undistort = app.add_subcommand("undistort-points", "Remove distortion from pixels");
  undistort->add_option("--result", result_path, "Result file")->required();
  undistort->add_option("--points", points_path, "Points file")->required();
  undistort->add_option("--out", out_path, "Output points file")->required();
  undistort->add_flag("--approx", approximate,
                      "Allow the first-order inverse for the even-order model");

  std::uint64_t seed = 1;
  double noise = 0.5;
  int views = 5;
  int grid = 8;
  std::vector<double> coeffs;
  auto* synth = app.add_subcommand("synth", "Write a synthetic dataset");
  synth->add_option("--out", out_path, "Dataset file")->required();
  synth->add_option("--seed", seed, "Random seed")->capture_default_str();
  synth->add_option("--model", model_name, "Truth distortion model")
      ->check(CLI::IsMember(kModelNames))
      ->capture_default_str();
  synth->add_option("--coeffs", coeffs, "Truth coefficients (k1 k2, or f1 d1 f2)");
  synth->add_option("--noise", noise, "Pixel noise sigma")->capture_default_str();
  synth->add_option("--views", views, "Number of poses")->capture_default_str();
  synth->add_option("--grid", grid, "Grid points per side")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*calibrate) {
      const auto data = radcal::load_dataset(data_path);
      const auto result =
          radcal::cmd_calibrate(data, radcal::parse_model_family(model_name), refine_opts);
      if (!out_path.empty()) {
        radcal::save_result(out_path, result);
      }
      std::cout << radcal::format_summary(result) << "\n";
      if (!result.monotone) {
        std::cerr << "warning: r f(r) is not increasing on [0, r2]\n";
      }
    } else if (*compare) {
      const auto data = radcal::load_dataset(data_path);
      const auto rows = radcal::cmd_compare(data, refine_opts);
      std::cout << radcal::format_comparison_table(rows);
      if (!out_path.empty()) {
        radcal::write_text_file(out_path, radcal::format_comparison_csv(rows));
      }
    } else if (*curve) {
      const auto result = radcal::load_result(result_path);
      const std::string text = radcal::format_curve(radcal::cmd_curve(result, samples));
      if (out_path.empty()) {
        std::cout << text;
      } else {
        radcal::write_text_file(out_path, text);
      }
    } else if (*undistort) {
      const auto result = radcal::load_result(result_path);
      const auto points = radcal::load_points(points_path);
      radcal::write_text_file(
          out_path,
          radcal::points_to_string(radcal::cmd_undistort_points(result, points, approximate)));
    } else if (*synth) {
      auto scene = radcal::default_scene(seed, noise);
      scene.truth_family = radcal::parse_model_family(model_name);
      if (!coeffs.empty()) {
        scene.truth_coefficients = coeffs;
      } else if (scene.truth_family == radcal::ModelFamily::PolyEven2) {
        scene.truth_coefficients = {-0.2286, 0.1905};
      } else if (scene.truth_family == radcal::ModelFamily::Piecewise) {
        scene.truth_coefficients = {0.9908, -0.0936, 0.9653};
      }
      scene.grid = radcal::planar_grid(grid, grid, 1.0 / std::max(grid - 1, 1));
      scene.truth_extrinsics = radcal::sample_poses(views, 1.0, seed);
      radcal::save_dataset(out_path, radcal::generate(scene));
    }
  } catch (const radcal::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return radcal::exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
