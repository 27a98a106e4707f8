#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "radcal/dataset.hpp"
#include "radcal/optimizer.hpp"

namespace radcal {

// Dataset file (JSON):
//   {
//     "model_points": [[x, y], ...],
//     "images": [ {"name": "img1", "points": [[u, v], ...]}, ... ]
//   }
// Image points are index-aligned with model_points.
[[nodiscard]] CalibrationDataset parse_dataset(std::string_view text);
[[nodiscard]] CalibrationDataset load_dataset(const std::filesystem::path& path);
[[nodiscard]] std::string dataset_to_string(const CalibrationDataset& data);
void save_dataset(const std::filesystem::path& path, const CalibrationDataset& data);

// Result file (JSON): model_family, coefficients, intrinsics in
// (alpha, gamma, u0, beta, v0) order, r2, objective summary, and per-image
// extrinsics with the rotation as 9 row-major entries.
[[nodiscard]] CalibrationResult parse_result(std::string_view text);
[[nodiscard]] CalibrationResult load_result(const std::filesystem::path& path);
[[nodiscard]] std::string result_to_string(const CalibrationResult& result);
void save_result(const std::filesystem::path& path, const CalibrationResult& result);

// Points file (JSON): {"points": [[u, v], ...]}
[[nodiscard]] std::vector<PixelPoint> parse_points(std::string_view text);
[[nodiscard]] std::vector<PixelPoint> load_points(const std::filesystem::path& path);
[[nodiscard]] std::string points_to_string(const std::vector<PixelPoint>& points);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace radcal
