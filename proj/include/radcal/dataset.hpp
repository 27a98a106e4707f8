#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "radcal/geometry.hpp"

namespace radcal {

struct ImageObservations {
  std::string name;
  std::vector<PixelPoint> points;  // index-aligned with the model points
  friend bool operator==(const ImageObservations&, const ImageObservations&) = default;
};

/// Planar target points shared by every image, plus the observed (distorted)
/// pixel location of each target point in each image. Pixel coordinates are
/// taken as given; no convention about pixel centers is imposed.
struct CalibrationDataset {
  std::vector<ModelPoint> model_points;
  std::vector<ImageObservations> images;

  /// Throws ShapeError if any image disagrees with the model point count,
  /// InsufficientViews if there are fewer than `min_images` images.
  void validate(std::size_t min_images = 1) const;

  [[nodiscard]] std::size_t observation_count() const noexcept {
    return model_points.size() * images.size();
  }
  friend bool operator==(const CalibrationDataset&, const CalibrationDataset&) = default;
};

}  // namespace radcal
