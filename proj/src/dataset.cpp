#include "radcal/dataset.hpp"

#include <cmath>

#include "radcal/error.hpp"

namespace radcal {

void CalibrationDataset::validate(std::size_t min_images) const {
  if (model_points.empty()) {
    throw Error(ErrorCode::ShapeError, "dataset has no model points");
  }
  for (std::size_t j = 0; j < model_points.size(); ++j) {
    if (!std::isfinite(model_points[j].x) || !std::isfinite(model_points[j].y)) {
      throw Error(ErrorCode::ShapeError, "model point " + std::to_string(j) + " is not finite");
    }
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& img = images[i];
    if (img.points.size() != model_points.size()) {
      throw Error(ErrorCode::ShapeError,
                  "image " + std::to_string(i) + " ('" + img.name + "') has " +
                      std::to_string(img.points.size()) + " points, expected " +
                      std::to_string(model_points.size()));
    }
    for (std::size_t j = 0; j < img.points.size(); ++j) {
      if (!std::isfinite(img.points[j].u) || !std::isfinite(img.points[j].v)) {
        throw Error(ErrorCode::ShapeError, "image " + std::to_string(i) + " point " +
                                               std::to_string(j) + " is not finite");
      }
    }
  }
  if (images.size() < min_images) {
    throw Error(ErrorCode::InsufficientViews,
                "need at least " + std::to_string(min_images) + " images, got " +
                    std::to_string(images.size()));
  }
}

}  // namespace radcal
