// Copyright 2026-present the vfr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vfr/box.hpp"
#include "vfr/raster.hpp"

namespace vfr {

inline constexpr int kLandmarkCount = 5;

struct FaceAnnotation {
    Box bbox;
    /// Absent for landmark-free annotations.
    std::optional<std::array<Point, kLandmarkCount>> landmarks;
    bool valid = true;

    friend bool operator==(const FaceAnnotation&, const FaceAnnotation&) = default;
};

struct AugmentConfig {
    int crop_size = 320;
    std::vector<double> scales{0.2, 0.4, 0.6, 0.8, 1.0};
    int crops_per_image = 25;
    /// A face survives a crop when its clipped area is at least this fraction
    /// of its (resized) area.
    double min_face_overlap = 0.5;
    std::uint64_t rng_seed = 42;

    void validate() const;
};

/// Geometry of one crop: resize factor and window origin in resized pixels.
struct CropTransform {
    double scale = 1.0;   // the drawn entry of AugmentConfig::scales
    double factor = 1.0;  // 1 / scale
    int resized_width = 0;
    int resized_height = 0;
    int origin_x = 0;
    int origin_y = 0;

    [[nodiscard]] Point forward(Point p) const {
        return {p.x * factor - origin_x, p.y * factor - origin_y};
    }
    [[nodiscard]] Point inverse(Point p) const {
        return {(p.x + origin_x) / factor, (p.y + origin_y) / factor};
    }
};

template <PixelSample T>
struct AugmentedCrop {
    Raster<T> image;
    std::vector<FaceAnnotation> faces;
    CropTransform transform;
};

template <PixelSample T>
struct AugmentResult {
    std::vector<AugmentedCrop<T>> crops;
    /// One entry per draw of a scale that could not hold a crop window.
    std::vector<std::string> warnings;
};

/// Applies a crop transform to one annotation: scale, translate, clip, and
/// mark valid by the overlap rule. Landmarks are mapped but never clipped.
FaceAnnotation transform_annotation(const FaceAnnotation& ann, const CropTransform& t,
                                    int crop_size, double min_face_overlap);

/**
 * Multi-scale random crops for detector training.
 *
 * Each crop draws a scale s from cfg.scales, scales the image by 1/s (extent
 * floor(side / s)), and takes a uniformly placed crop_size x crop_size window.
 * Draws that cannot hold the window are recorded as warnings and redrawn.
 * Throws RuntimeFailure when no scale is feasible.
 */
template <PixelSample T>
AugmentResult<T> multiscale_augment(const Raster<T>& img, const std::vector<FaceAnnotation>& anns,
                                    const AugmentConfig& cfg);

}  // namespace vfr
