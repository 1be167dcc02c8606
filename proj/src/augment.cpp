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

#include "vfr/augment.hpp"

#include <cmath>

#include "vfr/rng.hpp"

namespace vfr {

void
AugmentConfig::validate() const {
    if (crop_size <= 0) {
        throw InvalidArgument("augment: crop_size must be positive");
    }
    if (crops_per_image <= 0) {
        throw InvalidArgument("augment: crops_per_image must be positive");
    }
    if (scales.empty()) {
        throw InvalidArgument("augment: at least one scale is required");
    }
    for (double s : scales) {
        if (!(s > 0.0 && s <= 1.0)) {
            throw InvalidArgument("augment: scales must lie in (0, 1]");
        }
    }
    if (!(min_face_overlap > 0.0 && min_face_overlap <= 1.0)) {
        throw InvalidArgument("augment: min_face_overlap must lie in (0, 1]");
    }
}

namespace {

int
resized_extent(int side, double scale) {
    return static_cast<int>(std::floor(side / scale + 1e-9));
}

}  // namespace

FaceAnnotation
transform_annotation(const FaceAnnotation& ann, const CropTransform& t, int crop_size,
                     double min_face_overlap) {
    FaceAnnotation out;
    const Point lo = t.forward({ann.bbox.x_min, ann.bbox.y_min});
    const Point hi = t.forward({ann.bbox.x_max, ann.bbox.y_max});
    const Box moved{lo.x, lo.y, hi.x, hi.y};
    const Box window{0.0, 0.0, static_cast<double>(crop_size), static_cast<double>(crop_size)};
    const Box clipped = intersect(moved, window);
    out.bbox = clipped.well_formed() ? clipped : Box{};
    if (ann.landmarks) {
        std::array<Point, kLandmarkCount> pts{};
        for (int i = 0; i < kLandmarkCount; ++i) {
            pts[i] = t.forward((*ann.landmarks)[i]);
        }
        out.landmarks = pts;
    }
    const double area = moved.area();
    out.valid = ann.valid && area > 0.0 && clipped.well_formed() &&
                clipped.x_min < clipped.x_max && clipped.y_min < clipped.y_max &&
                clipped.area() >= min_face_overlap * area;
    return out;
}

template <PixelSample T>
AugmentResult<T>
multiscale_augment(const Raster<T>& img, const std::vector<FaceAnnotation>& anns,
                   const AugmentConfig& cfg) {
    cfg.validate();
    auto feasible = [&](double s) {
        return resized_extent(img.width(), s) >= cfg.crop_size &&
               resized_extent(img.height(), s) >= cfg.crop_size;
    };
    if (std::none_of(cfg.scales.begin(), cfg.scales.end(), feasible)) {
        throw RuntimeFailure("augment: a " + std::to_string(img.width()) + "x" +
                             std::to_string(img.height()) + " image cannot hold a " +
                             std::to_string(cfg.crop_size) + " crop at any scale");
    }

    Rng rng(cfg.rng_seed);
    AugmentResult<T> result;
    result.crops.reserve(static_cast<std::size_t>(cfg.crops_per_image));
    for (int n = 0; n < cfg.crops_per_image; ++n) {
        double scale = 0.0;
        for (;;) {
            scale = cfg.scales[rng.uniform_index(cfg.scales.size())];
            if (feasible(scale)) {
                break;
            }
            result.warnings.push_back("crop " + std::to_string(n) + ": scale " +
                                      std::to_string(scale) +
                                      " leaves the image smaller than the crop window; redrawn");
        }
        CropTransform t;
        t.scale = scale;
        t.factor = 1.0 / scale;
        t.resized_width = resized_extent(img.width(), scale);
        t.resized_height = resized_extent(img.height(), scale);
        t.origin_x = static_cast<int>(rng.uniform_int(0, t.resized_width - cfg.crop_size));
        t.origin_y = static_cast<int>(rng.uniform_int(0, t.resized_height - cfg.crop_size));

        AugmentedCrop<T> crop;
        crop.transform = t;
        crop.image = resize_crop_bilinear(img, t.factor, t.origin_x, t.origin_y, cfg.crop_size,
                                          cfg.crop_size);
        crop.faces.reserve(anns.size());
        for (const auto& a : anns) {
            crop.faces.push_back(transform_annotation(a, t, cfg.crop_size, cfg.min_face_overlap));
        }
        result.crops.push_back(std::move(crop));
    }
    return result;
}

template AugmentResult<std::uint8_t> multiscale_augment(const ImageU8&,
                                                        const std::vector<FaceAnnotation>&,
                                                        const AugmentConfig&);
template AugmentResult<float> multiscale_augment(const ImageF&, const std::vector<FaceAnnotation>&,
                                                 const AugmentConfig&);

}  // namespace vfr
