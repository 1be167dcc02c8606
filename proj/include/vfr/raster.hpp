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

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <vector>

#include "vfr/error.hpp"

namespace vfr {

/// Sample types a raster may hold: 8-bit in [0, 255] or real in [0, 1].
template <typename T>
concept PixelSample = std::is_same_v<T, std::uint8_t> || std::is_same_v<T, float>;

template <typename T>
struct SampleRange;

template <>
struct SampleRange<std::uint8_t> {
    static constexpr double max = 255.0;
};

template <>
struct SampleRange<float> {
    static constexpr double max = 1.0;
};

/**
 * Row-major interleaved image, width x height x channels (1 or 3).
 *
 * Normalized tensors are also carried as Raster<float>; those are the only
 * rasters whose values may leave [0, 1].
 */
template <typename T>
class Raster {
public:
    Raster() = default;

    Raster(int width, int height, int channels, T fill = T{})
        : width_(width), height_(height), channels_(channels) {
        check_shape();
        pixels_.assign(static_cast<std::size_t>(width) * height * channels, fill);
    }

    Raster(int width, int height, int channels, std::vector<T> pixels)
        : width_(width), height_(height), channels_(channels), pixels_(std::move(pixels)) {
        check_shape();
        if (pixels_.size() != static_cast<std::size_t>(width) * height * channels) {
            throw InvalidArgument("raster: pixel buffer size does not match the shape");
        }
    }

    [[nodiscard]] int width() const { return width_; }
    [[nodiscard]] int height() const { return height_; }
    [[nodiscard]] int channels() const { return channels_; }
    [[nodiscard]] bool empty() const { return pixels_.empty(); }
    [[nodiscard]] const std::vector<T>& pixels() const { return pixels_; }
    [[nodiscard]] std::vector<T>& pixels() { return pixels_; }

    [[nodiscard]] T at(int x, int y, int c = 0) const { return pixels_[index(x, y, c)]; }
    T& at(int x, int y, int c = 0) { return pixels_[index(x, y, c)]; }

    /// Replicate-border access: coordinates are clamped into the image.
    [[nodiscard]] T clamped(int x, int y, int c = 0) const {
        return at(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1), c);
    }

    [[nodiscard]] bool same_shape(const Raster& o) const {
        return width_ == o.width_ && height_ == o.height_ && channels_ == o.channels_;
    }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    [[nodiscard]] std::size_t index(int x, int y, int c) const {
        return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
    }

    void check_shape() const {
        if (width_ <= 0 || height_ <= 0) {
            throw InvalidArgument("raster: width and height must be positive");
        }
        if (channels_ != 1 && channels_ != 3) {
            throw InvalidArgument("raster: channels must be 1 or 3");
        }
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<T> pixels_;
};

using ImageU8 = Raster<std::uint8_t>;
using ImageF = Raster<float>;

/// Per-pixel median over a window x window neighborhood with replicate
/// padding, channels independently. window must be odd and fit the image.
template <PixelSample T>
Raster<T> median_filter(const Raster<T>& img, int window);

/**
 * Adaptive local Wiener restoration.
 *
 * For each pixel with local mean m and (population) local variance v over the
 * window: out = m + max(v - n, 0) / max(v, n) * (pixel - m), where n is
 * noise_variance or, if absent, the mean local variance of that channel. When
 * v and n are both zero the gain is zero. Results are clamped to the sample
 * range; 8-bit output is rounded to nearest.
 */
template <PixelSample T>
Raster<T> wiener_restore(const Raster<T>& img, int window,
                         std::optional<double> noise_variance = std::nullopt);

/// Per-channel (mean, scale); out = (in - mean) * scale.
struct NormalizeParams {
    std::array<double, 3> mean{127.5, 127.5, 127.5};
    std::array<double, 3> scale{1.0 / 128.0, 1.0 / 128.0, 1.0 / 128.0};

    /// Defaults expressed in the units of sample type T.
    template <PixelSample T>
    static NormalizeParams defaults_for() {
        const double r = SampleRange<T>::max;
        NormalizeParams p;
        for (int c = 0; c < 3; ++c) {
            p.mean[c] = 127.5 / 255.0 * r;
            p.scale[c] = 255.0 / (128.0 * r);
        }
        return p;
    }
};

template <PixelSample T>
ImageF normalize(const Raster<T>& img, const NormalizeParams& params);

/// Inverse of normalize back to the sample range, for inspection and output.
template <PixelSample T>
Raster<T> denormalize(const ImageF& img, const NormalizeParams& params);

struct EnhanceConfig {
    int median_window = 3;
    int wiener_window = 3;
    std::optional<double> noise_variance;
    std::optional<NormalizeParams> normalization;  // defaults_for<T>() when unset
};

/// median_filter -> wiener_restore -> normalize.
template <PixelSample T>
ImageF enhance_for_recognition(const Raster<T>& img, const EnhanceConfig& cfg = {});

/// Bilinear resize with half-pixel centers: source = (dst + 0.5) / factor - 0.5.
template <PixelSample T>
Raster<T> resize_bilinear(const Raster<T>& img, int out_width, int out_height);

/// A window of the image scaled uniformly by `factor`, starting at (x0, y0) in
/// scaled coordinates, sampled with the same half-pixel rule without
/// materializing the full resize.
template <PixelSample T>
Raster<T> resize_crop_bilinear(const Raster<T>& img, double factor, int x0, int y0,
                               int out_width, int out_height);

/// Mean absolute difference between two same-shape rasters.
template <PixelSample T>
double mean_absolute_error(const Raster<T>& a, const Raster<T>& b);

}  // namespace vfr
