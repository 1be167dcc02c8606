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

#include "vfr/raster.hpp"

#include <cmath>
#include <string>

namespace vfr {

namespace {

void
check_window(int window, int width, int height, const char* op) {
    if (window <= 0 || window % 2 == 0) {
        throw InvalidArgument(std::string(op) + ": window must be a positive odd integer, got " +
                              std::to_string(window));
    }
    if (window > std::min(width, height)) {
        throw InvalidArgument(std::string(op) + ": window " + std::to_string(window) +
                              " exceeds the image extent");
    }
}

template <PixelSample T>
T
to_sample(double v) {
    v = std::clamp(v, 0.0, SampleRange<T>::max);
    if constexpr (std::is_same_v<T, std::uint8_t>) {
        return static_cast<std::uint8_t>(std::lround(v));
    } else {
        return static_cast<float>(v);
    }
}

}  // namespace

template <PixelSample T>
Raster<T>
median_filter(const Raster<T>& img, int window) {
    check_window(window, img.width(), img.height(), "median_filter");
    const int r = window / 2;
    Raster<T> out(img.width(), img.height(), img.channels());
    std::vector<T> buf(static_cast<std::size_t>(window) * window);
    const auto mid = buf.begin() + static_cast<std::ptrdiff_t>(buf.size() / 2);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            for (int c = 0; c < img.channels(); ++c) {
                std::size_t k = 0;
                for (int dy = -r; dy <= r; ++dy) {
                    for (int dx = -r; dx <= r; ++dx) {
                        buf[k++] = img.clamped(x + dx, y + dy, c);
                    }
                }
                std::nth_element(buf.begin(), mid, buf.end());
                out.at(x, y, c) = *mid;
            }
        }
    }
    return out;
}

template <PixelSample T>
Raster<T>
wiener_restore(const Raster<T>& img, int window, std::optional<double> noise_variance) {
    check_window(window, img.width(), img.height(), "wiener_restore");
    if (noise_variance && !(*noise_variance >= 0.0)) {
        throw InvalidArgument("wiener_restore: noise variance must be nonnegative");
    }
    const int r = window / 2;
    const double count = static_cast<double>(window) * window;
    const std::size_t n = static_cast<std::size_t>(img.width()) * img.height();
    Raster<T> out(img.width(), img.height(), img.channels());
    std::vector<double> mean(n), var(n);
    for (int c = 0; c < img.channels(); ++c) {
        double var_total = 0.0;
        for (int y = 0; y < img.height(); ++y) {
            for (int x = 0; x < img.width(); ++x) {
                double s = 0.0, s2 = 0.0;
                for (int dy = -r; dy <= r; ++dy) {
                    for (int dx = -r; dx <= r; ++dx) {
                        const double v = img.clamped(x + dx, y + dy, c);
                        s += v;
                        s2 += v * v;
                    }
                }
                const std::size_t i = static_cast<std::size_t>(y) * img.width() + x;
                mean[i] = s / count;
                var[i] = std::max(s2 / count - mean[i] * mean[i], 0.0);
                var_total += var[i];
            }
        }
        const double noise = noise_variance.value_or(var_total / static_cast<double>(n));
        for (int y = 0; y < img.height(); ++y) {
            for (int x = 0; x < img.width(); ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * img.width() + x;
                const double denom = std::max(var[i], noise);
                const double gain = denom > 0.0 ? std::max(var[i] - noise, 0.0) / denom : 0.0;
                const double v = mean[i] + gain * (static_cast<double>(img.at(x, y, c)) - mean[i]);
                out.at(x, y, c) = to_sample<T>(v);
            }
        }
    }
    return out;
}

template <PixelSample T>
ImageF
normalize(const Raster<T>& img, const NormalizeParams& params) {
    for (int c = 0; c < img.channels(); ++c) {
        if (params.scale[c] == 0.0 || !std::isfinite(params.scale[c])) {
            throw InvalidArgument("normalize: scale must be nonzero and finite");
        }
    }
    ImageF out(img.width(), img.height(), img.channels());
    const auto& src = img.pixels();
    auto& dst = out.pixels();
    const auto ch = static_cast<std::size_t>(img.channels());
    for (std::size_t i = 0; i < src.size(); ++i) {
        const std::size_t c = i % ch;
        dst[i] = static_cast<float>((static_cast<double>(src[i]) - params.mean[c]) * params.scale[c]);
    }
    return out;
}

template <PixelSample T>
Raster<T>
denormalize(const ImageF& img, const NormalizeParams& params) {
    Raster<T> out(img.width(), img.height(), img.channels());
    const auto& src = img.pixels();
    auto& dst = out.pixels();
    const auto ch = static_cast<std::size_t>(img.channels());
    for (std::size_t i = 0; i < src.size(); ++i) {
        const std::size_t c = i % ch;
        dst[i] = to_sample<T>(static_cast<double>(src[i]) / params.scale[c] + params.mean[c]);
    }
    return out;
}

template <PixelSample T>
ImageF
enhance_for_recognition(const Raster<T>& img, const EnhanceConfig& cfg) {
    const auto denoised = median_filter(img, cfg.median_window);
    const auto restored = wiener_restore(denoised, cfg.wiener_window, cfg.noise_variance);
    return normalize(restored, cfg.normalization.value_or(NormalizeParams::defaults_for<T>()));
}

template <PixelSample T>
Raster<T>
resize_crop_bilinear(const Raster<T>& img, double factor, int x0, int y0, int out_width,
                     int out_height) {
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw InvalidArgument("resize: factor must be positive");
    }
    Raster<T> out(out_width, out_height, img.channels());
    // per-column source taps are shared by every row
    std::vector<int> xa(out_width), xb(out_width);
    std::vector<double> wx(out_width);
    for (int x = 0; x < out_width; ++x) {
        const double sx = (x0 + x + 0.5) / factor - 0.5;
        const double fx = std::floor(sx);
        wx[x] = sx - fx;
        xa[x] = std::clamp(static_cast<int>(fx), 0, img.width() - 1);
        xb[x] = std::clamp(static_cast<int>(fx) + 1, 0, img.width() - 1);
    }
    for (int y = 0; y < out_height; ++y) {
        const double sy = (y0 + y + 0.5) / factor - 0.5;
        const double fy = std::floor(sy);
        const double wy = sy - fy;
        const int ya = std::clamp(static_cast<int>(fy), 0, img.height() - 1);
        const int yb = std::clamp(static_cast<int>(fy) + 1, 0, img.height() - 1);
        for (int x = 0; x < out_width; ++x) {
            for (int c = 0; c < img.channels(); ++c) {
                const double top = (1.0 - wx[x]) * img.at(xa[x], ya, c) + wx[x] * img.at(xb[x], ya, c);
                const double bot = (1.0 - wx[x]) * img.at(xa[x], yb, c) + wx[x] * img.at(xb[x], yb, c);
                out.at(x, y, c) = to_sample<T>((1.0 - wy) * top + wy * bot);
            }
        }
    }
    return out;
}

template <PixelSample T>
Raster<T>
resize_bilinear(const Raster<T>& img, int out_width, int out_height) {
    if (out_width == img.width() && out_height == img.height()) {
        return img;
    }
    if (out_width <= 0 || out_height <= 0) {
        throw InvalidArgument("resize: output extent must be positive");
    }
    Raster<T> out(out_width, out_height, img.channels());
    const double fx_scale = static_cast<double>(out_width) / img.width();
    const double fy_scale = static_cast<double>(out_height) / img.height();
    for (int y = 0; y < out_height; ++y) {
        const double sy = (y + 0.5) / fy_scale - 0.5;
        const double fy = std::floor(sy);
        const double wy = sy - fy;
        const int ya = std::clamp(static_cast<int>(fy), 0, img.height() - 1);
        const int yb = std::clamp(static_cast<int>(fy) + 1, 0, img.height() - 1);
        for (int x = 0; x < out_width; ++x) {
            const double sx = (x + 0.5) / fx_scale - 0.5;
            const double fx = std::floor(sx);
            const double wx = sx - fx;
            const int xa = std::clamp(static_cast<int>(fx), 0, img.width() - 1);
            const int xb = std::clamp(static_cast<int>(fx) + 1, 0, img.width() - 1);
            for (int c = 0; c < img.channels(); ++c) {
                const double top = (1.0 - wx) * img.at(xa, ya, c) + wx * img.at(xb, ya, c);
                const double bot = (1.0 - wx) * img.at(xa, yb, c) + wx * img.at(xb, yb, c);
                out.at(x, y, c) = to_sample<T>((1.0 - wy) * top + wy * bot);
            }
        }
    }
    return out;
}

template <PixelSample T>
double
mean_absolute_error(const Raster<T>& a, const Raster<T>& b) {
    if (!a.same_shape(b)) {
        throw InvalidArgument("mean_absolute_error: shapes differ");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < a.pixels().size(); ++i) {
        total += std::abs(static_cast<double>(a.pixels()[i]) - static_cast<double>(b.pixels()[i]));
    }
    return total / static_cast<double>(a.pixels().size());
}

#define VFR_INSTANTIATE_RASTER_OPS(T)                                                         \
    template Raster<T> median_filter(const Raster<T>&, int);                                  \
    template Raster<T> wiener_restore(const Raster<T>&, int, std::optional<double>);          \
    template ImageF normalize(const Raster<T>&, const NormalizeParams&);                      \
    template Raster<T> denormalize(const ImageF&, const NormalizeParams&);                    \
    template ImageF enhance_for_recognition(const Raster<T>&, const EnhanceConfig&);          \
    template Raster<T> resize_bilinear(const Raster<T>&, int, int);                           \
    template Raster<T> resize_crop_bilinear(const Raster<T>&, double, int, int, int, int);    \
    template double mean_absolute_error(const Raster<T>&, const Raster<T>&);

VFR_INSTANTIATE_RASTER_OPS(std::uint8_t)
VFR_INSTANTIATE_RASTER_OPS(float)

#undef VFR_INSTANTIATE_RASTER_OPS

}  // namespace vfr
