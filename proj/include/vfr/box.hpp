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

namespace vfr {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned box in pixel coordinates.
struct Box {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    [[nodiscard]] double width() const { return std::max(x_max - x_min, 0.0); }
    [[nodiscard]] double height() const { return std::max(y_max - y_min, 0.0); }
    [[nodiscard]] double area() const { return width() * height(); }
    [[nodiscard]] bool well_formed() const { return x_min <= x_max && y_min <= y_max; }

    friend bool operator==(const Box&, const Box&) = default;
};

inline Box
intersect(const Box& a, const Box& b) {
    return {std::max(a.x_min, b.x_min), std::max(a.y_min, b.y_min), std::min(a.x_max, b.x_max),
            std::min(a.y_max, b.y_max)};
}

/// Intersection over union; 0 for disjoint or zero-area boxes.
inline double
iou(const Box& a, const Box& b) {
    const double inter = intersect(a, b).area();
    const double uni = a.area() + b.area() - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

}  // namespace vfr
