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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vfr {

using RecordId = std::uint64_t;

inline constexpr std::size_t kDefaultDimension = 128;

enum class DistanceMetric : std::uint8_t {
    EuclideanSquared = 0,
    Cosine = 1,
};

std::string_view to_string(DistanceMetric metric);
DistanceMetric parse_metric(std::string_view name);

/**
 * A face (or generic) feature vector with its record identity.
 *
 * Components are stored as 32-bit floats and are guaranteed finite;
 * the constructor rejects NaN/Inf.
 */
class Embedding {
public:
    Embedding() = default;
    explicit Embedding(std::vector<float> values, RecordId id = 0,
              std::optional<std::string> label = std::nullopt);

    [[nodiscard]] std::size_t dimension() const { return values_.size(); }
    [[nodiscard]] std::span<const float> values() const { return values_; }
    [[nodiscard]] RecordId id() const { return id_; }
    [[nodiscard]] const std::optional<std::string>& label() const { return label_; }

    [[nodiscard]] double norm() const;
    /// True when the L2 norm is within 1e-6 of 1.
    [[nodiscard]] bool is_normalized() const;
    /// Unit-length copy; throws ZeroNorm for the zero vector.
    [[nodiscard]] Embedding normalized() const;

    [[nodiscard]] Embedding with_id(RecordId id) const;
    [[nodiscard]] Embedding with_label(std::optional<std::string> label) const;

    friend bool operator==(const Embedding&, const Embedding&) = default;

private:
    std::vector<float> values_;
    RecordId id_ = 0;
    std::optional<std::string> label_;
};

struct Hit {
    RecordId id = 0;
    double distance = 0.0;

    friend bool operator==(const Hit&, const Hit&) = default;
};

/// Strict ordering used everywhere results are ranked: distance, then id.
inline bool hit_less(const Hit& a, const Hit& b) {
    return a.distance < b.distance || (a.distance == b.distance && a.id < b.id);
}

/// Ranked hits: distances nondecreasing, ids unique.
struct SearchResult {
    std::vector<Hit> hits;
    std::optional<RecordId> query_id;
    /// Set when fewer than the requested k hits exist in the searched set.
    bool k_clamped = false;

    [[nodiscard]] std::vector<RecordId> ids() const;
    /// Checks the ordering and uniqueness invariants.
    [[nodiscard]] bool well_formed() const;
};

// Distance primitives. All accumulate in double.

double dot(std::span<const float> a, std::span<const float> b);
double squared_l2(std::span<const float> a, std::span<const float> b);

/// Metric distance; Cosine is 1 - cos(a, b), clamped to [0, 2].
double distance(std::span<const float> a, std::span<const float> b, DistanceMetric metric);
double distance(const Embedding& a, const Embedding& b, DistanceMetric metric);

/// cos(a, b) in [-1, 1]. Throws ZeroNorm on a zero vector.
double cosine_similarity(std::span<const float> a, std::span<const float> b);
double cosine_similarity(const Embedding& a, const Embedding& b);

/// cos from dot(a, b), dot(a, a) and dot(b, b); callers that cache squared
/// norms get bit-identical results to cosine_similarity.
double cosine_from_parts(double ab, double aa, double bb);

inline double
cosine_distance_from_similarity(double c) {
    const double d = 1.0 - c;
    return d < 0.0 ? 0.0 : (d > 2.0 ? 2.0 : d);
}

/// Throws DimensionMismatch unless a and b have equal length.
void require_same_dimension(std::size_t a, std::size_t b);

}  // namespace vfr
