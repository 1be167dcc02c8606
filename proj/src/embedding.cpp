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

#include "vfr/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <unordered_set>

#include "vfr/error.hpp"

namespace vfr {

std::string_view
to_string(DistanceMetric metric) {
    switch (metric) {
        case DistanceMetric::EuclideanSquared:
            return "l2sq";
        case DistanceMetric::Cosine:
            return "cosine";
    }
    return "unknown";
}

DistanceMetric
parse_metric(std::string_view name) {
    if (name == "cosine" || name == "cos") {
        return DistanceMetric::Cosine;
    }
    if (name == "l2sq" || name == "l2" || name == "euclidean") {
        return DistanceMetric::EuclideanSquared;
    }
    throw InvalidArgument("unknown distance metric '" + std::string(name) + "'");
}

Embedding::Embedding(std::vector<float> values, RecordId id, std::optional<std::string> label)
    : values_(std::move(values)), id_(id), label_(std::move(label)) {
    for (float v : values_) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("embedding " + std::to_string(id_) +
                                  " has a non-finite component");
        }
    }
}

double
Embedding::norm() const {
    return std::sqrt(dot(values_, values_));
}

bool
Embedding::is_normalized() const {
    return std::abs(norm() - 1.0) <= 1e-6;
}

Embedding
Embedding::normalized() const {
    const double n = norm();
    if (n == 0.0) {
        throw ZeroNorm("cannot normalize the zero vector");
    }
    std::vector<float> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        out[i] = static_cast<float>(values_[i] / n);
    }
    return Embedding(std::move(out), id_, label_);
}

Embedding
Embedding::with_id(RecordId id) const {
    Embedding copy = *this;
    copy.id_ = id;
    return copy;
}

Embedding
Embedding::with_label(std::optional<std::string> label) const {
    Embedding copy = *this;
    copy.label_ = std::move(label);
    return copy;
}

std::vector<RecordId>
SearchResult::ids() const {
    std::vector<RecordId> out;
    out.reserve(hits.size());
    for (const auto& h : hits) {
        out.push_back(h.id);
    }
    return out;
}

bool
SearchResult::well_formed() const {
    std::unordered_set<RecordId> seen;
    for (std::size_t i = 0; i < hits.size(); ++i) {
        if (!(hits[i].distance >= 0.0)) {
            return false;
        }
        if (i > 0 && hits[i].distance < hits[i - 1].distance) {
            return false;
        }
        if (!seen.insert(hits[i].id).second) {
            return false;
        }
    }
    return true;
}

void
require_same_dimension(std::size_t a, std::size_t b) {
    if (a != b) {
        throw DimensionMismatch("dimension mismatch: " + std::to_string(a) + " vs " +
                                std::to_string(b));
    }
}

// Eight independent lanes, reduced in a fixed tree. The summation order depends
// only on the index, so swapping the operands never changes a single bit of the
// result, and every instruction-set clone below computes identical values.

namespace {

constexpr std::size_t kLanes = 8;

double
reduce_lanes(const double* s) {
    return ((s[0] + s[4]) + (s[1] + s[5])) + ((s[2] + s[6]) + (s[3] + s[7]));
}

#if defined(__GNUC__) && defined(__x86_64__) && !defined(__clang__)
#define VFR_KERNEL __attribute__((target_clones("avx2", "default")))
#else
#define VFR_KERNEL
#endif

#if defined(__GNUC__)
using F4 = float __attribute__((vector_size(16)));
using D4 = double __attribute__((vector_size(32)));

// Expands in the caller so each instruction-set clone keeps it inline.
#define VFR_LOAD4(dst, ptr)                               \
    do {                                                  \
        F4 raw_;                                          \
        std::memcpy(&raw_, (ptr), sizeof(raw_));          \
        (dst) = __builtin_convertvector(raw_, D4);        \
    } while (0)
#endif

VFR_KERNEL double
dot_kernel(const float* a, const float* b, std::size_t n) {
    double s[kLanes] = {};
    std::size_t i = 0;
#if defined(__GNUC__)
    D4 lo{}, hi{};
    for (; i + kLanes <= n; i += kLanes) {
        D4 a0, a1, b0, b1;
        VFR_LOAD4(a0, a + i);
        VFR_LOAD4(a1, a + i + 4);
        VFR_LOAD4(b0, b + i);
        VFR_LOAD4(b1, b + i + 4);
        lo += a0 * b0;
        hi += a1 * b1;
    }
    for (int j = 0; j < 4; ++j) {
        s[j] = lo[j];
        s[j + 4] = hi[j];
    }
#else
    for (; i + kLanes <= n; i += kLanes) {
        for (std::size_t j = 0; j < kLanes; ++j) {
            s[j] += double(a[i + j]) * double(b[i + j]);
        }
    }
#endif
    for (std::size_t j = 0; i < n; ++i, ++j) {
        s[j] += double(a[i]) * double(b[i]);
    }
    return reduce_lanes(s);
}

VFR_KERNEL double
squared_l2_kernel(const float* a, const float* b, std::size_t n) {
    double s[kLanes] = {};
    std::size_t i = 0;
#if defined(__GNUC__)
    D4 lo{}, hi{};
    for (; i + kLanes <= n; i += kLanes) {
        D4 a0, a1, b0, b1;
        VFR_LOAD4(a0, a + i);
        VFR_LOAD4(a1, a + i + 4);
        VFR_LOAD4(b0, b + i);
        VFR_LOAD4(b1, b + i + 4);
        const D4 d0 = a0 - b0;
        const D4 d1 = a1 - b1;
        lo += d0 * d0;
        hi += d1 * d1;
    }
    for (int j = 0; j < 4; ++j) {
        s[j] = lo[j];
        s[j + 4] = hi[j];
    }
#else
    for (; i + kLanes <= n; i += kLanes) {
        for (std::size_t j = 0; j < kLanes; ++j) {
            const double d = double(a[i + j]) - double(b[i + j]);
            s[j] += d * d;
        }
    }
#endif
    for (std::size_t j = 0; i < n; ++i, ++j) {
        const double d = double(a[i]) - double(b[i]);
        s[j] += d * d;
    }
    return reduce_lanes(s);
}

}  // namespace

double
dot(std::span<const float> a, std::span<const float> b) {
    require_same_dimension(a.size(), b.size());
    return dot_kernel(a.data(), b.data(), a.size());
}

double
squared_l2(std::span<const float> a, std::span<const float> b) {
    require_same_dimension(a.size(), b.size());
    return squared_l2_kernel(a.data(), b.data(), a.size());
}

double
cosine_from_parts(double ab, double aa, double bb) {
    if (aa == 0.0 || bb == 0.0) {
        throw ZeroNorm("cosine geometry is undefined for a zero vector");
    }
    const double c = ab / (std::sqrt(aa) * std::sqrt(bb));
    return std::clamp(c, -1.0, 1.0);
}

double
cosine_similarity(std::span<const float> a, std::span<const float> b) {
    require_same_dimension(a.size(), b.size());
    return cosine_from_parts(dot(a, b), dot(a, a), dot(b, b));
}

double
cosine_similarity(const Embedding& a, const Embedding& b) {
    return cosine_similarity(a.values(), b.values());
}

double
distance(std::span<const float> a, std::span<const float> b, DistanceMetric metric) {
    switch (metric) {
        case DistanceMetric::EuclideanSquared:
            return squared_l2(a, b);
        case DistanceMetric::Cosine:
            return cosine_distance_from_similarity(cosine_similarity(a, b));
    }
    throw InvalidArgument("unknown distance metric");
}

double
distance(const Embedding& a, const Embedding& b, DistanceMetric metric) {
    return distance(a.values(), b.values(), metric);
}

}  // namespace vfr
