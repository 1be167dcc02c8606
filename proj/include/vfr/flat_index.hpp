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
#include <span>
#include <unordered_set>
#include <vector>

#include "vfr/embedding.hpp"

namespace vfr {

/// Exhaustive scan over a contiguous copy of the corpus with cached squared
/// norms. Results are identical, bit for bit, to brute_force_knn.
class FlatIndex {
public:
    FlatIndex(std::size_t dimension, DistanceMetric metric);

    void insert(const Embedding& e);

    [[nodiscard]] SearchResult knn_search(std::span<const float> query, std::size_t k) const;

    [[nodiscard]] std::size_t size() const { return ids_.size(); }
    [[nodiscard]] std::size_t dimension() const { return dimension_; }
    [[nodiscard]] DistanceMetric metric() const { return metric_; }

private:
    std::size_t dimension_;
    DistanceMetric metric_;
    std::vector<RecordId> ids_;
    std::unordered_set<RecordId> known_;
    std::vector<float> data_;
    std::vector<double> sq_norms_;
};

}  // namespace vfr
