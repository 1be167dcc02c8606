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


#include "vfr/flat_index.hpp"

#include <algorithm>
#include <string>

#include "vfr/error.hpp"

namespace vfr {

FlatIndex::FlatIndex(std::size_t dimension, DistanceMetric metric)
    : dimension_(dimension), metric_(metric) {
    if (dimension == 0) {
        throw InvalidArgument("flat index: dimension must be positive");
    }
}

void
FlatIndex::insert(const Embedding& e) {
    require_same_dimension(e.dimension(), dimension_);
    const double nn = dot(e.values(), e.values());
    if (metric_ == DistanceMetric::Cosine && nn == 0.0) {
        throw ZeroNorm("flat index: zero vector has no cosine direction");
    }
    if (!known_.insert(e.id()).second) {
        throw DuplicateId("flat index: id " + std::to_string(e.id()) + " is already indexed");
    }
    ids_.push_back(e.id());
    data_.insert(data_.end(), e.values().begin(), e.values().end());
    sq_norms_.push_back(nn);
}

SearchResult
FlatIndex::knn_search(std::span<const float> query, std::size_t k) const {
    if (ids_.empty()) {
        throw EmptyInput("flat index: cannot search an empty index");
    }
    if (k == 0) {
        throw InvalidArgument("flat index: k must be positive");
    }
    require_same_dimension(query.size(), dimension_);
    const bool cosine = metric_ == DistanceMetric::Cosine;
    const double qq = cosine ? dot(query, query) : 0.0;
    if (cosine && qq == 0.0) {
        throw ZeroNorm("flat index: zero query has no cosine direction");
    }
    const std::size_t take = std::min(k, ids_.size());
    std::vector<Hit> heap;  // max-heap under hit_less, the current worst on top
    heap.reserve(take + 1);
    for (std::size_t s = 0; s < ids_.size(); ++s) {
        const std::span<const float> v(data_.data() + s * dimension_, dimension_);
        const double d = cosine ? cosine_distance_from_similarity(
                                      cosine_from_parts(dot(query, v), qq, sq_norms_[s]))
                                : squared_l2(query, v);
        const Hit h{ids_[s], d};
        if (heap.size() < take) {
            heap.push_back(h);
            std::push_heap(heap.begin(), heap.end(), hit_less);
        } else if (hit_less(h, heap.front())) {
            std::pop_heap(heap.begin(), heap.end(), hit_less);
            heap.back() = h;
            std::push_heap(heap.begin(), heap.end(), hit_less);
        }
    }
    std::sort_heap(heap.begin(), heap.end(), hit_less);
    SearchResult r;
    r.hits = std::move(heap);
    r.k_clamped = k > ids_.size();
    return r;
}

}  // namespace vfr
