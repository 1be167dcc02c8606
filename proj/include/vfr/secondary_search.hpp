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
#include <string_view>

#include "vfr/embedding.hpp"
#include "vfr/hnsw_index.hpp"

namespace vfr {

enum class CombineOp : std::uint8_t { And, Or };

std::string_view to_string(CombineOp op);
CombineOp parse_combine_op(std::string_view name);

enum class SecondStrategy : std::uint8_t {
    /// Re-query the index with the stored vectors of the top first-pass hits.
    ExpandTopHits,
};

struct SecondaryConfig {
    std::size_t k = 10;
    std::size_t expansion_count = 3;
    std::size_t ef_first = kDefaultQueryEf;
    std::size_t ef_second = kDefaultQueryEf;
    CombineOp combine = CombineOp::Or;
    SecondStrategy strategy = SecondStrategy::ExpandTopHits;
    /// Run the expansion queries on separate threads.
    bool parallel = false;

    void validate() const;
};

/// And keeps ids present in both, Or keeps the union; each id carries the
/// smaller of its recorded distances. Sorted by (distance, id).
SearchResult combine(const SearchResult& first, const SearchResult& second, CombineOp op);

struct SecondaryTrace {
    SearchResult first;
    /// Union of the expansion queries, distances measured from the original query.
    SearchResult second;
    /// first combined with second, before truncation.
    SearchResult combined;
    /// combined truncated to k.
    SearchResult result;
};

/**
 * Two-pass retrieval. Pass one is an ordinary k-NN query. Pass two re-queries
 * the index with each of the top expansion_count hits' own vectors and pools
 * the returned ids, scoring every one against the original query. The passes
 * are combined with cfg.combine and cut to k.
 */
SecondaryTrace secondary_search_trace(const HnswIndex& index, std::span<const float> query,
                                      const SecondaryConfig& cfg);
SearchResult secondary_search(const HnswIndex& index, std::span<const float> query,
                              const SecondaryConfig& cfg);
SearchResult secondary_search(const HnswIndex& index, const Embedding& query,
                              const SecondaryConfig& cfg);

}  // namespace vfr
