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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "vfr/embedding.hpp"
#include "vfr/rng.hpp"

namespace vfr {

/// How a node's neighbor list is chosen from its candidates.
enum class NeighborSelection : std::uint8_t {
    /// The m nearest candidates.
    Nearest = 0,
    /// A candidate is kept only if it is closer to the node than to every
    /// neighbor already kept (nearest first).
    Diverse = 1,
};

struct HnswParams {
    std::uint32_t m = 16;
    std::uint32_t m0 = 32;
    std::uint32_t ef_construction = 200;
    /// When unset, 1 / ln(m).
    std::optional<double> level_multiplier;
    DistanceMetric metric = DistanceMetric::Cosine;
    std::uint64_t rng_seed = 42;
    NeighborSelection selection = NeighborSelection::Nearest;

    /// HnswParams with m0 = 2m.
    static HnswParams with_m(std::uint32_t m);

    [[nodiscard]] double effective_level_multiplier() const;
    void validate() const;
};

inline constexpr std::uint32_t kDefaultQueryEf = 50;

/// Counters filled by instrumented searches.
struct SearchStats {
    std::size_t visited = 0;
    std::size_t distance_evaluations = 0;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> problems;
};

/**
 * Hierarchical navigable small world graph over fixed-dimension embeddings.
 *
 * Each node lives on layers 0..level. Insertion descends greedily from the
 * entry point to level+1, then runs a best-first search of width
 * ef_construction on each remaining layer and links the new node to its
 * nearest candidates. Adjacency is symmetric after every insert: when a full
 * neighbor list admits a closer node, the evicted edge is removed from both
 * endpoints.
 *
 * Single writer. Once built (or loaded) the index is safe for any number of
 * concurrent readers.
 */
class HnswIndex {
public:
    HnswIndex(std::size_t dimension, HnswParams params = {});

    /// Throws DuplicateId, DimensionMismatch, or ZeroNorm under Cosine.
    void insert(const Embedding& e);

    [[nodiscard]] SearchResult knn_search(std::span<const float> query, std::size_t k,
                                          std::size_t ef = kDefaultQueryEf,
                                          SearchStats* stats = nullptr) const;
    [[nodiscard]] SearchResult knn_search(const Embedding& query, std::size_t k,
                                          std::size_t ef = kDefaultQueryEf,
                                          SearchStats* stats = nullptr) const;

    /// Best-first search of one layer from a single entry node. Returns up to
    /// ef hits sorted by distance.
    [[nodiscard]] std::vector<Hit> search_layer(std::span<const float> query, RecordId entry,
                                                std::size_t ef, int layer,
                                                SearchStats* stats = nullptr) const;

    [[nodiscard]] std::size_t size() const { return ids_.size(); }
    [[nodiscard]] bool empty() const { return ids_.empty(); }
    [[nodiscard]] std::size_t dimension() const { return dimension_; }
    [[nodiscard]] const HnswParams& params() const { return params_; }
    [[nodiscard]] DistanceMetric metric() const { return params_.metric; }

    [[nodiscard]] bool contains(RecordId id) const;
    [[nodiscard]] std::optional<RecordId> entry_point() const;
    [[nodiscard]] int max_level() const { return max_level_; }
    [[nodiscard]] int level(RecordId id) const;
    [[nodiscard]] std::span<const float> vector(RecordId id) const;
    /// Neighbor ids of a node on one layer, in stored order.
    [[nodiscard]] std::vector<RecordId> neighbors(RecordId id, int layer) const;
    /// Ids in insertion order.
    [[nodiscard]] const std::vector<RecordId>& ids() const { return ids_; }

    /// Walks the graph and checks every structural invariant.
    [[nodiscard]] ValidationReport validate() const;

    void save(const std::filesystem::path& path) const;
    static HnswIndex load(const std::filesystem::path& path);
    [[nodiscard]] std::vector<std::uint8_t> serialize() const;
    static HnswIndex deserialize(std::span<const std::uint8_t> file);

    /// Graph-identical comparison (params, ids, levels, vectors, adjacency, entry point).
    [[nodiscard]] bool structurally_equal(const HnswIndex& other) const;

    static constexpr std::uint16_t kFormatVersion = 1;

private:
    using Slot = std::uint32_t;

    struct Candidate {
        double distance;
        Slot slot;
    };

    struct Adjacency {
        std::vector<Slot> ids;
        std::vector<double> distances;  // parallel to ids, from the owning node
    };

    /// A query vector with its squared norm, computed once per search.
    struct QueryRef {
        std::span<const float> values;
        double sq_norm;
    };

    [[nodiscard]] std::span<const float> slot_vector(Slot s) const;
    [[nodiscard]] QueryRef prepare(std::span<const float> q) const;
    [[nodiscard]] QueryRef slot_query(Slot s) const;
    [[nodiscard]] double slot_distance(const QueryRef& q, Slot s) const;
    [[nodiscard]] Slot slot_of(RecordId id) const;
    [[nodiscard]] std::size_t capacity(int layer) const;
    [[nodiscard]] int draw_level();

    [[nodiscard]] std::vector<Candidate> search_layer_slots(const QueryRef& query,
                                                            const std::vector<Candidate>& entries,
                                                            std::size_t ef, int layer,
                                                            SearchStats* stats) const;
    void validate_query(std::span<const float> query) const;

    static bool nearer(const Candidate& a, const Candidate& b);
    [[nodiscard]] std::vector<Candidate> select_neighbors(const std::vector<Candidate>& sorted,
                                                          std::size_t cap) const;
    bool try_link(Slot node, Slot neighbor, double dist, int layer, bool force);
    static void remove_edge(Adjacency& adj, Slot target);

    std::size_t dimension_;
    HnswParams params_;
    Rng rng_;

    std::vector<RecordId> ids_;
    std::unordered_map<RecordId, Slot> slot_by_id_;
    std::vector<float> data_;  // row-major, dimension_ floats per slot
    std::vector<double> sq_norms_;
    std::vector<int> levels_;
    std::vector<std::vector<Adjacency>> links_;  // links_[slot][layer]
    std::optional<Slot> entry_;
    int max_level_ = -1;
};

/// Exact k nearest neighbors by full scan; ties broken by id.
SearchResult brute_force_knn(std::span<const Embedding> corpus, std::span<const float> query,
                             std::size_t k, DistanceMetric metric);
SearchResult brute_force_knn(std::span<const Embedding> corpus, const Embedding& query,
                             std::size_t k, DistanceMetric metric);

/// Fraction of truth ids recovered by result, |result ∩ truth| / |truth|.
double recall(const SearchResult& result, const SearchResult& truth);

}  // namespace vfr
