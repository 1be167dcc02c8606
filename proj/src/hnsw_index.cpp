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

#include "vfr/hnsw_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_set>

#include "binary_io.hpp"
#include "vfr/error.hpp"

namespace vfr {

namespace {

constexpr char kIndexMagic[] = "HNSW";

// Per-thread visited marks. A fresh epoch per search avoids clearing the array.
class VisitedMarks {
public:
    void reset(std::size_t n) {
        if (tags_.size() < n) {
            tags_.resize(std::max(n, 2 * tags_.size()), 0);
        }
        if (++epoch_ == 0) {
            std::fill(tags_.begin(), tags_.end(), 0);
            epoch_ = 1;
        }
    }
    // Returns false if already marked.
    bool mark(std::size_t i) {
        if (tags_[i] == epoch_) {
            return false;
        }
        tags_[i] = epoch_;
        return true;
    }

private:
    std::vector<std::uint32_t> tags_;
    std::uint32_t epoch_ = 0;
};

thread_local VisitedMarks t_visited;

}  // namespace

HnswParams
HnswParams::with_m(std::uint32_t m) {
    HnswParams p;
    p.m = m;
    p.m0 = 2 * m;
    return p;
}

double
HnswParams::effective_level_multiplier() const {
    return level_multiplier.value_or(1.0 / std::log(static_cast<double>(m)));
}

void
HnswParams::validate() const {
    if (m < 2) {
        throw InvalidArgument("hnsw: m must be at least 2");
    }
    if (m0 < m) {
        throw InvalidArgument("hnsw: m0 must be at least m");
    }
    if (ef_construction < m) {
        throw InvalidArgument("hnsw: ef_construction must be at least m");
    }
    const double ml = effective_level_multiplier();
    if (!(ml > 0.0) || !std::isfinite(ml)) {
        throw InvalidArgument("hnsw: level multiplier must be positive and finite");
    }
}

HnswIndex::HnswIndex(std::size_t dimension, HnswParams params)
    : dimension_(dimension), params_(params), rng_(params.rng_seed) {
    if (dimension_ == 0) {
        throw InvalidArgument("hnsw: dimension must be positive");
    }
    params_.validate();
}

std::span<const float>
HnswIndex::slot_vector(Slot s) const {
    return {data_.data() + std::size_t{s} * dimension_, dimension_};
}

HnswIndex::QueryRef
HnswIndex::prepare(std::span<const float> q) const {
    return {q, params_.metric == DistanceMetric::Cosine ? dot(q, q) : 0.0};
}

HnswIndex::QueryRef
HnswIndex::slot_query(Slot s) const {
    return {slot_vector(s), sq_norms_[s]};
}

double
HnswIndex::slot_distance(const QueryRef& q, Slot s) const {
    if (params_.metric == DistanceMetric::Cosine) {
        return cosine_distance_from_similarity(
            cosine_from_parts(dot(q.values, slot_vector(s)), q.sq_norm, sq_norms_[s]));
    }
    return squared_l2(q.values, slot_vector(s));
}

HnswIndex::Slot
HnswIndex::slot_of(RecordId id) const {
    auto it = slot_by_id_.find(id);
    if (it == slot_by_id_.end()) {
        throw InvalidArgument("hnsw: unknown id " + std::to_string(id));
    }
    return it->second;
}

std::size_t
HnswIndex::capacity(int layer) const {
    return layer == 0 ? params_.m0 : params_.m;
}

int
HnswIndex::draw_level() {
    const double u = rng_.uniform_open();
    return static_cast<int>(std::floor(-std::log(u) * params_.effective_level_multiplier()));
}

bool
HnswIndex::nearer(const Candidate& a, const Candidate& b) {
    return a.distance < b.distance || (a.distance == b.distance && a.slot < b.slot);
}

bool
HnswIndex::contains(RecordId id) const {
    return slot_by_id_.contains(id);
}

std::optional<RecordId>
HnswIndex::entry_point() const {
    if (!entry_) {
        return std::nullopt;
    }
    return ids_[*entry_];
}

int
HnswIndex::level(RecordId id) const {
    return levels_[slot_of(id)];
}

std::span<const float>
HnswIndex::vector(RecordId id) const {
    return slot_vector(slot_of(id));
}

std::vector<RecordId>
HnswIndex::neighbors(RecordId id, int layer) const {
    const Slot s = slot_of(id);
    if (layer < 0 || layer > levels_[s]) {
        throw InvalidArgument("hnsw: node " + std::to_string(id) + " is not on layer " +
                              std::to_string(layer));
    }
    std::vector<RecordId> out;
    for (Slot n : links_[s][layer].ids) {
        out.push_back(ids_[n]);
    }
    return out;
}

void
HnswIndex::validate_query(std::span<const float> query) const {
    require_same_dimension(query.size(), dimension_);
    for (float v : query) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("hnsw: query has a non-finite component");
        }
    }
    if (params_.metric == DistanceMetric::Cosine && dot(query, query) == 0.0) {
        throw ZeroNorm("hnsw: zero vector has no cosine direction");
    }
}

std::vector<HnswIndex::Candidate>
HnswIndex::search_layer_slots(const QueryRef& query, const std::vector<Candidate>& entries,
                              std::size_t ef, int layer, SearchStats* stats) const {
    auto farther = [](const Candidate& a, const Candidate& b) { return nearer(b, a); };

    // candidates: nearest on top; results: farthest on top
    std::priority_queue<Candidate, std::vector<Candidate>, decltype(farther)> candidates(farther);
    std::priority_queue<Candidate, std::vector<Candidate>, decltype(&nearer)> results(&nearer);

    auto& visited = t_visited;
    visited.reset(ids_.size());
    std::size_t visited_count = 0;
    std::size_t evaluations = 0;

    for (const auto& e : entries) {
        if (!visited.mark(e.slot)) {
            continue;
        }
        ++visited_count;
        candidates.push(e);
        results.push(e);
        if (results.size() > ef) {
            results.pop();
        }
    }

    while (!candidates.empty()) {
        const Candidate current = candidates.top();
        if (results.size() >= ef && nearer(results.top(), current)) {
            break;
        }
        candidates.pop();
        for (Slot n : links_[current.slot][layer].ids) {
            if (!visited.mark(n)) {
                continue;
            }
            ++visited_count;
            ++evaluations;
            const Candidate next{slot_distance(query, n), n};
            if (results.size() < ef || nearer(next, results.top())) {
                candidates.push(next);
                results.push(next);
                if (results.size() > ef) {
                    results.pop();
                }
            }
        }
    }

    if (stats != nullptr) {
        stats->visited += visited_count;
        stats->distance_evaluations += evaluations;
    }

    std::vector<Candidate> out;
    out.reserve(results.size());
    while (!results.empty()) {
        out.push_back(results.top());
        results.pop();
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<Hit>
HnswIndex::search_layer(std::span<const float> query, RecordId entry, std::size_t ef, int layer,
                        SearchStats* stats) const {
    validate_query(query);
    if (ef == 0) {
        throw InvalidArgument("hnsw: ef must be positive");
    }
    const Slot ep = slot_of(entry);
    if (layer < 0 || layer > levels_[ep]) {
        throw InvalidArgument("hnsw: entry node is not on layer " + std::to_string(layer));
    }
    if (stats != nullptr) {
        ++stats->distance_evaluations;
    }
    const auto q = prepare(query);
    const auto found = search_layer_slots(q, {{slot_distance(q, ep), ep}}, ef, layer, stats);
    std::vector<Hit> hits;
    hits.reserve(found.size());
    for (const auto& c : found) {
        hits.push_back({ids_[c.slot], c.distance});
    }
    std::sort(hits.begin(), hits.end(), hit_less);
    return hits;
}

SearchResult
HnswIndex::knn_search(std::span<const float> query, std::size_t k, std::size_t ef,
                      SearchStats* stats) const {
    if (empty()) {
        throw EmptyInput("hnsw: cannot search an empty index");
    }
    if (k == 0) {
        throw InvalidArgument("hnsw: k must be positive");
    }
    if (ef < k) {
        throw InvalidArgument("hnsw: ef (" + std::to_string(ef) + ") must be at least k (" +
                              std::to_string(k) + ")");
    }
    validate_query(query);

    const auto q = prepare(query);
    std::vector<Candidate> current{{slot_distance(q, *entry_), *entry_}};
    if (stats != nullptr) {
        ++stats->distance_evaluations;
    }
    for (int layer = max_level_; layer > 0; --layer) {
        current = search_layer_slots(q, current, 1, layer, stats);
    }
    const auto found = search_layer_slots(q, current, ef, 0, stats);

    SearchResult result;
    result.hits.reserve(found.size());
    for (const auto& c : found) {
        result.hits.push_back({ids_[c.slot], c.distance});
    }
    std::sort(result.hits.begin(), result.hits.end(), hit_less);
    if (result.hits.size() > k) {
        result.hits.resize(k);
    }
    result.k_clamped = k > size();
    return result;
}

SearchResult
HnswIndex::knn_search(const Embedding& query, std::size_t k, std::size_t ef,
                      SearchStats* stats) const {
    auto result = knn_search(query.values(), k, ef, stats);
    result.query_id = query.id();
    return result;
}

void
HnswIndex::remove_edge(Adjacency& adj, Slot target) {
    for (std::size_t i = 0; i < adj.ids.size(); ++i) {
        if (adj.ids[i] == target) {
            adj.ids.erase(adj.ids.begin() + static_cast<std::ptrdiff_t>(i));
            adj.distances.erase(adj.distances.begin() + static_cast<std::ptrdiff_t>(i));
            return;
        }
    }
}

std::vector<HnswIndex::Candidate>
HnswIndex::select_neighbors(const std::vector<Candidate>& sorted, std::size_t cap) const {
    if (params_.selection == NeighborSelection::Nearest || sorted.size() <= 1) {
        return {sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(
                                                     std::min(cap, sorted.size()))};
    }
    // diversity rule: keep a candidate only if it is closer to the base than to
    // every candidate kept so far
    std::vector<Candidate> kept;
    for (const auto& c : sorted) {
        if (kept.size() >= cap) {
            break;
        }
        bool diverse = true;
        for (const auto& r : kept) {
            if (slot_distance(slot_query(c.slot), r.slot) < c.distance) {
                diverse = false;
                break;
            }
        }
        if (diverse) {
            kept.push_back(c);
        }
    }
    return kept;
}

// Offers node as a neighbor of `neighbor` on a layer. An overfull list is cut
// back to capacity with the selection rule; edges it drops are removed from
// both endpoints. With force set, the farthest entry is evicted instead so the
// link always forms.
bool
HnswIndex::try_link(Slot node, Slot neighbor, double dist, int layer, bool force) {
    auto& theirs = links_[neighbor][layer];
    const std::size_t cap = capacity(layer);
    bool accepted = true;
    if (theirs.ids.size() < cap) {
        theirs.ids.push_back(node);
        theirs.distances.push_back(dist);
    } else if (force) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < theirs.ids.size(); ++i) {
            if (nearer({theirs.distances[worst], theirs.ids[worst]},
                       {theirs.distances[i], theirs.ids[i]})) {
                worst = i;
            }
        }
        const Slot evicted = theirs.ids[worst];
        theirs.ids[worst] = node;
        theirs.distances[worst] = dist;
        remove_edge(links_[evicted][layer], neighbor);
    } else {
        std::vector<Candidate> pool;
        pool.reserve(theirs.ids.size() + 1);
        for (std::size_t i = 0; i < theirs.ids.size(); ++i) {
            pool.push_back({theirs.distances[i], theirs.ids[i]});
        }
        pool.push_back({dist, node});
        std::sort(pool.begin(), pool.end(), nearer);
        const auto keep = select_neighbors(pool, cap);
        std::vector<Slot> dropped;
        for (const auto& c : pool) {
            const bool stays = std::any_of(keep.begin(), keep.end(),
                                           [&](const Candidate& k) { return k.slot == c.slot; });
            if (!stays) {
                dropped.push_back(c.slot);
            }
        }
        accepted = std::find(dropped.begin(), dropped.end(), node) == dropped.end();
        // surviving entries keep their order; the new node goes last
        Adjacency survivors;
        for (std::size_t i = 0; i < theirs.ids.size(); ++i) {
            if (std::find(dropped.begin(), dropped.end(), theirs.ids[i]) == dropped.end()) {
                survivors.ids.push_back(theirs.ids[i]);
                survivors.distances.push_back(theirs.distances[i]);
            }
        }
        theirs = std::move(survivors);
        if (accepted) {
            theirs.ids.push_back(node);
            theirs.distances.push_back(dist);
        }
        for (Slot d : dropped) {
            if (d != node) {
                remove_edge(links_[d][layer], neighbor);
            }
        }
    }
    if (accepted) {
        auto& mine = links_[node][layer];
        mine.ids.push_back(neighbor);
        mine.distances.push_back(dist);
    }
    return accepted;
}

void
HnswIndex::insert(const Embedding& e) {
    require_same_dimension(e.dimension(), dimension_);
    if (contains(e.id())) {
        throw DuplicateId("hnsw: id " + std::to_string(e.id()) + " is already indexed");
    }
    validate_query(e.values());
    if (ids_.size() >= std::numeric_limits<Slot>::max()) {
        throw RuntimeFailure("hnsw: index is full");
    }

    const auto slot = static_cast<Slot>(ids_.size());
    const int node_level = draw_level();
    ids_.push_back(e.id());
    slot_by_id_.emplace(e.id(), slot);
    data_.insert(data_.end(), e.values().begin(), e.values().end());
    sq_norms_.push_back(dot(e.values(), e.values()));
    levels_.push_back(node_level);
    links_.emplace_back(static_cast<std::size_t>(node_level) + 1);

    if (!entry_) {
        entry_ = slot;
        max_level_ = node_level;
        return;
    }

    const auto query = slot_query(slot);
    std::vector<Candidate> current{{slot_distance(query, *entry_), *entry_}};
    for (int layer = max_level_; layer > node_level; --layer) {
        current = search_layer_slots(query, current, 1, layer, nullptr);
    }
    for (int layer = std::min(node_level, max_level_); layer >= 0; --layer) {
        auto found = search_layer_slots(query, current, params_.ef_construction, layer, nullptr);
        // the new node was marked visited by nobody, but guard against self anyway
        std::erase_if(found, [slot](const Candidate& c) { return c.slot == slot; });
        const auto chosen = select_neighbors(found, capacity(layer));
        bool linked = false;
        for (const auto& c : chosen) {
            linked |= try_link(slot, c.slot, c.distance, layer, false);
        }
        if (!linked && !chosen.empty()) {
            try_link(slot, chosen.front().slot, chosen.front().distance, layer, true);
        }
        current = std::move(found);
    }
    if (node_level > max_level_) {
        entry_ = slot;
        max_level_ = node_level;
    }
}

ValidationReport
HnswIndex::validate() const {
    ValidationReport report;
    auto fail = [&](std::string msg) {
        report.ok = false;
        report.problems.push_back(std::move(msg));
    };
    const std::size_t n = ids_.size();
    if (levels_.size() != n || links_.size() != n || sq_norms_.size() != n || data_.size() != n * dimension_ ||
        slot_by_id_.size() != n) {
        fail("storage arrays disagree on the element count");
        return report;
    }
    if (n == 0) {
        if (entry_ || max_level_ != -1) {
            fail("empty index has an entry point");
        }
        return report;
    }
    if (!entry_) {
        fail("nonempty index has no entry point");
        return report;
    }
    const int top = *std::max_element(levels_.begin(), levels_.end());
    if (levels_[*entry_] != top || max_level_ != top) {
        fail("entry point is not on the maximal level");
    }
    for (Slot s = 0; s < n; ++s) {
        const std::string who = "node " + std::to_string(ids_[s]);
        if (links_[s].size() != static_cast<std::size_t>(levels_[s]) + 1) {
            fail(who + ": adjacency layer count differs from level + 1");
            continue;
        }
        for (int layer = 0; layer <= levels_[s]; ++layer) {
            const auto& adj = links_[s][layer];
            if (adj.ids.size() != adj.distances.size()) {
                fail(who + ": distance cache out of sync");
                continue;
            }
            if (adj.ids.size() > capacity(layer)) {
                fail(who + ": over capacity on layer " + std::to_string(layer));
            }
            std::unordered_set<Slot> seen;
            for (std::size_t i = 0; i < adj.ids.size(); ++i) {
                const Slot t = adj.ids[i];
                if (t >= n) {
                    fail(who + ": dangling edge");
                    continue;
                }
                if (t == s) {
                    fail(who + ": self loop");
                }
                if (!seen.insert(t).second) {
                    fail(who + ": duplicate edge");
                }
                if (levels_[t] < layer) {
                    fail(who + ": edge to a node absent from layer " + std::to_string(layer));
                    continue;
                }
                const auto& back = links_[t][layer].ids;
                if (std::find(back.begin(), back.end(), s) == back.end()) {
                    fail(who + ": asymmetric edge to " + std::to_string(ids_[t]) + " on layer " +
                         std::to_string(layer));
                }
                if (adj.distances[i] != slot_distance(slot_query(s), t)) {
                    fail(who + ": stale cached distance");
                }
            }
        }
    }
    return report;
}

bool
HnswIndex::structurally_equal(const HnswIndex& other) const {
    if (dimension_ != other.dimension_ || ids_ != other.ids_ || levels_ != other.levels_ ||
        data_ != other.data_ || entry_ != other.entry_ || max_level_ != other.max_level_) {
        return false;
    }
    const auto& a = params_;
    const auto& b = other.params_;
    if (a.m != b.m || a.m0 != b.m0 || a.ef_construction != b.ef_construction ||
        a.effective_level_multiplier() != b.effective_level_multiplier() ||
        a.metric != b.metric || a.rng_seed != b.rng_seed || a.selection != b.selection) {
        return false;
    }
    for (std::size_t s = 0; s < links_.size(); ++s) {
        for (std::size_t layer = 0; layer < links_[s].size(); ++layer) {
            if (links_[s][layer].ids != other.links_[s][layer].ids) {
                return false;
            }
        }
    }
    return true;
}

std::vector<std::uint8_t>
HnswIndex::serialize() const {
    detail::ByteWriter w;
    w.put(params_.m);
    w.put(params_.m0);
    w.put(params_.ef_construction);
    w.put(params_.effective_level_multiplier());
    w.put(static_cast<std::uint8_t>(params_.level_multiplier.has_value()));
    w.put(static_cast<std::uint8_t>(params_.metric));
    w.put(params_.rng_seed);
    w.put(static_cast<std::uint8_t>(params_.selection));
    w.put(static_cast<std::uint32_t>(dimension_));
    w.put(static_cast<std::uint64_t>(ids_.size()));
    for (Slot s = 0; s < ids_.size(); ++s) {
        w.put(ids_[s]);
        w.put(static_cast<std::uint32_t>(levels_[s]));
        w.put_floats(slot_vector(s));
        for (const auto& adj : links_[s]) {
            w.put(static_cast<std::uint32_t>(adj.ids.size()));
            for (Slot t : adj.ids) {
                w.put(ids_[t]);
            }
        }
    }
    return detail::seal_container(std::string_view(kIndexMagic, 4), kFormatVersion, w.bytes());
}

HnswIndex
HnswIndex::deserialize(std::span<const std::uint8_t> file) {
    const auto payload =
        detail::open_container(file, std::string_view(kIndexMagic, 4), kFormatVersion);
    detail::ByteReader r(payload);

    HnswParams params;
    params.m = r.get<std::uint32_t>();
    params.m0 = r.get<std::uint32_t>();
    params.ef_construction = r.get<std::uint32_t>();
    const auto multiplier = r.get<double>();
    const bool explicit_multiplier = r.get<std::uint8_t>() != 0;
    if (explicit_multiplier) {
        params.level_multiplier = multiplier;
    }
    const auto metric = r.get<std::uint8_t>();
    if (metric > static_cast<std::uint8_t>(DistanceMetric::Cosine)) {
        throw FormatError("index: unknown metric code " + std::to_string(metric));
    }
    params.metric = static_cast<DistanceMetric>(metric);
    params.rng_seed = r.get<std::uint64_t>();
    const auto selection = r.get<std::uint8_t>();
    if (selection > static_cast<std::uint8_t>(NeighborSelection::Diverse)) {
        throw FormatError("index: unknown neighbor selection code");
    }
    params.selection = static_cast<NeighborSelection>(selection);
    const auto dimension = r.get<std::uint32_t>();
    const auto count = r.get<std::uint64_t>();

    HnswIndex index = [&] {
        try {
            return HnswIndex(dimension, params);
        } catch (const InvalidArgument& e) {
            throw FormatError(std::string("index: invalid stored parameters: ") + e.what());
        }
    }();
    if (!explicit_multiplier && index.params_.effective_level_multiplier() != multiplier) {
        throw FormatError("index: stored level multiplier disagrees with m");
    }
    // every node needs at least id, level, vector and one layer count
    const std::size_t min_node_bytes = 8 + 4 + 4 * std::size_t{dimension} + 4;
    if (count > r.remaining() / min_node_bytes) {
        throw FormatError("index: element count exceeds the payload size");
    }

    std::vector<std::vector<std::vector<RecordId>>> raw_links(count);
    index.ids_.reserve(count);
    index.levels_.reserve(count);
    index.data_.resize(count * dimension);
    for (std::uint64_t s = 0; s < count; ++s) {
        const auto id = r.get<RecordId>();
        const auto lvl = r.get<std::uint32_t>();
        if (lvl > 64) {
            throw FormatError("index: implausible node level " + std::to_string(lvl));
        }
        if (!index.slot_by_id_.emplace(id, static_cast<Slot>(s)).second) {
            throw FormatError("index: duplicate id " + std::to_string(id));
        }
        index.ids_.push_back(id);
        index.levels_.push_back(static_cast<int>(lvl));
        r.get_floats(std::span<float>(index.data_.data() + s * dimension, dimension));
        raw_links[s].resize(lvl + 1);
        for (auto& layer : raw_links[s]) {
            const auto degree = r.get<std::uint32_t>();
            if (degree > r.remaining() / 8) {
                throw FormatError("index: neighbor count exceeds the payload size");
            }
            layer.resize(degree);
            for (auto& t : layer) {
                t = r.get<RecordId>();
            }
        }
    }
    if (r.remaining() != 0) {
        throw FormatError("index: payload has trailing bytes");
    }

    for (float v : index.data_) {
        if (!std::isfinite(v)) {
            throw FormatError("index: stored vector has a non-finite component");
        }
    }
    index.sq_norms_.resize(count);
    for (Slot s = 0; s < count; ++s) {
        const auto v = index.slot_vector(s);
        index.sq_norms_[s] = dot(v, v);
    }
    index.links_.resize(count);
    for (Slot s = 0; s < count; ++s) {
        index.links_[s].resize(raw_links[s].size());
        for (std::size_t layer = 0; layer < raw_links[s].size(); ++layer) {
            auto& adj = index.links_[s][layer];
            for (RecordId t : raw_links[s][layer]) {
                auto it = index.slot_by_id_.find(t);
                if (it == index.slot_by_id_.end()) {
                    throw FormatError("index: edge to unknown id " + std::to_string(t));
                }
                adj.ids.push_back(it->second);
                adj.distances.push_back(
                    index.slot_distance(index.slot_query(s), it->second));
            }
        }
    }
    if (count > 0) {
        // the entry point is the first node to reach the maximal level
        const auto top = std::max_element(index.levels_.begin(), index.levels_.end());
        index.entry_ = static_cast<Slot>(top - index.levels_.begin());
        index.max_level_ = *top;
    }
    // one generator draw per insert, so this resumes the original sequence
    index.rng_.discard(count);

    const auto report = index.validate();
    if (!report.ok) {
        throw FormatError("index: stored graph violates invariants: " + report.problems.front());
    }
    return index;
}

void
HnswIndex::save(const std::filesystem::path& path) const {
    detail::write_file(path, serialize());
}

HnswIndex
HnswIndex::load(const std::filesystem::path& path) {
    return deserialize(detail::read_file(path));
}

SearchResult
brute_force_knn(std::span<const Embedding> corpus, std::span<const float> query, std::size_t k,
                DistanceMetric metric) {
    if (corpus.empty()) {
        throw EmptyInput("brute force: corpus is empty");
    }
    if (k == 0) {
        throw InvalidArgument("brute force: k must be positive");
    }
    std::vector<Hit> all;
    all.reserve(corpus.size());
    for (const auto& e : corpus) {
        all.push_back({e.id(), distance(query, e.values(), metric)});
    }
    const std::size_t take = std::min(k, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(),
                      hit_less);
    all.resize(take);
    SearchResult result;
    result.hits = std::move(all);
    result.k_clamped = k > corpus.size();
    return result;
}

SearchResult
brute_force_knn(std::span<const Embedding> corpus, const Embedding& query, std::size_t k,
                DistanceMetric metric) {
    auto result = brute_force_knn(corpus, query.values(), k, metric);
    result.query_id = query.id();
    return result;
}

double
recall(const SearchResult& result, const SearchResult& truth) {
    if (truth.hits.empty()) {
        return 1.0;
    }
    std::unordered_set<RecordId> want;
    for (const auto& h : truth.hits) {
        want.insert(h.id);
    }
    std::size_t found = 0;
    for (const auto& h : result.hits) {
        found += want.count(h.id);
    }
    return static_cast<double>(found) / static_cast<double>(truth.hits.size());
}

}  // namespace vfr
