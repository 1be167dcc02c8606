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


#include "vfr/secondary_search.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <thread>

#include "vfr/error.hpp"

namespace vfr {

std::string_view
to_string(CombineOp op) {
    return op == CombineOp::And ? "and" : "or";
}

CombineOp
parse_combine_op(std::string_view name) {
    if (name == "and" || name == "AND" || name == "And") {
        return CombineOp::And;
    }
    if (name == "or" || name == "OR" || name == "Or") {
        return CombineOp::Or;
    }
    throw InvalidArgument("unknown combine op '" + std::string(name) + "' (expected and|or)");
}

void
SecondaryConfig::validate() const {
    if (k == 0) {
        throw InvalidArgument("secondary: k must be positive");
    }
    if (expansion_count < 1 || expansion_count > k) {
        throw InvalidArgument("secondary: expansion_count must lie in [1, k]");
    }
    if (ef_first < k || ef_second < k) {
        throw InvalidArgument("secondary: ef_first and ef_second must be at least k");
    }
}

namespace {

void
sort_hits(std::vector<Hit>& hits) {
    std::sort(hits.begin(), hits.end(), hit_less);
}

}  // namespace

SearchResult
combine(const SearchResult& first, const SearchResult& second, CombineOp op) {
    std::map<RecordId, double> a, b;
    for (const auto& h : first.hits) {
        a.emplace(h.id, h.distance);
    }
    for (const auto& h : second.hits) {
        auto [it, fresh] = b.emplace(h.id, h.distance);
        if (!fresh) {
            it->second = std::min(it->second, h.distance);
        }
    }
    SearchResult out;
    out.query_id = first.query_id;
    if (op == CombineOp::And) {
        for (const auto& [id, d] : a) {
            if (auto it = b.find(id); it != b.end()) {
                out.hits.push_back({id, std::min(d, it->second)});
            }
        }
    } else {
        for (const auto& [id, d] : b) {
            auto [it, fresh] = a.emplace(id, d);
            if (!fresh) {
                it->second = std::min(it->second, d);
            }
        }
        for (const auto& [id, d] : a) {
            out.hits.push_back({id, d});
        }
    }
    sort_hits(out.hits);
    return out;
}

SecondaryTrace
secondary_search_trace(const HnswIndex& index, std::span<const float> query,
                       const SecondaryConfig& cfg) {
    cfg.validate();
    SecondaryTrace trace;
    trace.first = index.knn_search(query, cfg.k, cfg.ef_first);

    const std::size_t seeds = std::min(cfg.expansion_count, trace.first.hits.size());
    std::vector<SearchResult> expansions(seeds);
    auto run = [&](std::size_t i) {
        expansions[i] = index.knn_search(index.vector(trace.first.hits[i].id), cfg.k, cfg.ef_second);
    };
    if (cfg.parallel && seeds > 1) {
        std::vector<std::thread> workers;
        for (std::size_t i = 0; i < seeds; ++i) {
            workers.emplace_back(run, i);
        }
        for (auto& w : workers) {
            w.join();
        }
    } else {
        for (std::size_t i = 0; i < seeds; ++i) {
            run(i);
        }
    }

    std::map<RecordId, double> pooled;
    for (const auto& r : expansions) {
        for (const auto& h : r.hits) {
            if (!pooled.count(h.id)) {
                pooled.emplace(h.id, distance(query, index.vector(h.id), index.metric()));
            }
        }
    }
    for (const auto& [id, d] : pooled) {
        trace.second.hits.push_back({id, d});
    }
    sort_hits(trace.second.hits);

    trace.combined = combine(trace.first, trace.second, cfg.combine);
    trace.result = trace.combined;
    if (trace.result.hits.size() > cfg.k) {
        trace.result.hits.resize(cfg.k);
    }
    trace.result.k_clamped = trace.result.hits.size() < cfg.k;
    return trace;
}

SearchResult
secondary_search(const HnswIndex& index, std::span<const float> query, const SecondaryConfig& cfg) {
    return secondary_search_trace(index, query, cfg).result;
}

SearchResult
secondary_search(const HnswIndex& index, const Embedding& query, const SecondaryConfig& cfg) {
    auto r = secondary_search(index, query.values(), cfg);
    r.query_id = query.id();
    return r;
}

}  // namespace vfr
