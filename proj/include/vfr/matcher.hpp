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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vfr/embedding.hpp"
#include "vfr/hnsw_index.hpp"
#include "vfr/library.hpp"
#include "vfr/secondary_search.hpp"

namespace vfr {

/// Same identity iff cosine_similarity(a, b) >= threshold.
bool verify_pair(const Embedding& a, const Embedding& b, double threshold);

struct PairRecord {
    /// Absent when no face was found upstream.
    std::optional<Embedding> a;
    std::optional<Embedding> b;
    bool same_identity = false;
};

struct SweepRow {
    double threshold = 0.0;
    std::size_t matched_correct = 0;
    std::size_t matched_error = 0;
    std::size_t matched_noface = 0;
    std::size_t dismatched_correct = 0;
    std::size_t dismatched_error = 0;
    std::size_t dismatched_noface = 0;
    /// (matched_correct + dismatched_correct) / total pairs.
    double accuracy = 0.0;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/**
 * One row per threshold. "matched" pairs are the genuine (same identity)
 * pairs, "dismatched" the impostor pairs. A pair with an absent or zero
 * embedding is noface and counts as neither correct nor error.
 */
std::vector<SweepRow> threshold_sweep(const std::vector<PairRecord>& pairs,
                                      const std::vector<double>& thresholds);

std::string format_sweep_table(const std::vector<SweepRow>& rows);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_sweep_csv(std::istream& in);

/// Pair list: `<emb_file_a> <emb_file_b> <0|1>` per line. Embedding paths are
/// relative to the list's directory; `-` or an empty file stands for noface.
std::vector<PairRecord> read_pair_list(const std::filesystem::path& path);

struct Identification {
    std::optional<std::string> identity;  // empty means Unknown
    std::optional<RecordId> id;           // top-1 candidate, accepted or not
    double similarity = 0.0;
};

/// Top-1 retrieval (secondary_search when secondary is set), accepted iff its
/// cosine similarity to q reaches threshold.
Identification identify(const Embedding& q, const HnswIndex& index, const LabelMap& labels,
                        double threshold,
                        const std::optional<SecondaryConfig>& secondary = std::nullopt);

}  // namespace vfr
