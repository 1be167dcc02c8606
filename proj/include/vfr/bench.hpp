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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vfr/flat_index.hpp"
#include "vfr/hnsw_index.hpp"
#include "vfr/library.hpp"
#include "vfr/secondary_search.hpp"

namespace vfr {

enum class StreamKind : std::uint8_t {
    Simple,   // 1..5 faces per frame
    Complex,  // 6..15 faces per frame
};

std::string_view to_string(StreamKind kind);
StreamKind parse_stream_kind(std::string_view name);

struct FrameStreamConfig {
    std::size_t frame_count = 200;
    StreamKind kind = StreamKind::Simple;
    double query_noise_sigma = 0.05;
    std::uint64_t rng_seed = 42;

    void validate() const;
};

struct Probe {
    Embedding embedding;
    RecordId truth = 0;  // library record the probe was drawn from
};

using Frame = std::vector<Probe>;

/**
 * Synthetic probe frames. Per frame: the face count, then per face a library
 * record index followed by one Gaussian draw per component. The probe is the
 * record's vector plus noise, renormalized. With sigma 0 no noise is drawn and
 * the probe is an exact copy.
 */
std::vector<Frame> simulate_stream(const FeatureLibrary& lib, const FrameStreamConfig& cfg);

enum class BenchMode : std::uint8_t { Hnsw, Violence };

std::string_view to_string(BenchMode mode);

struct BenchReport {
    BenchMode mode = BenchMode::Hnsw;
    StreamKind stream = StreamKind::Simple;
    std::size_t frames = 0;
    std::size_t repetitions = 0;
    std::size_t total_queries = 0;  // per repetition
    double mean_ms = 0.0;
    double median_ms = 0.0;
    double p95_ms = 0.0;
    /// Hnsw only: mean per-query overlap with the Violence top-k.
    std::optional<double> recall_vs_oracle;

    friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

struct BenchConfig {
    std::size_t k = 10;
    std::size_t ef = kDefaultQueryEf;
    std::optional<SecondaryConfig> secondary;
    std::size_t repetitions = 3;
    bool warmup = true;
    /// Spread frames across threads; each frame is still timed on its own.
    bool parallel = false;

    void validate() const;
};

/// Accounting of the timed regions, for checking what the clock covered.
struct BenchTimers {
    std::size_t timed_regions = 0;
    std::size_t queries_in_timed_regions = 0;
    double timed_ms = 0.0;
    double wall_ms = 0.0;
};

struct BenchComparison {
    BenchReport hnsw;
    BenchReport violence;
    BenchTimers timers;
    /// Every repetition returned the same hits as the first, per mode.
    bool hnsw_deterministic = true;
    bool violence_deterministic = true;
    /// Last repetition's results, frame-major.
    std::vector<SearchResult> hnsw_results;
    std::vector<SearchResult> violence_results;
};

/**
 * Per-frame retrieval latency of the HNSW index against an exhaustive scan.
 * Each repetition walks the frames in order and, per frame, answers every
 * probe with the index and then with the scan, timing the two separately.
 * A frame's time is its median over repetitions; the report aggregates those
 * per-frame times. Covers retrieval only, not detection or recognition.
 */
BenchComparison bench_compare(const HnswIndex& index, const FlatIndex& flat,
                              const std::vector<Frame>& stream, StreamKind kind,
                              const BenchConfig& cfg);

FlatIndex flat_index_of(const FeatureLibrary& lib, DistanceMetric metric);

/// Nearest-rank percentile of an unsorted sample, p in (0, 100].
double percentile(std::vector<double> values, double p);
double median(std::vector<double> values);

void write_bench_csv(std::ostream& out, const std::vector<BenchReport>& reports);
std::vector<BenchReport> parse_bench_csv(std::istream& in);
std::string format_bench_table(const std::vector<BenchReport>& reports);

}  // namespace vfr
