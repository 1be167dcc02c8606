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


#include "vfr/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "number_text.hpp"
#include "vfr/error.hpp"
#include "vfr/rng.hpp"

namespace vfr {

std::string_view
to_string(StreamKind kind) {
    return kind == StreamKind::Simple ? "simple" : "complex";
}

StreamKind
parse_stream_kind(std::string_view name) {
    if (name == "simple") {
        return StreamKind::Simple;
    }
    if (name == "complex") {
        return StreamKind::Complex;
    }
    throw InvalidArgument("unknown stream kind '" + std::string(name) + "' (expected simple|complex)");
}

std::string_view
to_string(BenchMode mode) {
    return mode == BenchMode::Hnsw ? "hnsw" : "violence";
}

namespace {

BenchMode
parse_mode(std::string_view name) {
    if (name == "hnsw") {
        return BenchMode::Hnsw;
    }
    if (name == "violence") {
        return BenchMode::Violence;
    }
    throw FormatError("bench csv: unknown mode '" + std::string(name) + "'");
}

}  // namespace

void
FrameStreamConfig::validate() const {
    if (frame_count == 0) {
        throw InvalidArgument("stream: frame_count must be positive");
    }
    if (!(query_noise_sigma >= 0.0) || !std::isfinite(query_noise_sigma)) {
        throw InvalidArgument("stream: sigma must be a finite nonnegative number");
    }
}

std::vector<Frame>
simulate_stream(const FeatureLibrary& lib, const FrameStreamConfig& cfg) {
    cfg.validate();
    if (lib.empty()) {
        throw EmptyInput("stream: library is empty");
    }
    const auto [lo, hi] = cfg.kind == StreamKind::Simple ? std::pair{1, 5} : std::pair{6, 15};
    Rng rng(cfg.rng_seed);
    std::vector<Frame> frames(cfg.frame_count);
    RecordId next_id = 0;
    std::vector<float> v(lib.dimension());
    for (auto& frame : frames) {
        const auto faces = rng.uniform_int(lo, hi);
        for (std::int64_t f = 0; f < faces; ++f) {
            const auto& rec = lib.records()[rng.uniform_index(lib.size())];
            const auto src = rec.embedding.values();
            if (cfg.query_noise_sigma == 0.0) {
                frame.push_back({Embedding({src.begin(), src.end()}, next_id++), rec.id});
                continue;
            }
            double norm = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) {
                v[j] = static_cast<float>(src[j] + rng.normal(0.0, cfg.query_noise_sigma));
                norm += static_cast<double>(v[j]) * v[j];
            }
            norm = std::sqrt(norm);
            if (norm > 0.0) {
                for (auto& x : v) {
                    x = static_cast<float>(x / norm);
                }
            }
            frame.push_back({Embedding(v, next_id++), rec.id});
        }
    }
    return frames;
}

void
BenchConfig::validate() const {
    if (k == 0) {
        throw InvalidArgument("bench: k must be positive");
    }
    if (ef < k) {
        throw InvalidArgument("bench: ef must be at least k");
    }
    if (repetitions == 0) {
        throw InvalidArgument("bench: at least one repetition is required");
    }
}

FlatIndex
flat_index_of(const FeatureLibrary& lib, DistanceMetric metric) {
    FlatIndex flat(lib.dimension(), metric);
    for (const auto& r : lib.records()) {
        flat.insert(r.embedding);
    }
    return flat;
}

double
percentile(std::vector<double> values, double p) {
    if (values.empty()) {
        throw EmptyInput("percentile: no values");
    }
    if (!(p > 0.0 && p <= 100.0)) {
        throw InvalidArgument("percentile: p must lie in (0, 100]");
    }
    std::sort(values.begin(), values.end());
    const auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * values.size()));
    return values[std::max<std::size_t>(rank, 1) - 1];
}

double
median(std::vector<double> values) {
    if (values.empty()) {
        throw EmptyInput("median: no values");
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

namespace {

using Clock = std::chrono::steady_clock;

double
ms_between(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}

BenchReport
summarize(BenchMode mode, StreamKind kind, const std::vector<std::vector<double>>& per_frame,
          std::size_t reps, std::size_t queries) {
    std::vector<double> frame_ms;
    frame_ms.reserve(per_frame.size());
    for (const auto& samples : per_frame) {
        frame_ms.push_back(median(samples));
    }
    BenchReport r;
    r.mode = mode;
    r.stream = kind;
    r.frames = per_frame.size();
    r.repetitions = reps;
    r.total_queries = queries;
    r.mean_ms = std::accumulate(frame_ms.begin(), frame_ms.end(), 0.0) / frame_ms.size();
    r.median_ms = median(frame_ms);
    r.p95_ms = percentile(frame_ms, 95.0);
    return r;
}

}  // namespace

BenchComparison
bench_compare(const HnswIndex& index, const FlatIndex& flat, const std::vector<Frame>& stream,
              StreamKind kind, const BenchConfig& cfg) {
    const auto wall_start = Clock::now();
    cfg.validate();
    if (stream.empty()) {
        throw EmptyInput("bench: the stream has no frames");
    }
    if (index.empty() || flat.size() == 0) {
        throw EmptyInput("bench: index and scan corpus must be nonempty");
    }
    if (index.metric() != flat.metric() || index.dimension() != flat.dimension()) {
        throw InvalidArgument("bench: index and scan corpus disagree on metric or dimension");
    }
    std::optional<SecondaryConfig> secondary = cfg.secondary;
    if (secondary) {
        secondary->k = cfg.k;
        secondary->ef_first = cfg.ef;
        secondary->expansion_count = std::min(secondary->expansion_count, cfg.k);
        secondary->parallel = false;
        secondary->validate();
    }

    std::vector<std::size_t> offset(stream.size() + 1, 0);
    for (std::size_t f = 0; f < stream.size(); ++f) {
        offset[f + 1] = offset[f] + stream[f].size();
    }
    const std::size_t queries = offset.back();

    auto ann = [&](const Embedding& q) {
        return secondary ? secondary_search(index, q.values(), *secondary)
                         : index.knn_search(q.values(), cfg.k, cfg.ef);
    };

    if (cfg.warmup) {
        for (const auto& frame : stream) {
            for (const auto& p : frame) {
                (void)ann(p.embedding);
                (void)flat.knn_search(p.embedding.values(), cfg.k);
            }
        }
    }

    BenchComparison out;
    std::vector<std::vector<double>> hnsw_ms(stream.size()), flat_ms(stream.size());
    std::vector<SearchResult> hnsw_now(queries), flat_now(queries);
    std::vector<double> frame_timed(stream.size(), 0.0);

    auto run_frame = [&](std::size_t f) {
        const auto& frame = stream[f];
        const auto t0 = Clock::now();
        for (std::size_t i = 0; i < frame.size(); ++i) {
            hnsw_now[offset[f] + i] = ann(frame[i].embedding);
        }
        const auto t1 = Clock::now();
        for (std::size_t i = 0; i < frame.size(); ++i) {
            flat_now[offset[f] + i] = flat.knn_search(frame[i].embedding.values(), cfg.k);
        }
        const auto t2 = Clock::now();
        hnsw_ms[f].push_back(ms_between(t0, t1));
        flat_ms[f].push_back(ms_between(t1, t2));
        frame_timed[f] += ms_between(t0, t2);
    };

    const unsigned workers =
        cfg.parallel ? std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                       static_cast<unsigned>(stream.size())))
                     : 1u;
    for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
        if (workers == 1) {
            for (std::size_t f = 0; f < stream.size(); ++f) {
                run_frame(f);
            }
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t f; (f = next.fetch_add(1)) < stream.size();) {
                        run_frame(f);
                    }
                });
            }
            for (auto& t : pool) {
                t.join();
            }
        }
        out.timers.timed_regions += 2 * stream.size();
        out.timers.queries_in_timed_regions += 2 * queries;
        if (rep == 0) {
            out.hnsw_results = hnsw_now;
            out.violence_results = flat_now;
        } else {
            for (std::size_t q = 0; q < queries; ++q) {
                out.hnsw_deterministic =
                    out.hnsw_deterministic && hnsw_now[q].hits == out.hnsw_results[q].hits;
                out.violence_deterministic =
                    out.violence_deterministic && flat_now[q].hits == out.violence_results[q].hits;
            }
        }
    }
    out.hnsw_results = std::move(hnsw_now);
    out.violence_results = std::move(flat_now);
    out.timers.timed_ms = std::accumulate(frame_timed.begin(), frame_timed.end(), 0.0);

    out.hnsw = summarize(BenchMode::Hnsw, kind, hnsw_ms, cfg.repetitions, queries);
    out.violence = summarize(BenchMode::Violence, kind, flat_ms, cfg.repetitions, queries);
    double total_recall = 0.0;
    for (std::size_t q = 0; q < queries; ++q) {
        total_recall += recall(out.hnsw_results[q], out.violence_results[q]);
    }
    out.hnsw.recall_vs_oracle = queries > 0 ? total_recall / queries : 1.0;
    out.timers.wall_ms = ms_between(wall_start, Clock::now());
    return out;
}

namespace {

constexpr const char* kBenchHeader =
    "mode,stream,frames,repetitions,total_queries,mean_ms,median_ms,p95_ms,recall";

}  // namespace

void
write_bench_csv(std::ostream& out, const std::vector<BenchReport>& reports) {
    out << kBenchHeader << '\n';
    for (const auto& r : reports) {
        out << to_string(r.mode) << ',' << to_string(r.stream) << ',' << r.frames << ','
            << r.repetitions << ',' << r.total_queries << ',' << detail::shortest(r.mean_ms) << ','
            << detail::shortest(r.median_ms) << ',' << detail::shortest(r.p95_ms) << ','
            << (r.recall_vs_oracle ? detail::shortest(*r.recall_vs_oracle) : "") << '\n';
    }
}

std::vector<BenchReport>
parse_bench_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kBenchHeader) {
        throw FormatError("bench csv: missing or unexpected header");
    }
    std::vector<BenchReport> out;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            f.push_back(cell);
        }
        if (line.back() == ',') {
            f.emplace_back();
        }
        if (f.size() != 9) {
            throw FormatError("bench csv: expected 9 fields in '" + line + "'");
        }
        BenchReport r;
        try {
            r.mode = parse_mode(f[0]);
            r.stream = parse_stream_kind(f[1]);
            std::size_t used = 0;
            auto whole = [&](const std::string& s) {
                const auto v = std::stoull(s, &used);
                if (used != s.size()) {
                    throw FormatError("bench csv: bad integer '" + s + "'");
                }
                return static_cast<std::size_t>(v);
            };
            auto real = [&](const std::string& s) {
                const double v = std::stod(s, &used);
                if (used != s.size()) {
                    throw FormatError("bench csv: bad number '" + s + "'");
                }
                return v;
            };
            r.frames = whole(f[2]);
            r.repetitions = whole(f[3]);
            r.total_queries = whole(f[4]);
            r.mean_ms = real(f[5]);
            r.median_ms = real(f[6]);
            r.p95_ms = real(f[7]);
            if (!f[8].empty()) {
                r.recall_vs_oracle = real(f[8]);
            }
        } catch (const std::logic_error&) {
            throw FormatError("bench csv: malformed row '" + line + "'");
        } catch (const InvalidArgument&) {
            throw FormatError("bench csv: malformed row '" + line + "'");
        }
        out.push_back(r);
    }
    return out;
}

std::string
format_bench_table(const std::vector<BenchReport>& reports) {
    std::ostringstream out;
    char line[200];
    std::snprintf(line, sizeof(line), "%-9s %-8s %7s %5s %8s %12s %12s %12s %8s\n", "mode", "stream",
                  "frames", "reps", "queries", "mean(ms)", "median(ms)", "p95(ms)", "recall");
    out << line;
    for (const auto& r : reports) {
        char rec[16] = "-";
        if (r.recall_vs_oracle) {
            std::snprintf(rec, sizeof(rec), "%.4f", *r.recall_vs_oracle);
        }
        std::snprintf(line, sizeof(line), "%-9s %-8s %7zu %5zu %8zu %12.4f %12.4f %12.4f %8s\n",
                      std::string(to_string(r.mode)).c_str(), std::string(to_string(r.stream)).c_str(),
                      r.frames, r.repetitions, r.total_queries, r.mean_ms, r.median_ms, r.p95_ms,
                      rec);
        out << line;
    }
    return out.str();
}

}  // namespace vfr
