#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include "doctest.h"
#include "test_support.hpp"
#include "vfr/bench.hpp"
#include "vfr/error.hpp"
#include "vfr/synth.hpp"

using namespace vfr;
using namespace vfr::testing;

namespace {

FeatureLibrary
small_library(std::size_t identities, std::size_t photos, std::size_t d, std::uint64_t seed) {
    GalleryConfig g;
    g.identities = identities;
    g.photos_per_identity = photos;
    g.dimension = d;
    g.rng_seed = seed;
    return build_library(synthetic_gallery(g), "test", 0);
}

}  // namespace

TEST_CASE("flat index: identical to brute force") {
    for (auto metric : {DistanceMetric::Cosine, DistanceMetric::EuclideanSquared}) {
        const auto corpus = uniform_corpus(61, 700, 24);
        FlatIndex flat(24, metric);
        for (const auto& e : corpus) {
            flat.insert(e);
        }
        std::mt19937_64 gen(62);
        for (int t = 0; t < 30; ++t) {
            const auto q = uniform_vector(gen, 24, -1, 1);
            for (std::size_t k : {1, 7, 700, 800}) {
                const auto a = flat.knn_search(q, k);
                const auto b = brute_force_knn(corpus, q, k, metric);
                CHECK(a.hits == b.hits);
                CHECK(a.k_clamped == b.k_clamped);
            }
        }
    }
    FlatIndex flat(2, DistanceMetric::Cosine);
    CHECK_THROWS_AS((void)flat.knn_search(std::vector<float>{1, 0}, 1), EmptyInput);
    flat.insert(Embedding({1, 0}, 5));
    CHECK_THROWS_AS(flat.insert(Embedding({0, 1}, 5)), DuplicateId);
    CHECK_THROWS_AS(flat.insert(Embedding({0, 0}, 6)), ZeroNorm);
    CHECK_THROWS_AS((void)flat.knn_search(std::vector<float>{0, 0}, 1), ZeroNorm);
    CHECK_THROWS_AS((void)flat.knn_search(std::vector<float>{1, 0, 0}, 1), DimensionMismatch);
}

TEST_CASE("percentile and median") {
    CHECK(median({3, 1, 2}) == 2);
    CHECK(median({4, 1, 2, 3}) == 2.5);
    std::vector<double> v;
    for (int i = 1; i <= 100; ++i) {
        v.push_back(101 - i);
    }
    CHECK(percentile(v, 95) == 95);
    CHECK(percentile(v, 100) == 100);
    CHECK(percentile({7}, 95) == 7);
    CHECK(percentile({1, 2, 3}, 50) == 2);
    CHECK_THROWS_AS((void)percentile({}, 50), EmptyInput);
    CHECK_THROWS_AS((void)percentile({1}, 0), InvalidArgument);
}

TEST_CASE("stream: sigma zero gives exact library vectors") {
    const auto lib = small_library(40, 3, 16, 63);
    FrameStreamConfig cfg;
    cfg.frame_count = 50;
    cfg.query_noise_sigma = 0.0;
    for (const auto& frame : simulate_stream(lib, cfg)) {
        for (const auto& p : frame) {
            const auto want = lib.record(p.truth).embedding.values();
            CHECK(std::equal(want.begin(), want.end(), p.embedding.values().begin()));
        }
    }
}

TEST_CASE("stream: face counts, noise and determinism") {
    const auto lib = small_library(40, 3, 16, 64);
    FrameStreamConfig cfg;
    cfg.frame_count = 100;
    const auto simple = simulate_stream(lib, cfg);
    std::set<std::size_t> counts;
    for (const auto& f : simple) {
        CHECK(f.size() >= 1);
        CHECK(f.size() <= 5);
        counts.insert(f.size());
        for (const auto& p : f) {
            CHECK(p.embedding.is_normalized());
            CHECK(cosine_similarity(p.embedding, lib.record(p.truth).embedding) > 0.5);
        }
    }
    CHECK(counts.size() == 5);
    cfg.kind = StreamKind::Complex;
    for (const auto& f : simulate_stream(lib, cfg)) {
        CHECK(f.size() >= 6);
        CHECK(f.size() <= 15);
    }
    cfg.kind = StreamKind::Simple;
    const auto again = simulate_stream(lib, cfg);
    REQUIRE(again.size() == simple.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
        REQUIRE(again[i].size() == simple[i].size());
        for (std::size_t j = 0; j < again[i].size(); ++j) {
            CHECK(again[i][j].embedding == simple[i][j].embedding);
            CHECK(again[i][j].truth == simple[i][j].truth);
        }
    }
    cfg.frame_count = 0;
    CHECK_THROWS_AS((void)simulate_stream(lib, cfg), InvalidArgument);
    cfg.frame_count = 1;
    cfg.query_noise_sigma = -1;
    CHECK_THROWS_AS((void)simulate_stream(lib, cfg), InvalidArgument);
    CHECK(parse_stream_kind("complex") == StreamKind::Complex);
    CHECK_THROWS_AS((void)parse_stream_kind("busy"), InvalidArgument);
}

TEST_CASE("bench: single element library") {
    const auto lib = build_library({{"only", Embedding({0.6f, 0.8f})}}, "", 0);
    const auto indexed = index_library(lib, HnswParams{});
    const auto flat = flat_index_of(lib, DistanceMetric::Cosine);
    const std::vector<Frame> stream{{Probe{Embedding({0.6f, 0.8f}, 0), 0}}};
    BenchConfig cfg;
    cfg.k = 1;
    const auto cmp = bench_compare(indexed.index, flat, stream, StreamKind::Simple, cfg);
    CHECK(cmp.hnsw_results[0].ids() == std::vector<RecordId>{0});
    CHECK(cmp.violence_results[0].ids() == std::vector<RecordId>{0});
    CHECK(cmp.hnsw.mean_ms > 0);
    CHECK(cmp.violence.mean_ms > 0);
    CHECK(cmp.hnsw.recall_vs_oracle == std::optional<double>(1.0));
    CHECK_FALSE(cmp.violence.recall_vs_oracle.has_value());
    CHECK_THROWS_AS((void)bench_compare(indexed.index, flat, {}, StreamKind::Simple, cfg), EmptyInput);
}

TEST_CASE("bench: timed regions, exactness and determinism") {
    const auto lib = small_library(300, 5, 32, 65);
    const auto indexed = index_library(lib, HnswParams::with_m(8));
    const auto flat = flat_index_of(lib, DistanceMetric::Cosine);
    FrameStreamConfig sc;
    sc.frame_count = 30;
    const auto stream = simulate_stream(lib, sc);
    std::size_t queries = 0;
    for (const auto& f : stream) {
        queries += f.size();
    }
    BenchConfig cfg;
    cfg.repetitions = 4;
    const auto cmp = bench_compare(indexed.index, flat, stream, sc.kind, cfg);
    CHECK(cmp.timers.timed_regions == 2 * 30 * 4);
    CHECK(cmp.timers.queries_in_timed_regions == 2 * queries * 4);
    CHECK(cmp.timers.timed_ms <= cmp.timers.wall_ms);
    CHECK(cmp.hnsw.total_queries == queries);
    CHECK(cmp.hnsw.frames == 30);
    CHECK(cmp.hnsw.repetitions == 4);
    CHECK(cmp.hnsw_deterministic);
    CHECK(cmp.violence_deterministic);
    CHECK(cmp.hnsw.median_ms <= cmp.hnsw.p95_ms);
    REQUIRE(cmp.hnsw.recall_vs_oracle.has_value());
    CHECK(*cmp.hnsw.recall_vs_oracle >= 0.0);
    CHECK(*cmp.hnsw.recall_vs_oracle <= 1.0);

    std::vector<Embedding> corpus;
    for (const auto& r : lib.records()) {
        corpus.push_back(r.embedding);
    }
    std::size_t q = 0;
    double rec = 0;
    for (const auto& f : stream) {
        for (const auto& p : f) {
            const auto truth = brute_force_knn(corpus, p.embedding.values(), 10, DistanceMetric::Cosine);
            CHECK(cmp.violence_results[q].hits == truth.hits);
            CHECK(cmp.hnsw_results[q].hits == indexed.index.knn_search(p.embedding.values(), 10, 50).hits);
            rec += recall(cmp.hnsw_results[q], truth);
            ++q;
        }
    }
    CHECK(*cmp.hnsw.recall_vs_oracle == doctest::Approx(rec / queries));

    cfg.parallel = true;
    const auto par = bench_compare(indexed.index, flat, stream, sc.kind, cfg);
    for (std::size_t i = 0; i < queries; ++i) {
        CHECK(par.hnsw_results[i].hits == cmp.hnsw_results[i].hits);
    }
    CHECK(par.timers.timed_regions == cmp.timers.timed_regions);

    SecondaryConfig sec;
    sec.combine = CombineOp::Or;
    cfg.parallel = false;
    cfg.secondary = sec;
    const auto two = bench_compare(indexed.index, flat, stream, sc.kind, cfg);
    CHECK(*two.hnsw.recall_vs_oracle >= *cmp.hnsw.recall_vs_oracle);
}

TEST_CASE("bench: report csv round trip") {
    BenchReport h{BenchMode::Hnsw, StreamKind::Complex, 200, 3, 2100, 1.25, 1.0 / 3.0, 2.5, 0.875};
    BenchReport v{BenchMode::Violence, StreamKind::Complex, 200, 3, 2100, 20.5, 19.75, 30.125, std::nullopt};
    std::stringstream ss;
    write_bench_csv(ss, {h, v});
    const auto back = parse_bench_csv(ss);
    REQUIRE(back.size() == 2);
    CHECK(back[0] == h);
    CHECK(back[1] == v);
    CHECK(format_bench_table({h, v}).find("violence") != std::string::npos);
    std::istringstream bad("mode,stream,frames,repetitions,total_queries,mean_ms,median_ms,p95_ms,recall\n"
                           "hnsw,simple,1,1,1,x,1,1,\n");
    CHECK_THROWS_AS((void)parse_bench_csv(bad), FormatError);
}

TEST_CASE("synth: gallery shape and labels") {
    GalleryConfig g;
    g.identities = 7;
    g.photos_per_identity = 3;
    g.dimension = 12;
    const auto recs = synthetic_gallery(g);
    REQUIRE(recs.size() == 21);
    CHECK(recs[0].first == "person_00000");
    CHECK(recs[20].first == "person_00006");
    for (const auto& [label, e] : recs) {
        CHECK(e.is_normalized());
    }
    CHECK(cosine_similarity(recs[0].second, recs[1].second) > 0.9);
    const auto again = synthetic_gallery(g);
    CHECK(again[5].second == recs[5].second);
}

TEST_CASE("synth: pairs and fixture files") {
    PairsConfig c;
    c.per_side = 400;
    c.dimension = 32;
    c.noface = 4;
    const auto pairs = synthetic_pairs(c);
    REQUIRE(pairs.size() == 800);
    double g = 0, i = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (!pairs[k].b) {
            continue;
        }
        (pairs[k].same_identity ? g : i) += cosine_similarity(*pairs[k].a, *pairs[k].b);
    }
    CHECK(g / 396 == doctest::Approx(0.7).epsilon(0.02));
    CHECK(i / 400 == doctest::Approx(0.1).epsilon(0.2));

    const auto dir = std::filesystem::temp_directory_path() / "vfr_synth_pairs";
    std::filesystem::remove_all(dir);
    const auto list = write_pair_fixture(dir, pairs);
    const auto loaded = read_pair_list(list);
    const std::vector<double> thetas{0.2, 0.4, 0.6};
    CHECK(threshold_sweep(loaded, thetas) == threshold_sweep(pairs, thetas));
    std::filesystem::remove_all(dir);
}
