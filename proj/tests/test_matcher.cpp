#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "test_support.hpp"
#include "vfr/error.hpp"
#include "vfr/matcher.hpp"

using namespace vfr;
using namespace vfr::testing;

TEST_CASE("verify_pair: boundary and symmetry") {
    const Embedding u({0.6f, 0.8f});
    CHECK(verify_pair(u, u, 0.99));
    CHECK_FALSE(verify_pair(Embedding({1, 0}), Embedding({0, 1}), 0.5));

    std::mt19937_64 gen(51);
    const auto [a, b] = pair_with_similarity(gen, 64, 0.42);
    const double s = cosine_similarity(a, b);
    CHECK(s == doctest::Approx(0.42).epsilon(1e-6));
    CHECK(verify_pair(Embedding(a), Embedding(b), s));
    CHECK(verify_pair(Embedding(b), Embedding(a), s) == verify_pair(Embedding(a), Embedding(b), s));
    CHECK_FALSE(verify_pair(Embedding(a), Embedding(b), std::nextafter(s, 2.0)));
    CHECK_THROWS_AS((void)verify_pair(Embedding({0, 0}), u, 0.5), ZeroNorm);
    CHECK_THROWS_AS((void)verify_pair(Embedding({1, 0, 0}), u, 0.5), DimensionMismatch);
}

TEST_CASE("sweep: identical genuine pairs are always accepted") {
    std::mt19937_64 gen(52);
    std::vector<PairRecord> pairs;
    for (int i = 0; i < 50; ++i) {
        const Embedding e(unit_vector(gen, 32));
        pairs.push_back({e, e, true});
    }
    for (const auto& row : threshold_sweep(pairs, {0.2, 0.5, 0.99})) {
        CHECK(row.accuracy == 1.0);
    }
    CHECK_THROWS_AS((void)threshold_sweep({}, {0.5}), EmptyInput);
    CHECK_THROWS_AS((void)threshold_sweep(pairs, {}), InvalidArgument);
}

TEST_CASE("sweep: noface pairs are constant across thresholds") {
    auto pairs = gaussian_pairs(53, 3000, 32, 4);
    const auto rows = threshold_sweep(pairs, {0.6, 0.5, 0.4, 0.3, 0.2});
    for (const auto& r : rows) {
        CHECK(r.matched_noface == 4);
        CHECK(r.dismatched_noface == 0);
        CHECK(r.matched_correct + r.matched_error + r.matched_noface == 3000);
        CHECK(r.dismatched_correct + r.dismatched_error + r.dismatched_noface == 3000);
    }
    pairs[3000].a = Embedding({0, 0, 0});  // zero vector on the impostor side
    pairs[3000].b = Embedding({1, 0, 0});
    CHECK(threshold_sweep(pairs, {0.5})[0].dismatched_noface == 1);
}

TEST_CASE("sweep: rows match an independent recount and are monotone") {
    const auto pairs = gaussian_pairs(54, 3000, 64, 4);
    const std::vector<double> thetas{0.2, 0.3, 0.4, 0.5, 0.6};
    const auto rows = threshold_sweep(pairs, thetas);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        CHECK(rows[i] == oracle_row(pairs, thetas[i]));
        if (i > 0) {
            CHECK(rows[i].matched_correct <= rows[i - 1].matched_correct);
            CHECK(rows[i].dismatched_correct >= rows[i - 1].dismatched_correct);
        }
    }
    auto shuffled = pairs;
    std::mt19937_64 gen(55);
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    CHECK(threshold_sweep(shuffled, thetas) == rows);
}

TEST_CASE("sweep: csv round trip and table") {
    const auto rows = threshold_sweep(gaussian_pairs(56, 200, 16, 2), {0.1, 1.0 / 3.0, 0.7});
    std::stringstream ss;
    write_sweep_csv(ss, rows);
    CHECK(ss.str().rfind("threshold,matched_correct,", 0) == 0);
    CHECK(parse_sweep_csv(ss) == rows);
    const auto table = format_sweep_table(rows);
    CHECK(std::count(table.begin(), table.end(), '\n') == 4);

    std::istringstream bad("threshold,oops\n");
    CHECK_THROWS_AS((void)parse_sweep_csv(bad), FormatError);
    std::istringstream short_row(
        "threshold,matched_correct,matched_error,matched_noface,dismatched_correct,"
        "dismatched_error,dismatched_noface,accuracy\n0.5,1,2\n");
    CHECK_THROWS_AS((void)parse_sweep_csv(short_row), FormatError);
}

TEST_CASE("pair list: relative paths and noface") {
    const auto dir = std::filesystem::temp_directory_path() / "vfr_pairs_test";
    std::filesystem::create_directories(dir / "emb");
    {
        std::ofstream(dir / "emb" / "a.txt") << "1 0 0\n";
        std::ofstream(dir / "emb" / "b.txt") << "0.9 0.1 0\n";
        std::ofstream(dir / "emb" / "empty.txt");
        std::ofstream(dir / "pairs.txt") << "emb/a.txt emb/b.txt 1\n"
                                         << "emb/a.txt - 0\n"
                                         << "# comment\n"
                                         << "emb/empty.txt emb/b.txt 1\n";
    }
    const auto pairs = read_pair_list(dir / "pairs.txt");
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0].same_identity);
    CHECK(pairs[0].b->values()[0] == 0.9f);
    CHECK_FALSE(pairs[1].b.has_value());
    CHECK_FALSE(pairs[1].same_identity);
    CHECK_FALSE(pairs[2].a.has_value());
    const auto row = threshold_sweep(pairs, {0.5})[0];
    CHECK(row.matched_correct == 1);
    CHECK(row.matched_noface == 1);
    CHECK(row.dismatched_noface == 1);

    std::ofstream(dir / "bad.txt") << "emb/a.txt emb/b.txt 2\n";
    CHECK_THROWS_AS((void)read_pair_list(dir / "bad.txt"), FormatError);
    std::ofstream(dir / "missing.txt") << "emb/nope.txt emb/b.txt 1\n";
    CHECK_THROWS_AS((void)read_pair_list(dir / "missing.txt"), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("identify: accepted, unknown and secondary") {
    const auto lib = build_library({{"x", Embedding({1, 0, 0, 0})}, {"y", Embedding({0, 1, 0, 0})}});
    const auto indexed = index_library(lib, HnswParams{});
    const auto hit = identify(Embedding({1, 0, 0, 0}), indexed.index, indexed.labels, 0.9);
    CHECK(hit.identity == std::optional<std::string>("x"));
    CHECK(hit.similarity == doctest::Approx(1.0));
    const auto miss = identify(Embedding({0, 0, 1, 0}), indexed.index, indexed.labels, 0.5);
    CHECK_FALSE(miss.identity.has_value());
    CHECK(miss.id.has_value());
    SecondaryConfig cfg;
    cfg.k = 2;
    cfg.expansion_count = 1;
    CHECK(identify(Embedding({0, 1, 0.1f, 0}), indexed.index, indexed.labels, 0.9, cfg).identity ==
          std::optional<std::string>("y"));
}

TEST_CASE("identify: agrees with brute-force top-1") {
    auto corpus = clustered_corpus(57, 3000, 64, 300, 0.15);
    std::vector<LabeledEmbedding> recs;
    for (const auto& e : corpus) {
        recs.emplace_back(*e.label(), Embedding(to_vec(e.values())));
    }
    const auto lib = build_library(recs);
    const auto indexed = index_library(lib, HnswParams{});
    std::vector<Embedding> gallery;
    for (const auto& r : lib.records()) {
        gallery.push_back(r.embedding);
    }
    std::mt19937_64 gen(58);
    std::normal_distribution<double> noise(0, 0.05);
    std::uniform_int_distribution<std::size_t> pick(0, gallery.size() - 1);
    int disagreements = 0;
    for (int i = 0; i < 1000; ++i) {
        auto v = to_vec(gallery[pick(gen)].values());
        for (auto& x : v) {
            x += static_cast<float>(noise(gen));
        }
        const Embedding q(v);
        const auto got = identify(q, indexed.index, indexed.labels, 0.6);
        const auto truth = brute_force_knn(gallery, q, 1, DistanceMetric::Cosine);
        const double sim = cosine_similarity(q, gallery[truth.hits[0].id]);
        const std::optional<std::string> want =
            sim >= 0.6 ? std::optional<std::string>(lib.record(truth.hits[0].id).label) : std::nullopt;
        disagreements += got.identity != want;
    }
    MESSAGE("identification disagreement rate " << disagreements / 1000.0);
    CHECK(disagreements <= 20);
}
