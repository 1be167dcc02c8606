#include <cmath>
#include <limits>

#include "doctest.h"
#include "test_support.hpp"
#include "vfr/embedding.hpp"
#include "vfr/error.hpp"

using namespace vfr;
using vfr::testing::oracle_cosine_similarity;
using vfr::testing::oracle_distance;
using vfr::testing::uniform_vector;
using vfr::testing::unit_vector;

TEST_CASE("distance: identity and orthogonal cases") {
    const Embedding a({0.3f, -1.5f, 2.0f});
    CHECK(distance(a, a, DistanceMetric::EuclideanSquared) == 0.0);
    CHECK(distance(Embedding({1, 0}), Embedding({0, 1}), DistanceMetric::Cosine) ==
          doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("distance: matches scalar-loop oracle on random pairs") {
    std::mt19937_64 gen(7);
    for (int i = 0; i < 100; ++i) {
        const auto a = uniform_vector(gen, 16, -1, 1);
        const auto b = uniform_vector(gen, 16, -1, 1);
        for (auto m : {DistanceMetric::EuclideanSquared, DistanceMetric::Cosine}) {
            CHECK(std::abs(distance(a, b, m) - oracle_distance(a, b, m)) <= 1e-9);
        }
        CHECK(std::abs(cosine_similarity(a, b) - oracle_cosine_similarity(a, b)) <= 1e-9);
    }
}

TEST_CASE("distance: symmetric bit-for-bit") {
    std::mt19937_64 gen(11);
    for (int i = 0; i < 200; ++i) {
        const auto a = uniform_vector(gen, 37, -3, 3);
        const auto b = uniform_vector(gen, 37, -3, 3);
        CHECK(distance(a, b, DistanceMetric::EuclideanSquared) ==
              distance(b, a, DistanceMetric::EuclideanSquared));
        CHECK(distance(a, b, DistanceMetric::Cosine) == distance(b, a, DistanceMetric::Cosine));
    }
}

TEST_CASE("distance: unit vectors satisfy l2sq == 2 * cosine distance") {
    std::mt19937_64 gen(13);
    for (int i = 0; i < 200; ++i) {
        const auto a = unit_vector(gen, 64);
        const auto b = unit_vector(gen, 64);
        const double l2 = distance(a, b, DistanceMetric::EuclideanSquared);
        const double cd = distance(a, b, DistanceMetric::Cosine);
        CHECK(std::abs(l2 - 2.0 * cd) <= 1e-6);
        CHECK(cd >= 0.0);
        CHECK(cd <= 2.0);
    }
}

TEST_CASE("cosine similarity: parallel, antiparallel, zero") {
    const Embedding u({0.6f, 0.8f});
    const Embedding v({-0.6f, -0.8f});
    CHECK(cosine_similarity(u, u) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cosine_similarity(u, v) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(distance(u, v, DistanceMetric::Cosine) == doctest::Approx(2.0).epsilon(1e-12));
    const Embedding z({0.0f, 0.0f});
    CHECK_THROWS_AS((void)cosine_similarity(u, z), ZeroNorm);
    CHECK_THROWS_AS((void)distance(u, z, DistanceMetric::Cosine), ZeroNorm);
    CHECK(distance(u, z, DistanceMetric::EuclideanSquared) == doctest::Approx(1.0));
}

TEST_CASE("distance: dimension mismatch is an error") {
    CHECK_THROWS_AS((void)distance(Embedding({1, 2}), Embedding({1, 2, 3}),
                                   DistanceMetric::EuclideanSquared),
                    DimensionMismatch);
}

TEST_CASE("embedding: rejects non-finite components") {
    CHECK_THROWS_AS(Embedding({1.0f, std::numeric_limits<float>::quiet_NaN()}), InvalidArgument);
    CHECK_THROWS_AS(Embedding({std::numeric_limits<float>::infinity()}), InvalidArgument);
}

TEST_CASE("embedding: normalization") {
    const Embedding e({3.0f, 4.0f}, 9, "x");
    CHECK_FALSE(e.is_normalized());
    const auto n = e.normalized();
    CHECK(n.is_normalized());
    CHECK(n.id() == 9);
    CHECK(n.label() == "x");
    CHECK_THROWS_AS((void)Embedding({0.0f, 0.0f}).normalized(), ZeroNorm);
}

TEST_CASE("search result: well-formedness") {
    SearchResult r;
    r.hits = {{1, 0.1}, {2, 0.2}, {3, 0.2}};
    CHECK(r.well_formed());
    r.hits.push_back({1, 0.5});
    CHECK_FALSE(r.well_formed());
    r.hits = {{1, 0.3}, {2, 0.2}};
    CHECK_FALSE(r.well_formed());
}

TEST_CASE("metric names") {
    CHECK(parse_metric("cosine") == DistanceMetric::Cosine);
    CHECK(parse_metric("l2sq") == DistanceMetric::EuclideanSquared);
    CHECK(to_string(DistanceMetric::Cosine) == "cosine");
    CHECK_THROWS_AS((void)parse_metric("hamming"), InvalidArgument);
}
