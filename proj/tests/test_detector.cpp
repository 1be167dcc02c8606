#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "vfr/detector.hpp"
#include "vfr/error.hpp"

using namespace vfr;
using namespace vfr::testing;

TEST_CASE("anchors: faster profile on 320x320 gives 16000") {
    const auto set = generate_anchors(AnchorConfig::faster(320, 320));
    CHECK(set.boxes.size() == 16000);
    REQUIRE(set.levels.size() == 2);
    CHECK(set.levels[0].cols == 80);
    CHECK(set.levels[1].rows == 40);
    CHECK(set.levels[1].first == 12800);
    CHECK_FALSE(set.levels[0].emit_landmarks);
    CHECK(AnchorConfig{}.expected_count() == 16000);
}

TEST_CASE("anchors: baseline profile on 640x480 gives 12600") {
    const auto set = generate_anchors(AnchorConfig::baseline(640, 480));
    CHECK(set.boxes.size() == 12600);
    CHECK(set.levels[2].cols == 20);
    CHECK(set.levels[2].rows == 15);
    CHECK(set.levels[2].emit_landmarks);
}

TEST_CASE("anchors: single cell is centered") {
    AnchorConfig cfg;
    cfg.input_width = 4;
    cfg.input_height = 4;
    cfg.levels = {StrideLevel::standard(4)};
    cfg.levels[0].scales = {1.0};
    const auto set = generate_anchors(cfg);
    REQUIRE(set.boxes.size() == 1);
    const Box& b = set.boxes[0];
    CHECK((b.x_min + b.x_max) / 2 == 2.0);
    CHECK((b.y_min + b.y_max) / 2 == 2.0);
    CHECK(b.width() == 16.0);
}

TEST_CASE("anchors: ordering is stride-major, row-major, scale-minor") {
    AnchorConfig cfg;
    cfg.input_width = 24;
    cfg.input_height = 16;
    cfg.levels = {StrideLevel::standard(8)};
    const auto set = generate_anchors(cfg);
    REQUIRE(set.boxes.size() == 3 * 2 * 2);
    // Index 2*(row*cols + col) + scale.
    const Box& b = set.boxes[2 * (1 * 3 + 2) + 1];
    CHECK((b.x_min + b.x_max) / 2 == 20.0);
    CHECK((b.y_min + b.y_max) / 2 == 12.0);
    CHECK(b.width() == 64.0);
}

TEST_CASE("anchors: count formula over random configs") {
    std::mt19937_64 gen(21);
    std::uniform_int_distribution<int> ext(16, 700), st(1, 16), ns(1, 4);
    for (int t = 0; t < 100; ++t) {
        AnchorConfig cfg;
        cfg.input_width = ext(gen);
        cfg.input_height = ext(gen);
        cfg.levels.clear();
        std::size_t want = 0;
        for (int l = 0, n = ns(gen); l < n; ++l) {
            StrideLevel level = StrideLevel::standard(st(gen));
            level.scales.assign(ns(gen), 1.5);
            want += static_cast<std::size_t>(cfg.input_width / level.stride) *
                    (cfg.input_height / level.stride) * level.scales.size();
            cfg.levels.push_back(level);
        }
        CHECK(generate_anchors(cfg).boxes.size() == want);
    }
}

TEST_CASE("anchors: invalid configs") {
    AnchorConfig cfg = AnchorConfig::faster(6, 6);
    CHECK_THROWS_AS((void)generate_anchors(cfg), InvalidArgument);
    cfg = AnchorConfig::faster(320, 320);
    cfg.levels[0].scales.clear();
    CHECK_THROWS_AS((void)generate_anchors(cfg), InvalidArgument);
    cfg = AnchorConfig::faster(320, 320);
    cfg.levels[1].stride = 0;
    CHECK_THROWS_AS((void)generate_anchors(cfg), InvalidArgument);
}

TEST_CASE("iou: hand cases") {
    const Box unit{0, 0, 1, 1};
    CHECK(iou(unit, unit) == 1.0);
    CHECK(iou(unit, Box{2, 2, 3, 3}) == 0.0);
    CHECK(iou(unit, Box{0.5, 0, 1.5, 1}) == doctest::Approx(1.0 / 3.0));
    CHECK(iou(Box{1, 1, 1, 1}, Box{1, 1, 1, 1}) == 0.0);
    CHECK(iou(unit, Box{1, 0, 2, 1}) == 0.0);
}

TEST_CASE("nms: small cases") {
    const std::vector<ScoredBox> one{{Box{1, 2, 3, 4}, 0.7}};
    CHECK(nms(one, 0.5, 0.5) == one);
    CHECK(nms(one, 0.5, 0.8).empty());

    const std::vector<ScoredBox> twins{{Box{0, 0, 10, 10}, 0.8}, {Box{0, 0, 10, 10}, 0.9}};
    const auto kept = nms(twins, 0.5, 0.0);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].score == 0.9);

    const std::vector<ScoredBox> tie{{Box{0, 0, 10, 10}, 0.5}, {Box{0, 0, 10, 10}, 0.5}};
    CHECK(nms_indices(tie, 0.5, 0.0) == std::vector<std::size_t>{0});

    CHECK_THROWS_AS((void)nms(one, 1.5, 0.0), InvalidArgument);
    CHECK_THROWS_AS((void)nms({{Box{3, 0, 1, 1}, 0.5}}, 0.5, 0.0), InvalidArgument);
}

TEST_CASE("nms: matches exhaustive reference over random trials") {
    std::mt19937_64 gen(22);
    std::uniform_real_distribution<double> score(0, 1);
    std::uniform_int_distribution<int> coarse(0, 9);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ScoredBox> boxes;
        for (int i = 0; i < 50; ++i) {
            // Every fourth trial uses coarse scores so ties occur.
            const double s = trial % 4 == 0 ? coarse(gen) / 10.0 : score(gen);
            boxes.push_back({random_box(gen, 100, 5, 40), s});
        }
        const double iou_thr = 0.3 + 0.4 * (trial % 3) / 2.0;
        const double score_thr = trial % 5 == 0 ? 0.4 : 0.0;
        const auto got = nms_indices(boxes, iou_thr, score_thr);
        CHECK(got == oracle_nms(boxes, iou_thr, score_thr));
        for (std::size_t a = 0; a < got.size(); ++a) {
            for (std::size_t b = a + 1; b < got.size(); ++b) {
                CHECK(iou(boxes[got[a]].bbox, boxes[got[b]].bbox) <= iou_thr);
            }
            if (a > 0) {
                CHECK(boxes[got[a - 1]].score >= boxes[got[a]].score);
            }
        }
    }
}

TEST_CASE("nms: invariant to permutation with distinct scores") {
    std::mt19937_64 gen(23);
    std::vector<ScoredBox> boxes;
    for (int i = 0; i < 60; ++i) {
        boxes.push_back({random_box(gen, 80, 5, 30), (i + 1) / 61.0});
    }
    const auto ref = nms(boxes, 0.4, 0.1);
    for (int t = 0; t < 20; ++t) {
        std::shuffle(boxes.begin(), boxes.end(), gen);
        CHECK(nms(boxes, 0.4, 0.1) == ref);
    }
}

TEST_CASE("assign_labels: basic cases") {
    const std::vector<Box> gt{{10, 10, 30, 30}};
    const std::vector<Box> anchors{{10, 10, 30, 30}, {100, 100, 120, 120}, {15, 10, 35, 30}};
    const auto labels = assign_labels(anchors, gt);
    CHECK(labels[0] == AnchorLabel::positive(0));
    CHECK(labels[1] == AnchorLabel::negative());
    CHECK(labels[2] == AnchorLabel::positive(0));  // IoU 0.6

    const auto none = assign_labels(anchors, {});
    for (const auto& l : none) {
        CHECK(l == AnchorLabel::negative());
    }
    CHECK_THROWS_AS((void)assign_labels(anchors, gt, 0.2, 0.3), InvalidArgument);
}

TEST_CASE("assign_labels: small faces still get an anchor") {
    const std::vector<Box> anchors{{0, 0, 64, 64}, {64, 0, 128, 64}};
    const std::vector<Box> gt{{2, 2, 8, 8}, {70, 4, 76, 10}};
    const auto labels = assign_labels(anchors, gt);
    CHECK(labels[0] == AnchorLabel::positive(0));
    CHECK(labels[1] == AnchorLabel::positive(1));
}

TEST_CASE("assign_labels: competing ground truths claim distinct anchors") {
    const std::vector<Box> anchors{{0, 0, 10, 10}, {40, 40, 50, 50}};
    const std::vector<Box> gt{{0, 0, 9, 9}, {0, 0, 10, 9}};
    const auto labels = assign_labels(anchors, gt);
    CHECK(labels[0] == AnchorLabel::positive(0));
    CHECK(labels[1] == AnchorLabel::positive(1));
}

TEST_CASE("assign_labels: matches double-loop reference") {
    std::mt19937_64 gen(24);
    for (int t = 0; t < 50; ++t) {
        std::vector<Box> anchors, gt;
        for (int i = 0; i < 100; ++i) {
            anchors.push_back(random_box(gen, 100, 10, 30));
        }
        for (int i = 0; i < 5; ++i) {
            gt.push_back(random_box(gen, 100, 10, 30));
        }
        const auto got = assign_labels(anchors, gt);
        CHECK(got == oracle_assign(anchors, gt, 0.5, 0.3));
        std::set<std::size_t> matched;
        for (const auto& l : got) {
            if (l.kind == LabelKind::Positive) {
                matched.insert(l.gt);
            }
        }
        CHECK(matched.size() == gt.size());
    }
}

TEST_CASE("ohem: count arithmetic") {
    std::vector<AnchorLabel> labels(12, AnchorLabel::negative());
    labels[3] = AnchorLabel::positive(0);
    labels[7] = AnchorLabel::positive(1);
    std::vector<double> scores(12);
    std::iota(scores.begin(), scores.end(), 0.0);
    const auto sel = ohem_select(labels, scores, 3);
    CHECK(sel.indices == std::vector<std::size_t>{3, 5, 6, 7, 8, 9, 10, 11});
    CHECK(sel.positives == 2);
    CHECK(sel.negatives == 6);
    CHECK_FALSE(sel.warning.has_value());

    std::vector<AnchorLabel> capped(9, AnchorLabel::negative());
    for (int i = 0; i < 4; ++i) {
        capped[i] = AnchorLabel::positive(0);
    }
    CHECK(ohem_select(capped, std::vector<double>(9, 0.5), 3).indices.size() == 9);
}

TEST_CASE("ohem: ignore anchors are never selected") {
    std::vector<AnchorLabel> labels{AnchorLabel::positive(0), AnchorLabel::ignore(),
                                    AnchorLabel::negative()};
    const auto sel = ohem_select(labels, {0.1, 0.99, 0.2}, 3);
    CHECK(sel.indices == std::vector<std::size_t>{0, 2});
}

TEST_CASE("ohem: zero positives falls back with a warning") {
    std::vector<AnchorLabel> labels(10, AnchorLabel::negative());
    std::vector<double> scores{0.1, 0.9, 0.3, 0.9, 0.5, 0.2, 0.0, 0.4, 0.6, 0.7};
    const auto sel = ohem_select(labels, scores, 3);
    CHECK(sel.indices == std::vector<std::size_t>{1, 3, 9});
    CHECK(sel.warning.has_value());
    CHECK_THROWS_AS((void)ohem_select(labels, scores, 0), InvalidArgument);
    CHECK_THROWS_AS((void)ohem_select(labels, {0.1}, 3), InvalidArgument);
}

TEST_CASE("ohem: matches sort-and-slice reference") {
    std::mt19937_64 gen(25);
    std::uniform_int_distribution<int> kind(0, 9);
    std::uniform_int_distribution<int> coarse(0, 20);
    for (int t = 0; t < 100; ++t) {
        std::vector<AnchorLabel> labels;
        std::vector<double> scores;
        for (int i = 0; i < 200; ++i) {
            const int k = kind(gen);
            labels.push_back(k == 0 ? AnchorLabel::positive(0)
                                    : (k == 1 ? AnchorLabel::ignore() : AnchorLabel::negative()));
            scores.push_back(coarse(gen) / 20.0);
        }
        for (int ratio : {1, 3, 7}) {
            CHECK(ohem_select(labels, scores, ratio).indices == oracle_ohem(labels, scores, ratio));
        }
    }
}
