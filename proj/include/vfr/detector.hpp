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
#include <optional>
#include <string>
#include <vector>

#include "vfr/box.hpp"

namespace vfr {

/// One feature-pyramid level of the detection head.
struct StrideLevel {
    int stride = 8;
    std::vector<double> scales{1.0, 2.0};
    /// Anchor side before scaling; 4 x stride by default.
    double base_anchor_size = 32.0;
    bool emit_landmarks = true;

    static StrideLevel standard(int stride, bool emit_landmarks = true);
};

struct AnchorConfig {
    int input_width = 320;
    int input_height = 320;
    std::vector<StrideLevel> levels{StrideLevel::standard(4, false),
                                    StrideLevel::standard(8, false)};

    /// Strides {4, 8}, landmark heads removed.
    static AnchorConfig faster(int width = 320, int height = 320);
    /// Strides {8, 16, 32} with landmark heads.
    static AnchorConfig baseline(int width = 640, int height = 640);

    [[nodiscard]] std::size_t expected_count() const;
    void validate() const;
};

struct AnchorLevelInfo {
    int stride = 0;
    int cols = 0;
    int rows = 0;
    std::size_t first = 0;  // index of the level's first anchor
    std::size_t count = 0;
    bool emit_landmarks = false;
};

struct AnchorSet {
    std::vector<Box> boxes;
    std::vector<AnchorLevelInfo> levels;
};

/**
 * Square anchors centered on each feature cell ((col + 0.5) * stride,
 * (row + 0.5) * stride), one per scale with side base_anchor_size * scale.
 * Ordered stride-major, row-major, scale-minor.
 */
AnchorSet generate_anchors(const AnchorConfig& cfg);

struct ScoredBox {
    Box bbox;
    double score = 0.0;

    friend bool operator==(const ScoredBox&, const ScoredBox&) = default;
};

/// Greedy non-maximum suppression. Boxes scoring below score_threshold are
/// dropped; a kept box suppresses every later box with IoU > iou_threshold.
/// Returns original indices in descending score order, ties by index.
std::vector<std::size_t> nms_indices(const std::vector<ScoredBox>& boxes, double iou_threshold,
                                     double score_threshold);
std::vector<ScoredBox> nms(const std::vector<ScoredBox>& boxes, double iou_threshold,
                           double score_threshold);

enum class LabelKind { Negative, Ignore, Positive };

struct AnchorLabel {
    LabelKind kind = LabelKind::Negative;
    std::size_t gt = 0;  // meaningful for Positive only

    static AnchorLabel positive(std::size_t gt) { return {LabelKind::Positive, gt}; }
    static AnchorLabel negative() { return {LabelKind::Negative, 0}; }
    static AnchorLabel ignore() { return {LabelKind::Ignore, 0}; }

    friend bool operator==(const AnchorLabel&, const AnchorLabel&) = default;
};

/**
 * IoU-threshold matching. Each anchor is Positive to its best ground truth
 * when that IoU exceeds pos_thr, Negative below neg_thr, Ignore in between.
 * Then every ground truth, in index order, claims its best anchor not already
 * claimed by an earlier ground truth, so none is left unmatched while anchors
 * remain. Equal IoUs resolve to the lower index.
 */
std::vector<AnchorLabel> assign_labels(const std::vector<Box>& anchors, const std::vector<Box>& gt,
                                       double pos_thr = 0.5, double neg_thr = 0.3);

struct OhemSelection {
    /// Ascending anchor indices.
    std::vector<std::size_t> indices;
    std::size_t positives = 0;
    std::size_t negatives = 0;
    std::optional<std::string> warning;
};

/// Every Positive plus the min(ratio * positives, negatives) highest-scoring
/// Negatives (ties by index). With no positives, ratio negatives are taken.
OhemSelection ohem_select(const std::vector<AnchorLabel>& labels,
                          const std::vector<double>& neg_scores, int ratio = 3);

}  // namespace vfr
