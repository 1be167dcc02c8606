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


#include "vfr/detector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vfr/error.hpp"

namespace vfr {

StrideLevel
StrideLevel::standard(int stride, bool emit_landmarks) {
    StrideLevel l;
    l.stride = stride;
    l.base_anchor_size = 4.0 * stride;
    l.emit_landmarks = emit_landmarks;
    return l;
}

AnchorConfig
AnchorConfig::faster(int width, int height) {
    AnchorConfig c;
    c.input_width = width;
    c.input_height = height;
    c.levels = {StrideLevel::standard(4, false), StrideLevel::standard(8, false)};
    return c;
}

AnchorConfig
AnchorConfig::baseline(int width, int height) {
    AnchorConfig c;
    c.input_width = width;
    c.input_height = height;
    c.levels = {StrideLevel::standard(8), StrideLevel::standard(16), StrideLevel::standard(32)};
    return c;
}

void
AnchorConfig::validate() const {
    if (input_width <= 0 || input_height <= 0) {
        throw InvalidArgument("anchors: input extent must be positive");
    }
    if (levels.empty()) {
        throw InvalidArgument("anchors: at least one stride is required");
    }
    for (const auto& l : levels) {
        if (l.stride <= 0) {
            throw InvalidArgument("anchors: strides must be positive");
        }
        if (l.stride > input_width || l.stride > input_height) {
            throw InvalidArgument("anchors: stride " + std::to_string(l.stride) +
                                  " exceeds the input extent " + std::to_string(input_width) +
                                  "x" + std::to_string(input_height));
        }
        if (l.scales.empty()) {
            throw InvalidArgument("anchors: every stride needs at least one scale");
        }
        for (double s : l.scales) {
            if (!(s > 0.0) || !std::isfinite(s)) {
                throw InvalidArgument("anchors: scales must be positive");
            }
        }
        if (!(l.base_anchor_size > 0.0) || !std::isfinite(l.base_anchor_size)) {
            throw InvalidArgument("anchors: base_anchor_size must be positive");
        }
    }
}

std::size_t
AnchorConfig::expected_count() const {
    std::size_t n = 0;
    for (const auto& l : levels) {
        n += static_cast<std::size_t>(input_width / l.stride) *
             static_cast<std::size_t>(input_height / l.stride) * l.scales.size();
    }
    return n;
}

AnchorSet
generate_anchors(const AnchorConfig& cfg) {
    cfg.validate();
    AnchorSet out;
    out.boxes.reserve(cfg.expected_count());
    for (const auto& l : cfg.levels) {
        AnchorLevelInfo info;
        info.stride = l.stride;
        info.cols = cfg.input_width / l.stride;
        info.rows = cfg.input_height / l.stride;
        info.first = out.boxes.size();
        info.emit_landmarks = l.emit_landmarks;
        for (int r = 0; r < info.rows; ++r) {
            const double cy = (r + 0.5) * l.stride;
            for (int c = 0; c < info.cols; ++c) {
                const double cx = (c + 0.5) * l.stride;
                for (double s : l.scales) {
                    const double half = l.base_anchor_size * s / 2.0;
                    out.boxes.push_back({cx - half, cy - half, cx + half, cy + half});
                }
            }
        }
        info.count = out.boxes.size() - info.first;
        out.levels.push_back(info);
    }
    return out;
}

namespace {

void
check_threshold(double t, const char* what) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw InvalidArgument(std::string("nms: ") + what + " must lie in [0, 1]");
    }
}

}  // namespace

std::vector<std::size_t>
nms_indices(const std::vector<ScoredBox>& boxes, double iou_threshold, double score_threshold) {
    check_threshold(iou_threshold, "iou_threshold");
    check_threshold(score_threshold, "score_threshold");
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const auto& b = boxes[i];
        if (!b.bbox.well_formed() || !std::isfinite(b.score)) {
            throw InvalidArgument("nms: malformed box at index " + std::to_string(i));
        }
        if (b.score >= score_threshold) {
            order.push_back(i);
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return boxes[a].score > boxes[b].score;
    });
    std::vector<std::size_t> kept;
    std::vector<bool> suppressed(order.size(), false);
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (suppressed[i]) {
            continue;
        }
        kept.push_back(order[i]);
        const Box& top = boxes[order[i]].bbox;
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            if (!suppressed[j] && iou(top, boxes[order[j]].bbox) > iou_threshold) {
                suppressed[j] = true;
            }
        }
    }
    return kept;
}

std::vector<ScoredBox>
nms(const std::vector<ScoredBox>& boxes, double iou_threshold, double score_threshold) {
    std::vector<ScoredBox> out;
    for (std::size_t i : nms_indices(boxes, iou_threshold, score_threshold)) {
        out.push_back(boxes[i]);
    }
    return out;
}

std::vector<AnchorLabel>
assign_labels(const std::vector<Box>& anchors, const std::vector<Box>& gt, double pos_thr,
              double neg_thr) {
    if (!(pos_thr >= neg_thr)) {
        throw InvalidArgument("assign_labels: pos_thr must be at least neg_thr");
    }
    std::vector<AnchorLabel> labels(anchors.size(), AnchorLabel::negative());
    if (gt.empty()) {
        return labels;
    }
    std::vector<double> overlaps(anchors.size() * gt.size());
    for (std::size_t a = 0; a < anchors.size(); ++a) {
        for (std::size_t g = 0; g < gt.size(); ++g) {
            overlaps[a * gt.size() + g] = iou(anchors[a], gt[g]);
        }
    }
    for (std::size_t a = 0; a < anchors.size(); ++a) {
        std::size_t best = 0;
        for (std::size_t g = 1; g < gt.size(); ++g) {
            if (overlaps[a * gt.size() + g] > overlaps[a * gt.size() + best]) {
                best = g;
            }
        }
        const double v = overlaps[a * gt.size() + best];
        if (v > pos_thr) {
            labels[a] = AnchorLabel::positive(best);
        } else if (v < neg_thr) {
            labels[a] = AnchorLabel::negative();
        } else {
            labels[a] = AnchorLabel::ignore();
        }
    }
    std::vector<bool> claimed(anchors.size(), false);
    for (std::size_t g = 0; g < gt.size(); ++g) {
        std::optional<std::size_t> best;
        for (std::size_t a = 0; a < anchors.size(); ++a) {
            if (!claimed[a] && (!best || overlaps[a * gt.size() + g] > overlaps[*best * gt.size() + g])) {
                best = a;
            }
        }
        if (!best) {
            break;
        }
        claimed[*best] = true;
        labels[*best] = AnchorLabel::positive(g);
    }
    return labels;
}

OhemSelection
ohem_select(const std::vector<AnchorLabel>& labels, const std::vector<double>& neg_scores,
            int ratio) {
    if (ratio < 1) {
        throw InvalidArgument("ohem_select: ratio must be at least 1");
    }
    if (neg_scores.size() != labels.size()) {
        throw InvalidArgument("ohem_select: one score per anchor is required");
    }
    OhemSelection out;
    std::vector<std::size_t> negatives;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!std::isfinite(neg_scores[i])) {
            throw InvalidArgument("ohem_select: scores must be finite");
        }
        if (labels[i].kind == LabelKind::Positive) {
            out.indices.push_back(i);
            ++out.positives;
        } else if (labels[i].kind == LabelKind::Negative) {
            negatives.push_back(i);
        }
    }
    std::size_t quota = static_cast<std::size_t>(ratio) * out.positives;
    if (out.positives == 0) {
        quota = static_cast<std::size_t>(ratio);
        out.warning = "ohem_select: no positive anchors; keeping " +
                      std::to_string(std::min(quota, negatives.size())) + " hardest negatives";
    }
    quota = std::min(quota, negatives.size());
    std::stable_sort(negatives.begin(), negatives.end(), [&](std::size_t a, std::size_t b) {
        return neg_scores[a] > neg_scores[b];
    });
    out.indices.insert(out.indices.end(), negatives.begin(), negatives.begin() + quota);
    out.negatives = quota;
    std::sort(out.indices.begin(), out.indices.end());
    return out;
}

}  // namespace vfr
