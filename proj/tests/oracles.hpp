#pragma once

// Naive reference implementations for detector geometry and image filters.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "vfr/detector.hpp"
#include "vfr/raster.hpp"

namespace vfr::testing {

inline Box
random_box(std::mt19937_64& gen, double extent, double min_side, double max_side) {
    std::uniform_real_distribution<double> pos(0, extent), side(min_side, max_side);
    const double x = pos(gen), y = pos(gen);
    return {x, y, x + side(gen), y + side(gen)};
}

inline double
oracle_iou(const Box& a, const Box& b) {
    const double iw = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
    const double ih = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    if (iw <= 0 || ih <= 0) {
        return 0.0;
    }
    const double inter = iw * ih;
    const double u = (a.x_max - a.x_min) * (a.y_max - a.y_min) +
                     (b.x_max - b.x_min) * (b.y_max - b.y_min) - inter;
    return u > 0 ? inter / u : 0.0;
}

// Exhaustive reference: after every keep, rebuild the survivor list and
// re-sort it from scratch.
inline std::vector<std::size_t>
oracle_nms(const std::vector<ScoredBox>& boxes, double iou_thr, double score_thr) {
    std::vector<std::size_t> alive;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        if (boxes[i].score >= score_thr) {
            alive.push_back(i);
        }
    }
    std::vector<std::size_t> kept;
    while (!alive.empty()) {
        std::sort(alive.begin(), alive.end(), [&](std::size_t a, std::size_t b) {
            if (boxes[a].score != boxes[b].score) {
                return boxes[a].score > boxes[b].score;
            }
            return a < b;
        });
        const std::size_t top = alive.front();
        kept.push_back(top);
        std::vector<std::size_t> next;
        for (std::size_t k = 1; k < alive.size(); ++k) {
            if (!(oracle_iou(boxes[top].bbox, boxes[alive[k]].bbox) > iou_thr)) {
                next.push_back(alive[k]);
            }
        }
        alive = next;
    }
    return kept;
}

inline std::vector<AnchorLabel>
oracle_assign(const std::vector<Box>& anchors, const std::vector<Box>& gt, double pos, double neg) {
    std::vector<AnchorLabel> out(anchors.size());
    if (gt.empty()) {
        return out;
    }
    for (std::size_t a = 0; a < anchors.size(); ++a) {
        std::vector<double> row;
        for (const auto& g : gt) {
            row.push_back(oracle_iou(anchors[a], g));
        }
        const auto it = std::max_element(row.begin(), row.end());
        if (*it > pos) {
            out[a] = AnchorLabel::positive(static_cast<std::size_t>(it - row.begin()));
        } else if (*it < neg) {
            out[a] = AnchorLabel::negative();
        } else {
            out[a] = AnchorLabel::ignore();
        }
    }
    std::set<std::size_t> taken;
    for (std::size_t g = 0; g < gt.size(); ++g) {
        std::vector<std::size_t> order(anchors.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return oracle_iou(anchors[a], gt[g]) > oracle_iou(anchors[b], gt[g]);
        });
        for (std::size_t a : order) {
            if (!taken.count(a)) {
                taken.insert(a);
                out[a] = AnchorLabel::positive(g);
                break;
            }
        }
    }
    return out;
}

inline std::vector<std::size_t>
oracle_ohem(const std::vector<AnchorLabel>& labels, const std::vector<double>& scores, int ratio) {
    std::vector<std::size_t> pos;
    std::vector<std::pair<double, std::size_t>> neg;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].kind == LabelKind::Positive) {
            pos.push_back(i);
        } else if (labels[i].kind == LabelKind::Negative) {
            neg.emplace_back(-scores[i], i);
        }
    }
    std::sort(neg.begin(), neg.end());
    const std::size_t want = pos.empty() ? ratio : ratio * pos.size();
    std::vector<std::size_t> out = pos;
    for (std::size_t k = 0; k < std::min(want, neg.size()); ++k) {
        out.push_back(neg[k].second);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline ImageU8
random_u8(std::mt19937_64& gen, int w, int h, int c) {
    std::uniform_int_distribution<int> d(0, 255);
    ImageU8 img(w, h, c);
    for (auto& p : img.pixels()) {
        p = static_cast<std::uint8_t>(d(gen));
    }
    return img;
}

inline ImageF
random_f(std::mt19937_64& gen, int w, int h, int c) {
    std::uniform_real_distribution<float> d(0.0f, 1.0f);
    ImageF img(w, h, c);
    for (auto& p : img.pixels()) {
        p = d(gen);
    }
    return img;
}

inline int
clampi(int v, int lo, int hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

// Naive median: collect the padded window and fully sort it.
inline ImageU8
oracle_median(const ImageU8& img, int window) {
    const int r = window / 2;
    ImageU8 out(img.width(), img.height(), img.channels());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            for (int c = 0; c < img.channels(); ++c) {
                std::vector<int> vals;
                for (int yy = y - r; yy <= y + r; ++yy) {
                    for (int xx = x - r; xx <= x + r; ++xx) {
                        vals.push_back(img.at(clampi(xx, 0, img.width() - 1),
                                              clampi(yy, 0, img.height() - 1), c));
                    }
                }
                std::sort(vals.begin(), vals.end());
                out.at(x, y, c) = static_cast<std::uint8_t>(vals[vals.size() / 2]);
            }
        }
    }
    return out;
}

// Two-pass Wiener: all local statistics first (mean, then centered variance),
// then the gain formula.
inline std::vector<double>
oracle_wiener(const ImageF& img, int window, std::optional<double> noise) {
    const int r = window / 2;
    const int w = img.width(), h = img.height();
    std::vector<double> out(static_cast<std::size_t>(w) * h);
    std::vector<double> m(out.size()), v(out.size());
    auto px = [&](int x, int y) {
        return static_cast<double>(img.at(clampi(x, 0, w - 1), clampi(y, 0, h - 1)));
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double s = 0;
            for (int yy = y - r; yy <= y + r; ++yy) {
                for (int xx = x - r; xx <= x + r; ++xx) {
                    s += px(xx, yy);
                }
            }
            const double mean = s / (window * window);
            double ss = 0;
            for (int yy = y - r; yy <= y + r; ++yy) {
                for (int xx = x - r; xx <= x + r; ++xx) {
                    ss += (px(xx, yy) - mean) * (px(xx, yy) - mean);
                }
            }
            m[y * w + x] = mean;
            v[y * w + x] = ss / (window * window);
        }
    }
    double nv = 0;
    for (double x : v) {
        nv += x;
    }
    nv = noise.value_or(nv / static_cast<double>(v.size()));
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = y * w + x;
            const double denom = std::max(v[i], nv);
            const double g = denom > 0 ? std::max(v[i] - nv, 0.0) / denom : 0.0;
            out[i] = std::clamp(m[i] + g * (img.at(x, y) - m[i]), 0.0, 1.0);
        }
    }
    return out;
}

inline ImageU8
clean_fixture(int w, int h) {
    ImageU8 img(w, h, 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double v = 128 + 60 * std::sin(x * 0.15) * std::cos(y * 0.11) + (x > w / 2 ? 30 : -30);
            img.at(x, y) = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
        }
    }
    return img;
}

inline ImageU8
salt_and_pepper(const ImageU8& clean, double density, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0, 1);
    ImageU8 out = clean;
    for (auto& p : out.pixels()) {
        const double r = u(gen);
        if (r < density / 2) {
            p = 0;
        } else if (r < density) {
            p = 255;
        }
    }
    return out;
}

}  // namespace vfr::testing
