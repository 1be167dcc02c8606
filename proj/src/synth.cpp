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


#include "vfr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "vfr/error.hpp"
#include "vfr/rng.hpp"

namespace vfr {

namespace {

std::vector<double>
unit_gaussian(Rng& rng, std::size_t d) {
    std::vector<double> v(d);
    double n = 0.0;
    do {
        n = 0.0;
        for (auto& x : v) {
            x = rng.normal();
            n += x * x;
        }
    } while (n == 0.0);
    n = std::sqrt(n);
    for (auto& x : v) {
        x /= n;
    }
    return v;
}

std::vector<float>
to_unit_float(const std::vector<double>& v) {
    double n = 0.0;
    for (double x : v) {
        n += x * x;
    }
    n = std::sqrt(n);
    std::vector<float> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = static_cast<float>(v[i] / n);
    }
    return out;
}

}  // namespace

std::vector<LabeledEmbedding>
synthetic_gallery(const GalleryConfig& cfg) {
    if (cfg.identities == 0 || cfg.photos_per_identity == 0 || cfg.dimension == 0) {
        throw InvalidArgument("gallery: identities, photos and dimension must be positive");
    }
    if (!(cfg.spread >= 0.0)) {
        throw InvalidArgument("gallery: spread must be nonnegative");
    }
    Rng rng(cfg.rng_seed);
    std::vector<LabeledEmbedding> out;
    out.reserve(cfg.identities * cfg.photos_per_identity);
    char label[32];
    for (std::size_t p = 0; p < cfg.identities; ++p) {
        std::snprintf(label, sizeof(label), "person_%05zu", p);
        const auto center = unit_gaussian(rng, cfg.dimension);
        for (std::size_t k = 0; k < cfg.photos_per_identity; ++k) {
            std::vector<double> v = center;
            for (auto& x : v) {
                x += rng.normal(0.0, cfg.spread);
            }
            out.emplace_back(label, Embedding(to_unit_float(v)));
        }
    }
    return out;
}

std::vector<PairRecord>
synthetic_pairs(const PairsConfig& cfg) {
    if (cfg.per_side == 0 || cfg.dimension < 2) {
        throw InvalidArgument("pairs: per_side must be positive and dimension at least 2");
    }
    if (cfg.noface > cfg.per_side) {
        throw InvalidArgument("pairs: noface exceeds the genuine pair count");
    }
    Rng rng(cfg.rng_seed);
    std::vector<PairRecord> out;
    out.reserve(2 * cfg.per_side);
    for (std::size_t i = 0; i < 2 * cfg.per_side; ++i) {
        const bool genuine = i < cfg.per_side;
        const double s = std::clamp(
            rng.normal(genuine ? cfg.genuine_mean : cfg.impostor_mean, cfg.sd), -1.0, 1.0);
        const auto u = unit_gaussian(rng, cfg.dimension);
        auto w = unit_gaussian(rng, cfg.dimension);
        double proj = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            proj += u[j] * w[j];
        }
        for (std::size_t j = 0; j < u.size(); ++j) {
            w[j] -= proj * u[j];
        }
        double wn = 0.0;
        for (double x : w) {
            wn += x * x;
        }
        wn = std::sqrt(wn);
        const double c = std::sqrt(1.0 - s * s);
        std::vector<double> b(u.size());
        for (std::size_t j = 0; j < u.size(); ++j) {
            b[j] = s * u[j] + c * w[j] / wn;
        }
        PairRecord p{Embedding(to_unit_float(u)), Embedding(to_unit_float(b)), genuine};
        if (genuine && i < cfg.noface) {
            p.b.reset();
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::filesystem::path
write_pair_fixture(const std::filesystem::path& dir, const std::vector<PairRecord>& pairs) {
    std::filesystem::create_directories(dir / "emb");
    const auto list = dir / "pairs.txt";
    std::ofstream out(list);
    if (!out) {
        throw IoError("cannot write " + list.string());
    }
    auto side = [&](const std::optional<Embedding>& e, std::size_t i, char tag) -> std::string {
        if (!e) {
            return "-";
        }
        char name[48];
        std::snprintf(name, sizeof(name), "emb/%06zu_%c.txt", i, tag);
        std::ofstream f(dir / name);
        if (!f) {
            throw IoError("cannot write " + (dir / name).string());
        }
        write_embedding(f, *e);
        return name;
    };
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        out << side(pairs[i].a, i, 'a') << ' ' << side(pairs[i].b, i, 'b') << ' '
            << (pairs[i].same_identity ? 1 : 0) << '\n';
    }
    return list;
}

}  // namespace vfr
