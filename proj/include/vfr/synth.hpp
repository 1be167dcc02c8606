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
#include <filesystem>
#include <vector>

#include "vfr/library.hpp"
#include "vfr/matcher.hpp"

namespace vfr {

/// Seeded synthetic face gallery: identity centers uniform on the unit
/// sphere, each photo the center plus N(0, spread^2) per component,
/// renormalized. Labels are person_00000, person_00001, ...
struct GalleryConfig {
    std::size_t identities = 3000;
    std::size_t photos_per_identity = 5;
    std::size_t dimension = kDefaultDimension;
    double spread = 0.05;
    std::uint64_t rng_seed = 42;
};

std::vector<LabeledEmbedding> synthetic_gallery(const GalleryConfig& cfg);

/// Verification pairs with prescribed cosine similarities: genuine pairs draw
/// s ~ N(genuine_mean, sd), impostor pairs s ~ N(impostor_mean, sd), clamped
/// to [-1, 1]. The first `noface` genuine pairs lose their second embedding.
struct PairsConfig {
    std::size_t per_side = 3000;
    double genuine_mean = 0.7;
    double impostor_mean = 0.1;
    double sd = 0.1;
    std::size_t dimension = kDefaultDimension;
    std::size_t noface = 0;
    std::uint64_t rng_seed = 42;
};

std::vector<PairRecord> synthetic_pairs(const PairsConfig& cfg);

/// Writes one embedding file per present side under dir/emb and a pair list
/// dir/pairs.txt using `-` for absent sides. Returns the pair list path.
std::filesystem::path write_pair_fixture(const std::filesystem::path& dir,
                                         const std::vector<PairRecord>& pairs);

}  // namespace vfr
