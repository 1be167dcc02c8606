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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "vfr/augment.hpp"
#include "vfr/raster.hpp"

namespace vfr {

// Binary PGM (P5, 1 channel) and PPM (P6, 3 channels), maxval 255.
ImageU8 read_pnm(std::istream& in);
ImageU8 read_pnm(const std::filesystem::path& path);
void write_pnm(std::ostream& out, const ImageU8& img);
void write_pnm(const std::filesystem::path& path, const ImageU8& img);

// Face annotations, one per line:
//   x_min y_min x_max y_max lx1 ly1 ... lx5 ly5
// with -1 marking absent landmarks; a 4-field line is landmark-free.
// Blank lines and lines starting with '#' are skipped.
std::vector<FaceAnnotation> parse_annotations(std::istream& in);
std::vector<FaceAnnotation> read_annotations(const std::filesystem::path& path);
std::string format_annotation(const FaceAnnotation& ann);
void write_annotations(const std::filesystem::path& path, const std::vector<FaceAnnotation>& anns);

}  // namespace vfr
