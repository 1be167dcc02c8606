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

#include "vfr/image_io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace vfr {

namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string
header_token(std::istream& in) {
    std::string tok;
    for (;;) {
        const int c = in.get();
        if (c == EOF) {
            break;
        }
        if (c == '#' && tok.empty()) {
            std::string skip;
            std::getline(in, skip);
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) {
                break;
            }
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

int
header_int(std::istream& in, const char* what) {
    const auto tok = header_token(in);
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) {
            throw std::invalid_argument(tok);
        }
        return v;
    } catch (const std::exception&) {
        throw FormatError(std::string("pnm: bad ") + what + " '" + tok + "'");
    }
}

}  // namespace

ImageU8
read_pnm(std::istream& in) {
    const auto magic = header_token(in);
    int channels = 0;
    if (magic == "P5") {
        channels = 1;
    } else if (magic == "P6") {
        channels = 3;
    } else {
        throw FormatError("pnm: expected P5 or P6, got '" + magic + "'");
    }
    const int width = header_int(in, "width");
    const int height = header_int(in, "height");
    const int maxval = header_int(in, "maxval");
    if (width <= 0 || height <= 0) {
        throw FormatError("pnm: nonpositive image extent");
    }
    if (maxval <= 0 || maxval > 255) {
        throw FormatError("pnm: only 8-bit images (maxval <= 255) are supported");
    }
    std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * height * channels);
    in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    if (static_cast<std::size_t>(in.gcount()) != pixels.size()) {
        throw TruncatedFile("pnm: pixel data is truncated");
    }
    if (maxval != 255) {
        for (auto& p : pixels) {
            if (p > maxval) {
                throw FormatError("pnm: sample exceeds maxval");
            }
            p = static_cast<std::uint8_t>((p * 255 + maxval / 2) / maxval);
        }
    }
    return ImageU8(width, height, channels, std::move(pixels));
}

ImageU8
read_pnm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    return read_pnm(in);
}

void
write_pnm(std::ostream& out, const ImageU8& img) {
    out << (img.channels() == 1 ? "P5" : "P6") << '\n'
        << img.width() << ' ' << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels().data()),
              static_cast<std::streamsize>(img.pixels().size()));
}

void
write_pnm(const std::filesystem::path& path, const ImageU8& img) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    write_pnm(out, img);
    if (!out) {
        throw IoError("write error on '" + path.string() + "'");
    }
}

std::vector<FaceAnnotation>
parse_annotations(std::istream& in) {
    std::vector<FaceAnnotation> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::vector<double> v;
        double x = 0;
        while (fields >> x) {
            v.push_back(x);
        }
        if (!fields.eof()) {
            throw FormatError("annotations line " + std::to_string(lineno) + ": non-numeric field");
        }
        if (v.size() != 4 && v.size() != 4 + 2 * kLandmarkCount) {
            throw FormatError("annotations line " + std::to_string(lineno) + ": expected 4 or 14 fields, got " +
                              std::to_string(v.size()));
        }
        FaceAnnotation a;
        a.bbox = {v[0], v[1], v[2], v[3]};
        if (!(a.bbox.x_min < a.bbox.x_max && a.bbox.y_min < a.bbox.y_max)) {
            throw FormatError("annotations line " + std::to_string(lineno) + ": empty or inverted box");
        }
        if (v.size() == 14) {
            bool present = true;
            std::array<Point, kLandmarkCount> pts{};
            for (int i = 0; i < kLandmarkCount; ++i) {
                pts[i] = {v[4 + 2 * i], v[5 + 2 * i]};
                present = present && pts[i].x != -1.0 && pts[i].y != -1.0;
            }
            if (present) {
                a.landmarks = pts;
            }
        }
        out.push_back(a);
    }
    return out;
}

std::vector<FaceAnnotation>
read_annotations(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    return parse_annotations(in);
}

std::string
format_annotation(const FaceAnnotation& ann) {
    std::ostringstream os;
    os << std::setprecision(10) << ann.bbox.x_min << ' ' << ann.bbox.y_min << ' ' << ann.bbox.x_max
       << ' ' << ann.bbox.y_max;
    for (int i = 0; i < kLandmarkCount; ++i) {
        if (ann.landmarks) {
            os << ' ' << (*ann.landmarks)[i].x << ' ' << (*ann.landmarks)[i].y;
        } else {
            os << " -1 -1";
        }
    }
    return os.str();
}

void
write_annotations(const std::filesystem::path& path, const std::vector<FaceAnnotation>& anns) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    for (const auto& a : anns) {
        out << format_annotation(a) << '\n';
    }
}

}  // namespace vfr
