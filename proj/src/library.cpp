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


#include "vfr/library.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

#include "binary_io.hpp"
#include "vfr/error.hpp"

namespace vfr {

namespace {

constexpr char kLibraryMagic[4] = {'F', 'L', 'I', 'B'};

std::optional<float>
parse_float(std::string_view token) {
    float v = 0.0f;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return v;
}

std::vector<std::string>
split_tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) {
        out.push_back(tok);
    }
    return out;
}

void
write_float(std::ostream& out, float v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
}

std::ifstream
open_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return in;
}

}  // namespace

FeatureLibrary::FeatureLibrary(std::size_t dimension, std::vector<LibraryRecord> records,
                               std::int64_t created_at, std::string source_manifest)
    : dimension_(dimension),
      records_(std::move(records)),
      created_at_(created_at),
      source_manifest_(std::move(source_manifest)) {
    if (dimension_ == 0) {
        throw InvalidArgument("library: dimension must be positive");
    }
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        require_same_dimension(dimension_, r.embedding.dimension());
        if (r.embedding.id() != r.id || r.embedding.label() != r.label) {
            throw InvalidArgument("library: record embedding does not carry its id and label");
        }
        if (!position_.emplace(r.id, i).second) {
            throw DuplicateId("library: duplicate id " + std::to_string(r.id));
        }
    }
}

const LibraryRecord&
FeatureLibrary::record(RecordId id) const {
    const auto it = position_.find(id);
    if (it == position_.end()) {
        throw InvalidArgument("library: unknown id " + std::to_string(id));
    }
    return records_[it->second];
}

FeatureLibrary
build_library(const std::vector<LabeledEmbedding>& records, std::string source_manifest,
              std::optional<std::int64_t> created_at) {
    if (records.empty()) {
        throw EmptyInput("build_library: no records");
    }
    const std::size_t dim = records.front().second.dimension();
    std::vector<LibraryRecord> out;
    out.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& [label, e] = records[i];
        require_same_dimension(dim, e.dimension());
        out.push_back({i, label, e.with_id(i).with_label(label)});
    }
    const std::int64_t stamp =
        created_at.value_or(std::chrono::duration_cast<std::chrono::seconds>(
                                std::chrono::system_clock::now().time_since_epoch())
                                .count());
    return FeatureLibrary(dim, std::move(out), stamp, std::move(source_manifest));
}

IndexedLibrary
index_library(const FeatureLibrary& lib, const HnswParams& params) {
    IndexedLibrary out{HnswIndex(lib.dimension(), params), {}};
    out.labels.reserve(lib.size());
    for (const auto& r : lib.records()) {
        out.index.insert(r.embedding);
        out.labels.emplace(r.id, r.label);
    }
    return out;
}

std::vector<std::uint8_t>
serialize_library(const FeatureLibrary& lib) {
    detail::ByteWriter w;
    w.put(lib.created_at());
    w.put_string(lib.source_manifest());
    w.put(static_cast<std::uint32_t>(lib.dimension()));
    w.put(static_cast<std::uint64_t>(lib.size()));
    for (const auto& r : lib.records()) {
        w.put(r.id);
        w.put_string(r.label);
        w.put_floats(r.embedding.values());
    }
    return detail::seal_container(std::string_view(kLibraryMagic, 4), kLibraryFormatVersion,
                                  w.bytes());
}

FeatureLibrary
deserialize_library(std::span<const std::uint8_t> file) {
    const auto payload =
        detail::open_container(file, std::string_view(kLibraryMagic, 4), kLibraryFormatVersion);
    detail::ByteReader r(payload);
    const auto created_at = r.get<std::int64_t>();
    auto manifest = r.get_string();
    const auto dim = r.get<std::uint32_t>();
    const auto count = r.get<std::uint64_t>();
    if (dim == 0) {
        throw FormatError("library: zero dimension");
    }
    // Each record needs at least id, label length and the vector.
    if (count > r.remaining() / (12 + 4 * static_cast<std::uint64_t>(dim))) {
        throw FormatError("library: record count exceeds payload");
    }
    std::vector<LibraryRecord> records;
    records.reserve(count);
    std::vector<float> values(dim);
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto id = r.get<std::uint64_t>();
        auto label = r.get_string();
        r.get_floats(values);
        try {
            Embedding e(values, id, label);
            records.push_back({id, std::move(label), std::move(e)});
        } catch (const InvalidArgument& ex) {
            throw FormatError(std::string("library: ") + ex.what());
        }
    }
    if (r.remaining() != 0) {
        throw FormatError("library: trailing bytes in payload");
    }
    try {
        return FeatureLibrary(dim, std::move(records), created_at, std::move(manifest));
    } catch (const InvalidArgument& ex) {
        throw FormatError(std::string("library: ") + ex.what());
    }
}

void
save_library(const FeatureLibrary& lib, const std::filesystem::path& path) {
    detail::write_file(path, serialize_library(lib));
}

FeatureLibrary
load_library(const std::filesystem::path& path) {
    return deserialize_library(detail::read_file(path));
}

std::vector<LabeledEmbedding>
parse_bulk_embeddings(std::istream& in) {
    std::vector<LabeledEmbedding> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = split_tokens(line);
        if (tokens.empty() || tokens[0][0] == '#') {
            continue;
        }
        if (tokens.size() < 2) {
            throw FormatError("bulk line " + std::to_string(lineno) + ": expected a label and values");
        }
        std::vector<float> values;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            const auto v = parse_float(tokens[i]);
            if (!v) {
                throw FormatError("bulk line " + std::to_string(lineno) + ": bad value '" +
                                  tokens[i] + "'");
            }
            values.push_back(*v);
        }
        if (!out.empty() && values.size() != out.front().second.dimension()) {
            throw FormatError("bulk line " + std::to_string(lineno) + ": dimension " +
                              std::to_string(values.size()) + " differs from " +
                              std::to_string(out.front().second.dimension()));
        }
        try {
            out.emplace_back(tokens[0], Embedding(std::move(values)));
        } catch (const InvalidArgument& ex) {
            throw FormatError("bulk line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    return out;
}

std::vector<LabeledEmbedding>
read_bulk_embeddings(const std::filesystem::path& path) {
    auto in = open_text(path);
    return parse_bulk_embeddings(in);
}

void
write_bulk_embeddings(std::ostream& out, const std::vector<LabeledEmbedding>& records) {
    for (const auto& [label, e] : records) {
        out << label;
        for (float v : e.values()) {
            out << ' ';
            write_float(out, v);
        }
        out << '\n';
    }
}

Embedding
parse_embedding(std::istream& in) {
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) {
        tokens.push_back(tok);
    }
    std::optional<std::string> label;
    std::vector<float> values;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto v = parse_float(tokens[i]);
        if (v) {
            values.push_back(*v);
        } else if (i == 0) {
            label = tokens[0];
        } else {
            throw FormatError("embedding: bad value '" + tokens[i] + "'");
        }
    }
    if (values.empty()) {
        throw FormatError("embedding: no values");
    }
    try {
        return Embedding(std::move(values), 0, std::move(label));
    } catch (const InvalidArgument& ex) {
        throw FormatError(std::string("embedding: ") + ex.what());
    }
}

Embedding
read_embedding(const std::filesystem::path& path) {
    auto in = open_text(path);
    return parse_embedding(in);
}

void
write_embedding(std::ostream& out, const Embedding& e) {
    if (e.label()) {
        out << *e.label() << '\n';
    }
    bool first = true;
    for (float v : e.values()) {
        if (!first) {
            out << ' ';
        }
        first = false;
        write_float(out, v);
    }
    out << '\n';
}

}  // namespace vfr
