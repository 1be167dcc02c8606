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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vfr/embedding.hpp"
#include "vfr/hnsw_index.hpp"

namespace vfr {

struct LibraryRecord {
    RecordId id = 0;
    std::string label;
    Embedding embedding;  // carries the same id and label

    friend bool operator==(const LibraryRecord&, const LibraryRecord&) = default;
};

/// Labeled gallery of embeddings, immutable once built.
class FeatureLibrary {
public:
    FeatureLibrary() = default;

    /// Checks unique ids and a shared dimension.
    FeatureLibrary(std::size_t dimension, std::vector<LibraryRecord> records,
                   std::int64_t created_at, std::string source_manifest);

    [[nodiscard]] std::size_t dimension() const { return dimension_; }
    [[nodiscard]] std::size_t size() const { return records_.size(); }
    [[nodiscard]] bool empty() const { return records_.empty(); }
    [[nodiscard]] const std::vector<LibraryRecord>& records() const { return records_; }
    /// Unix seconds.
    [[nodiscard]] std::int64_t created_at() const { return created_at_; }
    [[nodiscard]] const std::string& source_manifest() const { return source_manifest_; }

    [[nodiscard]] const LibraryRecord& record(RecordId id) const;
    [[nodiscard]] bool contains(RecordId id) const { return position_.count(id) > 0; }

    friend bool operator==(const FeatureLibrary& a, const FeatureLibrary& b) {
        return a.dimension_ == b.dimension_ && a.records_ == b.records_ &&
               a.created_at_ == b.created_at_ && a.source_manifest_ == b.source_manifest_;
    }

private:
    std::size_t dimension_ = 0;
    std::vector<LibraryRecord> records_;
    std::int64_t created_at_ = 0;
    std::string source_manifest_;
    std::unordered_map<RecordId, std::size_t> position_;
};

using LabeledEmbedding = std::pair<std::string, Embedding>;

/// Assigns ids 0, 1, ... in input order. Throws EmptyInput or DimensionMismatch.
/// created_at defaults to the current time.
FeatureLibrary build_library(const std::vector<LabeledEmbedding>& records,
                             std::string source_manifest = {},
                             std::optional<std::int64_t> created_at = std::nullopt);

using LabelMap = std::unordered_map<RecordId, std::string>;

struct IndexedLibrary {
    HnswIndex index;
    LabelMap labels;
};

/// Inserts every record in library order.
IndexedLibrary index_library(const FeatureLibrary& lib, const HnswParams& params);

inline constexpr std::uint16_t kLibraryFormatVersion = 1;

std::vector<std::uint8_t> serialize_library(const FeatureLibrary& lib);
FeatureLibrary deserialize_library(std::span<const std::uint8_t> file);
void save_library(const FeatureLibrary& lib, const std::filesystem::path& path);
FeatureLibrary load_library(const std::filesystem::path& path);

/// Bulk text format: one `label v1 ... vd` record per line. Blank lines and
/// lines starting with '#' are skipped.
std::vector<LabeledEmbedding> parse_bulk_embeddings(std::istream& in);
std::vector<LabeledEmbedding> read_bulk_embeddings(const std::filesystem::path& path);
void write_bulk_embeddings(std::ostream& out, const std::vector<LabeledEmbedding>& records);

/// Single-embedding file: whitespace-separated reals, optionally preceded by
/// a non-numeric label token.
Embedding parse_embedding(std::istream& in);
Embedding read_embedding(const std::filesystem::path& path);
void write_embedding(std::ostream& out, const Embedding& e);

}  // namespace vfr
