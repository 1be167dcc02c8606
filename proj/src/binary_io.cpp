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

#include "binary_io.hpp"

#include <zlib.h>

#include <fstream>
#include <iterator>

namespace vfr::detail {

namespace {
constexpr std::size_t kHeaderSize = 4 + sizeof(std::uint16_t) + sizeof(std::uint64_t);
constexpr std::size_t kTrailerSize = sizeof(std::uint32_t);
}  // namespace

std::uint32_t
crc32(std::span<const std::uint8_t> bytes) {
    uLong crc = ::crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed in chunks to stay portable for large payloads
    constexpr std::size_t kChunk = 1u << 30;
    for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
        const std::size_t n = std::min(kChunk, bytes.size() - off);
        crc = ::crc32(crc, bytes.data() + off, static_cast<uInt>(n));
    }
    return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t>
seal_container(std::string_view magic, std::uint16_t version,
               std::span<const std::uint8_t> payload) {
    ByteWriter w;
    for (char c : magic) {
        w.put(static_cast<std::uint8_t>(c));
    }
    w.put(version);
    w.put(static_cast<std::uint64_t>(payload.size()));
    auto out = w.take();
    out.insert(out.end(), payload.begin(), payload.end());
    ByteWriter trailer;
    trailer.put(crc32(payload));
    out.insert(out.end(), trailer.bytes().begin(), trailer.bytes().end());
    return out;
}

std::vector<std::uint8_t>
open_container(std::span<const std::uint8_t> file, std::string_view magic,
               std::uint16_t version) {
    if (file.size() < kHeaderSize) {
        throw TruncatedFile("file is shorter than its header (" + std::to_string(file.size()) +
                            " bytes)");
    }
    if (std::string_view(reinterpret_cast<const char*>(file.data()), 4) != magic) {
        throw BadMagic("expected magic '" + std::string(magic) + "'");
    }
    ByteReader header(file.subspan(4, kHeaderSize - 4));
    const auto found_version = header.get<std::uint16_t>();
    if (found_version != version) {
        throw VersionMismatch("format version " + std::to_string(found_version) +
                              " is not supported (expected " + std::to_string(version) + ")");
    }
    const auto length = header.get<std::uint64_t>();
    const std::size_t available = file.size() - kHeaderSize;
    if (available < kTrailerSize || length > available - kTrailerSize) {
        throw TruncatedFile("file ends before the declared " + std::to_string(length) +
                            "-byte payload and its checksum");
    }
    if (length + kTrailerSize != available) {
        throw FormatError("unexpected bytes after the checksum");
    }
    const auto payload = file.subspan(kHeaderSize, length);
    ByteReader trailer(file.subspan(kHeaderSize + length, kTrailerSize));
    const auto stored = trailer.get<std::uint32_t>();
    if (stored != crc32(payload)) {
        throw ChecksumMismatch("payload checksum does not match");
    }
    return {payload.begin(), payload.end()};
}

std::vector<std::uint8_t>
read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read error on '" + path.string() + "'");
    }
    return bytes;
}

void
write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write error on '" + path.string() + "'");
    }
}

}  // namespace vfr::detail
