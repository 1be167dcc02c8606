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

// Little-endian byte buffers and the checksummed container shared by the
// index and library file formats:
//
//   magic[4] | version u16 | payload_length u64 | payload | crc32(payload) u32

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "vfr/error.hpp"

namespace vfr::detail {

class ByteWriter {
public:
    template <typename T>
        requires std::is_arithmetic_v<T>
    void put(T value) {
        std::array<std::uint8_t, sizeof(T)> raw{};
        std::memcpy(raw.data(), &value, sizeof(T));
        if constexpr (std::endian::native == std::endian::big) {
            std::reverse(raw.begin(), raw.end());
        }
        bytes_.insert(bytes_.end(), raw.begin(), raw.end());
    }

    void put_floats(std::span<const float> values) {
        for (float v : values) {
            put(v);
        }
    }

    void put_string(std::string_view s) {
        put(static_cast<std::uint32_t>(s.size()));
        bytes_.insert(bytes_.end(), s.begin(), s.end());
    }

    [[nodiscard]] const std::vector<std::uint8_t>& bytes() const { return bytes_; }
    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
};

/// Bounds-checked reader; running past the end raises FormatError.
class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    template <typename T>
        requires std::is_arithmetic_v<T>
    T get() {
        need(sizeof(T));
        std::array<std::uint8_t, sizeof(T)> raw{};
        std::memcpy(raw.data(), bytes_.data() + pos_, sizeof(T));
        if constexpr (std::endian::native == std::endian::big) {
            std::reverse(raw.begin(), raw.end());
        }
        pos_ += sizeof(T);
        T value;
        std::memcpy(&value, raw.data(), sizeof(T));
        return value;
    }

    void get_floats(std::span<float> out) {
        need(out.size() * sizeof(float));
        for (auto& v : out) {
            v = get<float>();
        }
    }

    std::string get_string() {
        const auto n = get<std::uint32_t>();
        need(n);
        std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
        pos_ += n;
        return s;
    }

    [[nodiscard]] std::size_t remaining() const { return bytes_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (n > remaining()) {
            throw FormatError("payload ends before its declared structure");
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

std::uint32_t crc32(std::span<const std::uint8_t> bytes);

/// Wraps payload into the checksummed container.
std::vector<std::uint8_t> seal_container(std::string_view magic, std::uint16_t version,
                                         std::span<const std::uint8_t> payload);

/// Validates framing and checksum and returns the payload. Raises, in order of
/// detection: TruncatedFile, BadMagic, VersionMismatch, FormatError (trailing
/// bytes), ChecksumMismatch.
std::vector<std::uint8_t> open_container(std::span<const std::uint8_t> file,
                                         std::string_view magic, std::uint16_t version);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace vfr::detail
