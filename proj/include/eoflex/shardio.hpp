#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "eoflex/params.hpp"

namespace eoflex {

inline constexpr std::size_t kShardHeaderSize = 48;
inline constexpr std::uint16_t kShardVersion = 1;
inline constexpr std::size_t kDefaultShardLaneWidth = 4096;

// Little-endian on disk: magic "EOFLEX01", version u16, tau/p/k u32, column u16,
// lane_width u32, stripe_count u64, original_length u64, CRC-32 of the preceding 44 bytes.
struct ShardHeader {
    std::uint16_t version = kShardVersion;
    std::uint32_t tau = 0;
    std::uint32_t p = 0;
    std::uint32_t k = 0;
    std::uint16_t column_index = 0;
    std::uint32_t lane_width = 0;
    std::uint64_t stripe_count = 0;
    std::uint64_t original_length = 0;
    std::uint32_t header_crc = 0;  // filled by serialize, checked by parse

    // True when every field other than column_index and header_crc agrees.
    bool same_set(const ShardHeader& other) const;
};

std::array<std::uint8_t, kShardHeaderSize> serialize_header(const ShardHeader& header);
// Throws CrcFailure on a bad magic, version or checksum.
ShardHeader parse_header(const std::uint8_t* bytes, std::size_t size);

std::string shard_name(int column);

// Writes k+2 shard files into out_dir and returns their paths in column order.
std::vector<std::filesystem::path> shard_file(const std::filesystem::path& input, const CodeParams& params,
                                              std::size_t lane_width, const std::filesystem::path& out_dir);

struct ReconstructResult {
    std::vector<int> missing;     // columns treated as erased
    std::uint64_t bytes_written = 0;
};

ReconstructResult reconstruct(const std::filesystem::path& shard_dir, const std::filesystem::path& output);

}  // namespace eoflex
