#include "eoflex/shardio.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <map>
#include <optional>
#include <regex>

#include "eoflex/array.hpp"
#include "eoflex/codec.hpp"
#include "eoflex/decoder.hpp"
#include "eoflex/error.hpp"

namespace eoflex {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[8] = {'E', 'O', 'F', 'L', 'E', 'X', '0', '1'};

template <typename T>
void put_le(std::uint8_t*& out, T value) {
    for (std::size_t b = 0; b < sizeof(T); ++b) *out++ = static_cast<std::uint8_t>(static_cast<std::uint64_t>(value) >> (8 * b));
}

template <typename T>
T get_le(const std::uint8_t*& in) {
    std::uint64_t v = 0;
    for (std::size_t b = 0; b < sizeof(T); ++b) v |= static_cast<std::uint64_t>(*in++) << (8 * b);
    return static_cast<T>(v);
}

std::uint32_t crc_of(const std::uint8_t* bytes, std::size_t n) {
    return static_cast<std::uint32_t>(crc32(0L, bytes, static_cast<uInt>(n)));
}

void fill_info(CodeArray& a, const std::vector<std::uint8_t>& stripe) {
    const CodeParams& cp = a.params();
    const std::size_t w = a.lane_width();
    for (int i = 0; i < cp.rows; ++i)
        for (int j = 0; j < cp.k; ++j)
            lane_copy(a.cell(i, j), stripe.data() + (static_cast<std::size_t>(i) * cp.k + j) * w, w);
}

void drain_info(const CodeArray& a, std::vector<std::uint8_t>& stripe) {
    const CodeParams& cp = a.params();
    const std::size_t w = a.lane_width();
    for (int i = 0; i < cp.rows; ++i)
        for (int j = 0; j < cp.k; ++j)
            lane_copy(stripe.data() + (static_cast<std::size_t>(i) * cp.k + j) * w, a.cell(i, j), w);
}

struct Candidate {
    fs::path path;
    ShardHeader header;
};

}  // namespace

bool ShardHeader::same_set(const ShardHeader& o) const {
    return version == o.version && tau == o.tau && p == o.p && k == o.k && lane_width == o.lane_width &&
           stripe_count == o.stripe_count && original_length == o.original_length;
}

std::array<std::uint8_t, kShardHeaderSize> serialize_header(const ShardHeader& h) {
    std::array<std::uint8_t, kShardHeaderSize> out{};
    std::memcpy(out.data(), kMagic, sizeof kMagic);
    std::uint8_t* cur = out.data() + sizeof kMagic;
    put_le(cur, h.version);
    put_le(cur, h.tau);
    put_le(cur, h.p);
    put_le(cur, h.k);
    put_le(cur, h.column_index);
    put_le(cur, h.lane_width);
    put_le(cur, h.stripe_count);
    put_le(cur, h.original_length);
    const std::uint32_t crc = crc_of(out.data(), kShardHeaderSize - 4);
    put_le(cur, crc);
    return out;
}

ShardHeader parse_header(const std::uint8_t* bytes, std::size_t size) {
    if (size < kShardHeaderSize) throw CodeError(ErrorCode::CrcFailure, "truncated header");
    if (std::memcmp(bytes, kMagic, sizeof kMagic) != 0) throw CodeError(ErrorCode::CrcFailure, "bad magic");
    ShardHeader h;
    const std::uint8_t* cur = bytes + sizeof kMagic;
    h.version = get_le<std::uint16_t>(cur);
    h.tau = get_le<std::uint32_t>(cur);
    h.p = get_le<std::uint32_t>(cur);
    h.k = get_le<std::uint32_t>(cur);
    h.column_index = get_le<std::uint16_t>(cur);
    h.lane_width = get_le<std::uint32_t>(cur);
    h.stripe_count = get_le<std::uint64_t>(cur);
    h.original_length = get_le<std::uint64_t>(cur);
    h.header_crc = get_le<std::uint32_t>(cur);
    if (crc_of(bytes, kShardHeaderSize - 4) != h.header_crc) throw CodeError(ErrorCode::CrcFailure, "header checksum mismatch");
    if (h.version != kShardVersion) throw CodeError(ErrorCode::CrcFailure, "unsupported version " + std::to_string(h.version));
    return h;
}

std::string shard_name(int column) { return "shard_" + std::to_string(column) + ".eof"; }

std::vector<fs::path> shard_file(const fs::path& input, const CodeParams& cp, std::size_t lane_width, const fs::path& out_dir) {
    if (lane_width == 0 || lane_width > 0xffffffffULL) throw CodeError(ErrorCode::InvalidParams, "lane width out of range");
    for (int f = 0; f < cp.k; ++f)
        for (int g = f + 1; g < cp.k; ++g)
            if (!two_info_recoverable(cp, f, g))
                throw CodeError(ErrorCode::InvalidParams, to_string(cp) + " cannot recover information columns " +
                                                              std::to_string(f) + "," + std::to_string(g));

    std::ifstream in(input, std::ios::binary);
    if (!in) throw CodeError(ErrorCode::Io, "cannot open " + input.string());
    std::error_code ec;
    const std::uint64_t length = fs::file_size(input, ec);
    if (ec) throw CodeError(ErrorCode::Io, "cannot stat " + input.string());
    fs::create_directories(out_dir, ec);
    if (ec) throw CodeError(ErrorCode::Io, "cannot create " + out_dir.string());

    const std::size_t stripe_bytes = static_cast<std::size_t>(cp.k) * static_cast<std::size_t>(cp.rows) * lane_width;
    const std::uint64_t stripes = (length + stripe_bytes - 1) / stripe_bytes;

    std::vector<fs::path> paths;
    std::vector<std::ofstream> outs;
    for (int c = 0; c < cp.k + 2; ++c) {
        paths.push_back(out_dir / shard_name(c));
        outs.emplace_back(paths.back(), std::ios::binary | std::ios::trunc);
        if (!outs.back()) throw CodeError(ErrorCode::Io, "cannot write " + paths.back().string());
        ShardHeader h;
        h.tau = static_cast<std::uint32_t>(cp.tau);
        h.p = static_cast<std::uint32_t>(cp.p);
        h.k = static_cast<std::uint32_t>(cp.k);
        h.column_index = static_cast<std::uint16_t>(c);
        h.lane_width = static_cast<std::uint32_t>(lane_width);
        h.stripe_count = stripes;
        h.original_length = length;
        const auto bytes = serialize_header(h);
        outs.back().write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    }

    std::vector<std::uint8_t> stripe(stripe_bytes);
    CodeArray a(cp, lane_width);
    for (std::uint64_t s = 0; s < stripes; ++s) {
        std::fill(stripe.begin(), stripe.end(), 0);
        in.read(reinterpret_cast<char*>(stripe.data()), static_cast<std::streamsize>(stripe_bytes));
        if (in.bad()) throw CodeError(ErrorCode::Io, "read failed on " + input.string());
        fill_info(a, stripe);
        encode(a);
        for (int c = 0; c < cp.k + 2; ++c)
            for (int i = 0; i < cp.rows; ++i)
                outs[static_cast<std::size_t>(c)].write(reinterpret_cast<const char*>(a.cell(i, c)),
                                                        static_cast<std::streamsize>(lane_width));
    }
    for (std::size_t c = 0; c < outs.size(); ++c) {
        outs[c].close();
        if (!outs[c]) throw CodeError(ErrorCode::Io, "write failed on " + paths[c].string());
    }
    return paths;
}

ReconstructResult reconstruct(const fs::path& shard_dir, const fs::path& output) {
    std::error_code ec;
    if (!fs::is_directory(shard_dir, ec)) throw CodeError(ErrorCode::Io, shard_dir.string() + " is not a directory");

    // Candidates with a readable, checksummed header; anything else counts as erased.
    const std::regex name_re(R"(shard_(\d+)\.eof)");
    std::map<int, Candidate> by_column;
    std::optional<ShardHeader> reference;
    for (const auto& entry : fs::directory_iterator(shard_dir)) {
        std::smatch m;
        const std::string name = entry.path().filename().string();
        if (!entry.is_regular_file() || !std::regex_match(name, m, name_re)) continue;
        std::ifstream f(entry.path(), std::ios::binary);
        std::array<std::uint8_t, kShardHeaderSize> raw{};
        f.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (f.gcount() != static_cast<std::streamsize>(raw.size())) continue;
        ShardHeader h;
        try {
            h = parse_header(raw.data(), raw.size());
        } catch (const CodeError&) {
            continue;
        }
        if (std::stoi(m[1].str()) != h.column_index) continue;
        if (reference && !reference->same_set(h))
            throw CodeError(ErrorCode::HeaderMismatch, entry.path().string() + " belongs to a different shard set");
        if (!reference) reference = h;
        by_column[h.column_index] = Candidate{entry.path(), h};
    }
    if (!reference) throw CodeError(ErrorCode::TooManyMissing, "no valid shard in " + shard_dir.string());

    const CodeParams cp = validate_params(reference->tau, reference->p, reference->k);
    const std::size_t w = reference->lane_width;
    if (w == 0) throw CodeError(ErrorCode::HeaderMismatch, "zero lane width");
    const std::uint64_t payload = reference->stripe_count * static_cast<std::uint64_t>(cp.rows) * w;

    std::vector<int> missing;
    std::vector<std::ifstream> ins(static_cast<std::size_t>(cp.k + 2));
    for (int c = 0; c < cp.k + 2; ++c) {
        auto it = by_column.find(c);
        if (it == by_column.end() || fs::file_size(it->second.path, ec) != kShardHeaderSize + payload) {
            missing.push_back(c);
            continue;
        }
        ins[static_cast<std::size_t>(c)].open(it->second.path, std::ios::binary);
        ins[static_cast<std::size_t>(c)].seekg(static_cast<std::streamoff>(kShardHeaderSize));
        if (!ins[static_cast<std::size_t>(c)]) missing.push_back(c);
    }
    if (missing.size() > 2)
        throw CodeError(ErrorCode::TooManyMissing, std::to_string(missing.size()) + " shards missing, at most 2 recoverable",
                        static_cast<std::int64_t>(missing.size()));
    const ErasurePattern pattern(cp, missing);

    std::ofstream out(output, std::ios::binary | std::ios::trunc);
    if (!out) throw CodeError(ErrorCode::Io, "cannot write " + output.string());
    const std::size_t stripe_bytes = static_cast<std::size_t>(cp.k) * static_cast<std::size_t>(cp.rows) * w;
    std::vector<std::uint8_t> stripe(stripe_bytes);
    std::vector<std::uint8_t> column(static_cast<std::size_t>(cp.rows) * w);
    CodeArray a(cp, w);
    std::uint64_t remaining = reference->original_length;
    for (std::uint64_t s = 0; s < reference->stripe_count; ++s) {
        for (int c = 0; c < cp.k + 2; ++c) {
            if (pattern.contains(c)) {
                a.clear_column(c);
                continue;
            }
            auto& in = ins[static_cast<std::size_t>(c)];
            in.read(reinterpret_cast<char*>(column.data()), static_cast<std::streamsize>(column.size()));
            if (!in) throw CodeError(ErrorCode::Io, "short read on column " + std::to_string(c));
            for (int i = 0; i < cp.rows; ++i) lane_copy(a.cell(i, c), column.data() + static_cast<std::size_t>(i) * w, w);
        }
        if (!pattern.empty()) decode(a, pattern);
        drain_info(a, stripe);
        const std::uint64_t n = std::min<std::uint64_t>(remaining, stripe_bytes);
        out.write(reinterpret_cast<const char*>(stripe.data()), static_cast<std::streamsize>(n));
        remaining -= n;
    }
    out.close();
    if (!out) throw CodeError(ErrorCode::Io, "write failed on " + output.string());
    return ReconstructResult{missing, reference->original_length - remaining};
}

}  // namespace eoflex
