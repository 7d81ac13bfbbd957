#include "nid/compressor.hpp"
#include "nid/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <unistd.h>

namespace nid {

namespace {

std::size_t varint_size(std::uint64_t v) {
    std::size_t n = 1;
    while (v >= 0x80) {
        v >>= 7;
        ++n;
    }
    return n;
}

constexpr std::size_t kHeaderMagic = 4; // "NLZ1"
constexpr int kMaxChainProbes = 64;

} // namespace

std::size_t BuiltinLzCompressor::compressed_size(std::string_view data) const {
    const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
    const std::size_t n = data.size();

    std::size_t out = kHeaderMagic + varint_size(n);
    if (n == 0) return out;

    // Hash chains over 4-byte prefixes; probe depth is capped, which keeps
    // matching deterministic and fast without changing the token format.
    std::vector<std::int64_t> head(1 << 16, -1);
    std::vector<std::int64_t> prev(n, -1);
    auto hash4 = [&](std::size_t i) -> std::uint32_t {
        std::uint32_t h = static_cast<std::uint32_t>(bytes[i]) |
                          (static_cast<std::uint32_t>(bytes[i + 1]) << 8) |
                          (static_cast<std::uint32_t>(bytes[i + 2]) << 16) |
                          (static_cast<std::uint32_t>(bytes[i + 3]) << 24);
        h *= 2654435761u;
        return h >> 16;
    };

    std::size_t literal_run = 0;
    auto flush_literals = [&]() {
        if (literal_run > 0) {
            out += varint_size(static_cast<std::uint64_t>(literal_run) << 1) + literal_run;
            literal_run = 0;
        }
    };
    auto insert_pos = [&](std::size_t i) {
        if (i + kMinMatch <= n) {
            std::uint32_t h = hash4(i);
            prev[i] = head[h];
            head[h] = static_cast<std::int64_t>(i);
        }
    };

    std::size_t i = 0;
    while (i < n) {
        std::size_t best_len = 0;
        std::size_t best_dist = 0;
        if (i + kMinMatch <= n) {
            const std::size_t window_start = i >= kWindowSize ? i - kWindowSize : 0;
            std::int64_t cand = head[hash4(i)];
            int probes = 0;
            while (cand >= 0 && static_cast<std::size_t>(cand) >= window_start &&
                   probes < kMaxChainProbes) {
                const std::size_t c = static_cast<std::size_t>(cand);
                std::size_t len = 0;
                while (i + len < n && bytes[c + len] == bytes[i + len]) ++len;
                if (len > best_len) {
                    best_len = len;
                    best_dist = i - c;
                }
                cand = prev[c];
                ++probes;
            }
        }

        bool emit_copy = false;
        std::size_t copy_cost = 0;
        if (best_len >= kMinMatch) {
            copy_cost = varint_size(((static_cast<std::uint64_t>(best_len) - kMinMatch) << 1) | 1) +
                        varint_size(best_dist - 1);
            emit_copy = copy_cost < best_len;
        }

        if (emit_copy) {
            flush_literals();
            out += copy_cost;
            for (std::size_t k = 0; k < best_len; ++k) insert_pos(i + k);
            i += best_len;
        } else {
            ++literal_run;
            insert_pos(i);
            ++i;
        }
    }
    flush_literals();
    return out;
}

std::size_t RunLengthCompressor::compressed_size(std::string_view data) const {
    std::size_t runs = 0;
    for (std::size_t i = 0; i < data.size();) {
        std::size_t j = i;
        while (j < data.size() && data[j] == data[i]) ++j;
        ++runs;
        i = j;
    }
    return runs * 2;
}

std::size_t ExternalCompressor::compressed_size(std::string_view data) const {
    namespace fs = std::filesystem;
    struct TempFiles {
        fs::path in, out;
        ~TempFiles() {
            std::error_code ec;
            fs::remove(in, ec);
            fs::remove(out, ec);
        }
    };

    static std::atomic<std::uint64_t> counter{0};
    const auto tag = std::to_string(static_cast<unsigned long>(::getpid())) + "." +
                     std::to_string(counter.fetch_add(1));
    TempFiles tmp{fs::temp_directory_path() / ("nid-zin." + tag),
                  fs::temp_directory_path() / ("nid-zout." + tag)};

    {
        std::ofstream f(tmp.in, std::ios::binary);
        f.write(data.data(), static_cast<std::streamsize>(data.size()));
        if (!f) throw ExternalToolError("cannot stage input for external compressor: " + command_);
    }

    const std::string shell = command_ + " < '" + tmp.in.string() + "' > '" + tmp.out.string() + "'";
    const int rc = std::system(shell.c_str());
    if (rc != 0)
        throw ExternalToolError("external compressor failed (exit " + std::to_string(rc) +
                                "): " + command_);

    std::error_code ec;
    const auto size = fs::file_size(tmp.out, ec);
    if (ec || size == 0)
        throw ExternalToolError("external compressor produced no output: " + command_);
    return static_cast<std::size_t>(size);
}

std::string canonical_concat(std::string_view x, std::string_view y) {
    if (y.size() < x.size() || (y.size() == x.size() && y < x)) std::swap(x, y);
    std::string r;
    r.reserve(x.size() + y.size());
    r.append(x).append(y);
    return r;
}

std::size_t compress_len(const Compressor& c, std::string_view x) {
    return c.compressed_size(x);
}

std::size_t compress_len_joint(const Compressor& c, std::string_view x, std::string_view y) {
    return c.compressed_size(canonical_concat(x, y));
}

NormalityReport check_normality(const Compressor& c,
                                const std::vector<std::pair<std::string, std::string>>& samples) {
    if (samples.empty()) throw ValidationError("check_normality: empty sample list");
    NormalityReport rep;
    rep.sample_count = samples.size();
    for (const auto& [x, y] : samples) {
        const std::size_t zx = c.compressed_size(x);
        const std::size_t zxx = c.compressed_size(std::string(x) + x);
        const std::size_t zxy = c.compressed_size(std::string(x) + y);
        const std::size_t zyx = c.compressed_size(std::string(y) + x);
        const std::size_t idem = zxx >= zx ? zxx - zx : zx - zxx;
        rep.idempotency_gap = std::max(rep.idempotency_gap, idem);
        if (zxy < zx) ++rep.monotonicity_violations;
        const std::size_t sym = zxy >= zyx ? zxy - zyx : zyx - zxy;
        rep.symmetry_gap = std::max(rep.symmetry_gap, sym);
    }
    return rep;
}

} // namespace nid
