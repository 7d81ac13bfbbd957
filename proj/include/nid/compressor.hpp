#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nid {

// Z in the distance formulas: anything that maps bytes to a compressed
// length. Implementations must be deterministic and safe to call from
// several threads at once.
class Compressor {
public:
    virtual ~Compressor() = default;
    virtual std::string name() const = 0;
    virtual std::size_t compressed_size(std::string_view data) const = 0;
};

// Deterministic LZ77: 64 KiB sliding window, greedy longest match,
// minimum match length 4, (literal-run | copy) tokens with varint
// framing. Parameters are fixed so lengths reproduce across platforms.
class BuiltinLzCompressor final : public Compressor {
public:
    static constexpr std::size_t kWindowSize = 64 * 1024;
    static constexpr std::size_t kMinMatch = 4;

    std::string name() const override { return "builtin-lz"; }
    std::size_t compressed_size(std::string_view data) const override;
};

// Run-length toy compressor used as a hand-checkable oracle:
// Z = number of (char, run) pairs * 2.
class RunLengthCompressor final : public Compressor {
public:
    std::string name() const override { return "rle"; }
    std::size_t compressed_size(std::string_view data) const override;
};

// Adapter for external compressor programs. The command gets the input
// on stdin and must write the compressed stream to stdout; Z is the
// output byte count. One process per call.
class ExternalCompressor final : public Compressor {
public:
    explicit ExternalCompressor(std::string command) : command_(std::move(command)) {}

    std::string name() const override { return "external:" + command_; }
    std::size_t compressed_size(std::string_view data) const override;

private:
    std::string command_;
};

// Orders the two strings by (length, then lexicographic) and concatenates
// with no separator, so joint lengths are exactly symmetric.
std::string canonical_concat(std::string_view x, std::string_view y);

std::size_t compress_len(const Compressor& c, std::string_view x);
std::size_t compress_len_joint(const Compressor& c, std::string_view x, std::string_view y);

// Empirical check of the normal-compressor conditions. Violations are
// reported, never thrown.
struct NormalityReport {
    std::size_t idempotency_gap = 0;      // max |Z(xx) - Z(x)| over samples
    std::size_t monotonicity_violations = 0; // samples with Z(xy) < Z(x)
    std::size_t symmetry_gap = 0;         // max |Z(xy) - Z(yx)|
    std::size_t sample_count = 0;
};

NormalityReport check_normality(const Compressor& c,
                                const std::vector<std::pair<std::string, std::string>>& samples);

} // namespace nid
