#pragma once

#include "nid/distance_matrix.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace nid {

// Source of term frequencies for the web distance: f(x), unordered pair
// counts f(x,y), the normalizer N and the indexed-page count M.
// f(x,x) is defined as f(x).
class FrequencyProvider {
public:
    virtual ~FrequencyProvider() = default;
    virtual std::uint64_t count(const std::string& term) const = 0;
    virtual std::uint64_t pair_count(const std::string& a, const std::string& b) const = 0;
    virtual std::uint64_t normalizer() const = 0; // N
    virtual std::uint64_t page_count() const = 0; // M
};

enum class NwdTag { Finite, Infinite, Undefined };

// Outcome of a single NWD evaluation; exactly one of three
// cases applies to every input.
struct NwdValue {
    NwdTag tag = NwdTag::Undefined;
    double value = 0.0; // meaningful only when tag == Finite

    static NwdValue finite(double v) { return {NwdTag::Finite, v}; }
    static NwdValue infinite() { return {NwdTag::Infinite, 0.0}; }
    static NwdValue undefined() { return {NwdTag::Undefined, 0.0}; }
};

// NWD(x,y) = (max{log f(x), log f(y)} - log f(x,y)) / (log N - min{log f(x), log f(y)}).
// f(x)=f(y)=0 -> undefined; f(x,y)=0 otherwise -> infinite. Logs base 2;
// the finite value is base-invariant. Throws ValidationError when the
// provider reports N <= some used frequency.
NwdValue nwd(const std::string& x, const std::string& y, const FrequencyProvider& p);

// Code length of a term under the provider: G(x) = log2 N - log2 f(x).
// f(x)=0 has no code length and throws ValidationError.
double code_length(const std::string& x, const FrequencyProvider& p);
double pair_code_length(const std::string& x, const std::string& y, const FrequencyProvider& p);

// NWD on precomputed code lengths (the G-form of the formula). Used to
// cross-check the frequency form. max(gx,gy)=0 gives 0 by convention.
double nwd_from_codelengths(double gx, double gy, double gxy);

DistanceMatrix nwd_matrix(const std::vector<std::string>& terms, const FrequencyProvider& p);

// Offline provider built from a document corpus: f(term) = number of
// documents containing the term, f_pair likewise for co-occurrence,
// M = document count, N defaults to M. Multi-word terms are phrase
// queries (the document contains the exact token sequence).
class CorpusIndex final : public FrequencyProvider {
public:
    // extra_terms: additional (possibly multi-word) terms to count besides
    // the corpus unigrams.
    static CorpusIndex build(const std::vector<std::pair<std::string, std::string>>& documents,
                             const std::vector<std::string>& extra_terms = {});

    std::uint64_t count(const std::string& term) const override;
    std::uint64_t pair_count(const std::string& a, const std::string& b) const override;
    std::uint64_t normalizer() const override { return n_; }
    std::uint64_t page_count() const override { return m_; }

    void set_normalizer(std::uint64_t n);
    std::vector<std::string> terms() const;

    // TSV: `N<TAB>int`, `M<TAB>int`, then U/P records (pair keys stored
    // with termA <= termB). Unknown terms read back as count 0.
    void save(std::ostream& os) const;
    static CorpusIndex load(std::istream& is);

private:
    void validate() const; // N must exceed every f(x)

    std::uint64_t n_ = 0;
    std::uint64_t m_ = 0;
    std::unordered_map<std::string, std::uint64_t> unigrams_;
    std::map<std::pair<std::string, std::string>, std::uint64_t> pairs_;
};

// Lowercase, split on non-alphanumeric runs.
std::vector<std::string> tokenize(const std::string& text);

} // namespace nid
