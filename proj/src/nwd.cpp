#include "nid/nwd.hpp"
#include "nid/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace nid {

namespace {

void require_valid_frequency(std::uint64_t f, std::uint64_t n, const std::string& term) {
    if (f > 0 && f >= n)
        throw ValidationError("frequency provider invalid: N=" + std::to_string(n) +
                              " <= f(" + term + ")=" + std::to_string(f));
}

std::string normalize_term(const std::string& term) {
    auto toks = tokenize(term);
    std::string key;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (i) key += ' ';
        key += toks[i];
    }
    return key;
}

} // namespace

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (unsigned char ch : text) {
        if (std::isalnum(ch)) {
            cur += static_cast<char>(std::tolower(ch));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

NwdValue nwd(const std::string& x, const std::string& y, const FrequencyProvider& p) {
    const std::uint64_t fx = p.count(x);
    const std::uint64_t fy = p.count(y);
    const std::uint64_t n = p.normalizer();
    require_valid_frequency(fx, n, x);
    require_valid_frequency(fy, n, y);

    if (fx == 0 && fy == 0) return NwdValue::undefined();
    const std::uint64_t fxy = p.pair_count(x, y);
    if (fxy == 0) return NwdValue::infinite();

    const double lx = std::log2(static_cast<double>(fx));
    const double ly = std::log2(static_cast<double>(fy));
    const double lxy = std::log2(static_cast<double>(fxy));
    const double ln = std::log2(static_cast<double>(n));
    return NwdValue::finite((std::max(lx, ly) - lxy) / (ln - std::min(lx, ly)));
}

double code_length(const std::string& x, const FrequencyProvider& p) {
    const std::uint64_t f = p.count(x);
    if (f == 0) throw ValidationError("no code length: f(" + x + ") = 0");
    require_valid_frequency(f, p.normalizer(), x);
    return std::log2(static_cast<double>(p.normalizer())) - std::log2(static_cast<double>(f));
}

double pair_code_length(const std::string& x, const std::string& y, const FrequencyProvider& p) {
    const std::uint64_t f = p.pair_count(x, y);
    if (f == 0) throw ValidationError("no code length: f(" + x + ", " + y + ") = 0");
    return std::log2(static_cast<double>(p.normalizer())) - std::log2(static_cast<double>(f));
}

double nwd_from_codelengths(double gx, double gy, double gxy) {
    const double hi = std::max(gx, gy);
    if (hi == 0.0) return 0.0;
    return (gxy - std::min(gx, gy)) / hi;
}

DistanceMatrix nwd_matrix(const std::vector<std::string>& terms, const FrequencyProvider& p) {
    if (terms.size() < 2) throw ValidationError("nwd_matrix: need at least 2 terms");
    DistanceMatrix m;
    m.labels = terms;
    const auto n = static_cast<Eigen::Index>(terms.size());
    m.values.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            const auto v = nwd(terms[static_cast<std::size_t>(i)],
                               terms[static_cast<std::size_t>(j)], p);
            double cell = 0.0;
            switch (v.tag) {
            case NwdTag::Finite:
                cell = v.value;
                break;
            case NwdTag::Infinite:
                cell = std::numeric_limits<double>::infinity();
                break;
            case NwdTag::Undefined:
                throw ValidationError("nwd_matrix: NWD undefined for pair (" +
                                      terms[static_cast<std::size_t>(i)] + ", " +
                                      terms[static_cast<std::size_t>(j)] + ")");
            }
            m.values(i, j) = cell;
            m.values(j, i) = cell;
        }
    return m;
}

CorpusIndex CorpusIndex::build(const std::vector<std::pair<std::string, std::string>>& documents,
                               const std::vector<std::string>& extra_terms) {
    if (documents.empty()) throw ValidationError("build_frequency_index: empty document list");

    std::vector<std::vector<std::string>> phrases;
    for (const auto& t : extra_terms) {
        auto toks = tokenize(t);
        if (toks.size() > 1) phrases.push_back(std::move(toks));
    }

    CorpusIndex idx;
    idx.m_ = documents.size();
    for (const auto& [id, text] : documents) {
        (void)id;
        const auto toks = tokenize(text);
        std::set<std::string> present(toks.begin(), toks.end());
        for (const auto& ph : phrases) {
            bool found = false;
            for (std::size_t i = 0; !found && i + ph.size() <= toks.size(); ++i)
                found = std::equal(ph.begin(), ph.end(), toks.begin() + static_cast<long>(i));
            if (found) {
                std::string key;
                for (std::size_t k = 0; k < ph.size(); ++k) key += (k ? " " : "") + ph[k];
                present.insert(key);
            }
        }
        for (const auto& t : present) ++idx.unigrams_[t];
        for (auto a = present.begin(); a != present.end(); ++a)
            for (auto b = std::next(a); b != present.end(); ++b)
                ++idx.pairs_[{*a, *b}];
    }
    idx.n_ = idx.m_;
    idx.validate();
    return idx;
}

void CorpusIndex::validate() const {
    for (const auto& [term, f] : unigrams_)
        if (f >= n_)
            throw ValidationError("frequency index invalid: N=" + std::to_string(n_) +
                                  " <= f(" + term + ")=" + std::to_string(f) +
                                  " (raise N)");
}

std::uint64_t CorpusIndex::count(const std::string& term) const {
    const auto it = unigrams_.find(normalize_term(term));
    return it == unigrams_.end() ? 0 : it->second;
}

std::uint64_t CorpusIndex::pair_count(const std::string& a, const std::string& b) const {
    auto ka = normalize_term(a);
    auto kb = normalize_term(b);
    if (ka == kb) return count(a);
    if (kb < ka) std::swap(ka, kb);
    const auto it = pairs_.find({ka, kb});
    return it == pairs_.end() ? 0 : it->second;
}

void CorpusIndex::set_normalizer(std::uint64_t n) {
    n_ = n;
    validate();
}

std::vector<std::string> CorpusIndex::terms() const {
    std::vector<std::string> out;
    out.reserve(unigrams_.size());
    for (const auto& [t, f] : unigrams_) {
        (void)f;
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void CorpusIndex::save(std::ostream& os) const {
    os << "N\t" << n_ << "\n";
    os << "M\t" << m_ << "\n";
    for (const auto& t : terms()) os << "U\t" << t << "\t" << unigrams_.at(t) << "\n";
    for (const auto& [key, f] : pairs_)
        os << "P\t" << key.first << "\t" << key.second << "\t" << f << "\n";
}

CorpusIndex CorpusIndex::load(std::istream& is) {
    CorpusIndex idx;
    std::string line;
    bool have_n = false, have_m = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kind;
        std::getline(ls, kind, '\t');
        if (kind == "N") {
            ls >> idx.n_;
            have_n = true;
        } else if (kind == "M") {
            ls >> idx.m_;
            have_m = true;
        } else if (kind == "U") {
            std::string term, cnt;
            std::getline(ls, term, '\t');
            std::getline(ls, cnt, '\t');
            idx.unigrams_[term] = std::stoull(cnt);
        } else if (kind == "P") {
            std::string a, b, cnt;
            std::getline(ls, a, '\t');
            std::getline(ls, b, '\t');
            std::getline(ls, cnt, '\t');
            if (b < a) std::swap(a, b);
            idx.pairs_[{a, b}] = std::stoull(cnt);
        } else {
            throw ValidationError("frequency index: unknown record '" + kind + "'");
        }
    }
    if (!have_n || !have_m) throw ValidationError("frequency index: missing N or M line");
    idx.validate();
    return idx;
}

} // namespace nid
