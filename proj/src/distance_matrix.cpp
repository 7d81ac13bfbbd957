#include "nid/distance_matrix.hpp"
#include "nid/errors.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace nid {

void DistanceMatrix::validate(double tol) const {
    const auto n = static_cast<Eigen::Index>(labels.size());
    if (values.rows() != n || values.cols() != n)
        throw ValidationError("distance matrix shape does not match label count");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty() || l.find('\t') != std::string::npos || l.find('\n') != std::string::npos)
            throw ValidationError("invalid label: '" + l + "'");
        if (!seen.insert(l).second) throw ValidationError("duplicate label: '" + l + "'");
    }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < i; ++j) {
            const double a = values(i, j), b = values(j, i);
            if (std::isinf(a) != std::isinf(b) || (!std::isinf(a) && std::abs(a - b) > tol))
                throw ValidationError("matrix asymmetric at (" + labels[i] + ", " + labels[j] + ")");
        }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (std::isnan(values(i, j)) || values(i, j) < 0)
                throw ValidationError("matrix entry negative or NaN at (" + labels[i] + ", " +
                                      labels[j] + ")");
}

namespace {

std::string format_value(double v) {
    if (std::isinf(v)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find('\t', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

} // namespace

void write_matrix_tsv(std::ostream& os, const DistanceMatrix& m) {
    os << "labels";
    for (const auto& l : m.labels) os << '\t' << l;
    os << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        os << m.labels[i];
        for (std::size_t j = 0; j < m.size(); ++j)
            os << '\t' << format_value(m.values(static_cast<Eigen::Index>(i),
                                                static_cast<Eigen::Index>(j)));
        os << '\n';
    }
}

DistanceMatrix read_matrix_tsv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ValidationError("matrix TSV: empty input");
    auto header = split_tabs(line);
    if (header.size() < 2 || header[0] != "labels")
        throw ValidationError("matrix TSV: bad header line");

    DistanceMatrix m;
    m.labels.assign(header.begin() + 1, header.end());
    const auto n = static_cast<Eigen::Index>(m.labels.size());
    m.values.resize(n, n);

    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::getline(is, line))
            throw ValidationError("matrix TSV: truncated after " + std::to_string(i) + " rows");
        auto cells = split_tabs(line);
        if (cells.size() != m.labels.size() + 1 || cells[0] != m.labels[static_cast<std::size_t>(i)])
            throw ValidationError("matrix TSV: row " + std::to_string(i) + " malformed");
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& cell = cells[static_cast<std::size_t>(j) + 1];
            if (cell == "inf") {
                m.values(i, j) = std::numeric_limits<double>::infinity();
            } else {
                try {
                    std::size_t used = 0;
                    m.values(i, j) = std::stod(cell, &used);
                    if (used != cell.size()) throw std::invalid_argument(cell);
                } catch (const std::exception&) {
                    throw ValidationError("matrix TSV: bad value '" + cell + "'");
                }
            }
        }
    }
    return m;
}

} // namespace nid
