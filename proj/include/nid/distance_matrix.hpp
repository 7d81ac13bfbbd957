#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <vector>

namespace nid {

// Symmetric labeled distance matrix. Entries are non-negative reals;
// +inf marks the NWD infinite case.
struct DistanceMatrix {
    std::vector<std::string> labels;
    Eigen::MatrixXd values;

    std::size_t size() const { return labels.size(); }

    // Throws ValidationError when labels clash, the matrix is not square,
    // or symmetry is violated beyond tol.
    void validate(double tol = 1e-9) const;
};

// TSV layout: `labels<TAB>l1...<TAB>ln`, then one row per label with
// 6-decimal values; inf entries written as `inf`.
void write_matrix_tsv(std::ostream& os, const DistanceMatrix& m);
DistanceMatrix read_matrix_tsv(std::istream& is);

} // namespace nid
