#pragma once

#include "nid/compressor.hpp"
#include "nid/distance_matrix.hpp"

#include <string>
#include <vector>

namespace nid {

struct DataObject {
    std::string label; // unique within a corpus, no tab/newline
    std::string bytes;
};

// Normalized compression distance:
//   (Z(xy) - min(Z(x), Z(y))) / max(Z(x), Z(y))
// Two empty objects give 0 by convention.
double ncd(const DataObject& x, const DataObject& y, const Compressor& c);

// Full pairwise matrix, diagonal included (diagonal values expose
// compressor quality and are never forced to 0). Unique entries are
// evaluated concurrently; the result is independent of scheduling.
DistanceMatrix ncd_matrix(const std::vector<DataObject>& corpus, const Compressor& c);

} // namespace nid
