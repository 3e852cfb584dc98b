#pragma once

#include "figrl/common.hpp"

#include <cstdint>
#include <vector>

namespace figrl {

struct Clustering {
    std::vector<std::uint32_t> assignment; // point index -> cluster in [0, k)
    std::uint32_t k = 0;
};

// Lloyd's algorithm with k-means++ seeding. At most 300 iterations; stops
// when the assignment is stable. Emptied clusters are repaired by reseeding
// the point farthest from its own centroid (ties: lowest index; sole members
// are not eligible). The objective is checked to be non-increasing every
// iteration and a NumericalError thrown if it ever rises.
Clustering kmeans(const RowMatrix& points, std::uint32_t k, std::uint64_t seed);

// Sum of squared distances to assigned centroids (centroids recomputed from
// the assignment).
double kmeans_objective(const RowMatrix& points, const Clustering& c);

// Ward agglomerative clustering via Lance-Williams updates, merging down to
// k clusters. Ties are broken toward the lexicographically smallest pair of
// cluster representatives (a representative is the smallest member index).
// Quadratic memory: meant for a few thousand points.
Clustering agglomerative(const RowMatrix& points, std::uint32_t k);

// Rows scaled to unit length (zero rows left alone). Degree scaling makes
// raw embedding rows poor k-means input — low-degree nodes blow up into
// outliers — so clustering runs on the direction of each row instead.
RowMatrix row_normalized(RowMatrix points);

} // namespace figrl
