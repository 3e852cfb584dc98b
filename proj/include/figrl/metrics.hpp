#pragma once

#include "figrl/clustering.hpp"
#include "figrl/common.hpp"
#include "figrl/graph.hpp"

#include <cstddef>
#include <vector>

namespace figrl {

struct ModularityResult {
    double raw = 0.0;     // plain Newman-Girvan value
    double penalty = 0.0; // sum of 1/(2m * D_vv) over penalized nodes
    std::size_t penalized_nodes = 0;

    double value() const { return raw - penalty; }
};

// Weighted modularity with a misfit penalty: a node with zero intra-cluster
// weight sitting in a cluster of size > 1 costs 1/(2m * D_vv).
ModularityResult modularity(const Graph& g, const Clustering& c);

struct PermanenceResult {
    double sum = 0.0;
    double mean = 0.0;
    std::vector<double> per_node;
};

// Permanence of each node: I/(max(E_max,1) * D) - (1 - C_in), with unweighted
// degrees (a warning is emitted for weighted graphs). I counts intra-cluster
// neighbors, E_max the largest neighbor count in any single other cluster,
// C_in the clustering coefficient among intra-cluster neighbors (1 when there
// are fewer than two).
PermanenceResult permanence(const Graph& g, const Clustering& c);

// Relative deviation score of each embedded point: the ratio of its
// radius-normalized distance to its own centroid over the smallest
// radius-normalized distance to any other centroid. A cluster radius is the
// summed distance of members to their centroid, floored at machine epsilon.
// Requires k >= 2.
std::vector<double> rds(const RowMatrix& points, const Clustering& c);

// Point indices sorted by descending score (ties: lowest index first).
std::vector<std::size_t> rank_descending(const std::vector<double>& scores);

} // namespace figrl
