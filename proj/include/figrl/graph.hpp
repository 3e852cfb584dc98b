#pragma once

#include "figrl/common.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace figrl {

// Immutable undirected weighted graph in CSR form.
//
// Node identifiers are arbitrary strings interned in first-seen order; the
// internal index space is 0..n-1. Adjacency is stored symmetrically (both
// (i,j) and (j,i)) with neighbor lists sorted by index and parallel edges
// merged by summing weights. Self-loops and isolated nodes are rejected.
class Graph {
  public:
    // Text edge list: one "u v" or "u v w" per line, whitespace separated.
    // Lines whose first non-blank character is '#' are comments; blank lines
    // are skipped; CRLF endings are tolerated. Omitted weights default to 1.
    static Graph load_edge_list(std::istream& in);
    static Graph load_edge_list_file(const std::string& path);

    // Programmatic construction from internal-index triples. `n` fixes the
    // node count; ids default to the decimal form of each index.
    static Graph from_edges(std::size_t n,
                            std::span<const std::tuple<NodeId, NodeId, double>> edges,
                            std::vector<std::string> ids = {});

    std::size_t n() const { return row_offsets_.size() - 1; }
    std::size_t m() const { return m_; }
    // Sum of W over all ordered pairs, i.e. twice the sum of edge weights.
    double total_weight() const { return total_weight_; }

    std::span<const NodeId> neighbors(NodeId i) const {
        return {col_indices_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
    }
    std::span<const double> edge_weights(NodeId i) const {
        return {weights_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
    }
    std::size_t degree_count(NodeId i) const { return row_offsets_[i + 1] - row_offsets_[i]; }
    // 0 when the edge is absent.
    double weight_between(NodeId i, NodeId j) const;
    bool has_edge(NodeId i, NodeId j) const { return weight_between(i, j) != 0.0; }

    const std::string& id_of(NodeId i) const { return node_ids_[i]; }
    std::optional<NodeId> index_of(std::string_view id) const;
    const std::vector<std::string>& node_ids() const { return node_ids_; }

    const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
    const std::vector<NodeId>& col_indices() const { return col_indices_; }
    const std::vector<double>& edge_weight_values() const { return weights_; }

    // FNV-1a over (n, m, CSR arrays, weight bit patterns); identifies the
    // graph a sketch or model was derived from.
    std::uint64_t checksum() const;

    // Canonical "u v w" lines, each undirected edge once (i < j order).
    void save_edge_list(std::ostream& out) const;

  private:
    Graph() = default;
    static Graph build(std::vector<std::string> ids,
                       std::vector<std::tuple<NodeId, NodeId, double>> directed);

    std::vector<std::string> node_ids_;
    std::unordered_map<std::string, NodeId> id_index_;
    std::vector<std::size_t> row_offsets_;
    std::vector<NodeId> col_indices_;
    std::vector<double> weights_;
    std::size_t m_ = 0;
    double total_weight_ = 0.0;
};

using DegreeVector = std::vector<double>;

// Weighted degrees D_ii = sum_j W_ij; strictly positive for every node.
DegreeVector degree_vector(const Graph& g);

// Sparse row i of the normalized walk matrix D^{-1/2} W D^{-1/2}:
// (j, W_ij / sqrt(D_ii * D_jj)) in ascending-j order.
std::vector<std::pair<NodeId, double>> walk_matrix_row(const Graph& g, const DegreeVector& deg,
                                                       NodeId i);

// Ncut of a 2-way partition: cut(A,B)/assoc(A,V) + cut(A,B)/assoc(B,V).
// Both sides must be nonempty, disjoint, and cover all nodes.
double normalized_cut(const Graph& g, std::span<const NodeId> part_a,
                      std::span<const NodeId> part_b);

struct SubgraphResult {
    Graph graph;                            // induced on the surviving nodes
    std::vector<NodeId> kept;               // original index of each subgraph row
    std::vector<NodeId> dropped_isolated;   // keep-set nodes that lost every edge
};

// Induced subgraph on `keep` (original indices, no duplicates). Nodes left
// without any within-set edge are dropped and reported.
SubgraphResult induced_subgraph(const Graph& g, std::span<const NodeId> keep);

} // namespace figrl
