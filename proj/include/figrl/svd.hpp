#pragma once

#include "figrl/common.hpp"
#include "figrl/graph.hpp"
#include "figrl/sketch.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace figrl {

struct SvdFactors {
    RowMatrix u;           // n×k, orthonormal columns
    Eigen::VectorXd sigma; // descending; an exact 0 marks a dropped deficient column
    RowMatrix v;           // d×k, orthonormal columns

    int k() const { return static_cast<int>(sigma.size()); }
};

// Rank-k truncated SVD of a dense matrix via the Gram matrix of its thinner
// side (n×n or d×d eigendecomposition, whichever is smaller).
//
// Deterministic sign convention: the largest-magnitude entry of each u column
// is positive (ties: lowest row index), with v flipped to match. Singular
// values sigma_i <= 1e-12 * sigma_1 are treated as rank deficiency: the
// affected columns of u and v are zeroed, sigma_i set to exact 0, and a
// warning emitted.
SvdFactors thin_svd(const RowMatrix& m, int k);
SvdFactors thin_svd(const Sketch& s, int k);

struct EmbeddingModel {
    RowMatrix y; // n×k; row i is u row i scaled by 1/sqrt(degrees[i])
    SvdFactors factors;
    ProjectionSpec spec;
    DegreeVector degrees;
    std::vector<std::string> node_ids;
    ApproxParams params;
    std::uint64_t source_checksum = 0;

    std::size_t n() const { return static_cast<std::size_t>(y.rows()); }
    int k() const { return static_cast<int>(y.cols()); }

    std::optional<NodeId> node_index(std::string_view id) const;
    // Must be called after node_ids changes (embed() and the loaders do).
    void rebuild_index();

  private:
    std::unordered_map<std::string, NodeId> index_;
};

// Full pipeline: sketch the normalized walk matrix, factorize, scale rows by
// D^{-1/2}. `d_override` replaces the sketch-size rule when set (diagnostic
// sweeps); it must still admit rank k.
EmbeddingModel embed(const Graph& g, const ApproxParams& p, std::uint64_t seed,
                     std::optional<std::size_t> d_override = std::nullopt);

} // namespace figrl
