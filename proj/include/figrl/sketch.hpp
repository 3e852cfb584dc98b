#pragma once

#include "figrl/common.hpp"
#include "figrl/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace figrl {

struct ApproxParams {
    double epsilon = 0.1;
    int k = 2;

    void validate() const; // requires 0 < epsilon < 1 and k >= 1
};

// A d×n Gaussian projection matrix that is never materialized: column j is a
// pure function of (seed, j), regenerated on demand (also for fold-in of
// nodes that arrive later).
struct ProjectionSpec {
    std::uint64_t seed = 0;
    std::size_t d = 0;
    std::size_t n = 0;
};

// d = ceil(max{4 ln(n) / eps^2, k / eps^2}).
std::size_t sketch_size(std::size_t n, const ApproxParams& p);

// Writes column j (d i.i.d. N(0,1) values) of the projection matrix.
void projection_column(const ProjectionSpec& spec, std::size_t j, std::span<double> out);
std::vector<double> projection_column(const ProjectionSpec& spec, std::size_t j);

// Rows are sketched node vectors: m = (1/sqrt(d)) * L * R^T with
// L = D^{-1/2} W D^{-1/2} and R the projection of `spec`.
struct Sketch {
    RowMatrix m; // n×d
    ProjectionSpec spec;
    std::uint64_t source_checksum = 0;

    std::size_t n() const { return static_cast<std::size_t>(m.rows()); }
    std::size_t d() const { return static_cast<std::size_t>(m.cols()); }
};

Sketch build_sketch(const Graph& g, const DegreeVector& deg, const ProjectionSpec& spec);

// Exact-spectrum diagnostics on the dense normalized walk matrix. Builds the
// full n×n matrix and its eigendecomposition; intended for n up to a few
// thousand.
class WalkMatrixOracle {
  public:
    explicit WalkMatrixOracle(const Graph& g);

    const Eigen::MatrixXd& matrix() const { return l_; }
    // ||L - L_k||_F^2 for the optimal rank-k approximation.
    double rank_residual(int k) const;
    // (||L - P L||_F^2 - rank_residual(k)) / rank_residual(k) for the
    // projector P = u u^T onto an orthonormal n×k basis u.
    double relative_cost(const Eigen::MatrixXd& u_k) const;
    // ||L - P L||_F^2 itself.
    double projection_cost(const Eigen::MatrixXd& u_k) const;
    Eigen::MatrixXd top_left_singular_vectors(int k) const;
    double singular_value(int i) const { return singular_values_[i]; }

  private:
    Eigen::MatrixXd l_;
    Eigen::VectorXd singular_values_; // descending
    Eigen::MatrixXd vectors_;         // eigenvectors aligned with singular_values_
    double frob_sq_ = 0.0;
};

// Convenience wrapper: oracle built on the fly.
double relative_projection_cost(const Graph& g, const Eigen::MatrixXd& u_k);

} // namespace figrl
