#include "figrl/sketch.hpp"

#include "figrl/kernels.hpp"
#include "figrl/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace figrl {

void ApproxParams::validate() const {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw ValidationError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
    if (k < 1) throw ValidationError("k must be at least 1, got " + std::to_string(k));
}

std::size_t sketch_size(std::size_t n, const ApproxParams& p) {
    p.validate();
    if (n < 2) throw ValidationError("sketch_size: need at least 2 nodes");
    const double eps2 = p.epsilon * p.epsilon;
    const double bound = std::max(4.0 * std::log(static_cast<double>(n)) / eps2,
                                  static_cast<double>(p.k) / eps2);
    return static_cast<std::size_t>(std::ceil(bound));
}

void projection_column(const ProjectionSpec& spec, std::size_t j, std::span<double> out) {
    if (j >= spec.n)
        throw ValidationError("projection_column: column " + std::to_string(j) +
                              " out of range (n=" + std::to_string(spec.n) + ")");
    if (out.size() != spec.d) throw ValidationError("projection_column: output size != d");
    rng::gaussian_fill(spec.seed, j, out.data(), spec.d);
}

std::vector<double> projection_column(const ProjectionSpec& spec, std::size_t j) {
    std::vector<double> out(spec.d);
    projection_column(spec, j, out);
    return out;
}

Sketch build_sketch(const Graph& g, const DegreeVector& deg, const ProjectionSpec& spec) {
    if (spec.n != g.n()) throw ValidationError("build_sketch: spec.n != graph size");
    if (spec.d == 0) throw ValidationError("build_sketch: d must be positive");
    if (deg.size() != g.n()) throw ValidationError("build_sketch: degree vector size mismatch");
    Sketch s;
    s.m.resize(g.n(), spec.d);
    s.spec = spec;
    s.source_checksum = g.checksum();
    kernels::sketch_rows(g, deg, spec, s.m.data());
    return s;
}

WalkMatrixOracle::WalkMatrixOracle(const Graph& g) {
    const std::size_t n = g.n();
    const DegreeVector deg = degree_vector(g);
    l_.setZero(n, n);
    for (NodeId i = 0; i < n; ++i)
        for (const auto& [j, v] : walk_matrix_row(g, deg, i)) l_(i, j) = v;
    frob_sq_ = l_.squaredNorm();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l_);
    if (es.info() != Eigen::Success)
        throw NumericalError("WalkMatrixOracle: eigendecomposition failed");
    // For a symmetric matrix the singular values are |eigenvalues| and the
    // left singular vectors are the eigenvectors.
    std::vector<int> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
    const Eigen::VectorXd& ev = es.eigenvalues();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(ev[a]) > std::abs(ev[b]);
    });
    singular_values_.resize(n);
    vectors_.resize(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        singular_values_[i] = std::abs(ev[order[i]]);
        vectors_.col(i) = es.eigenvectors().col(order[i]);
    }
}

double WalkMatrixOracle::rank_residual(int k) const {
    if (k < 1 || k > singular_values_.size())
        throw ValidationError("rank_residual: k out of range");
    double head = 0.0;
    for (int i = 0; i < k; ++i) head += singular_values_[i] * singular_values_[i];
    return std::max(0.0, frob_sq_ - head);
}

double WalkMatrixOracle::projection_cost(const Eigen::MatrixXd& u_k) const {
    if (u_k.rows() != l_.rows()) throw ValidationError("projection_cost: basis has wrong height");
    const Eigen::MatrixXd gram = u_k.transpose() * u_k;
    const double ortho = (gram - Eigen::MatrixXd::Identity(u_k.cols(), u_k.cols())).norm();
    if (ortho > 1e-8)
        throw ValidationError("projection_cost: basis is not orthonormal (deviation " +
                              std::to_string(ortho) + ")");
    // ||L - u u^T L||_F^2 = ||L||_F^2 - ||u^T L||_F^2 for orthonormal u.
    return std::max(0.0, frob_sq_ - (u_k.transpose() * l_).squaredNorm());
}

double WalkMatrixOracle::relative_cost(const Eigen::MatrixXd& u_k) const {
    const int k = static_cast<int>(u_k.cols());
    const double resid = rank_residual(k);
    if (resid <= 0.0)
        throw ValidationError("relative_cost: rank-" + std::to_string(k) +
                              " approximation is exact; relative cost undefined");
    return (projection_cost(u_k) - resid) / resid;
}

Eigen::MatrixXd WalkMatrixOracle::top_left_singular_vectors(int k) const {
    if (k < 1 || k > vectors_.cols())
        throw ValidationError("top_left_singular_vectors: k out of range");
    return vectors_.leftCols(k);
}

double relative_projection_cost(const Graph& g, const Eigen::MatrixXd& u_k) {
    return WalkMatrixOracle(g).relative_cost(u_k);
}

} // namespace figrl
