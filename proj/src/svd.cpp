#include "figrl/svd.hpp"

#include "figrl/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace figrl {

namespace {

constexpr double kRankTol = 1e-12;  // sigma_i <= tol * sigma_1 is rank deficiency
constexpr double kOrthoTol = 1e-7;  // below this conditioning, re-orthonormalize

// Largest-magnitude entry of each u column made positive (ties: lowest row),
// v flipped alongside.
void fix_signs(RowMatrix& u, RowMatrix& v) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
        Eigen::Index arg = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < u.rows(); ++r) {
            const double a = std::abs(u(r, c));
            if (a > best) {
                best = a;
                arg = r;
            }
        }
        if (u(arg, c) < 0.0) {
            u.col(c) = -u.col(c);
            v.col(c) = -v.col(c);
        }
    }
}

// Orthonormalize the live (non-zeroed) columns in place, keeping each column
// close to its input direction (QR with the R diagonal forced positive).
void reorthonormalize(RowMatrix& f, const std::vector<int>& live) {
    if (live.empty()) return;
    Eigen::MatrixXd sub(f.rows(), live.size());
    for (std::size_t c = 0; c < live.size(); ++c) sub.col(c) = f.col(live[c]);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(sub);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(f.rows(), live.size());
    const Eigen::MatrixXd r = qr.matrixQR().topRows(live.size()).triangularView<Eigen::Upper>();
    for (std::size_t c = 0; c < live.size(); ++c) {
        if (r(c, c) < 0.0) q.col(c) = -q.col(c);
        f.col(live[c]) = q.col(c);
    }
}

// Eigendecomposition of a PSD Gram matrix, top-k pairs in descending order.
void top_eigen(const Eigen::MatrixXd& gram, int k, Eigen::VectorXd& values,
               Eigen::MatrixXd& vectors) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    if (es.info() != Eigen::Success)
        throw NumericalError("thin_svd: eigendecomposition did not converge");
    const Eigen::Index n = gram.rows();
    values.resize(k);
    vectors.resize(n, k);
    for (int i = 0; i < k; ++i) {
        values[i] = std::max(0.0, es.eigenvalues()[n - 1 - i]);
        vectors.col(i) = es.eigenvectors().col(n - 1 - i);
    }
}

} // namespace

SvdFactors thin_svd(const RowMatrix& m, int k) {
    const std::size_t n = static_cast<std::size_t>(m.rows());
    const std::size_t d = static_cast<std::size_t>(m.cols());
    if (n == 0 || d == 0) throw ValidationError("thin_svd: empty matrix");
    if (k < 1 || static_cast<std::size_t>(k) > std::min(n, d))
        throw ValidationError("thin_svd: k must lie in [1, min(n, d)], got " +
                              std::to_string(k));

    SvdFactors f;
    f.u.resize(n, k);
    f.v.resize(d, k);
    f.sigma.resize(k);

    Eigen::VectorXd lambda;
    Eigen::MatrixXd primary;
    const bool n_side = n <= d; // eigendecompose the smaller Gram matrix
    if (n_side) {
        Eigen::MatrixXd gram(n, n);
        kernels::gram_rows(m.data(), n, d, gram.data());
        top_eigen(gram, k, lambda, primary);
    } else {
        Eigen::MatrixXd gram(d, d);
        kernels::gram_cols(m.data(), n, d, gram.data());
        top_eigen(gram, k, lambda, primary);
    }

    for (int i = 0; i < k; ++i) f.sigma[i] = std::sqrt(lambda[i]);
    const double sigma1 = f.sigma[0];

    std::vector<int> live;
    std::vector<double> inv_sigma(k, 0.0);
    int dead = 0;
    for (int i = 0; i < k; ++i) {
        if (sigma1 == 0.0 || f.sigma[i] <= kRankTol * sigma1) {
            f.sigma[i] = 0.0;
            ++dead;
        } else {
            inv_sigma[i] = 1.0 / f.sigma[i];
            live.push_back(i);
        }
    }
    if (dead > 0)
        warn("thin_svd: " + std::to_string(dead) + " of " + std::to_string(k) +
             " singular values are numerically zero; the corresponding columns are zeroed");

    // primary factor columns; dead columns zeroed
    RowMatrix& prim = n_side ? f.u : f.v;
    RowMatrix& derived = n_side ? f.v : f.u;
    for (int i = 0; i < k; ++i) {
        if (f.sigma[i] > 0.0)
            prim.col(i) = primary.col(i);
        else
            prim.col(i).setZero();
    }

    // derived factor: M^T u / sigma (or M v / sigma), dead columns zeroed
    derived.setZero();
    if (!live.empty()) {
        if (n_side) {
            // v_c = M^T u_c * inv_sigma_c
            for (const int c : live)
                derived.col(c) = m.transpose() * prim.col(c) * inv_sigma[c];
        } else {
            RowMatrix tmp(n, k);
            kernels::project_scaled(m.data(), n, d, f.v.data(), inv_sigma.data(),
                                    static_cast<std::size_t>(k), tmp.data());
            for (const int c : live) derived.col(c) = tmp.col(c);
        }
    }

    // Heavily ill-conditioned spectra leave the derived factor visibly
    // non-orthonormal; restore it explicitly.
    const double sigma_min_live = live.empty() ? 0.0 : f.sigma[live.back()];
    if (!live.empty() && sigma_min_live < kOrthoTol * sigma1) reorthonormalize(derived, live);

    fix_signs(f.u, f.v);
    return f;
}

SvdFactors thin_svd(const Sketch& s, int k) { return thin_svd(s.m, k); }

std::optional<NodeId> EmbeddingModel::node_index(std::string_view id) const {
    const auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void EmbeddingModel::rebuild_index() {
    index_.clear();
    index_.reserve(node_ids.size());
    for (std::size_t i = 0; i < node_ids.size(); ++i)
        index_.emplace(node_ids[i], static_cast<NodeId>(i));
}

EmbeddingModel embed(const Graph& g, const ApproxParams& p, std::uint64_t seed,
                     std::optional<std::size_t> d_override) {
    p.validate();
    const std::size_t n = g.n();
    if (static_cast<std::size_t>(p.k) > n)
        throw ValidationError("embed: k exceeds the node count");
    const std::size_t d = d_override ? *d_override : sketch_size(n, p);
    if (d < static_cast<std::size_t>(p.k))
        throw ValidationError("embed: sketch size d=" + std::to_string(d) +
                              " cannot hold rank k=" + std::to_string(p.k));

    EmbeddingModel model;
    model.degrees = degree_vector(g);
    model.spec = ProjectionSpec{seed, d, n};
    model.params = p;
    model.node_ids = g.node_ids();
    model.source_checksum = g.checksum();

    const Sketch s = build_sketch(g, model.degrees, model.spec);
    model.factors = thin_svd(s, p.k);

    model.y.resize(n, p.k);
    for (std::size_t i = 0; i < n; ++i)
        model.y.row(i) = model.factors.u.row(i) / std::sqrt(model.degrees[i]);
    model.rebuild_index();
    return model;
}

} // namespace figrl
