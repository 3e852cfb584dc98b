#include "figrl/foldin.hpp"

#include "figrl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace figrl {

UnseenNode make_unseen_node(const EmbeddingModel& model, std::string id,
                            std::span<const std::pair<std::string, double>> links) {
    if (model.node_index(id))
        throw ValidationError("unseen node '" + id + "' is already in the model");
    std::map<NodeId, double> merged;
    for (const auto& [target, w] : links) {
        if (!std::isfinite(w) || w <= 0.0)
            throw ValidationError("unseen node '" + id + "': weight to '" + target +
                                  "' must be finite and positive");
        const auto idx = model.node_index(target);
        if (!idx)
            throw ValidationError("unseen node '" + id + "': target '" + target +
                                  "' is not a seen node");
        merged[*idx] += w;
    }
    if (merged.empty())
        throw ValidationError("unseen node '" + id + "' has no links to seen nodes");
    UnseenNode node;
    node.id = std::move(id);
    node.links.assign(merged.begin(), merged.end());
    return node;
}

Eigen::VectorXd fold_in(const EmbeddingModel& model, const UnseenNode& node) {
    if (node.links.empty())
        throw ValidationError("fold_in: unseen node '" + node.id + "' has no links");
    const std::size_t d = model.spec.d;
    const int k = model.factors.k();

    double djj = 0.0;
    for (const auto& [target, w] : node.links) {
        if (target >= model.n()) throw ValidationError("fold_in: link target out of range");
        if (!(w > 0.0)) throw ValidationError("fold_in: link weights must be positive");
        djj += w;
    }

    // b = (1/sqrt(d)) * R * l_j, accumulated column by column so the
    // projection matrix is never materialized.
    std::vector<double> b(d, 0.0), col(d);
    for (const auto& [target, w] : node.links) {
        const double l = w / std::sqrt(djj * model.degrees[target]);
        rng::gaussian_fill(model.spec.seed, target, col.data(), d);
        for (std::size_t q = 0; q < d; ++q) b[q] += l * col[q];
    }
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t q = 0; q < d; ++q) b[q] *= inv_sqrt_d;

    // bhat = b^T v sigma^{-1}, then scale to embedding space by 1/sqrt(D_jj).
    Eigen::VectorXd out = Eigen::VectorXd::Zero(k);
    for (std::size_t t = 0; t < d; ++t) {
        const double bt = b[t];
        for (int c = 0; c < k; ++c) out[c] += bt * model.factors.v(t, c);
    }
    bool warned = false;
    for (int c = 0; c < k; ++c) {
        if (model.factors.sigma[c] > 0.0) {
            out[c] /= model.factors.sigma[c];
        } else {
            out[c] = 0.0;
            if (!warned) {
                warn("fold_in: zero singular value; the affected coordinates are zeroed");
                warned = true;
            }
        }
    }
    return out / std::sqrt(djj);
}

ExtendResult extend(const EmbeddingModel& model, std::span<const RawUnseenNode> nodes) {
    const int k = model.k();
    std::vector<UnseenNode> accepted;
    std::set<std::string> batch_ids;
    ExtendResult res;
    for (const auto& raw : nodes) {
        if (model.node_index(raw.id))
            throw ValidationError("extend: node '" + raw.id + "' is already in the model");
        if (!batch_ids.insert(raw.id).second)
            throw ValidationError("extend: duplicate unseen node '" + raw.id + "'");
        std::map<NodeId, double> merged;
        for (const auto& [target, w] : raw.links) {
            if (!std::isfinite(w) || w <= 0.0)
                throw ValidationError("extend: node '" + raw.id + "': weight to '" + target +
                                      "' must be finite and positive");
            const auto idx = model.node_index(target);
            if (!idx) {
                ++res.dropped_links; // other unseen nodes or unknown ids
                continue;
            }
            merged[*idx] += w;
        }
        if (merged.empty()) {
            res.skipped.push_back(raw.id);
            continue;
        }
        UnseenNode node;
        node.id = raw.id;
        node.links.assign(merged.begin(), merged.end());
        accepted.push_back(std::move(node));
    }

    res.y.resize(model.n() + accepted.size(), k);
    res.y.topRows(model.n()) = model.y;
    res.ids = model.node_ids;
    res.ids.reserve(model.n() + accepted.size());

#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(accepted.size()); ++i)
        res.y.row(model.n() + i) = fold_in(model, accepted[i]);

    for (const auto& node : accepted) res.ids.push_back(node.id);
    return res;
}

} // namespace figrl
