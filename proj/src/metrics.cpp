#include "figrl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace figrl {

namespace {

void check_assignment(std::size_t n, const Clustering& c, const char* who) {
    if (c.assignment.size() != n)
        throw ValidationError(std::string(who) + ": assignment covers " +
                              std::to_string(c.assignment.size()) + " nodes, graph has " +
                              std::to_string(n));
    if (c.k == 0) throw ValidationError(std::string(who) + ": k must be positive");
    for (const std::uint32_t a : c.assignment)
        if (a >= c.k) throw ValidationError(std::string(who) + ": label out of range");
}

} // namespace

ModularityResult modularity(const Graph& g, const Clustering& c) {
    check_assignment(g.n(), c, "modularity");
    const double tw = g.total_weight(); // 2m in the unweighted case

    std::vector<double> cluster_deg(c.k, 0.0), cluster_in(c.k, 0.0);
    std::vector<std::size_t> cluster_size(c.k, 0);
    std::vector<double> intra(g.n(), 0.0);
    for (NodeId v = 0; v < g.n(); ++v) {
        const std::uint32_t cv = c.assignment[v];
        ++cluster_size[cv];
        const auto cols = g.neighbors(v);
        const auto ws = g.edge_weights(v);
        for (std::size_t t = 0; t < cols.size(); ++t) {
            cluster_deg[cv] += ws[t];
            if (c.assignment[cols[t]] == cv) {
                cluster_in[cv] += ws[t];
                intra[v] += ws[t];
            }
        }
    }

    ModularityResult res;
    for (std::uint32_t cc = 0; cc < c.k; ++cc) {
        const double frac = cluster_deg[cc] / tw;
        res.raw += cluster_in[cc] / tw - frac * frac;
    }
    const DegreeVector deg = degree_vector(g);
    for (NodeId v = 0; v < g.n(); ++v) {
        if (intra[v] == 0.0 && cluster_size[c.assignment[v]] > 1) {
            res.penalty += 1.0 / (tw * deg[v]);
            ++res.penalized_nodes;
        }
    }
    return res;
}

PermanenceResult permanence(const Graph& g, const Clustering& c) {
    check_assignment(g.n(), c, "permanence");
    bool weighted = false;
    for (const double w : g.edge_weight_values())
        if (w != 1.0) {
            weighted = true;
            break;
        }
    if (weighted) warn("permanence: edge weights ignored (unweighted degrees used)");

    PermanenceResult res;
    res.per_node.resize(g.n());
    std::vector<std::size_t> per_cluster(c.k, 0);
    std::vector<NodeId> internal;
    for (NodeId v = 0; v < g.n(); ++v) {
        const std::uint32_t cv = c.assignment[v];
        const auto cols = g.neighbors(v);
        const double degree = static_cast<double>(cols.size());

        std::fill(per_cluster.begin(), per_cluster.end(), 0);
        internal.clear();
        for (const NodeId w : cols) {
            ++per_cluster[c.assignment[w]];
            if (c.assignment[w] == cv) internal.push_back(w);
        }
        const double i_cnt = static_cast<double>(per_cluster[cv]);
        std::size_t e_max = 0;
        for (std::uint32_t cc = 0; cc < c.k; ++cc)
            if (cc != cv) e_max = std::max(e_max, per_cluster[cc]);

        double c_in = 1.0; // fewer than two internal neighbors
        if (internal.size() >= 2) {
            std::size_t links = 0;
            for (std::size_t a = 0; a < internal.size(); ++a)
                for (std::size_t b = a + 1; b < internal.size(); ++b)
                    if (g.has_edge(internal[a], internal[b])) ++links;
            const double t = static_cast<double>(internal.size());
            c_in = 2.0 * static_cast<double>(links) / (t * (t - 1.0));
        }

        const double perm =
            i_cnt / (static_cast<double>(std::max<std::size_t>(e_max, 1)) * degree) -
            (1.0 - c_in);
        res.per_node[v] = perm;
        res.sum += perm;
    }
    res.mean = res.sum / static_cast<double>(g.n());
    return res;
}

std::vector<double> rds(const RowMatrix& points, const Clustering& c) {
    const std::size_t n = static_cast<std::size_t>(points.rows());
    if (c.assignment.size() != n) throw ValidationError("rds: assignment size mismatch");
    if (c.k < 2) throw ValidationError("rds: needs at least 2 clusters");
    for (const std::uint32_t a : c.assignment)
        if (a >= c.k) throw ValidationError("rds: label out of range");

    RowMatrix centroids = RowMatrix::Zero(c.k, points.cols());
    std::vector<std::size_t> size(c.k, 0);
    for (std::size_t i = 0; i < n; ++i) {
        centroids.row(c.assignment[i]) += points.row(i);
        ++size[c.assignment[i]];
    }
    for (std::uint32_t cc = 0; cc < c.k; ++cc) {
        if (size[cc] == 0) throw ValidationError("rds: cluster " + std::to_string(cc) + " is empty");
        centroids.row(cc) /= static_cast<double>(size[cc]);
    }

    // radius = summed member distance, floored to keep singletons finite
    std::vector<double> radius(c.k, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        radius[c.assignment[i]] += (points.row(i) - centroids.row(c.assignment[i])).norm();
    for (double& r : radius) r = std::max(r, std::numeric_limits<double>::epsilon());

    std::vector<double> scores(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t cv = c.assignment[i];
        const double own = (points.row(i) - centroids.row(cv)).norm() / radius[cv];
        if (own == 0.0) continue; // sits on its centroid: no deviation
        double best = std::numeric_limits<double>::infinity();
        for (std::uint32_t cc = 0; cc < c.k; ++cc) {
            if (cc == cv) continue;
            best = std::min(best, (points.row(i) - centroids.row(cc)).norm() / radius[cc]);
        }
        scores[i] = best == 0.0 ? std::numeric_limits<double>::infinity() : own / best;
    }
    return scores;
}

std::vector<std::size_t> rank_descending(const std::vector<double>& scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
}

} // namespace figrl
