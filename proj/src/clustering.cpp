#include "figrl/clustering.hpp"

#include "figrl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace figrl {

namespace {

double sq_dist(const RowMatrix& pts, std::size_t i, const Eigen::RowVectorXd& c) {
    return (pts.row(i) - c).squaredNorm();
}

// centroids: k×dim; returns index of nearest centroid, strict < keeps the
// lowest index on ties.
std::uint32_t nearest(const RowMatrix& pts, std::size_t i, const RowMatrix& centers,
                      double* dist_out = nullptr) {
    std::uint32_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < centers.rows(); ++c) {
        const double d2 = (pts.row(i) - centers.row(c)).squaredNorm();
        if (d2 < best_d) {
            best_d = d2;
            best = static_cast<std::uint32_t>(c);
        }
    }
    if (dist_out) *dist_out = best_d;
    return best;
}

RowMatrix seed_kmeanspp(const RowMatrix& pts, std::uint32_t k, rng::SplitMix64& gen) {
    const std::size_t n = static_cast<std::size_t>(pts.rows());
    RowMatrix centers(k, pts.cols());
    centers.row(0) = pts.row(static_cast<Eigen::Index>(gen.below(n)));
    std::vector<double> d2(n);
    for (std::uint32_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::uint32_t cc = 0; cc < c; ++cc)
                best = std::min(best, sq_dist(pts, i, centers.row(cc)));
            d2[i] = best;
            total += best;
        }
        std::size_t pick;
        if (total > 0.0) {
            const double r = gen.unit() * total;
            double acc = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc > r) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<std::size_t>(gen.below(n)); // all points coincide
        }
        centers.row(c) = pts.row(static_cast<Eigen::Index>(pick));
    }
    return centers;
}

} // namespace

Clustering kmeans(const RowMatrix& points, std::uint32_t k, std::uint64_t seed) {
    const std::size_t n = static_cast<std::size_t>(points.rows());
    if (k < 1) throw ValidationError("kmeans: k must be at least 1");
    if (k > n)
        throw ValidationError("kmeans: k=" + std::to_string(k) + " exceeds point count " +
                              std::to_string(n));

    rng::SplitMix64 gen(rng::mix(seed, 0x6B6D65616E73ull)); // "kmeans"
    RowMatrix centers = seed_kmeanspp(points, k, gen);

    Clustering c;
    c.k = k;
    c.assignment.assign(n, 0);
    std::vector<std::size_t> size(k, 0);
    double prev_obj = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < 300; ++iter) {
        // assignment step
        std::size_t changed = 0;
#pragma omp parallel for schedule(static) reduction(+ : changed)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            const std::uint32_t a = nearest(points, i, centers);
            if (a != c.assignment[i]) {
                c.assignment[i] = a;
                ++changed;
            }
        }
        if (changed == 0 && iter > 0) break;

        // update step
        centers.setZero();
        std::fill(size.begin(), size.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            centers.row(c.assignment[i]) += points.row(i);
            ++size[c.assignment[i]];
        }
        for (std::uint32_t cc = 0; cc < k; ++cc)
            if (size[cc] > 0) centers.row(cc) /= static_cast<double>(size[cc]);

        // empty-cluster repair: reseed with the point farthest from its own
        // centroid (ties: lowest index; sole members stay put)
        for (std::uint32_t cc = 0; cc < k; ++cc) {
            if (size[cc] > 0) continue;
            std::size_t far = n;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (size[c.assignment[i]] <= 1) continue;
                const double d2 = sq_dist(points, i, centers.row(c.assignment[i]));
                if (d2 > far_d) {
                    far_d = d2;
                    far = i;
                }
            }
            if (far == n) continue; // nothing movable
            --size[c.assignment[far]];
            c.assignment[far] = cc;
            size[cc] = 1;
            centers.row(cc) = points.row(far);
        }

        // the objective must never rise across iterations
        double obj = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            obj += sq_dist(points, i, centers.row(c.assignment[i]));
        if (obj > prev_obj * (1.0 + 1e-12) + 1e-12)
            throw NumericalError("kmeans: objective increased from " + std::to_string(prev_obj) +
                                 " to " + std::to_string(obj));
        prev_obj = obj;
    }
    return c;
}

double kmeans_objective(const RowMatrix& points, const Clustering& c) {
    const std::size_t n = static_cast<std::size_t>(points.rows());
    if (c.assignment.size() != n) throw ValidationError("kmeans_objective: size mismatch");
    RowMatrix centers = RowMatrix::Zero(c.k, points.cols());
    std::vector<std::size_t> size(c.k, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (c.assignment[i] >= c.k) throw ValidationError("kmeans_objective: bad label");
        centers.row(c.assignment[i]) += points.row(i);
        ++size[c.assignment[i]];
    }
    for (std::uint32_t cc = 0; cc < c.k; ++cc)
        if (size[cc] > 0) centers.row(cc) /= static_cast<double>(size[cc]);
    double obj = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        obj += sq_dist(points, i, centers.row(c.assignment[i]));
    return obj;
}

RowMatrix row_normalized(RowMatrix points) {
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        const double norm = points.row(i).norm();
        if (norm > 0.0) points.row(i) /= norm;
    }
    return points;
}

Clustering agglomerative(const RowMatrix& points, std::uint32_t k) {
    const std::size_t n = static_cast<std::size_t>(points.rows());
    if (k < 1) throw ValidationError("agglomerative: k must be at least 1");
    if (k > n)
        throw ValidationError("agglomerative: k=" + std::to_string(k) +
                              " exceeds point count " + std::to_string(n));
    if (n > 20000)
        throw ValidationError("agglomerative: quadratic-memory method refuses " +
                              std::to_string(n) + " points (limit 20000)");

    // Ward distances under Lance-Williams; active clusters keyed by their
    // smallest member index.
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = 0.5 * (points.row(i) - points.row(j)).squaredNorm();
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }

    std::vector<std::size_t> size(n, 1);
    std::vector<bool> active(n, true);
    std::vector<std::uint32_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);

    for (std::size_t step = 0; step < n - k; ++step) {
        std::size_t bi = n, bj = n;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!active[j]) continue;
                if (dist[i * n + j] < best) { // strict: lexicographic smallest pair wins ties
                    best = dist[i * n + j];
                    bi = i;
                    bj = j;
                }
            }
        }
        // merge bj into bi (bi keeps the smaller representative)
        const double na = static_cast<double>(size[bi]);
        const double nb = static_cast<double>(size[bj]);
        const double dab = dist[bi * n + bj];
        for (std::size_t c = 0; c < n; ++c) {
            if (!active[c] || c == bi || c == bj) continue;
            const double nc = static_cast<double>(size[c]);
            const double d = ((na + nc) * dist[bi * n + c] + (nb + nc) * dist[bj * n + c] -
                              nc * dab) /
                             (na + nb + nc);
            dist[bi * n + c] = d;
            dist[c * n + bi] = d;
        }
        size[bi] += size[bj];
        active[bj] = false;
        parent[bj] = static_cast<std::uint32_t>(bi);
    }

    // path-compress to the surviving representative, then relabel 0..k-1 in
    // representative order
    std::vector<std::uint32_t> label(n, 0);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (active[i]) label[i] = next++;

    Clustering c;
    c.k = k;
    c.assignment.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t r = static_cast<std::uint32_t>(i);
        while (parent[r] != r) r = parent[r];
        c.assignment[i] = label[r];
    }
    return c;
}

} // namespace figrl
