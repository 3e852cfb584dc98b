#include "figrl/kernels.hpp"

#include "figrl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

namespace figrl {

namespace {

// Shared by the parallel and serial paths so both produce identical rows:
// accumulate l_ij * R_col(j) over the CSR row (ascending j), then scale by
// 1/sqrt(d).
void sketch_one_row(const Graph& g, const DegreeVector& deg, const ProjectionSpec& spec,
                    NodeId i, double* row, double* col_scratch) {
    const std::size_t d = spec.d;
    std::memset(row, 0, d * sizeof(double));
    const auto cols = g.neighbors(i);
    const auto ws = g.edge_weights(i);
    const double di = deg[i];
    for (std::size_t t = 0; t < cols.size(); ++t) {
        const NodeId j = cols[t];
        const double lij = ws[t] / std::sqrt(di * deg[j]);
        rng::gaussian_fill(spec.seed, j, col_scratch, d);
        for (std::size_t q = 0; q < d; ++q) row[q] += lij * col_scratch[q];
    }
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t q = 0; q < d; ++q) row[q] *= inv_sqrt_d;
}

constexpr std::size_t kTile = 64;

} // namespace

namespace kernels {

void sketch_rows(const Graph& g, const DegreeVector& deg, const ProjectionSpec& spec,
                 double* out) {
    const std::size_t n = g.n(), d = spec.d;
#pragma omp parallel
    {
        std::vector<double> scratch(d);
#pragma omp for schedule(dynamic, 8)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
            sketch_one_row(g, deg, spec, static_cast<NodeId>(i), out + i * d, scratch.data());
    }
}

void gram_cols(const double* a, std::size_t n, std::size_t d, double* out) {
    const std::size_t nt = (d + kTile - 1) / kTile;
    const std::ptrdiff_t jobs = static_cast<std::ptrdiff_t>(nt * (nt + 1) / 2);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t job = 0; job < jobs; ++job) {
        // unflatten the upper-triangle tile index
        std::size_t ta = 0, rem = static_cast<std::size_t>(job);
        while (rem >= nt - ta) {
            rem -= nt - ta;
            ++ta;
        }
        const std::size_t tb = ta + rem;
        const std::size_t a0 = ta * kTile, a1 = std::min(a0 + kTile, d);
        const std::size_t b0 = tb * kTile, b1 = std::min(b0 + kTile, d);

        double acc[kTile * kTile];
        std::memset(acc, 0, sizeof acc);
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = a + i * d;
            for (std::size_t p = a0; p < a1; ++p) {
                const double va = row[p];
                const std::size_t q0 = std::max(b0, p);
                double* accp = acc + (p - a0) * kTile - b0;
                for (std::size_t q = q0; q < b1; ++q) accp[q] += va * row[q];
            }
        }
        for (std::size_t p = a0; p < a1; ++p)
            for (std::size_t q = std::max(b0, p); q < b1; ++q) {
                const double v = acc[(p - a0) * kTile + (q - b0)];
                out[p * d + q] = v;
                out[q * d + p] = v;
            }
    }
}

void gram_rows(const double* a, std::size_t n, std::size_t d, double* out) {
    const std::size_t nt = (n + kTile - 1) / kTile;
    const std::ptrdiff_t jobs = static_cast<std::ptrdiff_t>(nt * (nt + 1) / 2);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t job = 0; job < jobs; ++job) {
        std::size_t ta = 0, rem = static_cast<std::size_t>(job);
        while (rem >= nt - ta) {
            rem -= nt - ta;
            ++ta;
        }
        const std::size_t tb = ta + rem;
        const std::size_t i1 = std::min(ta * kTile + kTile, n);
        const std::size_t j1 = std::min(tb * kTile + kTile, n);
        for (std::size_t i = ta * kTile; i < i1; ++i) {
            const double* ri = a + i * d;
            for (std::size_t j = std::max(tb * kTile, i); j < j1; ++j) {
                const double* rj = a + j * d;
                double s = 0.0;
                for (std::size_t q = 0; q < d; ++q) s += ri[q] * rj[q];
                out[i * n + j] = s;
                out[j * n + i] = s;
            }
        }
    }
}

void project_scaled(const double* a, std::size_t n, std::size_t d, const double* v,
                    const double* scale, std::size_t k, double* out) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const double* row = a + i * d;
        double* dst = out + i * k;
        std::memset(dst, 0, k * sizeof(double));
        for (std::size_t t = 0; t < d; ++t) {
            const double at = row[t];
            const double* vrow = v + t * k;
            for (std::size_t c = 0; c < k; ++c) dst[c] += at * vrow[c];
        }
        for (std::size_t c = 0; c < k; ++c) dst[c] *= scale[c];
    }
}

} // namespace kernels

namespace reference {

void sketch_rows(const Graph& g, const DegreeVector& deg, const ProjectionSpec& spec,
                 double* out) {
    std::vector<double> scratch(spec.d);
    for (NodeId i = 0; i < g.n(); ++i)
        sketch_one_row(g, deg, spec, i, out + i * spec.d, scratch.data());
}

void gram_cols(const double* a, std::size_t n, std::size_t d, double* out) {
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = p; q < d; ++q) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += a[i * d + p] * a[i * d + q];
            out[p * d + q] = s;
            out[q * d + p] = s;
        }
}

void gram_rows(const double* a, std::size_t n, std::size_t d, double* out) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t q = 0; q < d; ++q) s += a[i * d + q] * a[j * d + q];
            out[i * n + j] = s;
            out[j * n + i] = s;
        }
}

void project_scaled(const double* a, std::size_t n, std::size_t d, const double* v,
                    const double* scale, std::size_t k, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = a + i * d;
        double* dst = out + i * k;
        std::memset(dst, 0, k * sizeof(double));
        for (std::size_t t = 0; t < d; ++t) {
            const double at = row[t];
            const double* vrow = v + t * k;
            for (std::size_t c = 0; c < k; ++c) dst[c] += at * vrow[c];
        }
        for (std::size_t c = 0; c < k; ++c) dst[c] *= scale[c];
    }
}

} // namespace reference

} // namespace figrl
