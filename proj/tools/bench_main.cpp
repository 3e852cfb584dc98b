// Timing harness for the parallel kernels against their serial references.
//
//   figrl-bench [n] [avg_degree] [d] [k]
//
// Generates a random graph, then times sketch construction, both Gram
// products, the projected-factor product, and the end-to-end embedding.

#include "figrl/graph.hpp"
#include "figrl/kernels.hpp"
#include "figrl/rng.hpp"
#include "figrl/svd.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace figrl;

namespace {

Graph random_graph(std::size_t n, double avg_degree, std::uint64_t seed) {
    rng::SplitMix64 gen(seed);
    const std::size_t target = static_cast<std::size_t>(n * avg_degree / 2.0);
    std::set<std::pair<NodeId, NodeId>> seen;
    std::vector<std::tuple<NodeId, NodeId, double>> edges;
    // ring for connectivity, then random chords
    for (NodeId i = 0; i < n; ++i)
        edges.emplace_back(i, static_cast<NodeId>((i + 1) % n), 1.0);
    while (edges.size() < target) {
        const auto u = static_cast<NodeId>(gen.below(n));
        const auto v = static_cast<NodeId>(gen.below(n));
        if (u == v) continue;
        const auto key = std::minmax(u, v);
        if (!seen.insert({key.first, key.second}).second) continue;
        edges.emplace_back(u, v, 1.0);
    }
    return Graph::from_edges(n, edges);
}

template <typename F> double time_once(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-16s serial %8.3fs  parallel %8.3fs  speedup %5.2fx\n", name, serial,
                parallel, serial / parallel);
}

} // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2000;
    const double avg_degree = argc > 2 ? std::strtod(argv[2], nullptr) : 10.0;
    const std::size_t d = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 500;
    const int k = argc > 4 ? std::atoi(argv[4]) : 32;

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("graph: n=%zu avg_degree=%.1f d=%zu k=%d\n", n, avg_degree, d, k);

    const Graph g = random_graph(n, avg_degree, 7);
    const DegreeVector deg = degree_vector(g);
    const ProjectionSpec spec{7, d, n};

    std::vector<double> a(n * d), b(n * d);
    report("sketch_rows",
           time_once([&] { reference::sketch_rows(g, deg, spec, a.data()); }),
           time_once([&] { kernels::sketch_rows(g, deg, spec, b.data()); }));

    std::vector<double> g1(d * d), g2(d * d);
    report("gram_cols", time_once([&] { reference::gram_cols(a.data(), n, d, g1.data()); }),
           time_once([&] { kernels::gram_cols(a.data(), n, d, g2.data()); }));

    const std::size_t nn = std::min<std::size_t>(n, 1500); // AA^T is n×n; cap it
    std::vector<double> h1(nn * nn), h2(nn * nn);
    report("gram_rows", time_once([&] { reference::gram_rows(a.data(), nn, d, h1.data()); }),
           time_once([&] { kernels::gram_rows(a.data(), nn, d, h2.data()); }));

    std::vector<double> v(d * k), scale(k, 1.0), p1(n * k), p2(n * k);
    rng::gaussian_fill(1, 0, v.data(), v.size());
    report("project_scaled",
           time_once([&] {
               reference::project_scaled(a.data(), n, d, v.data(), scale.data(), k, p1.data());
           }),
           time_once([&] {
               kernels::project_scaled(a.data(), n, d, v.data(), scale.data(), k, p2.data());
           }));

    const double embed_time =
        time_once([&] { embed(g, ApproxParams{0.1, k}, 7, d); });
    std::printf("%-16s end-to-end %5.3fs\n", "embed", embed_time);
    return 0;
}
