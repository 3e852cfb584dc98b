#include "figrl/diffusion.hpp"

#include "figrl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace figrl {

void DiffusionConfig::validate() const {
    if (model == DiffusionModel::IC && (!(ic_probability > 0.0) || !(ic_probability <= 1.0)))
        throw ValidationError("diffusion: IC probability must lie in (0, 1]");
    if (trials < 1) throw ValidationError("diffusion: trials must be positive");
}

namespace {

constexpr std::uint64_t kCoinSalt = 0x49435F636F696Eull;    // IC coins
constexpr std::uint64_t kThresholdSalt = 0x4C545F7468ull;   // LT thresholds
constexpr std::uint64_t kCompanionSalt = 0x73616D706C65ull; // SHII companion draws

std::vector<NodeId> ic_cascade(const Graph& g, const std::vector<NodeId>& seeds, double p,
                               std::uint64_t trial_key) {
    std::vector<std::uint8_t> active(g.n(), 0);
    std::vector<NodeId> frontier = seeds, next, out = seeds;
    for (const NodeId s : seeds) active[s] = 1;
    const std::uint64_t coin_key = rng::mix(trial_key, kCoinSalt);
    while (!frontier.empty()) {
        next.clear();
        for (const NodeId u : frontier) {
            for (const NodeId v : g.neighbors(u)) {
                if (active[v]) continue;
                // pure function of (trial, u, v): the live-edge graph is fixed
                // up front, so a larger seed set can only reach more
                const double coin =
                    rng::unit_from(rng::mix(coin_key, (std::uint64_t{u} << 32) | v));
                if (coin < p) {
                    active[v] = 1;
                    next.push_back(v);
                }
            }
        }
        std::sort(next.begin(), next.end());
        out.insert(out.end(), next.begin(), next.end());
        frontier.swap(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<NodeId> lt_cascade(const Graph& g, const DegreeVector& deg,
                               const std::vector<NodeId>& seeds, std::uint64_t trial_key) {
    const std::size_t n = g.n();
    std::vector<std::uint8_t> active(n, 0);
    std::vector<double> influence(n, 0.0);

    std::vector<NodeId> frontier = seeds, next, out = seeds;
    for (const NodeId s : seeds) active[s] = 1;
    const std::uint64_t th_key = rng::mix(trial_key, kThresholdSalt);
    auto threshold = [&](NodeId v) {
        // (0,1]: zero influence can never activate
        return rng::unit_pos_from(rng::mix(th_key, v));
    };
    while (!frontier.empty()) {
        next.clear();
        for (const NodeId u : frontier) {
            const auto cols = g.neighbors(u);
            const auto ws = g.edge_weights(u);
            for (std::size_t t = 0; t < cols.size(); ++t) {
                const NodeId v = cols[t];
                if (active[v]) continue;
                influence[v] += ws[t] / deg[v];
                if (influence[v] >= threshold(v) &&
                    std::find(next.begin(), next.end(), v) == next.end()) {
                    next.push_back(v);
                }
            }
        }
        for (const NodeId v : next) active[v] = 1;
        std::sort(next.begin(), next.end());
        out.insert(out.end(), next.begin(), next.end());
        frontier.swap(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<NodeId> run_cascade(const Graph& g, const DegreeVector& deg,
                                const std::vector<NodeId>& seeds, const DiffusionConfig& cfg,
                                int trial) {
    const std::uint64_t trial_key = rng::mix(cfg.seed, static_cast<std::uint64_t>(trial));
    return cfg.model == DiffusionModel::IC ? ic_cascade(g, seeds, cfg.ic_probability, trial_key)
                                           : lt_cascade(g, deg, seeds, trial_key);
}

std::vector<NodeId> normalize_seeds(const Graph& g, std::span<const NodeId> seeds) {
    if (seeds.empty()) throw ValidationError("simulate_diffusion: seed set is empty");
    std::vector<NodeId> s(seeds.begin(), seeds.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (const NodeId v : s)
        if (v >= g.n()) throw ValidationError("simulate_diffusion: seed out of range");
    return s;
}

} // namespace

std::vector<NodeId> simulate_diffusion(const Graph& g, std::span<const NodeId> seeds,
                                       const DiffusionConfig& cfg, int trial) {
    cfg.validate();
    const std::vector<NodeId> s = normalize_seeds(g, seeds);
    const DegreeVector deg =
        cfg.model == DiffusionModel::LT ? degree_vector(g) : DegreeVector{};
    return run_cascade(g, deg, s, cfg, trial);
}

ShiiEstimate shii(const Graph& g, const Clustering& c, NodeId v, const DiffusionConfig& cfg) {
    cfg.validate();
    if (v >= g.n()) throw ValidationError("shii: node out of range");
    if (c.assignment.size() != g.n()) throw ValidationError("shii: assignment size mismatch");
    const std::uint32_t cv = c.assignment[v];

    std::vector<NodeId> pool;
    for (NodeId u = 0; u < g.n(); ++u)
        if (c.assignment[u] == cv && u != v) pool.push_back(u);
    const std::size_t cluster_size = pool.size() + 1;
    if (cluster_size < 2)
        throw ValidationError("shii: node '" + g.id_of(v) + "' is alone in its cluster");

    const std::size_t companions = std::min(
        pool.size(), std::max<std::size_t>(
                         1, static_cast<std::size_t>(
                                std::llround(0.1 * static_cast<double>(cluster_size)))));

    const DegreeVector deg = degree_vector(g);
    const std::uint64_t companion_key = rng::mix(cfg.seed, kCompanionSalt);
    std::vector<double> scores(cfg.trials);
#pragma omp parallel for schedule(dynamic, 64)
    for (int trial = 0; trial < cfg.trials; ++trial) {
        // per-trial companion sample: partial Fisher-Yates over a copy
        std::vector<NodeId> local = pool;
        rng::SplitMix64 gen(rng::mix(companion_key, static_cast<std::uint64_t>(trial)));
        std::vector<NodeId> seeds;
        seeds.reserve(companions + 1);
        seeds.push_back(v);
        for (std::size_t i = 0; i < companions; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(gen.below(local.size() - i));
            std::swap(local[i], local[j]);
            seeds.push_back(local[i]);
        }
        std::sort(seeds.begin(), seeds.end());

        const std::vector<NodeId> activated = run_cascade(g, deg, seeds, cfg, trial);
        std::size_t inside = 0, outside = 0;
        for (const NodeId u : activated)
            (c.assignment[u] == cv ? inside : outside)++;
        scores[trial] = static_cast<double>(outside) / static_cast<double>(inside);
    }

    ShiiEstimate est;
    est.trials = cfg.trials;
    double sum = 0.0;
    for (const double s : scores) sum += s;
    est.mean = sum / cfg.trials;
    double ss = 0.0;
    for (const double s : scores) ss += (s - est.mean) * (s - est.mean);
    const double variance = cfg.trials > 1 ? ss / (cfg.trials - 1) : 0.0;
    est.std_error = std::sqrt(variance / cfg.trials);
    return est;
}

} // namespace figrl
