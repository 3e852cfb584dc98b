#pragma once

#include "figrl/clustering.hpp"
#include "figrl/graph.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace figrl {

enum class DiffusionModel { LT, IC };

struct DiffusionConfig {
    DiffusionModel model = DiffusionModel::LT;
    double ic_probability = 0.01;
    int trials = 10000;
    std::uint64_t seed = 0;

    void validate() const;
};

// One Monte-Carlo cascade from `seeds` (nonempty, deduplicated internally).
// Returns the activated set, sorted ascending, seeds included.
//
// IC: each newly active u gets one independent coin per neighbor v; the coin
// is a pure function of (seed, trial, u, v), so enlarging the seed set can
// only enlarge the cascade. LT: node thresholds theta_v in (0,1] are drawn
// per (seed, trial, v); v activates once sum_{active u} W_uv / D_vv >= theta_v.
std::vector<NodeId> simulate_diffusion(const Graph& g, std::span<const NodeId> seeds,
                                       const DiffusionConfig& cfg, int trial);

struct ShiiEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    int trials = 0;
};

// Structural-hole influence index of v: seed {v} plus a per-trial uniform
// sample of max(1, round(0.1 |C_v|)) same-cluster companions, run a cascade,
// and score activated-outside / activated-inside (inside = v's cluster).
// Mean and standard error over cfg.trials trials. |C_v| must be >= 2.
ShiiEstimate shii(const Graph& g, const Clustering& c, NodeId v, const DiffusionConfig& cfg);

} // namespace figrl
