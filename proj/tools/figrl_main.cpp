// figrl: sketch-based inductive node embeddings and their evaluation.
//
// Subcommands: embed, foldin, eval, cost-sweep, unseen-sim. Every command is
// deterministic given its full flag set (seeds default to fixed constants).

#include "figrl/clustering.hpp"
#include "figrl/diffusion.hpp"
#include "figrl/foldin.hpp"
#include "figrl/graph.hpp"
#include "figrl/io.hpp"
#include "figrl/metrics.hpp"
#include "figrl/rng.hpp"
#include "figrl/sketch.hpp"
#include "figrl/svd.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace {

using namespace figrl;
namespace fs = std::filesystem;

struct RunConfig {
    std::string input;
    std::string out;
    std::string model_file;
    std::string unseen_file;
    int k = 2;
    double eps = 0.1;
    std::uint64_t d_override = 0; // 0 = use the sketch-size rule
    std::uint64_t seed = 42;
    std::string alg = "kmeans";
    std::string metric = "modularity";
    std::string diffusion = "lt";
    double ic_p = 0.01;
    int trials = 10000;
    std::vector<double> fractions;
    std::vector<std::uint64_t> sweep;

    std::optional<std::size_t> d_opt() const {
        return d_override == 0 ? std::nullopt : std::optional<std::size_t>(d_override);
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void warn_memory_budget(std::size_t n, std::size_t d) {
    const double gib = static_cast<double>(n) * static_cast<double>(d) * 8.0 / (1ull << 30);
    if (gib > 8.0) {
        std::ostringstream msg;
        msg.precision(3);
        msg << "sketch needs about " << gib << " GiB (n=" << n << ", d=" << d
            << "); consider --d or a larger eps";
        warn(msg.str());
    }
}

Clustering cluster_points(const RowMatrix& y, const RunConfig& cfg) {
    const auto k = static_cast<std::uint32_t>(cfg.k);
    const RowMatrix pts = row_normalized(y);
    if (cfg.alg == "kmeans") return kmeans(pts, k, cfg.seed);
    return agglomerative(pts, k);
}

DiffusionConfig diffusion_config(const RunConfig& cfg) {
    DiffusionConfig d;
    d.model = cfg.diffusion == "ic" ? DiffusionModel::IC : DiffusionModel::LT;
    d.ic_probability = cfg.ic_p;
    d.trials = cfg.trials;
    d.seed = cfg.seed;
    return d;
}

// ---- embed ----

int cmd_embed(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const Graph g = Graph::load_edge_list_file(cfg.input);
    const ApproxParams params{cfg.eps, cfg.k};
    const std::size_t d = cfg.d_opt() ? *cfg.d_opt() : sketch_size(g.n(), params);
    warn_memory_budget(g.n(), d);

    const EmbeddingModel model = embed(g, params, cfg.seed, cfg.d_opt());

    fs::create_directories(cfg.out);
    const fs::path dir(cfg.out);
    {
        std::ofstream out(dir / "embeddings.txt");
        if (!out) throw ValidationError("cannot open '" + (dir / "embeddings.txt").string() +
                                        "' for writing");
        io::write_embeddings(out, model);
    }
    io::save_model_file((dir / "model.bin").string(), model);

    std::cout << "n=" << g.n() << "\nm=" << g.m() << "\nd=" << model.spec.d
              << "\nk=" << model.k() << "\nruntime_s=" << seconds_since(t0) << "\n";
    return 0;
}

// ---- foldin ----

int cmd_foldin(const RunConfig& cfg) {
    const EmbeddingModel model = io::load_model_file(cfg.model_file);
    const std::vector<RawUnseenNode> raw = io::read_unseen_file(cfg.unseen_file);
    const ExtendResult res = extend(model, raw);

    io::EmbeddingsFile f;
    f.n = res.ids.size();
    f.k = model.k();
    f.d = model.spec.d;
    f.eps = model.params.epsilon;
    f.seed = model.spec.seed;
    f.ids = res.ids;
    f.y = res.y;
    std::ofstream out(cfg.out);
    if (!out) throw ValidationError("cannot open '" + cfg.out + "' for writing");
    io::write_embeddings(out, f);

    std::cout << "seen=" << model.n() << "\nfolded=" << res.ids.size() - model.n()
              << "\ndropped_links=" << res.dropped_links << "\nskipped=" << res.skipped.size()
              << "\n";
    for (const auto& id : res.skipped) std::cout << "skipped_node=" << id << "\n";
    return 0;
}

// ---- eval ----

void report_rds(const Graph& g, const std::vector<double>& scores) {
    const auto order = rank_descending(scores);
    const std::size_t top = std::min<std::size_t>(10, order.size());
    for (std::size_t i = 0; i < top; ++i) {
        std::cout << "rds_rank" << i + 1 << "=" << g.id_of(static_cast<NodeId>(order[i]))
                  << "\nrds_score" << i + 1 << "=" << scores[order[i]] << "\n";
    }
}

int cmd_eval(const RunConfig& cfg) {
    const Graph g = Graph::load_edge_list_file(cfg.input);
    const ApproxParams params{cfg.eps, cfg.k};
    const EmbeddingModel model = embed(g, params, cfg.seed, cfg.d_opt());
    const Clustering c = cluster_points(model.y, cfg);

    std::cout.precision(17);
    if (!cfg.out.empty()) {
        std::ofstream out(cfg.out);
        if (!out) throw ValidationError("cannot open '" + cfg.out + "' for writing");
        io::write_clustering(out, g.node_ids(), c);
    }

    if (cfg.metric == "modularity") {
        const ModularityResult q = modularity(g, c);
        std::cout << "modularity_raw=" << q.raw << "\nmodularity_penalty=" << q.penalty
                  << "\nmodularity=" << q.value() << "\n";
    } else if (cfg.metric == "permanence") {
        const PermanenceResult p = permanence(g, c);
        std::cout << "permanence_sum=" << p.sum << "\npermanence_mean=" << p.mean << "\n";
    } else if (cfg.metric == "ncut") {
        if (c.k != 2) throw ValidationError("ncut needs exactly 2 clusters (use --k 2)");
        std::vector<NodeId> a, b;
        for (NodeId v = 0; v < g.n(); ++v) (c.assignment[v] == 0 ? a : b).push_back(v);
        std::cout << "ncut=" << normalized_cut(g, a, b) << "\n";
    } else if (cfg.metric == "rds") {
        report_rds(g, rds(model.y, c));
    } else { // shii: cascade scores for the top-RDS node vs the median-ranked one
        const std::vector<double> scores = rds(model.y, c);
        const auto order = rank_descending(scores);
        const NodeId top = static_cast<NodeId>(order.front());
        const NodeId mid = static_cast<NodeId>(order[order.size() / 2]);
        const DiffusionConfig dc = diffusion_config(cfg);
        const ShiiEstimate top_est = shii(g, c, top, dc);
        const ShiiEstimate mid_est = shii(g, c, mid, dc);
        std::cout << "shii_top_node=" << g.id_of(top) << "\nshii_top=" << top_est.mean
                  << "\nshii_top_stderr=" << top_est.std_error << "\nshii_median_node="
                  << g.id_of(mid) << "\nshii_median=" << mid_est.mean
                  << "\nshii_median_stderr=" << mid_est.std_error << "\n";
    }
    return 0;
}

// ---- cost-sweep ----

int cmd_cost_sweep(const RunConfig& cfg) {
    const Graph g = Graph::load_edge_list_file(cfg.input);
    const ApproxParams params{cfg.eps, cfg.k};
    const bool cost_mode = g.n() <= 5000;
    std::optional<WalkMatrixOracle> oracle;
    if (cost_mode)
        oracle.emplace(g);
    else
        std::cout << "# n=" << g.n() << " exceeds the exact-SVD oracle budget; runtime only\n";

    std::cout.precision(10);
    constexpr int runs = 10;
    for (const std::uint64_t d : cfg.sweep) {
        if (d < static_cast<std::uint64_t>(cfg.k))
            throw ValidationError("sweep: d=" + std::to_string(d) + " cannot hold rank k=" +
                                  std::to_string(cfg.k));
        std::vector<double> costs, times;
        for (int run = 0; run < runs; ++run) {
            const std::uint64_t run_seed = rng::mix(cfg.seed, static_cast<std::uint64_t>(run));
            const auto t0 = std::chrono::steady_clock::now();
            const EmbeddingModel model = embed(g, params, run_seed, d);
            times.push_back(seconds_since(t0));
            if (cost_mode) {
                Eigen::MatrixXd u = model.factors.u;
                costs.push_back(oracle->relative_cost(u));
            }
        }
        auto mean_std = [](const std::vector<double>& xs) {
            const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
            double ss = 0.0;
            for (const double x : xs) ss += (x - mean) * (x - mean);
            const double std_dev = xs.size() > 1 ? std::sqrt(ss / (xs.size() - 1)) : 0.0;
            return std::pair{mean, std_dev};
        };
        const auto [tm, ts] = mean_std(times);
        std::cout << "d=" << d;
        if (cost_mode) {
            const auto [cm, cs] = mean_std(costs);
            std::cout << " mean_cost=" << cm << " std_cost=" << cs;
        }
        std::cout << " mean_runtime_s=" << tm << " std_runtime_s=" << ts << "\n";
    }
    return 0;
}

// ---- unseen-sim ----

int cmd_unseen_sim(const RunConfig& cfg) {
    const Graph g = Graph::load_edge_list_file(cfg.input);
    const ApproxParams params{cfg.eps, cfg.k};
    std::cout.precision(10);

    for (const double frac : cfg.fractions) {
        if (frac < 0.0 || frac >= 1.0)
            throw ValidationError("unseen-sim: holdout fraction must lie in [0, 1)");
        const auto t0 = std::chrono::steady_clock::now();

        // choose the holdout uniformly at random
        const std::size_t n = g.n();
        const auto holdout_count = static_cast<std::size_t>(std::llround(frac * n));
        std::vector<NodeId> perm(n);
        std::iota(perm.begin(), perm.end(), NodeId{0});
        rng::SplitMix64 gen(rng::mix(cfg.seed, 0x686F6C646F7574ull)); // "holdout"
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(gen.below(n - i));
            std::swap(perm[i], perm[j]);
        }
        std::vector<NodeId> held(perm.begin(), perm.begin() + holdout_count);
        std::vector<NodeId> retained(perm.begin() + holdout_count, perm.end());
        if (retained.size() < 2)
            throw ValidationError("unseen-sim: holdout leaves fewer than 2 retained nodes");
        std::sort(held.begin(), held.end());
        std::sort(retained.begin(), retained.end());

        const SubgraphResult sub = induced_subgraph(g, retained);
        const EmbeddingModel model = embed(sub.graph, params, cfg.seed, cfg.d_opt());

        // re-add held-out nodes (random order already) with edges to retained
        // nodes only; extend() drops the rest
        std::vector<RawUnseenNode> unseen;
        for (const NodeId v : held) {
            RawUnseenNode raw;
            raw.id = g.id_of(v);
            const auto cols = g.neighbors(v);
            const auto ws = g.edge_weights(v);
            for (std::size_t t = 0; t < cols.size(); ++t)
                raw.links.emplace_back(g.id_of(cols[t]), ws[t]);
            unseen.push_back(std::move(raw));
        }
        const ExtendResult ext = extend(model, unseen);

        const Clustering c = cluster_points(ext.y, cfg);

        // score on the subgraph induced by the covered nodes (retained
        // survivors plus successfully folded nodes)
        std::vector<NodeId> covered;
        covered.reserve(ext.ids.size());
        for (const auto& id : ext.ids) covered.push_back(*g.index_of(id));
        std::sort(covered.begin(), covered.end());
        const SubgraphResult eval_sub = induced_subgraph(g, covered);

        Clustering mapped;
        mapped.k = c.k;
        mapped.assignment.resize(eval_sub.graph.n());
        std::unordered_map<std::string, std::uint32_t> by_id;
        for (std::size_t i = 0; i < ext.ids.size(); ++i) by_id[ext.ids[i]] = c.assignment[i];
        for (NodeId v = 0; v < eval_sub.graph.n(); ++v)
            mapped.assignment[v] = by_id.at(eval_sub.graph.id_of(v));

        const ModularityResult q = modularity(eval_sub.graph, mapped);
        std::cout << "fraction=" << frac << " retained=" << sub.graph.n()
                  << " isolated_dropped=" << sub.dropped_isolated.size()
                  << " folded=" << ext.ids.size() - model.n()
                  << " skipped=" << ext.skipped.size() << " dropped_links=" << ext.dropped_links
                  << " modularity=" << q.value() << " runtime_s=" << seconds_since(t0) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"figrl: inductive graph embeddings via projection-cost preserving sketches"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--k", cfg.k, "embedding rank / cluster count")->capture_default_str();
        sub->add_option("--eps", cfg.eps, "sketch accuracy parameter in (0,1)")
            ->capture_default_str();
        sub->add_option("--d", cfg.d_override, "sketch size override (0 = rule)")
            ->capture_default_str();
        sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    };

    CLI::App* embed = app.add_subcommand("embed", "embed a graph; writes embeddings + model");
    embed->add_option("--input", cfg.input, "edge list file")->required();
    embed->add_option("--out", cfg.out, "output directory")->required();
    add_common(embed);

    CLI::App* foldin =
        app.add_subcommand("foldin", "fold unseen nodes into a trained model");
    foldin->add_option("--model", cfg.model_file, "binary model file")->required();
    foldin->add_option("--unseen", cfg.unseen_file, "unseen-node description file")->required();
    foldin->add_option("--out", cfg.out, "combined embeddings output file")->required();

    CLI::App* eval = app.add_subcommand("eval", "embed, cluster, and score a graph");
    eval->add_option("--input", cfg.input, "edge list file")->required();
    eval->add_option("--out", cfg.out, "clustering output file (optional)");
    add_common(eval);
    eval->add_option("--alg", cfg.alg, "clustering algorithm")
        ->check(CLI::IsMember({"kmeans", "agglo"}))
        ->capture_default_str();
    eval->add_option("--metric", cfg.metric, "metric to report")
        ->check(CLI::IsMember({"modularity", "permanence", "rds", "shii", "ncut"}))
        ->capture_default_str();
    eval->add_option("--model", cfg.diffusion, "diffusion model for shii")
        ->check(CLI::IsMember({"lt", "ic"}))
        ->capture_default_str();
    eval->add_option("--ic-p", cfg.ic_p, "IC activation probability")->capture_default_str();
    eval->add_option("--trials", cfg.trials, "diffusion trials")->capture_default_str();

    CLI::App* sweep = app.add_subcommand(
        "cost-sweep", "relative projection-cost and runtime across sketch sizes");
    sweep->add_option("--input", cfg.input, "edge list file")->required();
    sweep->add_option("--sweep", cfg.sweep, "sketch sizes to test")
        ->required()
        ->delimiter(',');
    add_common(sweep);

    CLI::App* unseen = app.add_subcommand(
        "unseen-sim", "holdout / fold-in stability simulation (modularity per fraction)");
    unseen->add_option("--input", cfg.input, "edge list file")->required();
    unseen->add_option("--fractions", cfg.fractions, "holdout fractions in [0,1)")
        ->required()
        ->delimiter(',');
    add_common(unseen);
    unseen->add_option("--alg", cfg.alg, "clustering algorithm")
        ->check(CLI::IsMember({"kmeans", "agglo"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1; // help/version exit 0, everything else is a usage error
    }

    try {
        if (app.got_subcommand(embed)) return cmd_embed(cfg);
        if (app.got_subcommand(foldin)) return cmd_foldin(cfg);
        if (app.got_subcommand(eval)) return cmd_eval(cfg);
        if (app.got_subcommand(sweep)) return cmd_cost_sweep(cfg);
        return cmd_unseen_sim(cfg);
    } catch (const ValidationError& e) {
        std::cerr << "figrl: error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "figrl: numerical error: " << e.what() << "\n";
        return 2;
    }
}
