#include "figrl/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace figrl {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

double parse_weight(std::string_view tok, std::size_t line_no) {
    double w = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), w);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ValidationError("edge list line " + std::to_string(line_no) +
                              ": weight '" + std::string(tok) + "' is not a number");
    if (!std::isfinite(w) || w <= 0.0)
        throw ValidationError("edge list line " + std::to_string(line_no) +
                              ": weight must be finite and positive, got '" +
                              std::string(tok) + "'");
    return w;
}

} // namespace

Graph Graph::build(std::vector<std::string> ids,
                   std::vector<std::tuple<NodeId, NodeId, double>> directed) {
    Graph g;
    g.node_ids_ = std::move(ids);
    const std::size_t n = g.node_ids_.size();
    g.id_index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, fresh] = g.id_index_.emplace(g.node_ids_[i], static_cast<NodeId>(i));
        if (!fresh) throw ValidationError("duplicate node id '" + g.node_ids_[i] + "'");
    }

    std::sort(directed.begin(), directed.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) <
               std::tie(std::get<0>(b), std::get<1>(b));
    });

    g.row_offsets_.assign(n + 1, 0);
    g.col_indices_.reserve(directed.size());
    g.weights_.reserve(directed.size());
    std::size_t pos = 0;
    for (NodeId i = 0; i < n; ++i) {
        while (pos < directed.size() && std::get<0>(directed[pos]) == i) {
            const NodeId j = std::get<1>(directed[pos]);
            double w = std::get<2>(directed[pos]);
            ++pos;
            // merge parallel edges
            while (pos < directed.size() && std::get<0>(directed[pos]) == i &&
                   std::get<1>(directed[pos]) == j) {
                w += std::get<2>(directed[pos]);
                ++pos;
            }
            g.col_indices_.push_back(j);
            g.weights_.push_back(w);
            g.total_weight_ += w;
        }
        g.row_offsets_[i + 1] = g.col_indices_.size();
    }

    for (NodeId i = 0; i < n; ++i)
        if (g.row_offsets_[i + 1] == g.row_offsets_[i])
            throw ValidationError("node '" + g.node_ids_[i] + "' is isolated");

    g.m_ = g.col_indices_.size() / 2;
    return g;
}

Graph Graph::load_edge_list(std::istream& in) {
    std::vector<std::string> ids;
    std::unordered_map<std::string, NodeId> index;
    auto intern = [&](std::string_view tok) {
        auto it = index.find(std::string(tok));
        if (it != index.end()) return it->second;
        const NodeId id = static_cast<NodeId>(ids.size());
        ids.emplace_back(tok);
        index.emplace(ids.back(), id);
        return id;
    };

    std::vector<std::tuple<NodeId, NodeId, double>> directed;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto toks = split_ws(line);
        if (toks.empty() || toks[0].front() == '#') continue;
        if (toks.size() < 2 || toks.size() > 3)
            throw ValidationError("edge list line " + std::to_string(line_no) +
                                  ": expected 'u v' or 'u v w', got " +
                                  std::to_string(toks.size()) + " fields");
        if (toks[0] == toks[1])
            throw ValidationError("edge list line " + std::to_string(line_no) +
                                  ": self-loop on '" + std::string(toks[0]) + "'");
        const double w = toks.size() == 3 ? parse_weight(toks[2], line_no) : 1.0;
        const NodeId u = intern(toks[0]);
        const NodeId v = intern(toks[1]);
        directed.emplace_back(u, v, w);
        directed.emplace_back(v, u, w);
    }
    if (in.bad()) throw ValidationError("edge list: read failure");
    if (directed.empty()) throw ValidationError("edge list: no edges");
    return build(std::move(ids), std::move(directed));
}

Graph Graph::load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    return load_edge_list(in);
}

Graph Graph::from_edges(std::size_t n, std::span<const std::tuple<NodeId, NodeId, double>> edges,
                        std::vector<std::string> ids) {
    if (ids.empty()) {
        ids.reserve(n);
        for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
    } else if (ids.size() != n) {
        throw ValidationError("from_edges: ids/n mismatch");
    }
    std::vector<std::tuple<NodeId, NodeId, double>> directed;
    directed.reserve(edges.size() * 2);
    for (const auto& [u, v, w] : edges) {
        if (u >= n || v >= n) throw ValidationError("from_edges: node index out of range");
        if (u == v) throw ValidationError("from_edges: self-loop on node " + std::to_string(u));
        if (!std::isfinite(w) || w <= 0.0)
            throw ValidationError("from_edges: weight must be finite and positive");
        directed.emplace_back(u, v, w);
        directed.emplace_back(v, u, w);
    }
    return build(std::move(ids), std::move(directed));
}

double Graph::weight_between(NodeId i, NodeId j) const {
    const auto cols = neighbors(i);
    const auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return 0.0;
    return weights_[row_offsets_[i] + static_cast<std::size_t>(it - cols.begin())];
}

std::optional<NodeId> Graph::index_of(std::string_view id) const {
    const auto it = id_index_.find(std::string(id));
    if (it == id_index_.end()) return std::nullopt;
    return it->second;
}

std::uint64_t Graph::checksum() const {
    std::uint64_t h = 0xCBF29CE484222325ull;
    auto mix = [&h](const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 0x100000001B3ull;
        }
    };
    const std::uint64_t n64 = n(), m64 = m();
    mix(&n64, sizeof n64);
    mix(&m64, sizeof m64);
    for (const std::size_t off : row_offsets_) {
        const std::uint64_t v = off;
        mix(&v, sizeof v);
    }
    mix(col_indices_.data(), col_indices_.size() * sizeof(NodeId));
    mix(weights_.data(), weights_.size() * sizeof(double));
    return h;
}

void Graph::save_edge_list(std::ostream& out) const {
    std::ostringstream line;
    line.precision(17);
    for (NodeId i = 0; i < n(); ++i) {
        const auto cols = neighbors(i);
        const auto ws = edge_weights(i);
        for (std::size_t t = 0; t < cols.size(); ++t) {
            if (cols[t] < i) continue;
            line.str("");
            line << node_ids_[i] << ' ' << node_ids_[cols[t]] << ' ' << ws[t] << '\n';
            out << line.str();
        }
    }
}

DegreeVector degree_vector(const Graph& g) {
    DegreeVector deg(g.n(), 0.0);
    for (NodeId i = 0; i < g.n(); ++i) {
        const auto ws = g.edge_weights(i);
        deg[i] = std::accumulate(ws.begin(), ws.end(), 0.0);
    }
    return deg;
}

std::vector<std::pair<NodeId, double>> walk_matrix_row(const Graph& g, const DegreeVector& deg,
                                                       NodeId i) {
    if (i >= g.n()) throw ValidationError("walk_matrix_row: node index out of range");
    if (deg.size() != g.n()) throw ValidationError("walk_matrix_row: degree vector size mismatch");
    const auto cols = g.neighbors(i);
    const auto ws = g.edge_weights(i);
    std::vector<std::pair<NodeId, double>> row;
    row.reserve(cols.size());
    const double di = deg[i];
    for (std::size_t t = 0; t < cols.size(); ++t)
        row.emplace_back(cols[t], ws[t] / std::sqrt(di * deg[cols[t]]));
    return row;
}

double normalized_cut(const Graph& g, std::span<const NodeId> part_a,
                      std::span<const NodeId> part_b) {
    if (part_a.empty() || part_b.empty())
        throw ValidationError("normalized_cut: both sides must be nonempty");
    std::vector<std::uint8_t> side(g.n(), 2);
    auto mark = [&](std::span<const NodeId> part, std::uint8_t tag) {
        for (const NodeId v : part) {
            if (v >= g.n()) throw ValidationError("normalized_cut: node index out of range");
            if (side[v] != 2) throw ValidationError("normalized_cut: parts overlap");
            side[v] = tag;
        }
    };
    mark(part_a, 0);
    mark(part_b, 1);
    for (NodeId v = 0; v < g.n(); ++v)
        if (side[v] == 2)
            throw ValidationError("normalized_cut: node '" + g.id_of(v) + "' is in neither part");

    double cut = 0.0, assoc_a = 0.0, assoc_b = 0.0;
    for (NodeId i = 0; i < g.n(); ++i) {
        const auto cols = g.neighbors(i);
        const auto ws = g.edge_weights(i);
        for (std::size_t t = 0; t < cols.size(); ++t) {
            if (side[i] == 0)
                assoc_a += ws[t];
            else
                assoc_b += ws[t];
            if (side[i] == 0 && side[cols[t]] == 1) cut += ws[t];
        }
    }
    return cut / assoc_a + cut / assoc_b;
}

SubgraphResult induced_subgraph(const Graph& g, std::span<const NodeId> keep) {
    std::vector<std::uint8_t> in_set(g.n(), 0);
    for (const NodeId v : keep) {
        if (v >= g.n()) throw ValidationError("induced_subgraph: node index out of range");
        if (in_set[v]) throw ValidationError("induced_subgraph: duplicate node in keep set");
        in_set[v] = 1;
    }

    std::vector<NodeId> kept, dropped;
    std::vector<NodeId> remap(g.n(), 0);
    for (NodeId v = 0; v < g.n(); ++v) {
        if (!in_set[v]) continue;
        bool connected = false;
        for (const NodeId w : g.neighbors(v))
            if (in_set[w]) {
                connected = true;
                break;
            }
        if (connected) {
            remap[v] = static_cast<NodeId>(kept.size());
            kept.push_back(v);
        } else {
            dropped.push_back(v);
            in_set[v] = 0;
        }
    }
    if (kept.empty()) throw ValidationError("induced_subgraph: no edges survive");

    std::vector<std::tuple<NodeId, NodeId, double>> edges;
    std::vector<std::string> ids;
    ids.reserve(kept.size());
    for (const NodeId v : kept) ids.push_back(g.id_of(v));
    for (const NodeId v : kept) {
        const auto cols = g.neighbors(v);
        const auto ws = g.edge_weights(v);
        for (std::size_t t = 0; t < cols.size(); ++t)
            if (in_set[cols[t]] && v < cols[t])
                edges.emplace_back(remap[v], remap[cols[t]], ws[t]);
    }
    Graph sub = Graph::from_edges(kept.size(), edges, std::move(ids));
    return SubgraphResult{std::move(sub), std::move(kept), std::move(dropped)};
}

} // namespace figrl
