#pragma once

#include "figrl/clustering.hpp"
#include "figrl/foldin.hpp"
#include "figrl/sketch.hpp"
#include "figrl/svd.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace figrl::io {

// ---- embeddings (text) ------------------------------------------------
// Header line "#figrl n=<n> k=<k> d=<d> eps=<eps> seed=<seed>", then one
// "<id> <y_1> ... <y_k>" line per node, 17 significant digits.

struct EmbeddingsFile {
    std::size_t n = 0;
    int k = 0;
    std::size_t d = 0;
    double eps = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::string> ids;
    RowMatrix y;
};

void write_embeddings(std::ostream& out, const EmbeddingModel& model);
// Same format for extended sets (training plus folded-in rows).
void write_embeddings(std::ostream& out, const EmbeddingsFile& file);
EmbeddingsFile read_embeddings(std::istream& in);

// ---- model (binary, little-endian) ------------------------------------
// Magic "FIGRLMDL": everything fold-in needs (v, sigma, projection spec,
// degrees, node ids) plus y and u for diagnostics.

void save_model(std::ostream& out, const EmbeddingModel& model);
EmbeddingModel load_model(std::istream& in);
void save_model_file(const std::string& path, const EmbeddingModel& model);
EmbeddingModel load_model_file(const std::string& path);

// ---- sketch (binary, little-endian) ------------------------------------
// Magic "FIGRLSKT": magic, version, n, d, seed, source checksum, then the
// n×d row-major matrix.

void save_sketch(std::ostream& out, const Sketch& s);
Sketch load_sketch(std::istream& in);
void save_sketch_file(const std::string& path, const Sketch& s);
Sketch load_sketch_file(const std::string& path);

// ---- unseen nodes (text) ------------------------------------------------
// "new_id: seen_id1=w1 seen_id2=w2 ..." per line; "=w" may be omitted for
// weight 1. '#' comments and blank lines are skipped.

std::vector<RawUnseenNode> read_unseen(std::istream& in);
std::vector<RawUnseenNode> read_unseen_file(const std::string& path);

// ---- clustering (text) ---------------------------------------------------
// "<node_id>\t<cluster_id>" per line.

void write_clustering(std::ostream& out, const std::vector<std::string>& ids,
                      const Clustering& c);
std::vector<std::pair<std::string, std::uint32_t>> read_clustering(std::istream& in);

} // namespace figrl::io
