#include "figrl/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "binary formats are little-endian; big-endian hosts are unsupported");

namespace figrl::io {

namespace {

// ---- binary plumbing ----

void put_bytes(std::ostream& out, const void* p, std::size_t len) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(len));
}

template <typename T> void put(std::ostream& out, T v) { put_bytes(out, &v, sizeof v); }

void get_bytes(std::istream& in, void* p, std::size_t len, const char* what) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(len));
    if (static_cast<std::size_t>(in.gcount()) != len)
        throw ValidationError(std::string("truncated file while reading ") + what);
}

template <typename T> T get(std::istream& in, const char* what) {
    T v;
    get_bytes(in, &v, sizeof v, what);
    return v;
}

void check_magic(std::istream& in, const char* magic, const char* kind) {
    char buf[8];
    get_bytes(in, buf, 8, "magic");
    if (std::memcmp(buf, magic, 8) != 0)
        throw ValidationError(std::string("bad magic: not a ") + kind + " file");
}

void check_dims(std::uint64_t rows, std::uint64_t cols, const char* kind) {
    // refuse absurd headers before allocating
    if (rows == 0 || cols == 0 || rows > (1ull << 33) || cols > (1ull << 33) ||
        rows * cols > (1ull << 34))
        throw ValidationError(std::string(kind) + ": implausible dimensions in header");
}

void put_string(std::ostream& out, const std::string& s) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
    put_bytes(out, s.data(), s.size());
}

std::string get_string(std::istream& in) {
    const auto len = get<std::uint32_t>(in, "string length");
    if (len > (1u << 20)) throw ValidationError("implausible string length");
    std::string s(len, '\0');
    get_bytes(in, s.data(), len, "string");
    return s;
}

void put_matrix(std::ostream& out, const RowMatrix& m) {
    put_bytes(out, m.data(), sizeof(double) * static_cast<std::size_t>(m.size()));
}

void get_matrix(std::istream& in, RowMatrix& m, std::uint64_t rows, std::uint64_t cols,
                const char* what) {
    m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    get_bytes(in, m.data(), sizeof(double) * rows * cols, what);
}

// ---- text plumbing ----

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

double parse_double(std::string_view tok, const char* what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ValidationError(std::string("cannot parse ") + what + " '" + std::string(tok) +
                              "'");
    return v;
}

std::uint64_t parse_u64(std::string_view tok, const char* what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ValidationError(std::string("cannot parse ") + what + " '" + std::string(tok) +
                              "'");
    return v;
}

std::string_view header_field(std::string_view tok, std::string_view key) {
    if (tok.substr(0, key.size()) != key)
        throw ValidationError("embeddings header: expected '" + std::string(key) +
                              "...', got '" + std::string(tok) + "'");
    return tok.substr(key.size());
}

} // namespace

// ---- embeddings text ----

void write_embeddings(std::ostream& out, const EmbeddingsFile& file) {
    std::ostringstream line;
    line.precision(17);
    line << "#figrl n=" << file.n << " k=" << file.k << " d=" << file.d << " eps=" << file.eps
         << " seed=" << file.seed << '\n';
    out << line.str();
    for (std::size_t i = 0; i < file.n; ++i) {
        line.str("");
        line << file.ids[i];
        for (int c = 0; c < file.k; ++c) line << ' ' << file.y(i, c);
        line << '\n';
        out << line.str();
    }
    if (!out) throw ValidationError("embeddings: write failure");
}

void write_embeddings(std::ostream& out, const EmbeddingModel& model) {
    EmbeddingsFile f;
    f.n = model.n();
    f.k = model.k();
    f.d = model.spec.d;
    f.eps = model.params.epsilon;
    f.seed = model.spec.seed;
    f.ids = model.node_ids;
    f.y = model.y;
    write_embeddings(out, f);
}

EmbeddingsFile read_embeddings(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("embeddings: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto toks = split_ws(line);
    if (toks.size() != 6 || toks[0] != "#figrl")
        throw ValidationError("embeddings: malformed header line");
    EmbeddingsFile f;
    f.n = parse_u64(header_field(toks[1], "n="), "n");
    f.k = static_cast<int>(parse_u64(header_field(toks[2], "k="), "k"));
    f.d = parse_u64(header_field(toks[3], "d="), "d");
    f.eps = parse_double(header_field(toks[4], "eps="), "eps");
    f.seed = parse_u64(header_field(toks[5], "seed="), "seed");
    check_dims(f.n, static_cast<std::uint64_t>(f.k), "embeddings");

    f.ids.reserve(f.n);
    f.y.resize(f.n, f.k);
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        toks = split_ws(line);
        if (toks.empty()) continue;
        if (row >= f.n) throw ValidationError("embeddings: more rows than the header's n");
        if (toks.size() != static_cast<std::size_t>(f.k) + 1)
            throw ValidationError("embeddings row " + std::to_string(row + 1) +
                                  ": expected id plus " + std::to_string(f.k) + " values");
        f.ids.emplace_back(toks[0]);
        for (int c = 0; c < f.k; ++c)
            f.y(row, c) = parse_double(toks[c + 1], "embedding value");
        ++row;
    }
    if (row != f.n) throw ValidationError("embeddings: fewer rows than the header's n");
    return f;
}

// ---- model binary ----

namespace {
constexpr char kModelMagic[9] = "FIGRLMDL";
constexpr char kSketchMagic[9] = "FIGRLSKT";
constexpr std::uint32_t kFormatVersion = 1;
} // namespace

void save_model(std::ostream& out, const EmbeddingModel& model) {
    put_bytes(out, kModelMagic, 8);
    put<std::uint32_t>(out, kFormatVersion);
    put<std::uint64_t>(out, model.n());
    put<std::uint32_t>(out, static_cast<std::uint32_t>(model.k()));
    put<std::uint64_t>(out, model.spec.d);
    put<std::uint64_t>(out, model.spec.seed);
    put<double>(out, model.params.epsilon);
    put<std::uint64_t>(out, model.source_checksum);
    put_bytes(out, model.factors.sigma.data(),
              sizeof(double) * static_cast<std::size_t>(model.factors.sigma.size()));
    put_matrix(out, model.factors.v);
    put_matrix(out, model.factors.u);
    put_matrix(out, model.y);
    put_bytes(out, model.degrees.data(), sizeof(double) * model.degrees.size());
    for (const auto& id : model.node_ids) put_string(out, id);
    if (!out) throw ValidationError("model: write failure");
}

EmbeddingModel load_model(std::istream& in) {
    check_magic(in, kModelMagic, "model");
    const auto version = get<std::uint32_t>(in, "version");
    if (version != kFormatVersion)
        throw ValidationError("model: unsupported format version " + std::to_string(version));
    const auto n = get<std::uint64_t>(in, "n");
    const auto k = get<std::uint32_t>(in, "k");
    const auto d = get<std::uint64_t>(in, "d");
    const auto seed = get<std::uint64_t>(in, "seed");
    const auto eps = get<double>(in, "eps");
    const auto checksum = get<std::uint64_t>(in, "checksum");
    check_dims(n, k, "model");
    check_dims(d, k, "model");

    EmbeddingModel model;
    model.spec = ProjectionSpec{seed, d, n};
    model.params = ApproxParams{eps, static_cast<int>(k)};
    model.source_checksum = checksum;
    model.factors.sigma.resize(k);
    get_bytes(in, model.factors.sigma.data(), sizeof(double) * k, "sigma");
    get_matrix(in, model.factors.v, d, k, "v");
    get_matrix(in, model.factors.u, n, k, "u");
    get_matrix(in, model.y, n, k, "y");
    model.degrees.resize(n);
    get_bytes(in, model.degrees.data(), sizeof(double) * n, "degrees");
    model.node_ids.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) model.node_ids.push_back(get_string(in));
    model.rebuild_index();
    return model;
}

void save_model_file(const std::string& path, const EmbeddingModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open '" + path + "' for writing");
    save_model(out, model);
}

EmbeddingModel load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    return load_model(in);
}

// ---- sketch binary ----

void save_sketch(std::ostream& out, const Sketch& s) {
    put_bytes(out, kSketchMagic, 8);
    put<std::uint32_t>(out, kFormatVersion);
    put<std::uint64_t>(out, s.n());
    put<std::uint64_t>(out, s.d());
    put<std::uint64_t>(out, s.spec.seed);
    put<std::uint64_t>(out, s.source_checksum);
    put_matrix(out, s.m);
    if (!out) throw ValidationError("sketch: write failure");
}

Sketch load_sketch(std::istream& in) {
    check_magic(in, kSketchMagic, "sketch");
    const auto version = get<std::uint32_t>(in, "version");
    if (version != kFormatVersion)
        throw ValidationError("sketch: unsupported format version " + std::to_string(version));
    const auto n = get<std::uint64_t>(in, "n");
    const auto d = get<std::uint64_t>(in, "d");
    Sketch s;
    s.spec.seed = get<std::uint64_t>(in, "seed");
    s.source_checksum = get<std::uint64_t>(in, "checksum");
    check_dims(n, d, "sketch");
    s.spec.n = n;
    s.spec.d = d;
    get_matrix(in, s.m, n, d, "sketch matrix");
    return s;
}

void save_sketch_file(const std::string& path, const Sketch& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open '" + path + "' for writing");
    save_sketch(out, s);
}

Sketch load_sketch_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    return load_sketch(in);
}

// ---- unseen nodes text ----

std::vector<RawUnseenNode> read_unseen(std::istream& in) {
    std::vector<RawUnseenNode> nodes;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const std::size_t colon = line.find(':', first);
        if (colon == std::string::npos)
            throw ValidationError("unseen line " + std::to_string(line_no) +
                                  ": missing ':' after the node id");
        RawUnseenNode node;
        node.id = line.substr(first, colon - first);
        while (!node.id.empty() && std::isspace(static_cast<unsigned char>(node.id.back())))
            node.id.pop_back();
        if (node.id.empty())
            throw ValidationError("unseen line " + std::to_string(line_no) + ": empty node id");
        for (const auto tok : split_ws(std::string_view(line).substr(colon + 1))) {
            const std::size_t eq = tok.find('=');
            if (eq == std::string_view::npos) {
                node.links.emplace_back(std::string(tok), 1.0);
            } else {
                const auto target = tok.substr(0, eq);
                const auto wtok = tok.substr(eq + 1);
                if (target.empty() || wtok.empty())
                    throw ValidationError("unseen line " + std::to_string(line_no) +
                                          ": malformed link '" + std::string(tok) + "'");
                node.links.emplace_back(std::string(target), parse_double(wtok, "link weight"));
            }
        }
        if (node.links.empty())
            throw ValidationError("unseen line " + std::to_string(line_no) +
                                  ": node '" + node.id + "' lists no links");
        nodes.push_back(std::move(node));
    }
    if (in.bad()) throw ValidationError("unseen file: read failure");
    return nodes;
}

std::vector<RawUnseenNode> read_unseen_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    return read_unseen(in);
}

// ---- clustering text ----

void write_clustering(std::ostream& out, const std::vector<std::string>& ids,
                      const Clustering& c) {
    if (ids.size() != c.assignment.size())
        throw ValidationError("write_clustering: ids/assignment size mismatch");
    for (std::size_t i = 0; i < ids.size(); ++i)
        out << ids[i] << '\t' << c.assignment[i] << '\n';
    if (!out) throw ValidationError("clustering: write failure");
}

std::vector<std::pair<std::string, std::uint32_t>> read_clustering(std::istream& in) {
    std::vector<std::pair<std::string, std::uint32_t>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto toks = split_ws(line);
        if (toks.empty() || toks[0].front() == '#') continue;
        if (toks.size() != 2)
            throw ValidationError("clustering line " + std::to_string(line_no) +
                                  ": expected '<id>\\t<cluster>'");
        rows.emplace_back(std::string(toks[0]),
                          static_cast<std::uint32_t>(parse_u64(toks[1], "cluster id")));
    }
    if (in.bad()) throw ValidationError("clustering file: read failure");
    return rows;
}

} // namespace figrl::io
