#include "pgo/bigraph.hpp"

#include <fmt/format.h>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace pgo {

BigraphParseError::BigraphParseError(Kind k, std::size_t pos, const std::string& msg)
    : std::runtime_error(fmt::format("bigraph parse error at position {}: {}", pos, msg)), kind(k), position(pos) {}

Bigraph::Bigraph(std::vector<std::vector<std::vector<int>>> blocks, std::vector<std::vector<int>> duals)
    : blocks_(std::move(blocks)), duals_(std::move(duals)) {
    for (std::size_t d = 0; d < blocks_.size(); ++d) {
        int prev = vertices_at(static_cast<int>(d));
        if (blocks_[d].empty()) throw std::invalid_argument(fmt::format("depth {} has no vertices", d + 1));
        for (const auto& row : blocks_[d]) {
            if (static_cast<int>(row.size()) != prev)
                throw std::invalid_argument(fmt::format("depth {} row has wrong length", d + 1));
            if (std::all_of(row.begin(), row.end(), [](int m) { return m == 0; }))
                throw std::invalid_argument(fmt::format("vertex at depth {} has no edge to depth {}", d + 1, d));
            if (std::any_of(row.begin(), row.end(), [](int m) { return m < 0; }))
                throw std::invalid_argument("negative multiplicity");
        }
    }
    if (!duals_.empty()) {
        if (static_cast<int>(duals_.size()) != (depths() + 1) / 2)
            throw std::invalid_argument("one dual permutation per even depth is required");
        for (std::size_t k = 0; k < duals_.size(); ++k) {
            const auto& p = duals_[k];
            int n = vertices_at(static_cast<int>(2 * k));
            if (static_cast<int>(p.size()) != n) throw std::invalid_argument("dual permutation has wrong length");
            for (int i = 0; i < n; ++i)
                if (p[i] < 0 || p[i] >= n || p[p[i]] != i) throw std::invalid_argument("dual data is not an involution");
        }
    }
}

int Bigraph::vertices_at(int depth) const { return depth == 0 ? 1 : static_cast<int>(blocks_[depth - 1].size()); }

int Bigraph::total_vertices() const {
    int n = 0;
    for (int d = 0; d < depths(); ++d) n += vertices_at(d);
    return n;
}

std::vector<std::vector<int>> Bigraph::adjacency() const {
    int n = total_vertices();
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    int prev_off = 0, off = 1;
    for (int d = 1; d < depths(); ++d) {
        for (int v = 0; v < vertices_at(d); ++v)
            for (int u = 0; u < vertices_at(d - 1); ++u) {
                a[off + v][prev_off + u] = blocks_[d - 1][v][u];
                a[prev_off + u][off + v] = blocks_[d - 1][v][u];
            }
        prev_off = off;
        off += vertices_at(d);
    }
    return a;
}

bool Bigraph::connected() const {
    // every vertex has an edge to the previous depth, so all reach the root
    return true;
}

Bigraph Bigraph::permuted(int depth, const std::vector<int>& perm) const {
    auto blocks = blocks_;
    auto duals = duals_;
    if (depth >= 1) {
        for (int v = 0; v < vertices_at(depth); ++v) blocks[depth - 1][v] = blocks_[depth - 1][perm[v]];
    }
    if (depth + 1 < depths()) {
        for (int v = 0; v < vertices_at(depth + 1); ++v)
            for (int i = 0; i < vertices_at(depth); ++i) blocks[depth][v][i] = blocks_[depth][v][perm[i]];
    }
    if (!duals.empty() && depth % 2 == 0) {
        std::vector<int> inv(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
        auto& p = duals[depth / 2];
        for (std::size_t i = 0; i < perm.size(); ++i) p[i] = inv[duals_[depth / 2][perm[i]]];
    }
    return Bigraph(std::move(blocks), std::move(duals));
}

Bigraph Bigraph::with_extra_edge(int depth, int v, int u) const {
    auto blocks = blocks_;
    ++blocks[depth - 1][v][u];
    return Bigraph(std::move(blocks), duals_);
}

namespace {

using Kind = BigraphParseError::Kind;

struct Piece {
    std::string_view text;
    std::size_t pos;
};

std::vector<Piece> split(Piece p, char sep) {
    std::vector<Piece> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= p.text.size(); ++i) {
        if (i == p.text.size() || p.text[i] == sep) {
            out.push_back({p.text.substr(start, i - start), p.pos + start});
            start = i + 1;
        }
    }
    return out;
}

int parse_int(Piece p) {
    if (p.text.empty()) throw BigraphParseError(Kind::EmptyBlock, p.pos, "empty entry");
    int v = 0;
    for (std::size_t i = 0; i < p.text.size(); ++i) {
        char c = p.text[i];
        if (c < '0' || c > '9') throw BigraphParseError(Kind::Syntax, p.pos + i, fmt::format("unexpected '{}'", c));
        v = v * 10 + (c - '0');
        if (v > 1000000) throw BigraphParseError(Kind::Syntax, p.pos, "multiplicity too large");
    }
    return v;
}

}  // namespace

Bigraph parse_bigraph(std::string_view text) {
    constexpr std::string_view prefix = "bwd", dual_tag = "duals";
    if (text.substr(0, prefix.size()) != prefix) throw BigraphParseError(Kind::Syntax, 0, "expected prefix 'bwd'");
    std::size_t dpos = text.find(dual_tag);
    Piece graph{text.substr(prefix.size(), dpos == std::string_view::npos ? std::string_view::npos : dpos - prefix.size()),
                prefix.size()};

    std::vector<std::vector<std::vector<int>>> blocks;
    if (!graph.text.empty()) {
        for (const Piece& block : split(graph, 'v')) {
            if (block.text.empty()) throw BigraphParseError(Kind::EmptyBlock, block.pos, "empty depth block");
            std::size_t prev = blocks.empty() ? 1 : blocks.back().size();
            std::vector<std::vector<int>> rows;
            for (const Piece& vertex : split(block, 'p')) {
                if (vertex.text.empty()) throw BigraphParseError(Kind::EmptyBlock, vertex.pos, "empty vertex");
                std::vector<int> row;
                for (const Piece& e : split(vertex, 'x')) row.push_back(parse_int(e));
                if (row.size() != prev)
                    throw BigraphParseError(Kind::CountMismatch, vertex.pos,
                                            fmt::format("vertex lists {} multiplicities but the previous depth has {} vertices",
                                                        row.size(), prev));
                if (std::all_of(row.begin(), row.end(), [](int m) { return m == 0; }))
                    throw BigraphParseError(Kind::Isolated, vertex.pos, "vertex has no edge to the previous depth");
                rows.push_back(std::move(row));
            }
            blocks.push_back(std::move(rows));
        }
    }

    std::vector<std::vector<int>> duals;
    if (dpos != std::string_view::npos) {
        Piece d{text.substr(dpos + dual_tag.size()), dpos + dual_tag.size()};
        if (d.text.empty()) throw BigraphParseError(Kind::EmptyBlock, d.pos, "empty dual data");
        auto dblocks = split(d, 'v');
        std::size_t even = (blocks.size() + 2) / 2;
        if (dblocks.size() != even)
            throw BigraphParseError(Kind::BadDuals, d.pos,
                                    fmt::format("expected {} dual blocks (one per even depth), found {}", even, dblocks.size()));
        for (std::size_t k = 0; k < dblocks.size(); ++k) {
            const Piece& b = dblocks[k];
            if (b.text.empty()) throw BigraphParseError(Kind::EmptyBlock, b.pos, "empty dual block");
            std::size_t n = k == 0 ? 1 : blocks[2 * k - 1].size();
            std::vector<int> perm;
            for (const Piece& e : split(b, 'x')) {
                int v = parse_int(e);
                if (v < 1 || static_cast<std::size_t>(v) > n)
                    throw BigraphParseError(Kind::BadDuals, e.pos, fmt::format("dual entry {} out of range 1..{}", v, n));
                perm.push_back(v - 1);
            }
            if (perm.size() != n)
                throw BigraphParseError(Kind::BadDuals, b.pos,
                                        fmt::format("dual block lists {} entries for {} vertices", perm.size(), n));
            for (std::size_t i = 0; i < n; ++i)
                if (perm[perm[i]] != static_cast<int>(i))
                    throw BigraphParseError(Kind::NonInvolution, b.pos, "dual data is not an involution");
            duals.push_back(std::move(perm));
        }
    }
    return Bigraph(std::move(blocks), std::move(duals));
}

std::string render_bigraph(const Bigraph& g) {
    std::string s = "bwd";
    for (std::size_t d = 0; d < g.blocks().size(); ++d) {
        if (d) s += 'v';
        const auto& rows = g.blocks()[d];
        for (std::size_t v = 0; v < rows.size(); ++v) {
            if (v) s += 'p';
            for (std::size_t u = 0; u < rows[v].size(); ++u) {
                if (u) s += 'x';
                s += std::to_string(rows[v][u]);
            }
        }
    }
    if (g.has_duals()) {
        s += "duals";
        for (std::size_t k = 0; k < g.duals().size(); ++k) {
            if (k) s += 'v';
            for (std::size_t i = 0; i < g.duals()[k].size(); ++i) {
                if (i) s += 'x';
                s += std::to_string(g.duals()[k][i] + 1);
            }
        }
    }
    return s;
}

namespace {
std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}
}  // namespace

GraphPair parse_graph_pair(std::string_view text) {
    std::string_view t = trim(text);
    std::size_t offset = static_cast<std::size_t>(t.data() - text.data());
    if (!t.empty() && t.front() == '(') {
        if (t.back() != ')') throw BigraphParseError(Kind::Syntax, offset + t.size(), "missing ')'");
        t = t.substr(1, t.size() - 2);
        ++offset;
    }
    auto rebase = [&](std::string_view part, std::size_t base) {
        try {
            return parse_bigraph(part);
        } catch (const BigraphParseError& e) {
            throw BigraphParseError(e.kind, base + e.position, std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
        }
    };
    std::size_t comma = t.find(',');
    if (comma == std::string_view::npos) {
        std::string_view g = trim(t);
        return {rebase(g, offset + static_cast<std::size_t>(g.data() - t.data())), std::nullopt, std::string(g)};
    }
    std::string_view a = trim(t.substr(0, comma)), b = trim(t.substr(comma + 1));
    GraphPair p{rebase(a, offset + static_cast<std::size_t>(a.data() - t.data())),
                rebase(b, offset + static_cast<std::size_t>(b.data() - t.data())), fmt::format("{}, {}", a, b)};
    return p;
}

std::vector<GraphLine> read_graph_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
    std::vector<GraphLine> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        std::string_view s = line;
        if (auto h = s.find('#'); h != std::string_view::npos) s = s.substr(0, h);
        s = trim(s);
        if (!s.empty()) out.push_back({n, std::string(s)});
    }
    return out;
}

namespace {

mpq_class round_to_bits(const mpq_class& x, unsigned long bits) {
    mpz_class scale = mpz_class(1) << bits;
    mpz_class n(mpq_class(x * scale));  // truncation toward zero
    mpq_class r(n, scale);
    r.canonicalize();
    return r;
}

// Solve M y = b in place by Gaussian elimination with a precomputed LU factorisation.
struct LU {
    std::vector<std::vector<mpq_class>> a;
    std::vector<int> perm;
    explicit LU(std::vector<std::vector<mpq_class>> m) : a(std::move(m)), perm(a.size()) {
        int n = static_cast<int>(a.size());
        std::iota(perm.begin(), perm.end(), 0);
        for (int k = 0; k < n; ++k) {
            int p = k;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) throw InsufficientPrecision("singular shifted matrix in norm refinement");
            std::swap(a[p], a[k]);
            std::swap(perm[p], perm[k]);
            for (int i = k + 1; i < n; ++i) {
                if (a[i][k] == 0) continue;
                a[i][k] /= a[k][k];
                for (int j = k + 1; j < n; ++j) a[i][j] -= a[i][k] * a[k][j];
            }
        }
    }
    std::vector<mpq_class> solve(const std::vector<mpq_class>& b) const {
        int n = static_cast<int>(a.size());
        std::vector<mpq_class> y(n);
        for (int i = 0; i < n; ++i) {
            y[i] = b[perm[i]];
            for (int j = 0; j < i; ++j) y[i] -= a[i][j] * y[j];
        }
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) y[i] -= a[i][j] * y[j];
            y[i] /= a[i][i];
        }
        return y;
    }
};

}  // namespace

GraphNorm graph_norm(const Bigraph& g, int digits) {
    if (!g.connected()) throw std::invalid_argument("graph_norm: disconnected graph");
    auto adj = g.adjacency();
    const int n = static_cast<int>(adj.size());
    const mpfr_prec_t prec = bits_for_digits(digits);
    if (n == 1) return {Interval(0L, prec), Interval(0L, prec)};

    // rough Perron vector by power iteration on A + I (primitive, so it converges)
    std::vector<double> x(n, 1.0), y(n);
    double lambda = 0;
    for (int it = 0; it < 5000; ++it) {
        for (int i = 0; i < n; ++i) {
            y[i] = x[i];
            for (int j = 0; j < n; ++j) y[i] += adj[i][j] * x[j];
        }
        double norm = *std::max_element(y.begin(), y.end());
        lambda = norm - 1;
        for (int i = 0; i < n; ++i) y[i] /= norm;
        x.swap(y);
    }

    // exact inverse iteration with shift just above the estimate, rounding between steps
    const unsigned long bits = static_cast<unsigned long>(prec) + 16;
    mpq_class mu(lambda * (1 + 1e-12) + 1e-12);
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = adj[i][j] - (i == j ? mu : mpq_class(0));
    LU lu(std::move(m));
    std::vector<mpq_class> v(n);
    for (int i = 0; i < n; ++i) v[i] = mpq_class(x[i]);
    mpq_class lo, hi;
    for (int it = 0; it < 64; ++it) {
        auto w = lu.solve(v);
        mpq_class big = 0;
        for (const auto& e : w)
            if (abs(e) > big) big = abs(e);
        for (int i = 0; i < n; ++i) v[i] = round_to_bits(w[i] / big, bits);
        // Collatz-Wielandt bounds for the irreducible nonnegative matrix A
        bool positive = std::all_of(v.begin(), v.end(), [](const mpq_class& e) { return e > 0; });
        if (!positive) {
            for (auto& e : v) e = -e;
            positive = std::all_of(v.begin(), v.end(), [](const mpq_class& e) { return e > 0; });
        }
        if (!positive) continue;
        bool first = true;
        for (int i = 0; i < n; ++i) {
            mpq_class s = 0;
            for (int j = 0; j < n; ++j)
                if (adj[i][j]) s += adj[i][j] * v[j];
            mpq_class r = s / v[i];
            if (first || r < lo) lo = r;
            if (first || r > hi) hi = r;
            first = false;
        }
        Interval iv(lo, hi, prec);
        if (iv.width_d() < std::pow(10.0, -digits) * (1 + lambda)) break;
    }
    if (lo <= 0) throw InsufficientPrecision("graph_norm: Perron vector not certified");
    Interval norm(lo, hi, prec);
    return {norm, norm.square()};
}

std::string HypothesisReport::summary() const {
    auto flag = [](const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "not evaluated"; };
    return fmt::format("3-supertransitive: {}; depth-4 pair: {}; depth-5 simple: {}; no common depth-6 neighbour: {}",
                       is_3_supertransitive ? "yes" : "no",
                       depth4_pair ? fmt::format("vertices {} and {}", depth4_pair->first + 1, depth4_pair->second + 1)
                                   : std::string("absent"),
                       flag(depth5_simple), flag(no_common_depth6_neighbor));
}

HypothesisReport check_hypothesis(const Bigraph& g) {
    HypothesisReport r;
    r.is_3_supertransitive = g.depths() >= 4;
    for (int d = 1; d <= 3 && r.is_3_supertransitive; ++d)
        r.is_3_supertransitive = g.vertices_at(d) == 1 && g.multiplicity(d, 0, 0) == 1;
    if (!r.is_3_supertransitive) return r;
    if (g.depths() < 5 || g.vertices_at(4) != 2 || g.multiplicity(4, 0, 0) != 1 || g.multiplicity(4, 1, 0) != 1)
        return r;
    r.depth4_pair = std::make_pair(0, 1);

    // the unique depth-5 neighbour of each depth-4 vertex, if there is exactly one, singly connected
    auto single_up = [&](int w) -> std::optional<int> {
        if (g.depths() < 6) return std::nullopt;
        std::optional<int> found;
        for (int v = 0; v < g.vertices_at(5); ++v) {
            int m = g.multiplicity(5, v, w);
            if (m == 0) continue;
            if (m != 1 || found) return std::nullopt;
            found = v;
        }
        return found;
    };
    auto p1 = single_up(0), q1 = single_up(1);
    r.depth5_simple = p1 && q1 && *p1 != *q1;
    if (!*r.depth5_simple) return r;

    bool common = false;
    if (g.depths() >= 7)
        for (int v = 0; v < g.vertices_at(6); ++v)
            if (g.multiplicity(6, v, *p1) > 0 && g.multiplicity(6, v, *q1) > 0) common = true;
    r.no_common_depth6_neighbor = !common;
    r.overall = !common;
    return r;
}

}  // namespace pgo
