#include "oracles.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

namespace oracle {

RawRational random_raw(std::mt19937_64& rng, int max_deg, int max_coeff) {
    std::uniform_int_distribution<int> deg(0, max_deg), coeff(-max_coeff, max_coeff), sh(-3, 3);
    RawRational r;
    auto fill = [&](std::vector<mpq_class>& v) {
        do {
            v.assign(static_cast<std::size_t>(deg(rng)) + 1, 0);
            for (auto& c : v) {
                c = mpq_class(coeff(rng), 1 + std::abs(coeff(rng)));
                c.canonicalize();
            }
        } while (std::all_of(v.begin(), v.end(), [](const mpq_class& c) { return c == 0; }));
    };
    fill(r.num);
    fill(r.den);
    r.num_shift = sh(rng);
    r.den_shift = sh(rng);
    return r;
}

namespace {
pgo::RationalFunction laurent(const std::vector<mpq_class>& c, int shift) {
    pgo::RationalFunction acc;
    for (std::size_t i = 0; i < c.size(); ++i)
        acc += pgo::RationalFunction(c[i]) * pgo::RationalFunction::q_power(static_cast<int>(i) + shift);
    return acc;
}
mpq_class horner(const std::vector<mpq_class>& c, int shift, const mpq_class& q) {
    mpq_class acc = 0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * q + c[k];
    mpq_class p = 1;
    for (int i = 0; i < std::abs(shift); ++i) p *= q;
    return shift >= 0 ? mpq_class(acc * p) : mpq_class(acc / p);
}
}  // namespace

pgo::RationalFunction to_rf(const RawRational& r) { return laurent(r.num, r.num_shift) / laurent(r.den, r.den_shift); }

mpq_class eval(const RawRational& r, const mpq_class& q) {
    return horner(r.num, r.num_shift, q) / horner(r.den, r.den_shift, q);
}

pgo::ZPoly random_zpoly(std::mt19937_64& rng, int deg, int max_coeff) {
    std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
    std::vector<mpz_class> c(static_cast<std::size_t>(deg) + 1);
    for (auto& x : c) x = coeff(rng);
    if (c.back() == 0) c.back() = 1;
    return pgo::ZPoly(std::move(c));
}

mpq_class random_q(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> n(1, 40), d(1, 17);
    mpq_class r(n(rng), d(rng));
    r.canonicalize();
    return r;
}

std::string random_bigraph_text(std::mt19937_64& rng, bool with_duals) {
    std::uniform_int_distribution<int> depths(1, 7), width(1, 3), mult(0, 2);
    const int d = depths(rng);
    std::vector<int> counts{1};
    std::string s = "bwd";
    for (int k = 1; k <= d; ++k) {
        const int n = width(rng);
        if (k > 1) s += "v";
        for (int v = 0; v < n; ++v) {
            if (v > 0) s += "p";
            std::vector<int> m(static_cast<std::size_t>(counts.back()));
            do
                for (auto& x : m) x = mult(rng);
            while (std::all_of(m.begin(), m.end(), [](int x) { return x == 0; }));
            for (std::size_t u = 0; u < m.size(); ++u) s += (u ? "x" : "") + std::to_string(m[u]);
        }
        counts.push_back(n);
    }
    if (!with_duals) return s;
    s += "duals";
    for (std::size_t k = 0; k < counts.size(); k += 2) {
        const int n = counts[k];
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        if (n >= 2 && rng() % 2) std::swap(perm[0], perm[1]);
        if (k) s += "v";
        for (int i = 0; i < n; ++i) s += (i ? "x" : "") + std::to_string(perm[static_cast<std::size_t>(i)] + 1);
    }
    return s;
}

namespace {

// position of a point on the boundary circle, clockwise from top left
int circle(int p, int n) { return p < n ? p : 3 * n - 1 - p; }

}  // namespace

std::vector<Matching> noncrossing_matchings(int n) {
    std::vector<Matching> all;
    Matching m(static_cast<std::size_t>(2 * n), -1);
    std::function<void()> rec = [&] {
        auto it = std::find(m.begin(), m.end(), -1);
        if (it == m.end()) {
            for (int a = 0; a < 2 * n; ++a)
                for (int b = 0; b < 2 * n; ++b) {
                    int x1 = circle(a, n), y1 = circle(m[a], n), x2 = circle(b, n), y2 = circle(m[b], n);
                    if (x1 > y1) std::swap(x1, y1);
                    if (x2 > y2) std::swap(x2, y2);
                    if (x1 < x2 && x2 < y1 && y1 < y2) return;
                }
            all.push_back(m);
            return;
        }
        const int i = static_cast<int>(it - m.begin());
        for (int j = i + 1; j < 2 * n; ++j) {
            if (m[j] != -1) continue;
            m[i] = j;
            m[j] = i;
            rec();
            m[i] = m[j] = -1;
        }
    };
    rec();
    std::sort(all.begin(), all.end());
    return all;
}

std::pair<Matching, int> stack(const Matching& top, const Matching& bottom) {
    const int n = static_cast<int>(top.size()) / 2;
    Matching out(top.size(), -1);
    std::vector<bool> mid_seen(static_cast<std::size_t>(n), false);
    // follow a strand from an outer point until it leaves through another outer point
    auto walk = [&](bool in_top, int idx) {
        while (true) {
            const Matching& d = in_top ? top : bottom;
            int p = d[idx];
            if (in_top && p < n) return p;
            if (!in_top && p >= n) return p;
            int j = in_top ? p - n : p;  // middle position
            mid_seen[j] = true;
            in_top = !in_top;
            idx = in_top ? n + j : j;
        }
    };
    for (int i = 0; i < n; ++i) {
        if (out[i] == -1) {
            int e = walk(true, i);
            out[i] = e;
            out[e] = i;
        }
        if (out[n + i] == -1) {
            int e = walk(false, n + i);
            out[n + i] = e;
            out[e] = n + i;
        }
    }
    int loops = 0;
    for (int j = 0; j < n; ++j) {
        if (mid_seen[j]) continue;
        ++loops;
        // a closed loop alternates between the two diagrams through middle points
        int cur = j;
        bool via_top = true;
        do {
            mid_seen[cur] = true;
            cur = via_top ? top[n + cur] - n : bottom[cur];
            via_top = !via_top;
        } while (cur != j || !via_top);
    }
    return {out, loops};
}

Matching from_core(const pgo::TLDiagram& d) {
    const int n = d.strands();
    auto conv = [n](int core) { return core < n ? core : n + (2 * n - 1 - core); };
    Matching m(static_cast<std::size_t>(2 * n));
    for (int p = 0; p < 2 * n; ++p) m[conv(p)] = conv(d.matching()[p]);
    return m;
}

Matching e_matching(int n, int i) {
    Matching m(static_cast<std::size_t>(2 * n));
    for (int k = 0; k < n; ++k) {
        m[k] = n + k;
        m[n + k] = k;
    }
    m[i - 1] = i;
    m[i] = i - 1;
    m[n + i - 1] = n + i;
    m[n + i] = n + i - 1;
    return m;
}

std::map<Matching, mpq_class> jw_at(int n, const mpq_class& q) {
    const mpq_class delta = q + 1 / q;
    const auto basis = noncrossing_matchings(n);
    Matching id(static_cast<std::size_t>(2 * n));
    for (int k = 0; k < n; ++k) {
        id[k] = n + k;
        id[n + k] = k;
    }
    std::map<Matching, int> col;
    for (const auto& b : basis) col.emplace(b, static_cast<int>(col.size()));
    const int m = static_cast<int>(basis.size());
    // rows: (i, result diagram); columns: coefficients, last column the identity contribution
    std::map<std::pair<int, int>, std::vector<mpq_class>> rows;
    for (int i = 1; i < n; ++i)
        for (const auto& b : basis) {
            auto [r, loops] = stack(e_matching(n, i), b);
            mpq_class w = 1;
            for (int l = 0; l < loops; ++l) w *= delta;
            auto& row = rows[{i, col.at(r)}];
            row.resize(static_cast<std::size_t>(m + 1));
            row[col.at(b)] += w;
        }
    const int idc = col.at(id);
    std::vector<std::vector<mpq_class>> a;
    for (auto& [k, row] : rows) {
        row[m] = -row[idc];  // move the fixed identity term to the right-hand side
        row[idc] = 0;
        a.push_back(row);
    }
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (int c = 0; c < m && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (k == r || a[k][c] == 0) continue;
            mpq_class f = a[k][c] / a[r][c];
            for (int j = c; j <= m; ++j) a[k][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::map<Matching, mpq_class> out;
    out[id] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) {
        mpq_class v = a[k][m] / a[k][pivot_col[k]];
        if (v != 0) out[basis[pivot_col[k]]] = v;
    }
    if (static_cast<int>(pivot_col.size()) != m - 1) throw std::runtime_error("jw_at: system is not determined");
    return out;
}

pgo::RadicalScalar e_entry(int i, const pgo::Path& top, const pgo::Path& bottom, const pgo::DimensionTable& dims) {
    for (std::size_t k = 0; k < top.size(); ++k)
        if (static_cast<int>(k) != i && top[k] != bottom[k]) return 0;
    if (top[i - 1] != top[i + 1]) return 0;
    return pgo::RadicalScalar::sqrt(dims.dim(top[i]) * dims.dim(bottom[i])) / pgo::RadicalScalar(dims.dim(top[i - 1]));
}

}  // namespace oracle
