#include "pgo/temperley_lieb.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <stdexcept>

namespace pgo {

TLDiagram::TLDiagram(std::vector<int> partner) : partner_(std::move(partner)) {
    const int m = static_cast<int>(partner_.size());
    if (m % 2) throw std::invalid_argument("TLDiagram: odd number of points");
    for (int i = 0; i < m; ++i) {
        int j = partner_[i];
        if (j < 0 || j >= m || j == i || partner_[j] != i) throw std::invalid_argument("TLDiagram: not a perfect matching");
        // arcs (i, j) and (k, l) cross iff exactly one of k, l lies strictly between i and j
        for (int k = std::min(i, j) + 1; k < std::max(i, j); ++k) {
            int l = partner_[k];
            if (l < std::min(i, j) || l > std::max(i, j)) throw std::invalid_argument("TLDiagram: crossing arcs");
        }
    }
}

TLDiagram TLDiagram::identity(int n) {
    std::vector<int> p(2 * n);
    for (int i = 0; i < n; ++i) {
        p[i] = 2 * n - 1 - i;
        p[2 * n - 1 - i] = i;
    }
    return TLDiagram(std::move(p));
}

TLDiagram TLDiagram::e(int n, int i) {
    if (i < 1 || i >= n) throw std::invalid_argument("TLDiagram::e: index out of range");
    std::vector<int> p = identity(n).partner_;
    // top points i, i+1 and the bottom points below them (labels 2n+1-i, 2n-i)
    int a = i - 1, b = i, c = 2 * n - i, d = 2 * n - 1 - i;
    p[a] = b;
    p[b] = a;
    p[c] = d;
    p[d] = c;
    return TLDiagram(std::move(p));
}

std::pair<TLDiagram, int> TLDiagram::compose(const TLDiagram& below) const {
    const int n = strands();
    if (below.strands() != n) throw std::invalid_argument("compose: strand count mismatch");
    // nodes 0..2n-1: this diagram, 2n..4n-1: below. Bottom point at position t
    // (from the left, 1-based) of the upper diagram has label 2n+1-t.
    auto glued = [&](int node) -> int {
        if (node < 2 * n) {
            if (node < n) return -1;
            int t = 2 * n - node;  // position from left
            return 2 * n + (t - 1);
        }
        int local = node - 2 * n;
        if (local >= n) return -1;
        int t = local + 1;
        return 2 * n - t;
    };
    auto mate = [&](int node) { return node < 2 * n ? partner_[node] : 2 * n + below.partner_[node - 2 * n]; };
    auto external_label = [&](int node) { return node < 2 * n ? node : node - 2 * n; };

    std::vector<int> result(2 * n, -1);
    std::vector<bool> seen(4 * n, false);
    auto trace = [&](int start) {
        int cur = start;
        while (true) {
            seen[cur] = true;
            int nxt = mate(cur);
            seen[nxt] = true;
            int g = glued(nxt);
            if (g < 0) return nxt;
            cur = g;
        }
    };
    for (int node = 0; node < 4 * n; ++node) {
        if (glued(node) >= 0 || seen[node]) continue;
        int end = trace(node);
        result[external_label(node)] = external_label(end);
        result[external_label(end)] = external_label(node);
    }
    int loops = 0;
    for (int node = 0; node < 4 * n; ++node) {
        if (seen[node] || glued(node) < 0) continue;
        ++loops;
        int cur = node;
        do {
            seen[cur] = true;
            int nxt = mate(cur);
            seen[nxt] = true;
            cur = glued(nxt);
        } while (cur != node);
    }
    return {TLDiagram(std::move(result)), loops};
}

TLDiagram TLDiagram::tensor_id() const {
    const int n = strands() + 1;
    std::vector<int> p(2 * n);
    auto relabel = [&](int x) { return x < n - 1 ? x : x + 2; };  // 0-based
    for (int i = 0; i < 2 * (n - 1); ++i) p[relabel(i)] = relabel(partner_[i]);
    p[n - 1] = n;
    p[n] = n - 1;
    return TLDiagram(std::move(p));
}

std::string TLDiagram::to_string() const {
    std::string s = "[";
    bool first = true;
    for (int i = 0; i < static_cast<int>(partner_.size()); ++i) {
        if (partner_[i] < i) continue;
        if (!first) s += ",";
        s += fmt::format("({},{})", i + 1, partner_[i] + 1);
        first = false;
    }
    return s + "]";
}

std::vector<TLDiagram> enumerate_tl(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("enumerate_tl: 1 <= n <= 8");
    std::vector<TLDiagram> out;
    std::vector<int> p(2 * n, -1);
    std::function<void(int)> rec = [&](int i) {
        while (i < 2 * n && p[i] >= 0) ++i;
        if (i == 2 * n) {
            out.emplace_back(p);
            return;
        }
        // match i with j so that the points strictly between can be matched among themselves
        for (int j = i + 1; j < 2 * n; j += 2) {
            if (p[j] >= 0) break;
            p[i] = j;
            p[j] = i;
            rec(i + 1);
            p[i] = p[j] = -1;
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

TLElement tl_multiply(const TLElement& a, const TLElement& b, const RationalFunction& delta) {
    TLElement r;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b) {
            auto [z, loops] = x.compose(y);
            RationalFunction c = cx * cy * delta.pow(loops);
            auto [it, fresh] = r.try_emplace(z, c);
            if (!fresh) it->second += c;
        }
    for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
    return r;
}

const TLElement& jw_expansion(int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("jw_expansion: 1 <= n <= 6");
    static std::mutex mu;
    static std::vector<TLElement> memo;
    std::lock_guard lock(mu);
    const RationalFunction delta = quantum_integer(2);
    if (memo.empty()) memo.push_back({{TLDiagram::identity(1), RationalFunction(1)}});
    while (static_cast<int>(memo.size()) < n) {
        int m = static_cast<int>(memo.size()) + 1;
        TLElement f;
        for (const auto& [d, c] : memo.back()) f.emplace(d.tensor_id(), c);
        TLElement e{{TLDiagram::e(m, m - 1), RationalFunction(1)}};
        TLElement fef = tl_multiply(tl_multiply(f, e, delta), f, delta);
        RationalFunction coef = quantum_integer(m - 1) / quantum_integer(m);
        for (const auto& [d, c] : fef) {
            auto [it, fresh] = f.try_emplace(d, -coef * c);
            if (!fresh) it->second -= coef * c;
        }
        for (auto it = f.begin(); it != f.end();) it = it->second.is_zero() ? f.erase(it) : std::next(it);
        memo.push_back(std::move(f));
    }
    return memo[n - 1];
}

std::vector<int> e_word(const TLDiagram& d) {
    const int n = d.strands();
    std::map<TLDiagram, std::vector<int>> words{{TLDiagram::identity(n), {}}};
    std::deque<TLDiagram> queue{TLDiagram::identity(n)};
    while (!queue.empty()) {
        TLDiagram cur = queue.front();
        queue.pop_front();
        if (cur == d) return words[cur];
        for (int i = 1; i < n; ++i) {
            auto [next, loops] = cur.compose(TLDiagram::e(n, i));
            if (loops || words.count(next)) continue;
            auto w = words[cur];
            w.push_back(i);
            words.emplace(next, std::move(w));
            queue.push_back(next);
        }
    }
    throw std::logic_error("e_word: diagram not reachable");
}

Box diagram_box(const TLDiagram& d, const DimensionTable& dims) {
    if (d.strands() != 4) throw std::invalid_argument("diagram_box: 4-strand diagrams only");
    Box r = identity_box(dims).restricted(in_subalgebra);
    for (int i : e_word(d)) r = multiply(r, e_box(i, dims).restricted(in_subalgebra));
    return r;
}

Box jw_box(const DimensionTable& dims) {
    std::array<Box, 4> e;
    for (int i = 1; i <= 3; ++i) e[i] = e_box(i, dims).restricted(in_subalgebra);
    Box id = identity_box(dims).restricted(in_subalgebra);
    Box f(Shape{4, 4});
    for (const auto& [d, c] : jw_expansion(4)) {
        Box b = id;
        for (int i : e_word(d)) b = multiply(b, e[i]);
        f = f + b * RadicalScalar(c);
    }
    return f;
}

}  // namespace pgo
