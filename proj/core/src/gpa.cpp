#include "pgo/gpa.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>

namespace pgo {

namespace {
constexpr std::array<int, kVertexCount> kDepth{0, 1, 2, 3, 4, 4, 5, 5};
constexpr std::array<std::string_view, kVertexCount> kName{"0", "1", "2", "3", "P", "Q", "P'", "Q'"};
}  // namespace

int depth_of(Vertex v) { return kDepth[v]; }
std::string_view vertex_name(Vertex v) { return kName[v]; }

const std::vector<Vertex>& neighbours(Vertex v) {
    static const std::array<std::vector<Vertex>, kVertexCount> adj{{
        {V1},
        {V0, V2},
        {V1, V3},
        {V2, VP, VQ},
        {V3, VPp},
        {V3, VQp},
        {VP},
        {VQ},
    }};
    return adj[v];
}

std::array<RLinear, kVertexCount> symbolic_dimensions() {
    auto chain = [](int n) {
        RationalFunction d = quantum_integer(n);
        return RLinear{d, d};
    };
    RationalFunction five = quantum_integer(5), two = quantum_integer(2), d3 = quantum_integer(4);
    return {chain(1),
            chain(2),
            chain(3),
            chain(4),
            RLinear{five, 0},
            RLinear{0, five},
            RLinear{two * five - d3, -d3},
            RLinear{-d3, two * five - d3}};
}

DimensionTable::DimensionTable(Omega omega) : omega_(omega), delta_(quantum_integer(2)) {
    for (int n = 0; n < 4; ++n) d_[n] = quantum_integer(n + 1);
    RationalFunction five = quantum_integer(5);
    if (omega == Omega::Minus) {
        r_ = 1;
        d_[VP] = d_[VQ] = five / 2;
    } else {
        d_[VP] = (five + 1) / 2;
        d_[VQ] = (five - 1) / 2;
        r_ = d_[VP] / d_[VQ];
    }
    d_[VPp] = delta_ * d_[VP] - d_[V3];
    d_[VQp] = delta_ * d_[VQ] - d_[V3];
    for (int b = 0; b < kVertexCount; ++b)
        for (int a = 0; a < kVertexCount; ++a) {
            RationalFunction q = d_[b] / d_[a];
            full_[b][a] = RadicalScalar(q);
            half_[b][a] = RadicalScalar::sqrt(q);
        }
}

DimensionTable dimension_table(Omega omega) { return DimensionTable(omega); }

Loop make_loop(const std::vector<Vertex>& vertices) {
    if (vertices.size() > static_cast<std::size_t>(Loop::kMax)) throw std::invalid_argument("loop too long");
    Loop l;
    l.n = static_cast<std::uint8_t>(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) l.v[i] = vertices[i];
    return l;
}

Loop loop_from_paths(const Path& top, const Path& bottom) {
    if (top.size() != 5 || bottom.size() != 5 || top.front() != bottom.front() || top.back() != bottom.back())
        throw std::invalid_argument("loop_from_paths: need two length-4 paths with common endpoints");
    return make_loop({top[0], top[1], top[2], top[3], top[4], bottom[3], bottom[2], bottom[1]});
}

std::pair<Path, Path> paths_of(const Loop& l) {
    if (l.size() != 8) throw std::invalid_argument("paths_of: not a 4-box loop");
    return {{l[0], l[1], l[2], l[3], l[4]}, {l[0], l[7], l[6], l[5], l[4]}};
}

std::string path_string(const Path& p) {
    std::string s;
    for (Vertex v : p) s += vertex_name(v);
    return s;
}

std::string loop_string(const Loop& l) {
    if (l.size() == 8) {
        auto [a, b] = paths_of(l);
        return path_string(a) + "|" + path_string(b);
    }
    std::string s;
    for (int i = 0; i < l.size(); ++i) {
        if (i) s += '-';
        s += vertex_name(l[i]);
    }
    return s;
}

Path parse_path(std::string_view s) {
    Path p;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        Vertex v;
        if (c >= '0' && c <= '3')
            v = static_cast<Vertex>(c - '0');
        else if (c == 'P' || c == 'Q') {
            bool prime = i + 1 < s.size() && s[i + 1] == '\'';
            v = c == 'P' ? (prime ? VPp : VP) : (prime ? VQp : VQ);
            if (prime) ++i;
        } else
            throw std::invalid_argument(fmt::format("bad vertex '{}' in path '{}'", c, s));
        if (!p.empty()) {
            const auto& nb = neighbours(p.back());
            if (std::find(nb.begin(), nb.end(), v) == nb.end())
                throw std::invalid_argument(fmt::format("'{}' is not a path of the graph", s));
        }
        p.push_back(v);
    }
    return p;
}

Loop parse_entry(std::string_view s) {
    auto comma = s.find(',');
    if (comma == std::string_view::npos) comma = s.find('|');
    if (comma == std::string_view::npos) throw std::invalid_argument("entry must be 'path,path'");
    return loop_from_paths(parse_path(s.substr(0, comma)), parse_path(s.substr(comma + 1)));
}

int max_depth(const Loop& l) {
    int d = 0;
    for (int i = 0; i < l.size(); ++i) d = std::max(d, depth_of(l[i]));
    return d;
}

bool in_subalgebra(const Loop& l) {
    auto ok = [](Vertex v) { return v == V0 || v == V2 || v == VP || v == VQ; };
    Vertex a = l[0], b = l[4];
    return l.size() == 8 && ok(a) && ok(b) && !(a == VP && b == VP) && !(a == VQ && b == VQ);
}

std::vector<Path> paths_between(Vertex a, Vertex b, int length, int depth_bound) {
    std::vector<Path> out;
    Path cur{a};
    std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) == length + 1) {
            if (cur.back() == b) out.push_back(cur);
            return;
        }
        for (Vertex w : neighbours(cur.back())) {
            if (depth_of(w) > depth_bound) continue;
            cur.push_back(w);
            rec();
            cur.pop_back();
        }
    };
    if (depth_of(a) <= depth_bound) rec();
    return out;
}

std::vector<Loop> enumerate_block(Vertex a, Vertex b, int depth_bound) {
    if (depth_of(a) % 2 || depth_of(b) % 2) throw std::invalid_argument("enumerate_block: odd-depth vertex");
    auto ps = paths_between(a, b, 4, depth_bound);
    std::vector<Loop> out;
    for (const auto& p : ps)
        for (const auto& p2 : ps) out.push_back(loop_from_paths(p, p2));
    return out;
}

std::vector<Loop> enumerate_loops(Shape s, int depth_bound) {
    std::vector<Loop> out;
    for (int a = 0; a < kVertexCount; ++a) {
        if (depth_of(static_cast<Vertex>(a)) % 2) continue;
        for (const auto& p : paths_between(static_cast<Vertex>(a), static_cast<Vertex>(a), s.length(), depth_bound))
            out.push_back(make_loop(Path(p.begin(), p.end() - 1)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

RadicalScalar Box::at(const Loop& l) const {
    auto it = entries_.find(l);
    return it == entries_.end() ? RadicalScalar() : it->second;
}

void Box::set(const Loop& l, const RadicalScalar& x) {
    if (x.is_zero())
        entries_.erase(l);
    else
        entries_[l] = x;
}

void Box::add(const Loop& l, const RadicalScalar& x) {
    if (x.is_zero()) return;
    auto [it, fresh] = entries_.try_emplace(l, x);
    if (!fresh) {
        it->second += x;
        if (it->second.is_zero()) entries_.erase(it);
    }
}

Box Box::operator+(const Box& o) const {
    Box r = *this;
    for (const auto& [l, x] : o.entries_) r.add(l, x);
    return r;
}

Box Box::operator-(const Box& o) const {
    Box r = *this;
    for (const auto& [l, x] : o.entries_) r.add(l, -x);
    return r;
}

Box Box::operator*(const RadicalScalar& s) const {
    Box r(shape_);
    if (s.is_zero()) return r;
    for (const auto& [l, x] : entries_) r.entries_.emplace(l, x * s);
    return r;
}

Box Box::restricted(const std::function<bool(const Loop&)>& keep) const {
    Box r(shape_);
    for (const auto& [l, x] : entries_)
        if (keep(l)) r.entries_.emplace(l, x);
    return r;
}

nlohmann::json Box::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [l, x] : entries_) {
        std::string block = l.size() == 8 ? fmt::format("{},{}", vertex_name(l[0]), vertex_name(l[4])) : "";
        arr.push_back({{"block", block}, {"loop", loop_string(l)}, {"value", x.to_string()}});
    }
    return arr;
}

Box multiply(const Box& x, const Box& y) {
    if (x.shape() != Shape{4, 4} || y.shape() != Shape{4, 4}) throw std::invalid_argument("multiply: 4-boxes only");
    // index y by its top path
    std::map<Path, std::vector<std::pair<Path, const RadicalScalar*>>> by_top;
    for (const auto& [l, v] : y.entries()) {
        auto [top, bottom] = paths_of(l);
        by_top[top].emplace_back(bottom, &v);
    }
    Box r(Shape{4, 4});
    for (const auto& [l, v] : x.entries()) {
        auto [top, mid] = paths_of(l);
        auto it = by_top.find(mid);
        if (it == by_top.end()) continue;
        for (const auto& [bottom, w] : it->second) r.add(loop_from_paths(top, bottom), v * *w);
    }
    return r;
}

Box adjoint(const Box& x) {
    Box r(x.shape());
    for (const auto& [l, v] : x.entries()) {
        auto [top, bottom] = paths_of(l);
        r.set(loop_from_paths(bottom, top), v.conj());
    }
    return r;
}

Shape cap_shape(Shape s, int apex) {
    const int L = s.length();
    if (apex < 0 || apex >= L) throw std::invalid_argument("cap: apex out of range");
    if (apex == 0 || apex == s.k) return {s.k - 1, s.m - 1};
    if (apex < s.k) return {s.k - 2, s.m};
    return {s.k, s.m - 2};
}

bool cap_kappa_full(Shape s, int apex) { return apex == 0 || apex == s.k; }

Vertex cap_alpha(const Loop& l, Shape s, int apex) {
    const int L = s.length();
    if (apex == 0) return l[1];
    if (apex == L - 1) return l[0];
    return l[apex - 1];
}

namespace {
bool apex_sides_equal(const Loop& l, Shape s, int apex) {
    const int L = s.length();
    return l[(apex + L - 1) % L] == l[(apex + 1) % L];
}
}  // namespace

Loop remove_at(const Loop& l, Shape s, int apex) {
    const int L = s.length();
    std::vector<Vertex> out;
    for (int i = 0; i < L; ++i) {
        bool drop = apex == 0 ? (i == 0 || i == L - 1) : apex == L - 1 ? (i == L - 1 || i == L - 2)
                                                                      : (i == apex || i == apex + 1);
        if (!drop) out.push_back(l[i]);
    }
    return make_loop(out);
}

Loop insert_at(const Loop& lower, Shape upper, int apex, Vertex beta) {
    const int L = upper.length();
    std::vector<Vertex> v;
    for (int i = 0; i < lower.size(); ++i) v.push_back(lower[i]);
    if (static_cast<int>(v.size()) != L - 2) throw std::invalid_argument("insert_at: shape mismatch");
    if (apex == 0) {
        v.insert(v.begin(), beta);
        v.push_back(v[1]);
    } else if (apex == L - 1) {
        v.push_back(v[0]);
        v.push_back(beta);
    } else {
        Vertex alpha = v[apex - 1];
        v.insert(v.begin() + apex, {beta, alpha});
    }
    return make_loop(v);
}

bool cap_complete(const Loop& lower, Shape upper, int apex, const std::function<bool(const Loop&)>& known) {
    Vertex alpha = apex == 0 || apex == upper.length() - 1 ? lower[0] : lower[apex - 1];
    if (!neighbourhood_complete(alpha)) return false;
    for (Vertex b : neighbours(alpha))
        if (!known(insert_at(lower, upper, apex, b))) return false;
    return true;
}

Box cap(const Box& s, int apex, const DimensionTable& dims) {
    Shape sh = s.shape();
    Box r(cap_shape(sh, apex));
    bool full = cap_kappa_full(sh, apex);
    for (const auto& [l, x] : s.entries()) {
        if (!apex_sides_equal(l, sh, apex)) continue;
        r.add(remove_at(l, sh, apex), dims.ratio(l[apex], cap_alpha(l, sh, apex), full) * x);
    }
    return r;
}

Box cup(const Box& t, Shape upper, int apex, const DimensionTable& dims) {
    if (cap_shape(upper, apex) != t.shape()) throw std::invalid_argument("cup: shape mismatch");
    Box r(upper);
    bool full = cap_kappa_full(upper, apex);
    const int L = upper.length();
    for (const auto& [l, x] : t.entries()) {
        Vertex alpha = apex == 0 || apex == L - 1 ? l[0] : l[apex - 1];
        for (Vertex b : neighbours(alpha)) {
            // weight (dim b / dim alpha)^(1 - kappa)
            if (full)
                r.add(insert_at(l, upper, apex, b), x);
            else
                r.add(insert_at(l, upper, apex, b), dims.ratio(b, alpha, false) * x);
        }
    }
    return r;
}

Box click(const Box& s, const DimensionTable& dims) {
    Shape sh = s.shape();
    Box left = cap(cup(s, {sh.k + 1, sh.m + 1}, 0, dims), 1, dims);  // shape (k-1, m+1)
    Shape mid_shape{sh.k, sh.m + 2};
    return cap(cup(left, mid_shape, sh.k, dims), sh.k + 1, dims);
}

Box rotate(const Box& s, const DimensionTable& dims) { return click(click(s, dims), dims); }

RotationImage rotation_image(const Loop& source, const DimensionTable& dims) {
    Box b(Shape{4, 4});
    b.set(source, RadicalScalar(1));
    Box r = rotate(b, dims);
    if (r.entries().size() != 1) throw std::logic_error("rotation of a basis loop is not a single loop");
    const auto& [l, w] = *r.entries().begin();
    return {l, w};
}

Box identity_box(Shape s, const DimensionTable&) {
    if (s.k != s.m) throw std::invalid_argument("identity_box: needs k == m");
    Box r(s);
    const int L = s.length();
    for (const Loop& l : enumerate_loops(s, 5)) {
        bool id = true;
        for (int i = 1; i < s.k; ++i) id = id && l[i] == l[L - i];
        if (id) r.set(l, RadicalScalar(1));
    }
    return r;
}

Box identity_box(const DimensionTable& dims) { return identity_box(Shape{4, 4}, dims); }

Box e_box(int i, const DimensionTable& dims) {
    if (i < 1 || i > 3) throw std::invalid_argument("e_box: i must be 1, 2 or 3");
    Box id = identity_box(Shape{2, 2}, dims);
    Box top = cup(id, Shape{4, 2}, i, dims);
    return cup(top, Shape{4, 4}, 8 - i, dims);
}

}  // namespace pgo
