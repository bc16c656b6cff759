#include "pgo/lowweight.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace pgo {
namespace {

// Graph distance to the vertex 3.
int dist3(Vertex v) {
    switch (v) {
        case V3: return 0;
        case V2: case VP: case VQ: return 1;
        case V1: case VPp: case VQp: return 2;
        default: return 3;
    }
}

Vertex toward3(Vertex v) {
    for (Vertex w : neighbours(v))
        if (dist3(w) < dist3(v)) return w;
    throw std::logic_error("toward3: vertex 3 has no nearer neighbour");
}

bool on_initial_arm(Vertex v) { return v == V0 || v == V1 || v == V2 || v == V3; }

std::string walk_string(const Loop& l) {
    std::string s;
    for (int i = 0; i < l.size(); ++i) s += vertex_name(l[i]);
    return s;
}

std::string entry_string(const Loop& l) {
    auto [top, bottom] = paths_of(l);
    return path_string(top) + "," + path_string(bottom);
}

}  // namespace

Loop collapsed_loop(const CollapsedTuple& t) { return make_loop({t[0], V3, t[1], V3, t[2], V3, t[3], V3}); }

std::optional<CollapsedTuple> as_collapsed(const Loop& l) {
    if (l.size() != 8) return std::nullopt;
    for (int i = 1; i < 8; i += 2)
        if (l[i] != V3) return std::nullopt;
    return CollapsedTuple{l[0], l[2], l[4], l[6]};
}

std::string tuple_string(const CollapsedTuple& t) {
    std::string s;
    for (Vertex v : t) s += vertex_name(v);
    return s;
}

std::vector<CollapsedTuple> collapsed_tuples() {
    const Vertex vs[] = {V2, VP, VQ};
    std::vector<CollapsedTuple> out;
    for (Vertex a : vs)
        for (Vertex b : vs)
            for (Vertex c : vs)
                for (Vertex d : vs) out.push_back({a, b, c, d});
    return out;
}

CollapseResult collapse(const Loop& l, const DimensionTable& dims, const CollapseOptions& opt) {
    if (l.size() != 8) throw std::invalid_argument("collapse: 4-box loops only");
    std::array<Vertex, 8> v;
    for (int i = 0; i < 8; ++i) v[i] = l[i];
    for (int i = 0; i < 8; ++i) {
        const auto& nb = neighbours(v[i]);
        if (std::find(nb.begin(), nb.end(), v[(i + 1) % 8]) == nb.end())
            throw std::invalid_argument("collapse: not a loop of the graph");
    }
    CollapseResult res;
    if (std::all_of(v.begin(), v.end(), on_initial_arm)) {
        res.zero = true;
        return res;
    }
    res.factor = RadicalScalar(1);
    while (true) {
        std::vector<int> sites;
        for (int i = 0; i < 8; ++i) {
            Vertex a = v[(i + 7) % 8], b = v[(i + 1) % 8];
            if (a == V0 && b == V0) {
                res.zero = true;  // a cap next to 0 sees only 1
                return res;
            }
            if (a == b && a != V3 && dist3(v[i]) > dist3(a)) sites.push_back(i);
        }
        if (sites.empty()) break;
        int i = sites.front();
        if (opt.rng) i = sites[std::uniform_int_distribution<std::size_t>(0, sites.size() - 1)(*opt.rng)];
        Vertex alpha = v[(i + 7) % 8], far = v[i], near = toward3(alpha);
        // cap relation at alpha: (d_far/d_alpha)^k S(far) + (d_near/d_alpha)^k S(near) = 0
        RadicalScalar f = -dims.ratio(near, far, i == 0 || i == 4);
        if (opt.flip_lws2_sign && alpha == V2) f = -f;
        res.factor *= f;
        v[i] = near;
    }
    auto t = as_collapsed(make_loop({v.begin(), v.end()}));
    if (!t) throw std::logic_error("collapse: rewriting stopped away from vertex 3");
    if (*t == CollapsedTuple{V2, V2, V2, V2}) {
        res.zero = true;
        res.factor = RadicalScalar();
        return res;
    }
    res.target = *t;
    return res;
}

std::vector<Orbit> orbit_decomposition(const DimensionTable& dims) {
    const RadicalScalar omega(static_cast<long>(dims.omega()));
    std::set<CollapsedTuple> seen;
    std::vector<Orbit> out;
    for (const auto& t : collapsed_tuples()) {
        if (seen.count(t)) continue;
        Orbit o;
        o.members.push_back(t);
        o.weights.push_back(RadicalScalar(1));
        seen.insert(t);
        CollapsedTuple cur = t;
        RadicalScalar w(1);
        while (true) {
            // rotate(S) = omega S gives S(target) = omega * weight * S(source)
            RotationImage img = rotation_image(collapsed_loop(cur), dims);
            auto next = as_collapsed(img.target);
            if (!next) throw std::logic_error("rotation leaves the collapsed loops");
            w = omega * img.weight * w;
            if (*next == t) {
                if (w != RadicalScalar(1)) {
                    o.forced_zero = true;
                    o.reason = fmt::format("rotation around the orbit multiplies by {}", w.to_string());
                }
                break;
            }
            o.members.push_back(*next);
            o.weights.push_back(w);
            seen.insert(*next);
            cur = *next;
        }
        if (t == CollapsedTuple{V2, V2, V2, V2}) {
            o.forced_zero = true;
            o.reason = "confined to the initial arm";
        }
        out.push_back(std::move(o));
    }
    return out;
}

namespace {

struct OrbitIndex {
    std::map<CollapsedTuple, std::pair<int, int>> where;  // orbit, member
    explicit OrbitIndex(const std::vector<Orbit>& orbits) {
        for (int o = 0; o < static_cast<int>(orbits.size()); ++o)
            for (int m = 0; m < static_cast<int>(orbits[o].members.size()); ++m) where[orbits[o].members[m]] = {o, m};
    }
};

}  // namespace

std::vector<LinearEquation> lws3_system(const DimensionTable& dims, const std::vector<Orbit>& orbits,
                                        const CollapseOptions& opt) {
    OrbitIndex index(orbits);
    const Shape sh{4, 4};
    std::set<std::pair<int, Loop>> done;
    std::vector<LinearEquation> out;
    for (const auto& t : collapsed_tuples()) {
        Loop L = collapsed_loop(t);
        for (int j = 0; j < 8; j += 2) {
            Loop lower = remove_at(L, sh, j);
            if (!done.insert({j, lower}).second) continue;
            const bool full = cap_kappa_full(sh, j);
            std::map<int, RadicalScalar> acc;
            for (Vertex beta : neighbours(V3)) {
                auto bt = as_collapsed(insert_at(lower, sh, j, beta));
                auto [o, m] = index.where.at(*bt);
                if (orbits[o].forced_zero) continue;
                RadicalScalar w = dims.ratio(beta, V3, full) * orbits[o].weights[m];
                if (opt.flip_lws3_p_sign && beta == VP) w = -w;
                acc[o] += w;
            }
            LinearEquation eq{fmt::format("lws-3 apex {} below {}", j, walk_string(lower)), {}};
            for (auto& [o, c] : acc)
                if (!c.is_zero()) eq.terms.emplace_back(o, c);
            if (!eq.terms.empty()) out.push_back(std::move(eq));
        }
    }
    return out;
}

bool AffineExpr::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const RadicalScalar& x) { return x.is_zero(); });
}

SymbolicBox::SymbolicBox(std::vector<std::string> params, std::vector<Box> parts)
    : params_(std::move(params)), parts_(std::move(parts)) {
    if (parts_.size() != params_.size() + 1) throw std::invalid_argument("SymbolicBox: need one part per parameter plus a constant");
}

AffineExpr SymbolicBox::at(const Loop& l) const {
    AffineExpr e;
    for (const auto& p : parts_) e.c.push_back(p.at(l));
    return e;
}

std::vector<Loop> SymbolicBox::support() const {
    std::set<Loop> s;
    for (const auto& p : parts_)
        for (const auto& [l, x] : p.entries()) s.insert(l);
    return {s.begin(), s.end()};
}

SymbolicBox SymbolicBox::restricted(const std::function<bool(const Loop&)>& keep) const {
    std::vector<Box> parts;
    for (const auto& p : parts_) parts.push_back(p.restricted(keep));
    return SymbolicBox(params_, std::move(parts));
}

nlohmann::json SymbolicBox::to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (const Loop& l : support()) {
        nlohmann::json terms = nlohmann::json::object();
        AffineExpr e = at(l);
        if (!e.c[0].is_zero()) terms["1"] = e.c[0].to_string();
        for (std::size_t i = 0; i < params_.size(); ++i)
            if (!e.c[i + 1].is_zero()) terms[params_[i]] = e.c[i + 1].to_string();
        entries.push_back({{"block", fmt::format("{},{}", vertex_name(l[0]), vertex_name(l[4]))},
                           {"loop", loop_string(l)},
                           {"value", terms}});
    }
    return {{"parameters", params_}, {"entries", entries}};
}

SymbolicBox SolutionSpace::on_subalgebra() const { return box.restricted(in_subalgebra); }

nlohmann::json SolutionSpace::to_json() const {
    nlohmann::json sides = nlohmann::json::array();
    for (const auto& s : side_conditions) sides.push_back(s.to_string());
    return {{"omega", static_cast<int>(omega)},
            {"collapsed_loops", collapsed_loops},
            {"orbits", orbits},
            {"forced_zero_orbits", forced_zero_orbits},
            {"unknowns", unknowns},
            {"equations", equations},
            {"rank", rank},
            {"dimension", dimension},
            {"side_conditions", sides},
            {"box", on_subalgebra().to_json()}};
}

SolutionSpace assemble_solution_space(const DimensionTable& dims, const CollapseOptions& opt) {
    SolutionSpace sp;
    sp.omega = dims.omega();
    auto orbits = orbit_decomposition(dims);
    auto eqs = lws3_system(dims, orbits, opt);
    sp.collapsed_loops = static_cast<int>(collapsed_tuples().size());
    sp.orbits = static_cast<int>(orbits.size());
    sp.equations = static_cast<int>(eqs.size());

    // columns: non-forced orbits in lexicographic order of their representatives
    std::vector<int> col_orbit;
    std::map<int, int> orbit_col;
    for (int o = 0; o < sp.orbits; ++o) {
        if (orbits[o].forced_zero) {
            ++sp.forced_zero_orbits;
            continue;
        }
        orbit_col[o] = static_cast<int>(col_orbit.size());
        col_orbit.push_back(o);
    }
    const int n = static_cast<int>(col_orbit.size());
    sp.unknowns = n;

    std::vector<std::vector<RadicalScalar>> rows;
    for (const auto& e : eqs) {
        std::vector<RadicalScalar> row(n);
        for (const auto& [o, c] : e.terms) row[orbit_col.at(o)] = c;
        rows.push_back(std::move(row));
    }
    // exact reduced row echelon form
    std::vector<int> pivot_row_of(n, -1);
    std::set<RationalFunction> sides;
    int r = 0;
    for (int c = 0; c < n && r < static_cast<int>(rows.size()); ++c) {
        int p = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (!rows[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(rows[r], rows[p]);
        const RadicalScalar piv = rows[r][c];
        RationalFunction side = divisor_condition(piv);
        if (side.num().degree() > 0 || side.den().degree() > 0) sides.insert(side);
        RadicalScalar inv = piv.inverse();
        for (auto& x : rows[r]) x *= inv;
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            RadicalScalar f = rows[i][c];
            for (int k = c; k < n; ++k)
                if (!rows[r][k].is_zero()) rows[i][k] -= f * rows[r][k];
        }
        pivot_row_of[c] = r++;
    }
    sp.rank = r;
    for (std::size_t i = r; i < rows.size(); ++i)
        for (const auto& x : rows[i])
            if (!x.is_zero()) throw std::logic_error("assemble_solution_space: inconsistent elimination");
    sp.side_conditions.assign(sides.begin(), sides.end());

    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (pivot_row_of[c] < 0) free_cols.push_back(c);
    sp.dimension = static_cast<int>(free_cols.size());
    const int k = sp.dimension;

    // orbit representative value as an affine expression in the free unknowns
    std::vector<AffineExpr> rep(sp.orbits);
    for (int o = 0; o < sp.orbits; ++o) rep[o].c.assign(k + 1, RadicalScalar());
    std::vector<std::string> names;
    for (int p = 0; p < k; ++p) {
        int c = free_cols[p];
        const Orbit& o = orbits[col_orbit[c]];
        sp.parameter_tuples.push_back(o.members[0]);
        names.push_back("S[" + entry_string(collapsed_loop(o.members[0])) + "]");
        rep[col_orbit[c]].c[p + 1] = RadicalScalar(1);
        for (int cc = 0; cc < n; ++cc)
            if (pivot_row_of[cc] >= 0) rep[col_orbit[cc]].c[p + 1] = -rows[pivot_row_of[cc]][c];
    }

    OrbitIndex index(orbits);
    std::vector<Box> parts(k + 1, Box(Shape{4, 4}));
    for (const Loop& l : enumerate_loops(Shape{4, 4}, 5)) {
        CollapseResult cr = collapse(l, dims, opt);
        if (cr.zero) continue;
        auto [o, m] = index.where.at(cr.target);
        if (orbits[o].forced_zero) continue;
        RadicalScalar f = cr.factor * orbits[o].weights[m];
        for (int p = 0; p <= k; ++p)
            if (!rep[o].c[p].is_zero()) parts[p].set(l, f * rep[o].c[p]);
    }
    sp.box = SymbolicBox(std::move(names), std::move(parts));
    return sp;
}

bool annihilated_by_caps(const SymbolicBox& s, const DimensionTable& dims) {
    const Shape sh{4, 4};
    auto known = [](const Loop&) { return true; };
    for (const Box& part : s.parts())
        for (int j = 0; j < sh.length(); ++j) {
            Box c = cap(part, j, dims);
            for (const auto& [lower, x] : c.entries())
                if (!x.is_zero() && cap_complete(lower, sh, j, known)) return false;
        }
    return true;
}

bool is_rotation_eigenvector(const SymbolicBox& s, const DimensionTable& dims) {
    const RadicalScalar omega(static_cast<long>(dims.omega()));
    for (const Box& part : s.parts())
        if (!(rotate(part, dims) == part * omega)) return false;
    return true;
}

}  // namespace pgo
