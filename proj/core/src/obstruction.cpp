#include "pgo/obstruction.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <deque>

#include "pgo/temperley_lieb.hpp"

namespace pgo {

// ---------------------------------------------------------------- QuadPoly

QuadPoly::QuadPoly(const RadicalScalar& c) {
    if (!c.is_zero()) terms_[{}] = c;
}

QuadPoly QuadPoly::variable(int v) {
    QuadPoly p;
    p.terms_[{v}] = RadicalScalar(1);
    return p;
}

bool QuadPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

RadicalScalar QuadPoly::constant() const { return coefficient({}); }

RadicalScalar QuadPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? RadicalScalar() : it->second;
}

std::set<int> QuadPoly::variables() const {
    std::set<int> s;
    for (const auto& [m, c] : terms_) s.insert(m.begin(), m.end());
    return s;
}

int QuadPoly::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.size()));
    return d;
}

void QuadPoly::add_term(const Monomial& m, const RadicalScalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

QuadPoly QuadPoly::operator-() const {
    QuadPoly r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

QuadPoly& QuadPoly::operator+=(const QuadPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

QuadPoly& QuadPoly::operator-=(const QuadPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

QuadPoly operator*(const QuadPoly& a, const QuadPoly& b) {
    QuadPoly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            QuadPoly::Monomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            std::sort(m.begin(), m.end());
            r.add_term(m, ca * cb);
        }
    return r;
}

QuadPoly QuadPoly::substitute(int v, const RadicalScalar& value) const {
    QuadPoly r;
    for (const auto& [m, c] : terms_) {
        Monomial rest;
        RadicalScalar f = c;
        for (int x : m) {
            if (x == v)
                f *= value;
            else
                rest.push_back(x);
        }
        r.add_term(rest, f);
    }
    return r;
}

std::string QuadPoly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!s.empty()) s += " + ";
        s += "(" + it->second.to_string() + ")";
        for (int v : it->first) s += "*" + names.at(v);
    }
    return s;
}

// ---------------------------------------------------------------- context


EliminationContext::EliminationContext(const DimensionTable& dims, const std::vector<Target>& targets,
                                       const CollapseOptions& opt)
    : dims_(dims), space_(assemble_solution_space(dims, opt)), jw_(jw_box(dims)) {
    const int k = space_.dimension;
    const int m = static_cast<int>(targets.size());
    // rows: target linear forms in the old parameters, augmented with the identity
    std::vector<std::vector<RadicalScalar>> A(m, std::vector<RadicalScalar>(k)), M(m, std::vector<RadicalScalar>(m));
    std::vector<RadicalScalar> c0(m);
    for (int i = 0; i < m; ++i) {
        AffineExpr e = space_.box.at(parse_entry(targets[i].entry));
        c0[i] = e.c[0];
        for (int p = 0; p < k; ++p) A[i][p] = e.c[p + 1];
        M[i][i] = RadicalScalar(1);
    }
    std::vector<int> pivot_col(m, -1);
    int r = 0;
    for (int c = 0; c < k && r < m; ++c) {
        int p = -1;
        for (int i = r; i < m; ++i)
            if (!A[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(A[r], A[p]);
        std::swap(M[r], M[p]);
        RadicalScalar inv = A[r][c].inverse();
        for (auto& x : A[r]) x *= inv;
        for (auto& x : M[r]) x *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == r || A[i][c].is_zero()) continue;
            RadicalScalar f = A[i][c];
            for (int j = 0; j < k; ++j) A[i][j] -= f * A[r][j];
            for (int j = 0; j < m; ++j) M[i][j] -= f * M[r][j];
        }
        pivot_col[r++] = c;
    }
    if (r < m) {
        std::string names;
        for (const auto& t : targets) names += " " + t.name;
        throw EliminationError("target entries are linearly dependent on the solution space:" + names);
    }
    for (const auto& t : targets) names_.push_back(t.name);
    std::vector<int> var_of_param(k, -1);
    std::vector<bool> is_pivot(k, false);
    for (int i = 0; i < m; ++i) is_pivot[pivot_col[i]] = true;
    for (int p = 0; p < k; ++p)
        if (!is_pivot[p]) {
            var_of_param[p] = static_cast<int>(names_.size());
            names_.push_back(space_.box.params()[p]);
        }
    param_in_vars_.assign(k, QuadPoly());
    for (int p = 0; p < k; ++p)
        if (!is_pivot[p]) param_in_vars_[p] = QuadPoly::variable(var_of_param[p]);
    for (int i = 0; i < m; ++i) {
        // t_pc + sum_free A t_f = sum_j M_ij (E_j - c0_j)
        QuadPoly e;
        for (int j = 0; j < m; ++j)
            if (!M[i][j].is_zero()) e += QuadPoly(M[i][j]) * (QuadPoly::variable(j) - QuadPoly(c0[j]));
        for (int p = 0; p < k; ++p)
            if (!is_pivot[p] && !A[i][p].is_zero()) e -= QuadPoly(A[i][p]) * QuadPoly::variable(var_of_param[p]);
        param_in_vars_[pivot_col[i]] = e;
    }
}

int EliminationContext::variable_index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw EliminationError("unknown variable " + name);
    return static_cast<int>(it - names_.begin());
}

QuadPoly EliminationContext::entry(const Loop& l) const {
    if (!in_subalgebra(l)) throw std::invalid_argument("entry outside the subalgebra: " + loop_string(l));
    AffineExpr e = space_.box.at(l);
    QuadPoly r(e.c[0]);
    for (std::size_t p = 0; p < param_in_vars_.size(); ++p)
        if (!e.c[p + 1].is_zero()) r += QuadPoly(e.c[p + 1]) * param_in_vars_[p];
    return r;
}

QuadPoly EliminationContext::component(const Loop& l) const {
    if (!in_subalgebra(l)) throw std::invalid_argument("component outside the subalgebra: " + loop_string(l));
    auto [x, y] = paths_of(l);
    QuadPoly sum;
    for (const Path& g : paths_between(x.front(), x.back(), 4, 5))
        sum += entry(loop_from_paths(x, g)) * entry(loop_from_paths(g, y));
    RadicalScalar r(dims_.r());
    sum -= QuadPoly(RadicalScalar(1) - r) * entry(l);
    sum -= QuadPoly(r * jw_.at(l));
    return sum;
}

QuadPoly component_poly(const EliminationContext& ctx, const Loop& l) { return ctx.component(l); }

// ---------------------------------------------------------------- script

std::vector<Target> default_targets() {
    return {{"kappa~", "0123P,0123P"},
            {"S[23P32,23P32]", "23P32,23P32"},
            {"S[2323P,23P3P]", "2323P,23P3P"},
            {"S[23P3P,23P3P]", "23P3P,23P3P"}};
}

std::vector<Stage> default_script(Omega omega) {
    const DimensionTable dims = dimension_table(omega);
    const RadicalScalar minus_r = -RadicalScalar(dims.r());
    using K = Stage::Kind;
    Stage norm{K::Solve, "normalization", "0123P,0123P", "kappa~", "", {{"kappa~=1", RadicalScalar(1)}, {"kappa~=-r", minus_r}}, {}, {}};
    std::vector<Stage> s;
    if (omega == Omega::Minus) {
        norm.prune = {{minus_r, "S -> -S is a symmetry of the quadratic identity when r = 1"}};
        s.push_back(norm);
        s.push_back({K::Solve, "stage11a", "23232,23P32", "S[23P32,23P32]", "kappa~=1", {}, {}, {}});
        s.push_back({K::Solve, "stage11b", "2323P,2323P", "S[2323P,23P3P]", "kappa~=1", {}, {"rho+", "rho-"}, {}});
        s.push_back({K::Solve, "stage12", "2323P,23P3P", "S[23P3P,23P3P]", "kappa~=1", {}, {}, {}});
        s.push_back({K::Condition, "final", "P323Q,P323Q", "", "kappa~=1", {}, {}, {}});
    } else {
        const RationalFunction q = RationalFunction::q();
        const RationalFunction q2 = q * q, q4 = q2 * q2;
        // q sqrt(q^4 + 1) / (sqrt 2 (q^4 + q^2 + 1))
        RadicalScalar second = RadicalScalar(q / (q4 + q2 + 1)) * RadicalScalar::sqrt((q4 + 1) / 2);
        s.push_back(norm);
        s.push_back({K::Condition, "exclude kappa~=-r", "0123Q,0123Q", "", "kappa~=-r", {}, {}, {}});
        s.push_back({K::Solve, "stage21a", "23232,23P32", "S[23P32,23P32]", "kappa~=1", {}, {}, {}});
        s.push_back({K::Solve, "stage21b", "2323P,2323P", "S[2323P,23P3P]", "kappa~=1", {{"case 2", second}}, {"case 1"}, {}});
        s.push_back({K::Condition, "exclude case 1", "2323Q,2323Q", "", "case 1", {}, {}, {}});
        s.push_back({K::Solve, "stage22", "2323P,23P3P", "S[23P3P,23P3P]", "case 2", {}, {}, {}});
        s.push_back({K::Condition, "final", "P323Q,P323Q", "", "case 2", {}, {}, {}});
    }
    return s;
}

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Open: return "OPEN";
        case Outcome::Contradiction: return "CONTRADICTION";
        case Outcome::Condition: return "CONDITION";
    }
    return "?";
}

bool EliminationResult::aborted() const {
    return std::any_of(leaves.begin(), leaves.end(), [](const BranchState& b) { return !b.error.empty(); });
}

bool BranchState::has_label(const std::string& l) const { return std::find(trail.begin(), trail.end(), l) != trail.end(); }

std::string BranchState::trail_string() const {
    std::string s;
    for (const auto& t : trail) s += (s.empty() ? "" : " / ") + t;
    return s.empty() ? "(root)" : s;
}

bool root_free_gt1(const RationalFunction& f) {
    if (f.is_zero()) return false;
    return count_roots_gt1(f.numerator_poly()) == 0 && count_roots_gt1(f.denominator_poly()) == 0;
}

namespace {

QuadPoly substituted(const QuadPoly& p, const BranchState& b) {
    QuadPoly r = p;
    for (const auto& [v, x] : b.substitutions) r = r.substitute(v, x);
    return r;
}

std::string dump(const EliminationContext& ctx, const Stage& st, const BranchState& b, const QuadPoly& p,
                 const std::string& why) {
    return fmt::format("stage '{}' on component {} in branch [{}]: {}\n  polynomial: {}", st.label, st.component,
                       b.trail_string(), why, p.to_string(ctx.variables()));
}

void finish_leaf(BranchState& b, const Stage& st, const RationalFunction& value) {
    b.final_stage = st.label;
    b.final_value = value;
    if (value.is_zero()) {
        b.outcome = Outcome::Open;
        return;
    }
    Factorization f = factor(value.numerator_poly());
    bool any = false;
    for (const auto& [g, m] : f.factors) {
        int n = count_roots_gt1(g);
        b.final_factors.push_back({g, m, n});
        any = any || n > 0;
    }
    b.outcome = any ? Outcome::Condition : Outcome::Contradiction;
}

// Roots of a x^2 + b x + c (a != 0) whose discriminant is rational.
std::vector<std::pair<RadicalScalar, RationalFunction>> quadratic_roots(const RadicalScalar& a, const RadicalScalar& b,
                                                                         const RadicalScalar& c, bool& ok) {
    RadicalScalar disc = b * b - RadicalScalar(4) * a * c;
    ok = disc.is_rational();
    if (!ok) return {};
    RationalFunction d = disc.rational();
    RadicalScalar s = RadicalScalar::sqrt(d);
    RadicalScalar two_a = RadicalScalar(2) * a;
    return {{(-b + s) / two_a, d}, {(-b - s) / two_a, d}};
}

}  // namespace

EliminationResult run_elimination(const EliminationContext& ctx, const std::vector<Stage>& script) {
    EliminationResult res;
    res.omega = ctx.dims().omega();
    res.variables = ctx.variables();
    res.space = ctx.space();
    std::set<RationalFunction> sides(ctx.space().side_conditions.begin(), ctx.space().side_conditions.end());

    std::deque<std::pair<BranchState, std::size_t>> work{{BranchState{}, 0}};
    while (!work.empty()) {
        auto [b, i] = std::move(work.front());
        work.pop_front();
        while (i < script.size() && !script[i].requires_label.empty() && !b.has_label(script[i].requires_label)) ++i;
        if (i == script.size()) {
            res.leaves.push_back(std::move(b));
            continue;
        }
        const Stage& st = script[i];
        try {
        QuadPoly p = substituted(ctx.component(parse_entry(st.component)), b);
        StageRecord rec{st.label, st.component, st.variable, p.to_string(ctx.variables()), {}, ""};

        if (st.kind == Stage::Kind::Condition) {
            if (!p.is_constant()) throw EliminationError(dump(ctx, st, b, p, "unresolved variables remain"));
            RadicalScalar v = p.constant();
            if (!v.is_rational()) throw EliminationError(dump(ctx, st, b, p, "root symbols remain in the final condition"));
            rec.values.push_back({"condition", v});
            b.history.push_back(rec);
            finish_leaf(b, st, v.rational());
            res.leaves.push_back(std::move(b));
            continue;
        }

        const int var = ctx.variable_index(st.variable);
        std::set<int> vars = p.variables();
        if (vars.empty()) {
            // nothing left to solve: the component itself is the condition
            if (p.is_zero()) throw EliminationError(dump(ctx, st, b, p, "component vanishes identically"));
            RadicalScalar v = p.constant();
            if (!v.is_rational()) throw EliminationError(dump(ctx, st, b, p, "irrational constant component"));
            rec.note = "no variable left; component is a condition";
            b.history.push_back(rec);
            finish_leaf(b, st, v.rational());
            res.leaves.push_back(std::move(b));
            continue;
        }
        if (vars != std::set<int>{var})
            throw EliminationError(dump(ctx, st, b, p, "expected a polynomial in " + st.variable + " alone"));
        const RadicalScalar a2 = p.coefficient({var, var}), a1 = p.coefficient({var}), a0 = p.constant();

        std::vector<std::pair<RadicalScalar, std::optional<RationalFunction>>> roots;
        if (p.degree() == 1) {
            roots.push_back({-a0 / a1, std::nullopt});
            sides.insert(divisor_condition(a1));
            b.side_conditions.push_back(divisor_condition(a1));
        } else if (p.degree() == 2) {
            bool ok = false;
            auto rs = quadratic_roots(a2, a1, a0, ok);
            if (!ok) throw EliminationError(dump(ctx, st, b, p, "discriminant is not in Q(q)"));
            for (auto& [x, d] : rs) roots.push_back({x, d});
            if (roots[0].first == roots[1].first) roots.pop_back();
            sides.insert(divisor_condition(a2));
            b.side_conditions.push_back(divisor_condition(a2));
        } else {
            throw EliminationError(dump(ctx, st, b, p, "degree above 2"));
        }

        std::size_t other = 0;
        for (std::size_t k = 0; k < roots.size(); ++k) {
            const auto& [x, disc] = roots[k];
            std::string label;
            for (const auto& [name, v] : st.known_roots)
                if (v == x) label = name;
            if (label.empty()) label = other < st.other_labels.size() ? st.other_labels[other++] : fmt::format("{} root {}", st.label, k + 1);
            rec.values.push_back({label, x});
            if (st.prune && st.prune->first == x) {
                res.pruned.push_back(fmt::format("{}: {} ({})", st.label, label, st.prune->second));
                continue;
            }
            BranchState nb = b;
            nb.substitutions[var] = x;
            if (roots.size() > 1) nb.trail.push_back(label);
            if (disc && !RadicalScalar::sqrt(*disc).is_rational())
                nb.root_symbols.push_back({fmt::format("rho[{}]", st.label), *disc});
            nb.history.push_back(rec);
            work.push_back({std::move(nb), i + 1});
        }
        } catch (const EliminationError& e) {
            b.error = e.what();
            b.final_stage = st.label;
            res.leaves.push_back(std::move(b));
        }
    }
    res.side_conditions.assign(sides.begin(), sides.end());
    res.side_conditions_certified =
        std::all_of(res.side_conditions.begin(), res.side_conditions.end(), root_free_gt1);
    return res;
}

EliminationResult run_elimination(Omega omega, const CollapseOptions& opt) {
    EliminationContext ctx(dimension_table(omega), default_targets(), opt);
    return run_elimination(ctx, default_script(omega));
}

QuadPoly evaluate_entry(const EliminationContext& ctx, const BranchState& b, const std::string& entry) {
    return substituted(ctx.entry(parse_entry(entry)), b);
}

nlohmann::json EliminationResult::to_json() const {
    nlohmann::json leaves_j = nlohmann::json::array();
    for (const auto& b : leaves) {
        nlohmann::json hist = nlohmann::json::array();
        for (const auto& h : b.history) {
            nlohmann::json vals = nlohmann::json::array();
            for (const auto& [l, v] : h.values) vals.push_back({{"branch", l}, {"value", v.to_string()}});
            hist.push_back({{"stage", h.label},
                            {"component", h.component},
                            {"variable", h.variable},
                            {"polynomial", h.polynomial},
                            {"values", vals},
                            {"note", h.note}});
        }
        nlohmann::json roots_j = nlohmann::json::array();
        for (const auto& [n, d] : b.root_symbols) roots_j.push_back({{"symbol", n}, {"radicand", d.to_string()}});
        nlohmann::json factors = nlohmann::json::array();
        for (const auto& f : b.final_factors)
            factors.push_back({{"factor", f.factor.to_string()}, {"multiplicity", f.multiplicity}, {"roots_gt1", f.roots_gt1}});
        leaves_j.push_back({{"trail", b.trail},
                            {"outcome", b.error.empty() ? outcome_name(b.outcome) : "ABORTED"},
                            {"error", b.error},
                            {"history", hist},
                            {"root_symbols", roots_j},
                            {"final", {{"stage", b.final_stage}, {"value", b.final_value.to_string()}, {"factors", factors}}}});
    }
    nlohmann::json sides = nlohmann::json::array();
    for (const auto& s : side_conditions) sides.push_back(s.to_string());
    return {{"omega", static_cast<int>(omega)},
            {"variables", variables},
            {"solution_space",
             {{"orbits", space.orbits},
              {"forced_zero_orbits", space.forced_zero_orbits},
              {"equations", space.equations},
              {"rank", space.rank},
              {"dimension", space.dimension}}},
            {"pruned", pruned},
            {"side_conditions", sides},
            {"side_conditions_root_free_gt1", side_conditions_certified},
            {"leaves", leaves_j}};
}

// ---------------------------------------------------------------- indices and verdicts

std::vector<AdmissibleIndex> admissible_indices(const std::vector<EliminationResult>& results, int digits) {
    std::vector<AdmissibleIndex> out;
    std::set<ZPoly> seen;
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(digits + 5));
    const mpq_class width(1, ten_pow);
    const mpfr_prec_t prec = bits_for_digits(digits + 10);
    for (const auto& r : results)
        for (const auto& b : r.leaves) {
            if (b.outcome != Outcome::Condition) continue;
            for (const auto& f : b.final_factors) {
                if (f.roots_gt1 == 0 || !seen.insert(f.factor).second) continue;
                bool h = matches_haagerup_index(f.factor);
                for (const auto& root : real_roots_gt1(f.factor, width).roots) {
                    AdmissibleIndex a{f.factor, root, index_of(Interval(root.lo, root.hi, prec)), h, ""};
                    if (h) a.exact = haagerup_index().to_string();
                    out.push_back(std::move(a));
                }
            }
        }
    return out;
}

std::string Verdict::name() const {
    switch (kind) {
        case VerdictKind::Obstructed: return "OBSTRUCTED";
        case VerdictKind::Consistent: return haagerup_index ? "CONSISTENT-WITH-HAAGERUP-INDEX" : "CONSISTENT-WITH-ADMISSIBLE-INDEX";
        case VerdictKind::HypothesisNotMet: return "HYPOTHESIS-NOT-MET";
        case VerdictKind::Undecided: return "UNDECIDED";
    }
    return "?";
}

nlohmann::json Verdict::to_json() const {
    nlohmann::json h = {{"is_3_supertransitive", hypothesis.is_3_supertransitive}, {"overall", hypothesis.overall}};
    h["depth4_pair"] = hypothesis.depth4_pair ? nlohmann::json::array({hypothesis.depth4_pair->first + 1, hypothesis.depth4_pair->second + 1})
                                              : nlohmann::json(nullptr);
    h["depth5_simple"] = hypothesis.depth5_simple ? nlohmann::json(*hypothesis.depth5_simple) : nlohmann::json(nullptr);
    h["no_common_depth6_neighbor"] = hypothesis.no_common_depth6_neighbor ? nlohmann::json(*hypothesis.no_common_depth6_neighbor)
                                                                           : nlohmann::json(nullptr);
    nlohmann::json j = {{"graph", graph}, {"verdict", name()}, {"hypothesis", h}, {"detail", detail}};
    if (index) j["index"] = {{"enclosure", index->bounds_string(25)}, {"value", index->to_string(25)}};
    return j;
}

Verdict verdict(const GraphPair& g, const std::vector<AdmissibleIndex>& admissible, int digits, double tol) {
    Verdict v;
    v.graph = g.text;
    v.hypothesis = check_hypothesis(g.principal);
    if (!v.hypothesis.overall && g.dual) {
        HypothesisReport d = check_hypothesis(*g.dual);
        if (d.overall) {
            v.hypothesis = d;
            v.detail = "hypothesis met by the dual graph; ";
        }
    }
    if (!v.hypothesis.overall) {
        v.kind = VerdictKind::HypothesisNotMet;
        v.detail += v.hypothesis.summary();
        return v;
    }
    GraphNorm n = graph_norm(g.principal, digits);
    v.index = n.index;
    for (const auto& a : admissible) {
        if (!n.index.intersects(a.index)) continue;
        if (n.index.width_d() <= tol && a.index.width_d() <= tol) {
            v.kind = VerdictKind::Consistent;
            v.haagerup_index = a.haagerup;
            v.detail += fmt::format("index {} agrees with the admissible index from {} to within {:g}",
                                    n.index.to_string(20), a.factor.to_string(), tol);
        } else {
            v.kind = VerdictKind::Undecided;
            v.detail += "index enclosure too wide to separate from an admissible index; increase precision";
        }
        return v;
    }
    v.kind = VerdictKind::Obstructed;
    v.detail += fmt::format("index {} differs from every admissible index", n.index.to_string(20));
    return v;
}

}  // namespace pgo
