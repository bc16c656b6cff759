#include "pgo/roots.hpp"

#include <fmt/format.h>

#include <stdexcept>

#include "pgo/radical.hpp"

namespace pgo {
namespace {

std::vector<ZPoly> sturm_sequence(const ZPoly& f) {
    std::vector<ZPoly> s{f, f.derivative()};
    while (!s.back().is_zero() && s.back().degree() > 0) {
        const ZPoly& a = s[s.size() - 2];
        const ZPoly& b = s.back();
        ZPoly r = pseudo_divmod(a, b).second;
        if (r.is_zero()) break;
        // prem = lc(b)^(delta+1) * rem; the next term must be a positive multiple of -rem
        int delta = a.degree() - b.degree();
        bool lc_power_negative = b.leading() < 0 && (delta + 1) % 2 == 1;
        if (!lc_power_negative) r = -r;
        mpz_class c = r.content();
        r.divide_exact(c);
        s.push_back(std::move(r));
    }
    return s;
}

int variations_at(const std::vector<ZPoly>& s, const mpq_class& x) {
    int v = 0, last = 0;
    for (const auto& p : s) {
        int sg = p.sign_at(x);
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++v;
        last = sg;
    }
    return v;
}

int variations_at_infinity(const std::vector<ZPoly>& s) {
    int v = 0, last = 0;
    for (const auto& p : s) {
        if (p.is_zero()) continue;
        int sg = sgn(p.leading());
        if (last != 0 && sg != last) ++v;
        last = sg;
    }
    return v;
}

mpq_class cauchy_bound(const ZPoly& f) {
    mpq_class m = 0;
    for (int i = 0; i < f.degree(); ++i) {
        mpq_class r(abs(f[i]), abs(f.leading()));
        r.canonicalize();
        if (r > m) m = r;
    }
    return m + 1;
}

ZPoly require_nonzero(const ZPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("root isolation of the zero polynomial");
    return squarefree_part(p);
}

}  // namespace

std::string RationalInterval::to_string(int digits) const {
    if (exact()) return lo.get_str();
    Interval iv(lo, hi, 128);
    return iv.bounds_string(digits);
}

int count_roots(const ZPoly& p, const mpq_class& a, const mpq_class& b) {
    ZPoly f = require_nonzero(p);
    if (f.degree() < 1) return 0;
    auto s = sturm_sequence(f);
    return variations_at(s, a) - variations_at(s, b);
}

int count_roots_gt1(const ZPoly& p) {
    ZPoly f = require_nonzero(p);
    if (f.degree() < 1) return 0;
    auto s = sturm_sequence(f);
    return variations_at(s, 1) - variations_at_infinity(s);
}

RationalInterval refine_root(const ZPoly& p, RationalInterval iv, const mpq_class& width) {
    ZPoly f = squarefree_part(p);
    if (iv.exact()) return iv;
    if (f.sign_at(iv.hi) == 0) return {iv.hi, iv.hi};
    if (f.sign_at(iv.lo) == 0) {
        // root at lo belongs to a neighbouring interval: step inside by Sturm bisection
        auto s = sturm_sequence(f);
        while (true) {
            mpq_class mid = (iv.lo + iv.hi) / 2;
            if (f.sign_at(mid) == 0) return {mid, mid};
            if (variations_at(s, mid) - variations_at(s, iv.hi) == 1) {
                iv.lo = mid;
                break;
            }
            iv.hi = mid;
        }
    }
    int slo = f.sign_at(iv.lo);
    while (iv.hi - iv.lo > width) {
        mpq_class mid = (iv.lo + iv.hi) / 2;
        int sm = f.sign_at(mid);
        if (sm == 0) return {mid, mid};
        if (sm == slo)
            iv.lo = mid;
        else
            iv.hi = mid;
    }
    return iv;
}

RootIsolation real_roots_gt1(const ZPoly& p, const mpq_class& width) {
    ZPoly f = require_nonzero(p);
    RootIsolation out{p, {}, width};
    if (f.degree() < 1) return out;
    auto s = sturm_sequence(f);
    std::vector<std::pair<mpq_class, mpq_class>> stack{{mpq_class(1), cauchy_bound(f)}};
    std::vector<RationalInterval> found;
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        int n = variations_at(s, a) - variations_at(s, b);
        if (n == 0) continue;
        if (n == 1) {
            found.push_back(refine_root(f, {a, b}, width));
            continue;
        }
        mpq_class mid = (a + b) / 2;
        stack.emplace_back(mid, b);
        stack.emplace_back(a, mid);
    }
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
    out.roots = std::move(found);
    return out;
}

RootIsolation real_roots_gt1(const RationalFunction& f, const mpq_class& width) {
    if (f.is_zero()) throw std::invalid_argument("root isolation of the zero polynomial");
    return real_roots_gt1(f.num(), width);
}

ZPoly haagerup_polynomial() { return ZPoly::from_list({1, 0, -1, 0, -1, 0, -1, 0, 1}); }

Interval QuadraticIrrational::enclose(mpfr_prec_t prec) const {
    return Interval(a, prec) + Interval(b, prec) * Interval(mpq_class(d), prec).sqrt();
}

std::string QuadraticIrrational::to_string() const {
    // (num_a + num_b sqrt d)/den for the common denominator
    mpz_class den;
    mpz_lcm(den.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
    mpz_class na = a.get_num() * (den / a.get_den());
    mpz_class nb = b.get_num() * (den / b.get_den());
    std::string s = fmt::format("{} {} {}*sqrt({})", na.get_str(), nb < 0 ? "-" : "+",
                                mpz_class(abs(nb)).get_str(), d.get_str());
    if (abs(nb) == 1) s = fmt::format("{} {} sqrt({})", na.get_str(), nb < 0 ? "-" : "+", d.get_str());
    return den == 1 ? s : fmt::format("({})/{}", s, den.get_str());
}

QuadraticIrrational haagerup_index() { return {mpq_class(5, 2), mpq_class(1, 2), 13}; }

Interval index_of(const Interval& q) {
    Interval q2 = q.square();
    return q2 + Interval(2L, q.prec()) + Interval(1L, q.prec()) / q2;
}

Interval index_of(const mpq_class& q, int digits) { return index_of(Interval(q, bits_for_digits(digits))); }

bool index_satisfies(const ZPoly& p, const ZPoly& index_poly) {
    if (p.is_zero() || index_poly.is_zero()) throw std::invalid_argument("index_satisfies: zero polynomial");
    // I = (q^4 + 2 q^2 + 1) / q^2
    const ZPoly t = ZPoly::from_list({1, 0, 2, 0, 1});
    const int n = index_poly.degree();
    ZPoly r;
    for (int i = 0; i <= n; ++i)
        r += (pow(t, static_cast<unsigned>(i)) * index_poly[i]).shift_up(2 * (n - i));
    ZPoly f = squarefree_part(p);
    if (f.degree() < 1) return true;
    return pseudo_divmod(r, f).second.is_zero();
}

bool matches_haagerup_index(const ZPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("matches_haagerup_index: zero polynomial");
    const ZPoly h = haagerup_polynomial();
    ZPoly f = p.primitive();
    ZPoly g = gcd(f, h);
    if (g.degree() < 1) return false;
    while (g.degree() >= 1) {
        f = exact_quotient(f, g);
        g = gcd(f, h);
    }
    return count_roots_gt1(f) == 0;
}

}  // namespace pgo
