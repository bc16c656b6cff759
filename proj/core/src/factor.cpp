// Factorisation over Z by the Zassenhaus method. Degrees in this project are
// small (< 100), so plain quadratic arithmetic mod p^k is adequate.
#include <algorithm>
#include <random>
#include <stdexcept>

#include "pgo/zpoly.hpp"

namespace pgo {
namespace {

using Vec = std::vector<mpz_class>;

void trim(Vec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

int deg(const Vec& v) { return static_cast<int>(v.size()) - 1; }

Vec reduce(Vec v, const mpz_class& m) {
    for (auto& x : v) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    trim(v);
    return v;
}

Vec add(const Vec& a, const Vec& b, const mpz_class& m) {
    Vec r(std::max(a.size(), b.size()), mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return reduce(std::move(r), m);
}

Vec sub(const Vec& a, const Vec& b, const mpz_class& m) {
    Vec r(std::max(a.size(), b.size()), mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return reduce(std::move(r), m);
}

Vec mul(const Vec& a, const Vec& b, const mpz_class& m) {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return reduce(std::move(r), m);
}

Vec scale(const Vec& a, const mpz_class& s, const mpz_class& m) {
    Vec r = a;
    for (auto& x : r) x *= s;
    return reduce(std::move(r), m);
}

mpz_class inverse(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("non-invertible leading coefficient modulo m");
    return r;
}

// a = q*b + r mod m; lc(b) must be a unit mod m.
std::pair<Vec, Vec> divrem(Vec a, const Vec& b, const mpz_class& m) {
    if (b.empty()) throw std::domain_error("modular division by zero");
    mpz_class inv = inverse(b.back(), m);
    int db = deg(b);
    if (deg(a) < db) return {{}, a};
    Vec q(static_cast<std::size_t>(deg(a) - db + 1), mpz_class(0));
    for (int k = deg(a); k >= db; --k) {
        mpz_class t = a[static_cast<std::size_t>(k)] * inv;
        mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
        if (t == 0) continue;
        q[static_cast<std::size_t>(k - db)] = t;
        for (int i = 0; i <= db; ++i)
            mpz_submul(a[static_cast<std::size_t>(k - db + i)].get_mpz_t(), t.get_mpz_t(),
                       b[static_cast<std::size_t>(i)].get_mpz_t());
        for (int i = 0; i <= db; ++i) {
            auto& x = a[static_cast<std::size_t>(k - db + i)];
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
        }
    }
    return {reduce(std::move(q), m), reduce(std::move(a), m)};
}

Vec monic(const Vec& a, const mpz_class& m) {
    if (a.empty()) return a;
    return scale(a, inverse(a.back(), m), m);
}

// Monic gcd over GF(p).
Vec gcd_mod(Vec a, Vec b, const mpz_class& p) {
    while (!b.empty()) {
        Vec r = divrem(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

// s*a + t*b = g (monic gcd) over GF(p).
void ext_gcd_mod(const Vec& a, const Vec& b, const mpz_class& p, Vec& g, Vec& s, Vec& t) {
    Vec r0 = a, r1 = b, s0{mpz_class(1)}, s1{}, t0{}, t1{mpz_class(1)};
    while (!r1.empty()) {
        auto [q, r] = divrem(r0, r1, p);
        Vec s2 = sub(s0, mul(q, s1, p), p);
        Vec t2 = sub(t0, mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    mpz_class inv = inverse(r0.back(), p);
    g = scale(r0, inv, p);
    s = scale(s0, inv, p);
    t = scale(t0, inv, p);
}

Vec powmod(Vec base, mpz_class e, const Vec& f, const mpz_class& p) {
    Vec r{mpz_class(1)};
    base = divrem(base, f, p).second;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = divrem(mul(r, base, p), f, p).second;
        e >>= 1;
        if (e > 0) base = divrem(mul(base, base, p), f, p).second;
    }
    return r;
}

Vec derivative(const Vec& a, const mpz_class& m) {
    Vec r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<unsigned long>(i));
    return reduce(std::move(r), m);
}

// Distinct-degree factorisation of a monic squarefree f over GF(p): (product, degree).
std::vector<std::pair<Vec, int>> ddf(Vec f, const mpz_class& p) {
    std::vector<std::pair<Vec, int>> out;
    Vec x{mpz_class(0), mpz_class(1)};
    Vec h = x;
    for (int d = 1; 2 * d <= deg(f); ++d) {
        h = powmod(h, p, f, p);
        Vec g = gcd_mod(f, sub(h, x, p), p);
        if (deg(g) > 0) {
            out.emplace_back(g, d);
            f = divrem(f, g, p).first;
            h = divrem(h, f, p).second;
        }
    }
    if (deg(f) > 0) out.emplace_back(f, deg(f));
    return out;
}

// Equal-degree splitting (Cantor-Zassenhaus, odd p).
void edf(const Vec& f, int d, const mpz_class& p, std::mt19937_64& rng, std::vector<Vec>& out) {
    if (deg(f) == d) {
        out.push_back(f);
        return;
    }
    mpz_class e;
    mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    std::uniform_int_distribution<unsigned long> dist(0, p.get_ui() - 1);
    while (true) {
        Vec a(static_cast<std::size_t>(deg(f)));
        for (auto& c : a) c = dist(rng);
        trim(a);
        if (deg(a) < 1) continue;
        Vec b = sub(powmod(a, e, f, p), Vec{mpz_class(1)}, p);
        Vec g = gcd_mod(f, b, p);
        if (deg(g) > 0 && deg(g) < deg(f)) {
            edf(g, d, p, rng, out);
            edf(divrem(f, g, p).first, d, p, rng, out);
            return;
        }
    }
}

// Lift f == g*h (mod p), f monic mod m = p^k, g and h monic, to mod p^k.
void hensel_pair(const Vec& f, Vec& g, Vec& h, const mpz_class& p, int k) {
    Vec gg, s, t;
    ext_gcd_mod(g, h, p, gg, s, t);
    mpz_class pj = p;
    for (int j = 1; j < k; ++j) {
        mpz_class pj1 = pj * p;
        Vec e = sub(f, mul(g, h, pj1), pj1);
        for (auto& c : e) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
        e = reduce(std::move(e), p);
        auto [c, tau] = divrem(mul(t, e, p), g, p);
        Vec sigma = add(mul(s, e, p), mul(c, h, p), p);
        g = add(g, scale(tau, pj, pj1), pj1);
        h = add(h, scale(sigma, pj, pj1), pj1);
        pj = pj1;
    }
}

void hensel_tree(const Vec& f, std::vector<Vec> facs, const mpz_class& p, int k,
                 std::vector<Vec>& out) {
    if (facs.size() == 1) {
        out.push_back(f);
        return;
    }
    std::size_t half = facs.size() / 2;
    std::vector<Vec> left(facs.begin(), facs.begin() + static_cast<long>(half));
    std::vector<Vec> right(facs.begin() + static_cast<long>(half), facs.end());
    Vec g{mpz_class(1)}, h{mpz_class(1)};
    for (auto& u : left) g = mul(g, u, p);
    for (auto& u : right) h = mul(h, u, p);
    hensel_pair(f, g, h, p, k);
    hensel_tree(g, std::move(left), p, k, out);
    hensel_tree(h, std::move(right), p, k, out);
}

ZPoly symmetric(const Vec& v, const mpz_class& m) {
    mpz_class half = m / 2;
    Vec r = v;
    for (auto& x : r)
        if (x > half) x -= m;
    return ZPoly(std::move(r));
}

Vec to_vec(const ZPoly& f, const mpz_class& m) { return reduce(f.coeffs(), m); }

bool next_prime_candidate(unsigned long& p) {
    do {
        ++p;
        bool prime = p >= 2;
        for (unsigned long d = 2; d * d <= p && prime; ++d)
            if (p % d == 0) prime = false;
        if (prime) return true;
    } while (p < 100000);
    return false;
}

// Irreducible factors of a primitive squarefree f with f(0) != 0 and deg >= 1.
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    if (f.degree() <= 1) return {f};
    mpz_class best_p = 0;
    std::size_t best_count = 0;
    std::vector<std::pair<Vec, int>> best_ddf;
    unsigned long pc = 2;
    int tried = 0;
    while (tried < 6 && next_prime_candidate(pc)) {
        mpz_class p = pc;
        if (mpz_divisible_p(f.leading().get_mpz_t(), p.get_mpz_t())) continue;
        Vec fm = monic(to_vec(f, p), p);
        if (deg(gcd_mod(fm, derivative(fm, p), p)) > 0) continue;
        ++tried;
        auto d = ddf(fm, p);
        std::size_t count = 0;
        for (auto& [g, dd] : d) count += static_cast<std::size_t>(deg(g) / dd);
        if (count == 1) return {f};
        if (best_p == 0 || count < best_count) {
            best_p = p;
            best_count = count;
            best_ddf = d;
        }
    }
    const mpz_class& p = best_p;
    std::mt19937_64 rng(0x5eed);
    std::vector<Vec> modfacs;
    for (auto& [g, d] : best_ddf) edf(g, d, p, rng, modfacs);

    // Mignotte-style bound on factor coefficients.
    mpz_class norm2 = 0;
    for (const auto& c : f.coeffs()) norm2 += c * c;
    mpz_class bound = sqrt(norm2) + 1;
    bound <<= static_cast<unsigned long>(f.degree());
    mpz_class lc = f.leading();
    mpz_class need = 2 * bound * abs(lc);
    int k = 1;
    mpz_class m = p;
    while (m <= need) {
        m *= p;
        ++k;
    }
    Vec fhat = scale(to_vec(f, m), inverse(lc, m), m);
    std::vector<Vec> lifted;
    hensel_tree(fhat, modfacs, p, k, lifted);

    std::vector<ZPoly> result;
    ZPoly rest = f;
    std::size_t s = 1;
    while (2 * s <= lifted.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            mpz_class b = rest.leading();
            Vec g{mpz_class(b)};
            g = reduce(std::move(g), m);
            for (auto i : idx) g = mul(g, lifted[i], m);
            ZPoly cand = symmetric(g, m);
            bool ok = !cand.is_zero() &&
                      mpz_divisible_p(mpz_class(b * rest[0]).get_mpz_t(), cand[0].get_mpz_t());
            if (ok) {
                ZPoly prim = cand.primitive();
                if (auto quo = divide_exact(rest, prim)) {
                    result.push_back(prim);
                    rest = *quo;
                    for (std::size_t j = idx.size(); j-- > 0;)
                        lifted.erase(lifted.begin() + static_cast<long>(idx[j]));
                    found = true;
                    break;
                }
            }
            // next combination
            std::size_t n = lifted.size();
            std::size_t i = s;
            while (i > 0 && idx[i - 1] == n - s + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (rest.degree() > 0) result.push_back(rest.primitive());
    return result;
}

}  // namespace

Factorization factor(const ZPoly& p) {
    if (p.is_zero()) throw std::domain_error("cannot factor the zero polynomial");
    Factorization out;
    auto [unit, f] = p.split_content();
    out.unit = unit;
    int v = f.valuation();
    if (v > 0) {
        out.factors.emplace_back(ZPoly::monomial(1, 1), v);
        f = f.shift_down(v);
    }
    for (auto& [g, mult] : squarefree_decomposition(f))
        for (auto& h : zassenhaus(g)) out.factors.emplace_back(h, mult);
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace pgo
