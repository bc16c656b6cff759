#include "pgo/zpoly.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace pgo {

ZPoly::ZPoly(long c) {
    if (c != 0) c_.emplace_back(c);
}

ZPoly::ZPoly(const mpz_class& c) {
    if (c != 0) c_.push_back(c);
}

ZPoly::ZPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

ZPoly ZPoly::monomial(const mpz_class& c, int deg) {
    ZPoly p;
    if (c == 0) return p;
    p.c_.assign(static_cast<std::size_t>(deg) + 1, mpz_class(0));
    p.c_.back() = c;
    return p;
}

ZPoly ZPoly::from_list(std::initializer_list<long> low_to_high) {
    std::vector<mpz_class> v;
    for (long x : low_to_high) v.emplace_back(x);
    return ZPoly(std::move(v));
}

void ZPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpz_class ZPoly::coeff(int i) const {
    if (i < 0 || i > degree()) return 0;
    return c_[static_cast<std::size_t>(i)];
}

int ZPoly::valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<int>(i);
    return 0;
}

ZPoly ZPoly::shift_up(int k) const {
    if (is_zero() || k == 0) return *this;
    ZPoly r;
    r.c_.assign(static_cast<std::size_t>(k), mpz_class(0));
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
}

ZPoly ZPoly::shift_down(int k) const {
    if (k == 0) return *this;
    ZPoly r;
    if (static_cast<std::size_t>(k) < c_.size()) r.c_.assign(c_.begin() + k, c_.end());
    return r;
}

ZPoly& ZPoly::operator+=(const ZPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpz_class(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpz_class(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    ZPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            mpz_addmul(r.c_[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
    r.trim();
    return r;
}

ZPoly& ZPoly::operator*=(const ZPoly& o) {
    *this = *this * o;
    return *this;
}

ZPoly& ZPoly::operator*=(const mpz_class& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
}

ZPoly ZPoly::operator-() const {
    ZPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

bool operator<(const ZPoly& a, const ZPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        int c = cmp(a.c_[static_cast<std::size_t>(i)], b.c_[static_cast<std::size_t>(i)]);
        if (c != 0) return c < 0;
    }
    return false;
}

mpz_class ZPoly::content() const {
    mpz_class g = 0;
    for (const auto& x : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

void ZPoly::divide_exact(const mpz_class& s) {
    for (auto& x : c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
}

std::pair<mpz_class, ZPoly> ZPoly::split_content() const {
    if (is_zero()) return {mpz_class(0), ZPoly()};
    mpz_class g = content();
    if (leading() < 0) g = -g;
    ZPoly r = *this;
    if (g != 1) r.divide_exact(g);
    return {g, std::move(r)};
}

ZPoly ZPoly::primitive() const { return split_content().second; }

ZPoly ZPoly::derivative() const {
    ZPoly r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * static_cast<unsigned long>(i);
    r.trim();
    return r;
}

mpz_class ZPoly::eval_homogeneous(const mpz_class& num, const mpz_class& den) const {
    // sum_i c_i num^i den^(n-i) by Horner from the top
    mpz_class acc = 0;
    mpz_class dpow = 1;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        acc = acc * num + c_[c_.size() - 1 - k] * dpow;
        dpow *= den;
    }
    return acc;
}

mpq_class ZPoly::eval(const mpq_class& x) const {
    if (is_zero()) return 0;
    mpz_class n = eval_homogeneous(x.get_num(), x.get_den());
    mpz_class d;
    mpz_pow_ui(d.get_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(degree()));
    mpq_class r(n, d);
    r.canonicalize();
    return r;
}

int ZPoly::sign_at(const mpq_class& x) const {
    if (is_zero()) return 0;
    return sgn(eval_homogeneous(x.get_num(), x.get_den()));  // den > 0
}

ZPoly ZPoly::inflate(int k) const {
    if (is_zero() || k == 1) return *this;
    ZPoly r;
    r.c_.assign(static_cast<std::size_t>(degree() * k) + 1, mpz_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * static_cast<std::size_t>(k)] = c_[i];
    return r;
}

std::string ZPoly::to_string(const char* var) const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& c = c_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        mpz_class a = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        if (i == 0) {
            out += a.get_str();
            continue;
        }
        if (a != 1) out += a.get_str() + "*";
        out += var;
        if (i > 1) out += fmt::format("^{}", i);
    }
    return out;
}

std::size_t ZPoly::hash() const {
    std::size_t h = c_.size();
    for (const auto& x : c_) {
        std::size_t v = mpz_size(x.get_mpz_t()) ? mpz_getlimbn(x.get_mpz_t(), 0) : 0;
        if (x < 0) v = ~v;
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::pair<ZPoly, ZPoly> pseudo_divmod(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) throw std::domain_error("pseudo division by zero polynomial");
    if (a.degree() < b.degree()) return {ZPoly(), a};
    const int db = b.degree();
    const mpz_class& lb = b.leading();
    std::vector<mpz_class> r = a.coeffs();
    std::vector<mpz_class> q(static_cast<std::size_t>(a.degree() - db + 1), mpz_class(0));
    for (int k = a.degree(); k >= db; --k) {
        mpz_class t = r[static_cast<std::size_t>(k)];
        // scale everything so far by lb
        for (auto& x : q) x *= lb;
        for (int i = 0; i < k; ++i) r[static_cast<std::size_t>(i)] *= lb;
        q[static_cast<std::size_t>(k - db)] += t;
        r[static_cast<std::size_t>(k)] = 0;
        for (int i = 0; i < db; ++i)
            mpz_submul(r[static_cast<std::size_t>(k - db + i)].get_mpz_t(), t.get_mpz_t(),
                       b[i].get_mpz_t());
    }
    return {ZPoly(std::move(q)), ZPoly(std::move(r))};
}

std::optional<ZPoly> divide_exact(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return ZPoly();
    if (a.degree() < b.degree()) return std::nullopt;
    const int db = b.degree();
    const mpz_class& lb = b.leading();
    std::vector<mpz_class> r = a.coeffs();
    std::vector<mpz_class> q(static_cast<std::size_t>(a.degree() - db + 1));
    for (int k = a.degree(); k >= db; --k) {
        mpz_class& top = r[static_cast<std::size_t>(k)];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
        mpz_class t;
        mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        q[static_cast<std::size_t>(k - db)] = t;
        for (int i = 0; i <= db; ++i)
            mpz_submul(r[static_cast<std::size_t>(k - db + i)].get_mpz_t(), t.get_mpz_t(),
                       b[i].get_mpz_t());
    }
    for (int i = 0; i < db; ++i)
        if (r[static_cast<std::size_t>(i)] != 0) return std::nullopt;
    return ZPoly(std::move(q));
}

ZPoly exact_quotient(const ZPoly& a, const ZPoly& b) {
    auto r = divide_exact(a, b);
    if (!r) throw std::domain_error("polynomial division is not exact");
    return *r;
}

namespace {

// Heuristic gcd (Char, Geddes, Gonnet): evaluate at a large integer, take the
// integer gcd, reinterpret its balanced base-xi digits as a polynomial.
std::optional<ZPoly> gcd_heuristic(const ZPoly& a, const ZPoly& b) {
    auto maxnorm = [](const ZPoly& p) {
        mpz_class m = 0;
        for (const auto& c : p.coeffs()) {
            mpz_class t = abs(c);
            if (t > m) m = t;
        }
        return m;
    };
    mpz_class xi = 2 * std::min(maxnorm(a), maxnorm(b)) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        mpz_class ga = a.eval_homogeneous(xi, 1);
        mpz_class gb = b.eval_homogeneous(xi, 1);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), ga.get_mpz_t(), gb.get_mpz_t());
        if (g != 0) {
            std::vector<mpz_class> digits;
            mpz_class half = xi / 2;
            while (g != 0) {
                mpz_class d;
                mpz_fdiv_r(d.get_mpz_t(), g.get_mpz_t(), xi.get_mpz_t());
                if (d > half) d -= xi;
                digits.push_back(d);
                g = (g - d) / xi;
            }
            ZPoly cand = ZPoly(std::move(digits)).primitive();
            if (!cand.is_zero() && divide_exact(a, cand) && divide_exact(b, cand)) return cand;
        }
        // xi <- floor(xi * 73794 / 27011), the golden-ratio-ish growth of the original
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

ZPoly gcd_prs(ZPoly a, ZPoly b) {
    a = a.primitive();
    b = b.primitive();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        auto r = pseudo_divmod(a, b).second;
        a = std::move(b);
        b = r.primitive();
    }
    return a.primitive();
}

}  // namespace

ZPoly gcd(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    if (a.is_constant() || b.is_constant()) return ZPoly(1);
    ZPoly pa = a.primitive();
    ZPoly pb = b.primitive();
    if (pa == pb) return pa;
    // a common power of q is split off first (the heuristic cannot see it at xi)
    int v = std::min(pa.valuation(), pb.valuation());
    if (v > 0 || pa.valuation() > 0 || pb.valuation() > 0) {
        ZPoly g = gcd(pa.shift_down(pa.valuation()), pb.shift_down(pb.valuation()));
        return g.shift_up(v);
    }
    if (auto h = gcd_heuristic(pa, pb)) return *h;
    return gcd_prs(std::move(pa), std::move(pb));
}

ZPoly pow(const ZPoly& p, unsigned e) {
    ZPoly r(1), b = p;
    while (e) {
        if (e & 1U) r *= b;
        e >>= 1U;
        if (e) b *= b;
    }
    return r;
}

std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& p) {
    std::vector<std::pair<ZPoly, int>> out;
    ZPoly f = p.primitive();
    if (f.degree() < 1) return out;
    ZPoly fp = f.derivative();
    ZPoly a = gcd(f, fp);
    ZPoly b = exact_quotient(f, a);
    ZPoly c = exact_quotient(fp, a);
    ZPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        ZPoly g = gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, i);
        ZPoly nb = exact_quotient(b, g);
        ZPoly nc = exact_quotient(d, g);
        b = std::move(nb);
        d = nc - b.derivative();
        ++i;
    }
    return out;
}

ZPoly squarefree_part(const ZPoly& p) {
    ZPoly r(1);
    for (auto& [f, m] : squarefree_decomposition(p)) r *= f;
    return r;
}

}  // namespace pgo
