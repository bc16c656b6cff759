#include "pgo/radical.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <mutex>

namespace pgo {

UnknownRadical::UnknownRadical(std::string_view name)
    : std::out_of_range(fmt::format("unregistered radical '{}'", name)) {}

namespace {

void pollard(const mpz_class& n, std::map<mpz_class, int>& out);

void factor_integer(mpz_class n, std::map<mpz_class, int>& out) {
    for (unsigned long p = 2; p < 65536 && n > 1; p += (p == 2 ? 1 : 2)) {
        if (static_cast<double>(p) * static_cast<double>(p) > n.get_d()) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++out[mpz_class(p)];
        }
    }
    if (n > 1) pollard(n, out);
}

void pollard(const mpz_class& n, std::map<mpz_class, int>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) {
        ++out[n];
        return;
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_class r = sqrt(n);
        pollard(r, out);
        pollard(r, out);
        return;
    }
    for (unsigned long c = 1;; ++c) {
        mpz_class x = 2, y = 2, d = 1;
        auto f = [&](const mpz_class& v) {
            mpz_class t = v * v + c;
            mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            return t;
        };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            mpz_class diff = abs(x - y);
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) {
            pollard(d, out);
            pollard(n / d, out);
            return;
        }
    }
}

}  // namespace

RadicalRegistry& RadicalRegistry::global() {
    static RadicalRegistry reg;
    return reg;
}

AtomId RadicalRegistry::atom_locked(Kind k, const ZPoly& poly, const mpz_class& prime) {
    if (k == Kind::ImaginaryUnit && imag_ != UINT32_MAX) return imag_;
    if (k == Kind::Prime) {
        auto it = primes_.find(prime);
        if (it != primes_.end()) return it->second;
    }
    if (k == Kind::Polynomial) {
        auto it = polys_.find(poly);
        if (it != polys_.end()) return it->second;
    }
    Atom a{k, RationalFunction(), {}};
    switch (k) {
        case Kind::ImaginaryUnit:
            a.value = RationalFunction(-1);
            a.label = "-1";
            break;
        case Kind::Prime:
            a.value = RationalFunction(prime);
            a.label = prime.get_str();
            break;
        case Kind::Polynomial:
            a.value = RationalFunction(poly);
            a.label = poly.to_string();
            break;
    }
    atoms_.push_back(std::move(a));
    auto id = static_cast<AtomId>(atoms_.size() - 1);
    if (k == Kind::ImaginaryUnit) imag_ = id;
    if (k == Kind::Prime) primes_[prime] = id;
    if (k == Kind::Polynomial) polys_[poly] = id;
    return id;
}

const RationalFunction& RadicalRegistry::radicand(AtomId id) const {
    std::shared_lock lk(mu_);
    return atoms_.at(id).value;  // deque elements stay put on push_back
}

RadicalRegistry::Kind RadicalRegistry::kind(AtomId id) const {
    std::shared_lock lk(mu_);
    return atoms_.at(id).kind;
}

std::string RadicalRegistry::label(AtomId id) const {
    std::shared_lock lk(mu_);
    return atoms_.at(id).label;
}

std::size_t RadicalRegistry::size() const {
    std::shared_lock lk(mu_);
    return atoms_.size();
}

void RadicalRegistry::define(const std::string& name, const RationalFunction& radicand) {
    std::unique_lock lk(mu_);
    auto it = names_.find(name);
    if (it != names_.end()) {
        if (it->second != radicand)
            throw std::invalid_argument(fmt::format("radical '{}' already defined differently", name));
        return;
    }
    names_.emplace(name, radicand);
}

RationalFunction RadicalRegistry::named_radicand(std::string_view name) const {
    std::shared_lock lk(mu_);
    auto it = names_.find(name);
    if (it == names_.end()) throw UnknownRadical(name);
    return it->second;
}

bool RadicalRegistry::has_name(std::string_view name) const {
    std::shared_lock lk(mu_);
    return names_.find(name) != names_.end();
}

std::pair<RationalFunction, Monomial> RadicalRegistry::sqrt_decompose(const RationalFunction& f) {
    if (f.is_zero()) return {RationalFunction(), {}};
    {
        std::shared_lock lk(mu_);
        auto it = cache_.find(f);
        if (it != cache_.end()) return it->second;
    }
    // sqrt(c q^s N / D) = sqrt(c) * sqrt(q^s) * sqrt(N D) / D, c = a/b -> sqrt(ab)/b
    mpq_class c = f.coefficient();
    mpz_class z = c.get_num() * c.get_den();
    RationalFunction factor = RationalFunction(f.den()).inverse() * RationalFunction(mpq_class(1, c.get_den()));
    std::map<mpz_class, int> pf;
    factor_integer(abs(z), pf);
    Factorization fac = pgo::factor(f.num() * f.den());
    int s = f.shift();
    int half = s >= 0 ? s / 2 : -((-s + 1) / 2);
    factor *= RationalFunction::q_power(half);

    std::unique_lock lk(mu_);
    Monomial m;
    if (z < 0) m.push_back(atom_locked(Kind::ImaginaryUnit, ZPoly(), 0));
    mpz_class square_part = 1;
    for (auto& [p, e] : pf) {
        for (int i = 0; i < e / 2; ++i) square_part *= p;
        if (e % 2) m.push_back(atom_locked(Kind::Prime, ZPoly(), p));
    }
    factor *= RationalFunction(square_part);
    if (s - 2 * half == 1) m.push_back(atom_locked(Kind::Polynomial, ZPoly::monomial(1, 1), 0));
    for (auto& [g, e] : fac.factors) {
        if (e >= 2) factor *= RationalFunction(pow(g, static_cast<unsigned>(e / 2)));
        if (e % 2) m.push_back(atom_locked(Kind::Polynomial, g, 0));
    }
    // fac.unit is +-1 here: num and den are primitive with positive leading coefficients
    std::sort(m.begin(), m.end());
    auto result = std::make_pair(factor, m);
    cache_.emplace(f, result);
    return result;
}

// ---------------------------------------------------------------------------

RadicalScalar::RadicalScalar() = default;

RadicalScalar::RadicalScalar(long c) : RadicalScalar(RationalFunction(c)) {}

RadicalScalar::RadicalScalar(const RationalFunction& f) {
    if (!f.is_zero()) terms_.emplace_back(Monomial{}, f);
}

RadicalScalar RadicalScalar::sqrt(const RationalFunction& f) {
    auto [factor, m] = RadicalRegistry::global().sqrt_decompose(f);
    RadicalScalar r;
    if (!factor.is_zero()) r.terms_.emplace_back(std::move(m), std::move(factor));
    return r;
}

RadicalScalar RadicalScalar::named(std::string_view name) {
    return sqrt(RadicalRegistry::global().named_radicand(name));
}

RadicalScalar RadicalScalar::imaginary_unit() { return sqrt(RationalFunction(-1)); }

namespace {

// Product of two monomials: merged monomial and the radicand factor from repeats.
std::pair<RationalFunction, Monomial> mono_mul(const Monomial& a, const Monomial& b) {
    RationalFunction f(1);
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    auto& reg = RadicalRegistry::global();
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j])) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j] < a[i]) {
            out.push_back(b[j++]);
        } else {
            f *= reg.radicand(a[i]);
            ++i;
            ++j;
        }
    }
    return {f, out};
}

void merge_into(std::vector<RadicalScalar::Term>& terms, Monomial m, RationalFunction c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(terms.begin(), terms.end(), m,
                               [](const RadicalScalar::Term& t, const Monomial& k) { return t.first < k; });
    if (it != terms.end() && it->first == m) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    } else {
        terms.emplace(it, std::move(m), std::move(c));
    }
}

}  // namespace

bool RadicalScalar::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
}

RationalFunction RadicalScalar::rational() const {
    if (!is_rational()) throw std::domain_error("scalar is not rational: " + to_string());
    return terms_.empty() ? RationalFunction() : terms_[0].second;
}

std::vector<AtomId> RadicalScalar::atoms() const {
    std::vector<AtomId> out;
    for (auto& t : terms_) out.insert(out.end(), t.first.begin(), t.first.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RadicalScalar RadicalScalar::operator-() const {
    RadicalScalar r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

RadicalScalar& RadicalScalar::operator+=(const RadicalScalar& o) {
    for (auto& [m, c] : o.terms_) merge_into(terms_, m, c);
    return *this;
}

RadicalScalar& RadicalScalar::operator-=(const RadicalScalar& o) { return *this += -o; }

RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b) {
    RadicalScalar r;
    if (a.terms_.empty() || b.terms_.empty()) return r;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) {
            if (ma.empty() && mb.empty()) {
                merge_into(r.terms_, {}, ca * cb);
                continue;
            }
            auto [f, m] = mono_mul(ma, mb);
            merge_into(r.terms_, std::move(m), ca * cb * f);
        }
    return r;
}

RadicalScalar& RadicalScalar::operator*=(const RadicalScalar& o) { return *this = *this * o; }

RadicalScalar& RadicalScalar::operator/=(const RadicalScalar& o) { return *this = *this * o.inverse(); }

bool operator==(const RadicalScalar& a, const RadicalScalar& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
    return true;
}

RadicalScalar RadicalScalar::conjugate_atom(AtomId id) const {
    RadicalScalar r = *this;
    for (auto& t : r.terms_)
        if (std::binary_search(t.first.begin(), t.first.end(), id)) t.second = -t.second;
    return r;
}

RadicalScalar RadicalScalar::conj() const {
    auto& reg = RadicalRegistry::global();
    RadicalScalar r = *this;
    for (auto& t : r.terms_)
        for (AtomId id : t.first)
            if (reg.kind(id) == RadicalRegistry::Kind::ImaginaryUnit) t.second = -t.second;
    return r;
}

RadicalScalar RadicalScalar::inverse() const {
    if (terms_.empty()) throw DivisionByZero();
    RadicalScalar num(1);
    RadicalScalar cur = *this;
    for (AtomId a : atoms()) {
        RadicalScalar c = cur.conjugate_atom(a);
        num *= c;
        cur *= c;
    }
    return num * RadicalScalar(cur.rational().inverse());
}

RationalFunction RadicalScalar::norm() const {
    RadicalScalar cur = *this;
    for (AtomId a : atoms()) cur *= cur.conjugate_atom(a);
    return cur.rational();
}

std::string RadicalScalar::to_string() const {
    if (terms_.empty()) return "0";
    auto& reg = RadicalRegistry::global();
    std::vector<std::string> parts;
    for (auto& [m, c] : terms_) {
        if (m.empty()) {
            parts.push_back(c.to_string());
            continue;
        }
        std::vector<std::string> rads;
        for (AtomId id : m) rads.push_back(fmt::format("sqrt[{}]", reg.label(id)));
        std::sort(rads.begin(), rads.end());
        std::string r;
        for (auto& s : rads) r += (r.empty() ? "" : "*") + s;
        if (c == RationalFunction(1))
            parts.push_back(r);
        else if (c == RationalFunction(-1))
            parts.push_back("-" + r);
        else
            parts.push_back(fmt::format("({})*{}", c.to_string(), r));
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (auto& p : parts) out += (out.empty() ? "" : " + ") + p;
    return out;
}

Interval enclose(const ZPoly& p, const Interval& q) {
    Interval acc(0L, q.prec());
    for (int i = p.degree(); i >= 0; --i) acc = acc * q + Interval(mpq_class(p[i]), q.prec());
    return acc;
}

Interval enclose(const RationalFunction& f, const Interval& q) {
    if (f.is_zero()) return Interval(0L, q.prec());
    Interval v = enclose(f.num(), q) / enclose(f.den(), q);
    v = v * Interval(f.coefficient(), q.prec());
    Interval qp(1L, q.prec());
    for (int i = 0; i < std::abs(f.shift()); ++i) qp = qp * q;
    return f.shift() >= 0 ? v * qp : v / qp;
}

ComplexInterval RadicalScalar::enclose(const Interval& q) const {
    auto& reg = RadicalRegistry::global();
    mpfr_prec_t prec = q.prec();
    ComplexInterval sum(prec);
    sum.re = Interval(0L, prec);
    sum.im = Interval(0L, prec);
    for (auto& [m, c] : terms_) {
        Interval mag = pgo::enclose(c, q);
        int ipow = 0;
        for (AtomId id : m) {
            if (reg.kind(id) == RadicalRegistry::Kind::ImaginaryUnit) {
                ++ipow;
                continue;
            }
            Interval v = pgo::enclose(reg.radicand(id), q);
            if (v.certainly_positive()) {
                mag = mag * v.sqrt();
            } else if (v.certainly_negative()) {
                mag = mag * (-v).sqrt();
                ++ipow;
            } else {
                throw InsufficientPrecision(
                    fmt::format("sign of radicand {} undetermined at this precision", reg.label(id)));
            }
        }
        ComplexInterval t(prec);
        switch (ipow % 4) {
            case 0: t = ComplexInterval(mag, Interval(0L, prec)); break;
            case 1: t = ComplexInterval(Interval(0L, prec), mag); break;
            case 2: t = ComplexInterval(-mag, Interval(0L, prec)); break;
            default: t = ComplexInterval(Interval(0L, prec), -mag); break;
        }
        sum += t;
    }
    return sum;
}

ComplexInterval eval_numeric(const RadicalScalar& s, const Interval& q) {
    if (!q.certainly_positive()) throw std::invalid_argument("eval_numeric requires q > 0");
    return s.enclose(q);
}

ComplexInterval eval_numeric(const RadicalScalar& s, const mpq_class& q, int digits) {
    return eval_numeric(s, Interval(q, bits_for_digits(digits)));
}

RationalFunction divisor_condition(const RadicalScalar& x) {
    if (x.terms().size() != 1) return x.norm();
    const auto& [mono, c] = x.terms().front();
    RationalFunction r = c;
    for (AtomId a : mono) r *= RadicalRegistry::global().radicand(a);
    return r;
}

}  // namespace pgo
