#include "pgo/rational_function.hpp"

#include <fmt/format.h>

#include <cctype>
#include <utility>

namespace pgo {

ParseError::ParseError(std::size_t pos, const std::string& msg)
    : std::runtime_error(fmt::format("parse error at position {}: {}", pos, msg)), position(pos) {}

RationalFunction::RationalFunction() : c_(0), num_(1), den_(1) {}
RationalFunction::RationalFunction(long c) : c_(c), num_(1), den_(1) {}
RationalFunction::RationalFunction(const mpz_class& c) : c_(c), num_(1), den_(1) {}
RationalFunction::RationalFunction(const mpq_class& c) : c_(c), num_(1), den_(1) { c_.canonicalize(); }

RationalFunction::RationalFunction(const ZPoly& p) : c_(1), num_(p), den_(1) {
    if (p.is_zero()) {
        *this = RationalFunction();
        return;
    }
    normalize();
}

RationalFunction::RationalFunction(const ZPoly& num, const ZPoly& den) : c_(1), num_(num), den_(den) {
    if (den.is_zero()) throw DivisionByZero();
    if (num.is_zero()) {
        *this = RationalFunction();
        return;
    }
    normalize();
}

RationalFunction RationalFunction::q() { return q_power(1); }

RationalFunction RationalFunction::q_power(int k) {
    RationalFunction r(1);
    r.shift_ = k;
    return r;
}

void RationalFunction::normalize() {
    if (c_ == 0 || num_.is_zero()) {
        *this = RationalFunction();
        return;
    }
    int vn = num_.valuation();
    int vd = den_.valuation();
    if (vn) num_ = num_.shift_down(vn);
    if (vd) den_ = den_.shift_down(vd);
    shift_ += vn - vd;
    ZPoly g = gcd(num_, den_);
    if (!g.is_one()) {
        num_ = exact_quotient(num_, g);
        den_ = exact_quotient(den_, g);
    }
    auto [cn, pn] = num_.split_content();
    auto [cd, pd] = den_.split_content();
    mpq_class unit(cn, cd);
    unit.canonicalize();  // cd may be negative
    c_ *= unit;
    num_ = std::move(pn);
    den_ = std::move(pd);
}

ZPoly RationalFunction::numerator_poly() const {
    ZPoly r = num_ * mpz_class(c_.get_num());
    return shift_ > 0 ? r.shift_up(shift_) : r;
}

ZPoly RationalFunction::denominator_poly() const {
    ZPoly r = den_ * mpz_class(c_.get_den());
    return shift_ < 0 ? r.shift_up(-shift_) : r;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.c_ = -r.c_;
    return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (shift_ == o.shift_ && num_ == o.num_ && den_ == o.den_) {
        c_ += o.c_;
        if (c_ == 0) *this = RationalFunction();
        return *this;
    }
    int m = std::min(shift_, o.shift_);
    ZPoly g = gcd(den_, o.den_);
    ZPoly d1 = g.is_one() ? den_ : exact_quotient(den_, g);
    ZPoly d2 = g.is_one() ? o.den_ : exact_quotient(o.den_, g);
    mpz_class L;
    mpz_lcm(L.get_mpz_t(), c_.get_den_mpz_t(), o.c_.get_den_mpz_t());
    mpz_class a1 = c_.get_num() * (L / c_.get_den());
    mpz_class a2 = o.c_.get_num() * (L / o.c_.get_den());
    ZPoly n = (num_ * d2).shift_up(shift_ - m) * a1 + (o.num_ * d1).shift_up(o.shift_ - m) * a2;
    if (n.is_zero()) return *this = RationalFunction();
    ZPoly den = den_ * d2;
    if (!g.is_one()) {
        ZPoly g2 = gcd(n, g);
        if (!g2.is_one()) {
            n = exact_quotient(n, g2);
            den = exact_quotient(den, g2);
        }
    }
    int v = n.valuation();
    if (v) n = n.shift_down(v);
    auto [cn, pn] = n.split_content();
    c_ = mpq_class(cn, L);
    c_.canonicalize();
    shift_ = m + v;
    num_ = std::move(pn);
    den_ = std::move(den);
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunction();
    RationalFunction r;
    r.c_ = a.c_ * b.c_;
    r.shift_ = a.shift_ + b.shift_;
    if (a.num_.is_one() && b.num_.is_one()) {
        r.num_ = ZPoly(1);
        r.den_ = a.den_ * b.den_;
        return r;
    }
    if (a.den_.is_one() && b.den_.is_one()) {
        r.num_ = a.num_ * b.num_;
        r.den_ = ZPoly(1);
        return r;
    }
    ZPoly g1 = gcd(a.num_, b.den_);
    ZPoly g2 = gcd(b.num_, a.den_);
    ZPoly n1 = g1.is_one() ? a.num_ : exact_quotient(a.num_, g1);
    ZPoly d2 = g1.is_one() ? b.den_ : exact_quotient(b.den_, g1);
    ZPoly n2 = g2.is_one() ? b.num_ : exact_quotient(b.num_, g2);
    ZPoly d1 = g2.is_one() ? a.den_ : exact_quotient(a.den_, g2);
    r.num_ = n1 * n2;
    r.den_ = d1 * d2;
    return r;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) { return *this = *this * o; }

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this = *this * o.inverse(); }

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw DivisionByZero();
    RationalFunction r;
    r.c_ = 1 / c_;
    r.shift_ = -shift_;
    r.num_ = den_;
    r.den_ = num_;
    return r;
}

RationalFunction RationalFunction::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RationalFunction r(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

RationalFunction RationalFunction::bar() const {
    if (is_zero()) return *this;
    auto reverse = [](const ZPoly& p) {
        std::vector<mpz_class> v(p.coeffs().rbegin(), p.coeffs().rend());
        return ZPoly(std::move(v));
    };
    // p(1/q) = q^{-deg p} * reverse(p)(q)
    RationalFunction r(reverse(num_), reverse(den_));
    r.c_ *= c_;
    r.shift_ += -shift_ - num_.degree() + den_.degree();
    return r;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.c_ == b.c_ && a.shift_ == b.shift_ && a.num_ == b.num_ && a.den_ == b.den_;
}

bool operator<(const RationalFunction& a, const RationalFunction& b) {
    if (a.shift_ != b.shift_) return a.shift_ < b.shift_;
    if (a.num_ != b.num_) return a.num_ < b.num_;
    if (a.den_ != b.den_) return a.den_ < b.den_;
    return a.c_ < b.c_;
}

mpq_class RationalFunction::eval(const mpq_class& x) const {
    if (is_zero()) return 0;
    mpq_class d = den_.eval(x);
    if (d == 0 || (x == 0 && shift_ < 0)) throw DivisionByZero();
    mpq_class r = c_ * num_.eval(x) / d;
    mpq_class xp = 1;
    for (int i = 0; i < std::abs(shift_); ++i) xp *= x;
    return shift_ >= 0 ? mpq_class(r * xp) : mpq_class(r / xp);
}

std::string RationalFunction::to_string() const {
    if (is_zero()) return "0";
    ZPoly n = numerator_poly();
    ZPoly d = denominator_poly();
    if (d.is_one()) return n.to_string();
    return fmt::format("({})/({})", n.to_string(), d.to_string());
}

std::size_t RationalFunction::hash() const {
    std::size_t h = num_.hash() * 31 + den_.hash();
    h ^= static_cast<std::size_t>(shift_) * 0x9e3779b97f4a7c15ULL;
    h ^= mpz_get_ui(c_.get_num_mpz_t()) * 1000003 + mpz_get_ui(c_.get_den_mpz_t());
    return h;
}

RationalFunction quantum_integer(int n) {
    if (n < 1) throw std::invalid_argument("quantum_integer requires n >= 1");
    std::vector<mpz_class> c(static_cast<std::size_t>(2 * (n - 1) + 1), mpz_class(0));
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(2 * i)] = 1;
    return RationalFunction(ZPoly(std::move(c))) * RationalFunction::q_power(-(n - 1));
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    RationalFunction parse() {
        skip();
        if (pos_ >= s_.size()) throw ParseError(pos_, "empty expression");
        RationalFunction r = expr();
        skip();
        if (pos_ < s_.size()) throw ParseError(pos_, fmt::format("unexpected '{}'", s_[pos_]));
        return r;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool starts_factor() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return c == '(' || c == 'q' || std::isdigit(static_cast<unsigned char>(c));
    }

    RationalFunction expr() {
        RationalFunction r = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                r += term();
            } else if (peek('-')) {
                ++pos_;
                r -= term();
            } else {
                return r;
            }
        }
    }

    RationalFunction term() {
        RationalFunction r = unary();
        while (true) {
            if (peek('*')) {
                ++pos_;
                r *= unary();
            } else if (peek('/')) {
                std::size_t at = pos_++;
                RationalFunction d = unary();
                if (d.is_zero()) throw ParseError(at, "division by zero");
                r /= d;
            } else if (starts_factor()) {
                r *= power();
            } else {
                return r;
            }
        }
    }

    RationalFunction unary() {
        if (peek('-')) {
            ++pos_;
            return -unary();
        }
        if (peek('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }

    RationalFunction power() {
        std::size_t at = pos_;
        RationalFunction base = atom();
        if (peek('^')) {
            ++pos_;
            skip();
            bool neg = false;
            if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
                neg = s_[pos_] == '-';
                ++pos_;
            }
            bool paren = peek('(');
            if (paren) {
                ++pos_;
                skip();
                if (pos_ < s_.size() && s_[pos_] == '-') {
                    neg = !neg;
                    ++pos_;
                }
            }
            mpz_class e = integer();
            if (paren) {
                if (!peek(')')) throw ParseError(pos_, "expected ')'");
                ++pos_;
            }
            if (e > 10000) throw ParseError(at, "exponent too large");
            int k = static_cast<int>(e.get_si());
            if (neg && base.is_zero()) throw ParseError(at, "division by zero");
            return base.pow(neg ? -k : k);
        }
        return base;
    }

    mpz_class integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError(pos_, "expected integer");
        return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }

    RationalFunction atom() {
        skip();
        if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RationalFunction r = expr();
            if (!peek(')')) throw ParseError(pos_, "expected ')'");
            ++pos_;
            return r;
        }
        if (c == 'q') {
            ++pos_;
            return RationalFunction::q();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return RationalFunction(integer());
        throw ParseError(pos_, fmt::format("unexpected '{}'", c));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rational_function(std::string_view text) { return Parser(text).parse(); }

}  // namespace pgo
