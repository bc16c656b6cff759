#include "pgo/interval.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace pgo {

mpfr_prec_t bits_for_digits(int digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 24;
}

Interval::Interval(mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const mpq_class& x, mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_q(lo_, x.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, x.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(long x, mpfr_prec_t prec) : Interval(mpq_class(x), prec) {}

Interval::Interval(const Interval& o) {
    mpfr_init2(lo_, o.prec());
    mpfr_init2(hi_, o.prec());
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : Interval(o.prec()) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, o.prec());
        mpfr_set_prec(hi_, o.prec());
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

mpq_class Interval::lower() const {
    mpq_class r;
    mpfr_get_q(r.get_mpq_t(), lo_);
    return r;
}

mpq_class Interval::upper() const {
    mpq_class r;
    mpfr_get_q(r.get_mpq_t(), hi_);
    return r;
}

double Interval::mid_d() const {
    mpfr_t m;
    mpfr_init2(m, prec() + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);  // exact at prec + 1 bits up to exponent alignment
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    double r = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return r;
}

double Interval::width_d() const {
    mpfr_t w;
    mpfr_init2(w, prec());
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double r = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return r;
}

bool Interval::contains(const mpq_class& x) const {
    return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
}

bool Interval::intersects(const Interval& o) const {
    return mpfr_lessequal_p(lo_, o.hi_) && mpfr_lessequal_p(o.lo_, hi_);
}

bool Interval::subset_of(const Interval& o) const {
    return mpfr_lessequal_p(o.lo_, lo_) && mpfr_lessequal_p(hi_, o.hi_);
}

Interval Interval::operator-() const {
    Interval r(prec());
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Interval r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    const mpfr_t* xs[2] = {&a.lo_, &a.hi_};
    const mpfr_t* ys[2] = {&b.lo_, &b.hi_};
    bool first = true;
    for (auto x : xs)
        for (auto y : ys) {
            mpfr_mul(t, *x, *y, MPFR_RNDD);
            if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, *x, *y, MPFR_RNDU);
            if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw InsufficientPrecision("divisor enclosure contains zero");
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Interval inv(p);
    mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
    return a * inv;
}

Interval Interval::sqrt() const {
    if (mpfr_sgn(lo_) < 0) throw InsufficientPrecision("square root of an enclosure reaching below zero");
    Interval r(prec());
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::square() const {
    if (certainly_positive() || certainly_negative() || mpfr_zero_p(lo_) || mpfr_zero_p(hi_)) {
        Interval r = *this * *this;
        if (mpfr_sgn(r.lo_) < 0) mpfr_set_zero(r.lo_, 1);
        return r;
    }
    Interval r(prec());
    mpfr_set_zero(r.lo_, 1);
    mpfr_t a, b;
    mpfr_init2(a, prec());
    mpfr_init2(b, prec());
    mpfr_sqr(a, lo_, MPFR_RNDU);
    mpfr_sqr(b, hi_, MPFR_RNDU);
    mpfr_max(r.hi_, a, b, MPFR_RNDU);
    mpfr_clear(a);
    mpfr_clear(b);
    return r;
}

namespace {
std::string render(const mpfr_t x, int digits, mpfr_rnd_t rnd) {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*R*g", digits, rnd, x);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}
}  // namespace

std::string Interval::to_string(int digits) const {
    mpfr_t m;
    mpfr_init2(m, prec() + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    std::string s = render(m, digits, MPFR_RNDN);
    mpfr_clear(m);
    return s;
}

std::string Interval::bounds_string(int digits) const {
    return fmt::format("[{}, {}]", render(lo_, digits, MPFR_RNDD), render(hi_, digits, MPFR_RNDU));
}

ComplexInterval& ComplexInterval::operator+=(const ComplexInterval& o) {
    re = re + o.re;
    im = im + o.im;
    return *this;
}

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return ComplexInterval(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

std::string ComplexInterval::to_string(int digits) const {
    if (im.lower_d() == 0.0 && im.upper_d() == 0.0) return re.to_string(digits);
    return fmt::format("{} + {}*i", re.to_string(digits), im.to_string(digits));
}

}  // namespace pgo
