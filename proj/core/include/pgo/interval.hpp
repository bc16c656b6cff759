#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>

namespace pgo {

struct InsufficientPrecision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bits of working precision for a requested number of decimal digits.
mpfr_prec_t bits_for_digits(int digits);

// Closed real interval [lo, hi] with outward (directed) rounding.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 128);
    Interval(const mpq_class& x, mpfr_prec_t prec);
    Interval(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec);
    Interval(long x, mpfr_prec_t prec);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(const Interval& o);
    Interval& operator=(Interval&& o) noexcept;
    ~Interval();

    mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }
    mpq_class lower() const;
    mpq_class upper() const;
    double lower_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double upper_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double mid_d() const;
    double width_d() const;

    bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
    bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
    bool contains_zero() const { return !certainly_positive() && !certainly_negative(); }
    bool contains(const mpq_class& x) const;
    bool intersects(const Interval& o) const;
    bool subset_of(const Interval& o) const;

    Interval operator-() const;
    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    // Throws InsufficientPrecision when b straddles zero.
    friend Interval operator/(const Interval& a, const Interval& b);
    Interval sqrt() const;  // requires lo >= 0 (throws InsufficientPrecision otherwise)
    Interval square() const;

    // Decimal rendering of the midpoint with `digits` significant digits.
    std::string to_string(int digits = 20) const;
    std::string bounds_string(int digits = 20) const;

private:
    mpfr_t lo_, hi_;
};

// Enclosure of a complex number as a pair of real intervals.
struct ComplexInterval {
    Interval re;
    Interval im;
    explicit ComplexInterval(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
    ComplexInterval& operator+=(const ComplexInterval& o);
    friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
    bool certainly_nonzero() const { return !re.contains_zero() || !im.contains_zero(); }
    std::string to_string(int digits = 20) const;
};

}  // namespace pgo
