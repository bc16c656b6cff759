#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pgo/zpoly.hpp"

namespace pgo {

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero rational function") {}
};

struct ParseError : std::runtime_error {
    ParseError(std::size_t pos, const std::string& msg);
    std::size_t position;
};

// Element of Q(q). Canonical form c * q^shift * num / den where num and den are
// primitive integer polynomials with positive leading coefficient, coprime, and
// not divisible by q. Zero is c = 0, shift = 0, num = den = 1.
class RationalFunction {
public:
    RationalFunction();
    RationalFunction(long c);
    RationalFunction(const mpz_class& c);
    RationalFunction(const mpq_class& c);
    RationalFunction(const ZPoly& p);
    RationalFunction(const ZPoly& num, const ZPoly& den);
    static RationalFunction q();
    static RationalFunction q_power(int k);

    bool is_zero() const { return c_ == 0; }
    bool is_constant() const { return shift_ == 0 && num_.is_one() && den_.is_one(); }
    const mpq_class& coefficient() const { return c_; }
    int shift() const { return shift_; }
    const ZPoly& num() const { return num_; }
    const ZPoly& den() const { return den_; }
    // value = numerator_poly() / denominator_poly() with both integral and coprime.
    ZPoly numerator_poly() const;
    ZPoly denominator_poly() const;

    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator/=(const RationalFunction& o);
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b);
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }
    // Arbitrary but fixed total order (for use as map keys).
    friend bool operator<(const RationalFunction& a, const RationalFunction& b);

    RationalFunction inverse() const;
    RationalFunction pow(int e) const;
    // q -> 1/q
    RationalFunction bar() const;

    mpq_class eval(const mpq_class& x) const;

    std::string to_string() const;
    std::size_t hash() const;

private:
    void normalize();
    mpq_class c_;
    int shift_ = 0;
    ZPoly num_;
    ZPoly den_;
};

// [n] = q^{1-n} + q^{3-n} + ... + q^{n-1}; n >= 1.
RationalFunction quantum_integer(int n);

// Expressions over + - * / ^ ( ), integers, and the variable q; implicit
// multiplication ("2q^2", "(q+1)(q-1)"); integer exponents may be negative.
RationalFunction parse_rational_function(std::string_view text);

}  // namespace pgo
