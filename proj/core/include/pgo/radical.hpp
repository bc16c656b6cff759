#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pgo/interval.hpp"
#include "pgo/rational_function.hpp"

namespace pgo {

struct UnknownRadical : std::out_of_range {
    explicit UnknownRadical(std::string_view name);
};

using AtomId = std::uint32_t;
// Sorted, duplicate-free product of square roots of atoms.
using Monomial = std::vector<AtomId>;

// Append-only registry of square-root atoms: sqrt(-1), primes, and irreducible
// primitive polynomials in Z[q] with positive leading coefficient (q included).
// These are multiplicatively independent modulo squares, so distinct radical
// monomials are linearly independent and the representation is canonical.
class RadicalRegistry {
public:
    enum class Kind { ImaginaryUnit, Prime, Polynomial };

    static RadicalRegistry& global();

    // sqrt(f) = factor * prod_{a in monomial} sqrt(a)
    std::pair<RationalFunction, Monomial> sqrt_decompose(const RationalFunction& f);

    // Register a named radical sqrt(radicand); redefining with another radicand throws.
    void define(const std::string& name, const RationalFunction& radicand);
    RationalFunction named_radicand(std::string_view name) const;
    bool has_name(std::string_view name) const;

    const RationalFunction& radicand(AtomId id) const;
    Kind kind(AtomId id) const;
    std::string label(AtomId id) const;
    std::size_t size() const;

private:
    struct Atom {
        Kind kind;
        RationalFunction value;  // radicand
        std::string label;
    };

    AtomId atom_locked(Kind k, const ZPoly& poly, const mpz_class& prime);

    mutable std::shared_mutex mu_;
    std::deque<Atom> atoms_;  // never reallocates elements
    std::map<ZPoly, AtomId> polys_;
    std::map<mpz_class, AtomId> primes_;
    AtomId imag_ = UINT32_MAX;
    std::map<RationalFunction, std::pair<RationalFunction, Monomial>> cache_;
    std::map<std::string, RationalFunction, std::less<>> names_;
};

// Element of Q(q)(sqrt(atoms)): sum of RationalFunction coefficients times
// radical monomials.
class RadicalScalar {
public:
    using Term = std::pair<Monomial, RationalFunction>;

    RadicalScalar();
    RadicalScalar(long c);
    RadicalScalar(const RationalFunction& f);
    static RadicalScalar sqrt(const RationalFunction& f);
    static RadicalScalar named(std::string_view name);
    static RadicalScalar imaginary_unit();

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    // The RationalFunction value; throws std::domain_error if irrational.
    RationalFunction rational() const;
    const std::vector<Term>& terms() const { return terms_; }
    std::vector<AtomId> atoms() const;

    RadicalScalar operator-() const;
    RadicalScalar& operator+=(const RadicalScalar& o);
    RadicalScalar& operator-=(const RadicalScalar& o);
    RadicalScalar& operator*=(const RadicalScalar& o);
    RadicalScalar& operator/=(const RadicalScalar& o);
    friend RadicalScalar operator+(RadicalScalar a, const RadicalScalar& b) { return a += b; }
    friend RadicalScalar operator-(RadicalScalar a, const RadicalScalar& b) { return a -= b; }
    friend RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b);
    friend RadicalScalar operator/(RadicalScalar a, const RadicalScalar& b) { return a /= b; }
    friend bool operator==(const RadicalScalar& a, const RadicalScalar& b);
    friend bool operator!=(const RadicalScalar& a, const RadicalScalar& b) { return !(a == b); }

    RadicalScalar inverse() const;
    // Flip the sign of every term carrying sqrt(a).
    RadicalScalar conjugate_atom(AtomId a) const;
    // Complex conjugation: formal sign flip on the imaginary unit.
    RadicalScalar conj() const;
    // Product of all Galois conjugates; a RationalFunction, zero iff this is zero.
    RationalFunction norm() const;

    ComplexInterval enclose(const Interval& q) const;

    std::string to_string() const;

private:
    std::vector<Term> terms_;  // sorted by monomial, nonzero coefficients
};

// A rational function vanishing wherever x does: coefficient times radicands
// for a single radical monomial, the norm otherwise.
RationalFunction divisor_condition(const RadicalScalar& x);

// Enclosure of f(q) for q in the interval; throws InsufficientPrecision on a
// denominator enclosure containing zero.
Interval enclose(const RationalFunction& f, const Interval& q);
Interval enclose(const ZPoly& p, const Interval& q);
// Numeric value of s at rational q > 0 with `digits` decimal digits of working precision.
ComplexInterval eval_numeric(const RadicalScalar& s, const mpq_class& q, int digits);
ComplexInterval eval_numeric(const RadicalScalar& s, const Interval& q);

}  // namespace pgo
