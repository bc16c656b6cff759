#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "pgo/interval.hpp"
#include "pgo/rational_function.hpp"
#include "pgo/zpoly.hpp"

namespace pgo {

struct RationalInterval {
    mpq_class lo, hi;  // lo == hi marks an exact rational root
    bool exact() const { return lo == hi; }
    std::string to_string(int digits = 12) const;
};

struct RootIsolation {
    ZPoly poly;  // the input polynomial (roots are those of its squarefree part)
    std::vector<RationalInterval> roots;  // disjoint, increasing, each with exactly one root > 1
    mpq_class width;
};

// Number of distinct real roots of p in the half-open interval (a, b].
int count_roots(const ZPoly& p, const mpq_class& a, const mpq_class& b);
// Number of distinct real roots of p in (1, oo).
int count_roots_gt1(const ZPoly& p);
// Isolate every real root > 1 and refine each interval below `width`.
RootIsolation real_roots_gt1(const ZPoly& p, const mpq_class& width = mpq_class(1, 1000000000));
RootIsolation real_roots_gt1(const RationalFunction& f, const mpq_class& width = mpq_class(1, 1000000000));
// Shrink an isolating interval of a root of the squarefree polynomial p.
RationalInterval refine_root(const ZPoly& p, RationalInterval iv, const mpq_class& width);

// q^8 - q^6 - q^4 - q^2 + 1; its unique root > 1 gives index (5 + sqrt 13)/2.
ZPoly haagerup_polynomial();

// a + b*sqrt(d), d > 0 squarefree.
struct QuadraticIrrational {
    mpq_class a, b;
    mpz_class d;
    Interval enclose(mpfr_prec_t prec) const;
    std::string to_string() const;
};
QuadraticIrrational haagerup_index();

// q^2 + 2 + q^-2
Interval index_of(const Interval& q);
Interval index_of(const mpq_class& q, int digits);

// Index polynomial m(I) such that every root q of p satisfies m(q^2 + 2 + q^-2) = 0;
// decided exactly by reducing m(q^2+2+q^-2) * q^(2 deg m) modulo p.
bool index_satisfies(const ZPoly& p, const ZPoly& index_poly);

// True iff p has a root > 1 and every root > 1 of p is a root of the Haagerup polynomial.
bool matches_haagerup_index(const ZPoly& p);

}  // namespace pgo
