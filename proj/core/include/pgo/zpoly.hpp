#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pgo {

// Dense polynomial in q over Z, low degree first. The zero polynomial has no
// coefficients; otherwise the leading coefficient is nonzero.
class ZPoly {
public:
    ZPoly() = default;
    ZPoly(long c);
    ZPoly(const mpz_class& c);
    explicit ZPoly(std::vector<mpz_class> coeffs);
    static ZPoly monomial(const mpz_class& c, int deg);
    static ZPoly from_list(std::initializer_list<long> low_to_high);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    const mpz_class& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    mpz_class coeff(int i) const;
    const mpz_class& leading() const { return c_.back(); }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    // Exponent of the largest power of q dividing p (0 for the zero poly).
    int valuation() const;
    ZPoly shift_up(int k) const;
    ZPoly shift_down(int k) const;

    ZPoly& operator+=(const ZPoly& o);
    ZPoly& operator-=(const ZPoly& o);
    ZPoly& operator*=(const ZPoly& o);
    ZPoly& operator*=(const mpz_class& s);
    ZPoly operator-() const;
    friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
    friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
    friend ZPoly operator*(ZPoly a, const mpz_class& s) { return a *= s; }
    friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const ZPoly& a, const ZPoly& b) { return !(a == b); }
    // Total order: degree, then coefficients from the top.
    friend bool operator<(const ZPoly& a, const ZPoly& b);

    mpz_class content() const;  // nonnegative gcd of coefficients
    // Divide by the content and fix the sign so the leading coefficient is positive.
    ZPoly primitive() const;
    // p == unit * primitive(); unit carries the sign.
    std::pair<mpz_class, ZPoly> split_content() const;
    void divide_exact(const mpz_class& s);

    ZPoly derivative() const;
    mpq_class eval(const mpq_class& x) const;
    int sign_at(const mpq_class& x) const;
    // p(x) * den(x)^deg as an integer, avoiding rationals in Horner loops.
    mpz_class eval_homogeneous(const mpz_class& num, const mpz_class& den) const;

    // Substitute q -> q^k.
    ZPoly inflate(int k) const;

    std::string to_string(const char* var = "q") const;
    std::size_t hash() const;

private:
    void trim();
    std::vector<mpz_class> c_;
};

// lc(b)^(deg a - deg b + 1) * a = quo * b + rem.
std::pair<ZPoly, ZPoly> pseudo_divmod(const ZPoly& a, const ZPoly& b);
// Quotient a / b when b divides a in Q[q] with integral quotient; nullopt otherwise.
std::optional<ZPoly> divide_exact(const ZPoly& a, const ZPoly& b);
// Quotient; throws std::domain_error when b does not divide a.
ZPoly exact_quotient(const ZPoly& a, const ZPoly& b);
// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
ZPoly gcd(const ZPoly& a, const ZPoly& b);
ZPoly pow(const ZPoly& p, unsigned e);

// Yun's algorithm on the primitive part: p ~ prod f_i^{m_i}, each f_i primitive,
// squarefree, pairwise coprime, nonconstant. Multiplicities increase.
std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& p);
ZPoly squarefree_part(const ZPoly& p);

struct Factorization {
    mpz_class unit;  // signed integer content
    std::vector<std::pair<ZPoly, int>> factors;  // primitive irreducibles, sorted
};
// Complete factorisation over Z (Zassenhaus: Cantor-Zassenhaus mod p, Hensel lifting,
// subset recombination).
Factorization factor(const ZPoly& p);

struct ZPolyHash {
    std::size_t operator()(const ZPoly& p) const { return p.hash(); }
};

}  // namespace pgo
