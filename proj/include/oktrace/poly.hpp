#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace oktrace {

/* Integer polynomial, coefficients lowest degree first, trailing zeros
 * stripped. The zero polynomial has an empty coefficient vector and
 * degree -1. */
struct IntPoly {
    std::vector<mpz_class> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs) : c(std::move(coeffs)) {
        normalize();
    }

    static IntPoly constant(const mpz_class& v);
    static IntPoly x_power(std::size_t k);  // x^k

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    const mpz_class& lc() const;
    mpz_class coeff(std::size_t i) const {
        return i < c.size() ? c[i] : mpz_class(0);
    }
    void normalize();

    bool operator==(const IntPoly&) const = default;
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a);
IntPoly operator*(const IntPoly& a, const mpz_class& s);

mpz_class eval(const IntPoly& f, const mpz_class& x);
IntPoly derivative(const IntPoly& f);
mpz_class poly_content(const IntPoly& f);  // gcd of coefficients, >= 0
IntPoly primitive_part(const IntPoly& f);  // f / content, lc > 0

/* Division by a monic divisor, exact over Z: a = q*b + r, deg r < deg b. */
void divrem_monic(const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r);
IntPoly mod_monic(const IntPoly& a, const IntPoly& f);
IntPoly mulmod_monic(const IntPoly& a, const IntPoly& b, const IntPoly& f);

/* Pseudo-division: lc(b)^(deg a - deg b + 1) * a = q*b + r. */
void pseudo_divrem(const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r);

/* True when b divides a exactly over Z; quotient returned through q. */
bool try_divide(const IntPoly& a, const IntPoly& b, IntPoly& q);

/* gcd over Z, primitive with positive leading coefficient times the content
 * gcd (so gcd(f, g) divides both exactly over Z). */
IntPoly poly_gcd(const IntPoly& f, const IntPoly& g);

/* Resultant by the subresultant PRS, exact. Two constants are rejected. */
mpz_class resultant(const IntPoly& f, const IntPoly& g);

/* disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f). Rejects deg < 1. */
mpz_class discriminant(const IntPoly& f);

/* Power sums of the roots of a monic f: [p_0 = n, p_1, ..., p_kmax] by
 * Newton's identities. p_k is the trace of multiplication by x^k on
 * Q[x]/(f). */
std::vector<mpz_class> power_sums(const IntPoly& f, std::size_t k_max);

/* f(g) reduced mod a monic modulus, Horner over Z. */
IntPoly poly_mod_compose(const IntPoly& f, const IntPoly& g, const IntPoly& modulus);

struct IrredOptions {
    int witness_primes = 25;               // mod-p witnesses to scan
    unsigned long max_subset_tests = 1ul << 20;  // Zassenhaus recombination budget
    std::uint64_t seed = 0;                // seeds equal-degree splitting
};

struct IrreducibilityResult {
    enum class Status { proved, disproved, unknown };
    Status status = Status::unknown;
    IntPoly witness_factor;  // a proper factor, set when disproved
    std::string method;      // stage that decided
};

/* Decides irreducibility of a monic f over Q. Effort ladder: rational roots,
 * Eisenstein, mod-p witness over the first witness_primes primes not dividing
 * disc(f), then full Zassenhaus factorization over Z. */
IrreducibilityResult is_irreducible_over_q(const IntPoly& f,
                                           const IrredOptions& opts = {});

/* Complete factorization of a monic squarefree-or-not f over Z into monic
 * irreducible factors with multiplicity; empty result means the budget was
 * exhausted. Exposed for tests. */
std::vector<std::pair<IntPoly, unsigned>> factor_over_z(const IntPoly& f,
                                                        const IrredOptions& opts = {});

}  // namespace oktrace
