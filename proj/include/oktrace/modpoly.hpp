#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "oktrace/intmat.hpp"
#include "oktrace/poly.hpp"

namespace oktrace {

/* Polynomial over F_p, p prime. Coefficients canonical in [0, p), lowest
 * degree first, trailing zeros stripped. */
struct ModPoly {
    mpz_class p;
    std::vector<mpz_class> c;

    ModPoly() = default;
    ModPoly(mpz_class prime, std::vector<mpz_class> coeffs);
    static ModPoly reduce(const IntPoly& f, const mpz_class& p);
    static ModPoly x_power(const mpz_class& p, std::size_t k);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    const mpz_class& lc() const;
    void normalize();

    IntPoly lift() const;            // representatives in [0, p)
    IntPoly lift_symmetric() const;  // representatives in (-p/2, p/2]

    bool operator==(const ModPoly&) const = default;
};

ModPoly operator+(const ModPoly& a, const ModPoly& b);
ModPoly operator-(const ModPoly& a, const ModPoly& b);
ModPoly operator*(const ModPoly& a, const ModPoly& b);
ModPoly mul_scalar(const ModPoly& a, const mpz_class& s);
ModPoly make_monic(const ModPoly& a);
mpz_class eval(const ModPoly& f, const mpz_class& x);
ModPoly derivative(const ModPoly& f);

void divrem(const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r);
ModPoly mod(const ModPoly& a, const ModPoly& b);
ModPoly divexact(const ModPoly& a, const ModPoly& b);
ModPoly gcd(const ModPoly& a, const ModPoly& b);  // monic (or zero)
ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f);
ModPoly powmod(const ModPoly& a, const mpz_class& e, const ModPoly& f);

/* Deterministic randomness for equal-degree splitting. All factorization
 * randomness flows through one of these so runs are reproducible. */
class SplitRng {
  public:
    explicit SplitRng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t word() { return eng_(); }
    mpz_class below(const mpz_class& bound);  // uniform in [0, bound)

  private:
    std::mt19937_64 eng_;
};

/* Monic irreducible factors with multiplicity; product times lc(f) equals f.
 * Factors sorted by (degree, coefficient sequence). */
std::vector<std::pair<ModPoly, unsigned>> factor_mod_p(const ModPoly& f,
                                                       SplitRng& rng);

bool is_squarefree_mod_p(const ModPoly& f);
bool is_irreducible_mod_p(const ModPoly& f);

/* n x n matrix of the Frobenius x -> x^p acting on F_p[x]/(f), rows are
 * images of the power basis 1, x, ..., x^(n-1). Entries in [0, p). */
IntMat frobenius_matrix(const ModPoly& f);

}  // namespace oktrace
