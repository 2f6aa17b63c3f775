#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "oktrace/arith.hpp"
#include "oktrace/intmat.hpp"
#include "oktrace/poly.hpp"

namespace oktrace {

/* Order in Q[x]/(f): the rows of basis/den are a Z-basis over the power
 * basis 1, a, ..., a^(n-1). Canonical form: basis in HNF, den > 0, and
 * gcd(den, content(basis)) = 1. Every order built here contains Z[a]. */
struct Order {
    IntPoly f;
    IntMat basis;
    mpz_class den{1};

    std::size_t degree() const { return basis.rows; }
    IntPoly row_poly(std::size_t i) const;  // numerator of the i-th basis element
    std::uint64_t tag() const;              // fingerprint used to reject mixed-basis ops
};

Order order_zx(const IntPoly& f);  // Z[a] itself
void order_canonicalize(Order& o);
bool order_equal(const Order& a, const Order& b);

/* Lattice index [sup : sub]; requires sub, sup over the same f with
 * sub contained in sup. */
mpz_class order_index(const Order& sub, const Order& sup);

/* Smallest lattice containing both; the inputs must be orders over the same
 * f whose sum is again closed under multiplication (true for the per-prime
 * maximal orders combined here). */
Order order_join(const Order& a, const Order& b);

/* Structure constants: tab[i].row(j) = coordinates of basis_i * basis_j over
 * the order's basis. Integrality is exactly closure under multiplication. */
std::vector<IntMat> mult_table(const Order& o);

/* Coordinates of 1 over the order's basis. */
std::vector<mpz_class> order_one_coords(const Order& o);

std::vector<mpz_class> coord_mul(const std::vector<IntMat>& tab,
                                 const std::vector<mpz_class>& y,
                                 const std::vector<mpz_class>& z);
std::vector<mpz_class> coord_mul_mod(const std::vector<IntMat>& tab,
                                     const std::vector<mpz_class>& y,
                                     const std::vector<mpz_class>& z,
                                     const mpz_class& p);
std::vector<mpz_class> coord_pow_mod(const std::vector<IntMat>& tab,
                                     const std::vector<mpz_class>& y,
                                     const mpz_class& e, const mpz_class& p,
                                     const std::vector<mpz_class>& one);

struct DedekindResult {
    bool p_maximal = false;
    Order enlarged;  // strictly larger order at p when not p-maximal
};

/* Dedekind criterion for Z[a] at p, with the enlargement witness
 * Z[a] + (M(a)/p) Z[a] where M lifts fbar / gcd(Tbar, gbar, hbar). */
DedekindResult dedekind_test(const IntPoly& f, const mpz_class& p);

/* p-radical of o as an n x n HNF lattice in o-coordinates (contains p*Z^n):
 * kernel of y -> y^(p^j) on o/po for the smallest p^j >= n. */
IntMat p_radical(const Order& o, const mpz_class& p);

/* Ring of multipliers {x in K : x * I <= I} of the radical lattice, returned
 * as an order over the power basis. Contains o. */
Order ring_of_multipliers(const Order& o, const IntMat& radical, const mpz_class& p);

/* Round-2 loop at one prime, starting from the Dedekind witness. */
Order p_maximal_order(const IntPoly& f, const mpz_class& p);

struct MaximalOrder {
    Order o;
    mpz_class disc_poly;     // disc(f)
    mpz_class index;         // [O : Z[a]]
    mpz_class disc;          // field discriminant, disc_poly = disc * index^2
    Factorization disc_fac;  // factorization of disc
};

/* Maximal order by per-prime Round 2 over the primes p with p^2 | disc(f),
 * joined by lattice sum. f must be monic with irreducibility established by
 * the caller. */
MaximalOrder maximal_order(const IntPoly& f);

/* Trace Gram matrix Tr(b_i b_j) over the order basis; entries are integers
 * for any order. det equals the order's discriminant. */
IntMat trace_gram(const Order& o);
mpz_class order_disc(const Order& o);

/* Element in coordinates over one specific order basis. */
struct FieldElement {
    std::vector<mpz_class> coords;
    std::uint64_t basis_tag = 0;
};

FieldElement element_from_coords(const Order& o, std::vector<mpz_class> coords);
/* Membership test included: throws std::invalid_argument when num/den is not
 * in the order. */
FieldElement element_from_power_basis(const Order& o, const IntPoly& num,
                                      const mpz_class& den);
std::pair<IntPoly, mpz_class> element_to_power_basis(const Order& o,
                                                     const FieldElement& a);

FieldElement multiply(const Order& o, const FieldElement& a, const FieldElement& b);
mpq_class element_trace(const Order& o, const FieldElement& a);

}  // namespace oktrace
