#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "oktrace/order.hpp"

namespace oktrace {

struct PrimeSplitting {
    mpz_class p;
    /* (e_i, f_i) pairs, sorted descending lexicographically so reports are
     * canonical. Sum of e_i * f_i equals the field degree. */
    std::vector<std::pair<unsigned, unsigned>> shape;
    bool wild = false;           // some e_i divisible by p
    bool index_divides = false;  // p | [O : Z[a]]
};

/* Factor p in the maximal order. When p does not divide the index this reads
 * (e_i, f_i) off the factorization of f mod p; otherwise it splits O/pO by
 * Frobenius-kernel idempotents and recovers each e_i from powers of the
 * corresponding maximal-ideal lattice. force_general routes primes through
 * the second path regardless, for cross-checking. */
PrimeSplitting split_prime(const MaximalOrder& m, const mpz_class& p,
                           bool force_general = false);

/* Splittings at exactly the primes dividing the field discriminant,
 * ascending by p. */
std::vector<PrimeSplitting> ramified_primes(const MaximalOrder& m);

bool is_tame_field(const std::vector<PrimeSplitting>& splittings);

struct CodifferentCheck {
    mpz_class dual_index;  // index of O inside its trace-dual lattice, = |disc|
};

CodifferentCheck codifferent_index(const MaximalOrder& m);

enum class ValuationCase { tame_equality, wild_inequality };

/* Checks the discriminant-valuation consequence of the different's exponents
 * at one ramified prime: tame case v_p(disc) = sum f_i (e_i - 1); wild case
 * v_p(disc) >= sum over tame i of f_i (e_i - 1) plus sum over wild i of
 * f_i e_i. A failure can only be an implementation bug. */
ValuationCase valuation_check(const MaximalOrder& m, const PrimeSplitting& s);

}  // namespace oktrace
