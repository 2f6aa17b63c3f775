#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace oktrace {

/* Sign-and-prime-powers form of a nonzero integer:
 *   value = sign * prod factors[i].first ^ factors[i].second,
 * primes strictly increasing, every prime certified. */
struct Factorization {
    mpz_class value;
    int sign = 1;
    std::vector<std::pair<mpz_class, unsigned>> factors;

    mpz_class recompose() const;
};

/* Primes below the trial-division bound (sieved once, shared). */
const std::vector<std::uint32_t>& small_primes();

/* Deterministic Miller-Rabin: exact below 3.317e24 (fixed witness set),
 * fixed-base strong probable-prime test beyond. */
bool is_prime(const mpz_class& n);

/* Trial division up to trial_bound (capped at 1e6), then Brent-cycle
 * Pollard rho with fixed parameters. Rejects n = 0. */
Factorization factor(const mpz_class& n, unsigned long trial_bound = 1000000);

/* Largest squarefree divisor with the sign of n: prod p^(e mod 2) * sign. */
mpz_class squarefree_part(const mpz_class& n);

/* v_p(n) for n != 0. Rejects n = 0 and p < 2. */
unsigned valuation(const mpz_class& n, const mpz_class& p);

/* gcd of all entries, nonnegative; gcd_all({}) = 0. */
mpz_class gcd_all(const std::vector<mpz_class>& xs);

/* Returns (g, c) with g = gcd(xs) >= 0 and sum c_i * xs_i = g. */
std::pair<mpz_class, std::vector<mpz_class>> xgcd(const std::vector<mpz_class>& xs);

}  // namespace oktrace
