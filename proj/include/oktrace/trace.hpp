#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "oktrace/order.hpp"
#include "oktrace/ramification.hpp"

namespace oktrace {

struct TraceProfile {
    std::vector<mpz_class> basis_traces;  // Tr of each maximal-order basis element
    IntMat gram;                          // Tr(b_i b_j), det = disc
    mpz_class t;                          // positive generator of Tr(O)
    FieldElement gamma;                   // Tr(gamma) = t, canonical representative
    std::vector<FieldElement> t0_basis;   // n-1 trace-zero elements
};

/* t = gcd of the basis traces; the trace-zero sublattice comes from the SNF
 * kernel of the trace form as a 1 x n integer map; gamma from xgcd
 * coefficients, reduced modulo the trace-zero lattice so reports are
 * deterministic. */
TraceProfile trace_profile(const MaximalOrder& m);

struct DecompositionCheck {
    mpz_class disc_recomputed;  // det of the Gram over (t0_basis, gamma)
    mpz_class disc_over_t2;     // disc / t^2, integral
};

/* Re-derives the discriminant from the basis (t0_basis, gamma) and asserts
 * the divisibilities t | n and t^2 | disc. Failure is an implementation
 * bug. */
DecompositionCheck verify_thm4_mechanics(const TraceProfile& profile,
                                        const MaximalOrder& m);

enum class ConjectureStatus {
    consistent_positive,
    consistent_negative,
    counterexample,
    theorem_violation,
};

const char* to_string(ConjectureStatus s);

struct CriteriaVerdict {
    bool prop1_applies = false;  // |a_1| = 1 for the supplied polynomial
    bool tame_applies = false;   // no ramified prime is wild
    bool cor3_applies = false;   // |disc| squarefree
    bool thm4_applies = false;   // every p | n has p^2 not dividing disc
    bool ground_truth_surjective = false;  // t == 1
    ConjectureStatus conjecture_status = ConjectureStatus::consistent_positive;
};

/* Pure classification table:
 *   counterexample      <=>  surjective and wild and not thm4-hypothesis
 *   theorem_violation   <=>  not surjective and (tame or thm4-hypothesis)
 *   otherwise consistent_{positive,negative}. */
ConjectureStatus conjecture_classify(bool surjective, bool wild, bool thm4_hypothesis);

/* Evaluates the four sufficiency criteria against ground truth. Throws
 * theorem_violation if any applicable criterion contradicts the computed t
 * (possible only through a bug). */
CriteriaVerdict evaluate_criteria(const IntPoly& f, const MaximalOrder& m,
                                  const std::vector<PrimeSplitting>& splittings,
                                  const TraceProfile& profile);

}  // namespace oktrace
