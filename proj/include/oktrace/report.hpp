#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "json.hpp"
#include "oktrace/order.hpp"
#include "oktrace/ramification.hpp"
#include "oktrace/settings.hpp"
#include "oktrace/trace.hpp"

namespace oktrace {

/* Everything the analysis pipeline knows about one field, in serializable
 * form. Invariants re-checked on deserialization: disc_poly = d_K * index^2,
 * t | n, t^2 | d_K, and sum e_i f_i = n at every split prime. */
struct FieldReport {
    IntPoly f;
    mpz_class disc_poly;
    mpz_class d_K;
    mpz_class index;
    mpz_class basis_den{1};
    IntMat basis;  // rows over the power basis; basis/den is the integral basis
    std::vector<PrimeSplitting> splittings;  // every p | disc_poly, ascending
    bool tame = true;
    std::vector<mpz_class> basis_traces;
    mpz_class t{1};
    std::vector<mpz_class> gamma;  // integral-basis coordinates, Tr(gamma) = t
    CriteriaVerdict verdict;
    /* Populated only when verdict.conjecture_status == counterexample. */
    std::vector<mpz_class> wild_primes;
    std::vector<mpz_class> deep_primes;  // p | n with p^2 | d_K
    double elapsed_ms = 0.0;             // shown in text output, never serialized

    std::size_t degree() const { return static_cast<std::size_t>(f.degree()); }
};

/* Full pipeline on a monic polynomial whose irreducibility the caller has
 * already established: maximal order, splittings at every prime dividing
 * disc(f), ramification-valuation checks, codifferent index check, trace
 * profile, decomposition check, criteria. Throws theorem_violation when a
 * proved statement fails (a bug, surfaced as exit code 5). */
FieldReport analyze_field(const IntPoly& f, const Settings& s = {});

/* JSON document ("schema": 1). Unbounded integers are decimal strings;
 * structurally small counts (degree, e_i, f_i) are JSON numbers. Timing is
 * deliberately excluded so identical inputs serialize identically. */
nlohmann::ordered_json report_to_json(const FieldReport& r);

/* Compact single-line form used for JSON-lines output (no trailing newline). */
std::string report_to_jsonl(const FieldReport& r);

/* Parses and re-validates. Throws parse_error on schema or invariant
 * failures. */
FieldReport report_from_json(const nlohmann::json& j);

std::string report_to_text(const FieldReport& r);

/* "p: e1^f1 e2^f2 (tame|wild)" with ", divides index" when applicable. */
std::string splitting_to_text(const PrimeSplitting& s);

extern const char* kCsvHeader;  // poly,n,d_K,t,tame,thm4,status
std::string report_to_csv(const FieldReport& r);

}  // namespace oktrace
