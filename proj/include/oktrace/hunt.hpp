#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "oktrace/report.hpp"
#include "oktrace/settings.hpp"

namespace oktrace {

struct HuntConfig {
    std::size_t degree_lo = 2;
    std::size_t degree_hi = 2;
    long coeff_bound = 1;        // |a_i| <= bound, bound >= 1
    std::string input_path;      // when set, read candidates here instead
    std::string out_path;        // JSON-lines destination; empty = stdout
    unsigned workers = 1;
    std::uint64_t seed = 0;      // feeds randomized subroutines only
    bool resume = false;         // skip inputs already present in out_path
};

struct HuntSummary {
    unsigned long candidates = 0;
    unsigned long analyzed = 0;
    unsigned long reducible = 0;
    unsigned long unknown = 0;   // irreducibility budget exhausted
    unsigned long duplicates = 0;
    unsigned long skipped_existing = 0;
    std::map<ConjectureStatus, unsigned long> statuses;
    /* One text block per counterexample: polynomial plus witness data. */
    std::vector<std::string> counterexamples;

    std::string table() const;
};

/* Enumerates monic polynomials of each degree in [degree_lo, degree_hi] with
 * coefficients in [-bound, bound], lexicographically over the coefficient
 * vector (a_{n-1}, ..., a_0), or reads one polynomial per line from
 * input_path. Exact duplicates are analyzed once. Irreducible candidates run
 * through analyze_field; one compact JSON document per line goes to out_path
 * (truncated first unless resume is set). Worker threads analyze
 * independent fields; a single writer emits lines in enumeration order, so
 * output bytes do not depend on the worker count. progress receives
 * human-readable notes, never JSON. */
HuntSummary run_hunt(const HuntConfig& cfg, const Settings& s, std::ostream& progress);

/* For --csv: re-reads a JSON-lines file (validating every line) and renders
 * the per-field table. */
std::string hunt_file_to_csv(const std::string& jsonl_path);

}  // namespace oktrace
