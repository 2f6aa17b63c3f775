#pragma once

#include <string>
#include <vector>

namespace oktrace {

/* Field-by-field comparison of locally produced reports (JSON lines, as
 * written by the hunt or analyze --json) against a reference file produced
 * by an independent computer algebra system: a JSON array of objects
 * { polynomial, d_K, index, splittings, t } with the same decimal-string
 * conventions. Compared per field: d_K, index, t, and the splitting shape
 * at every listed prime. A report with no oracle entry is a coverage gap. */
struct OracleDiff {
    unsigned long compared = 0;
    unsigned long matched = 0;
    std::vector<std::string> mismatches;    // one line each, both values shown
    std::vector<std::string> coverage_gaps; // report polys missing from the oracle

    bool clean() const { return mismatches.empty() && coverage_gaps.empty(); }
    std::string table() const;
};

OracleDiff oracle_diff(const std::string& report_path, const std::string& oracle_path);

}  // namespace oktrace
