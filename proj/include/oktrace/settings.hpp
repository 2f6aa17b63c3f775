#pragma once

#include <cstdint>
#include <string>

#include "oktrace/poly.hpp"

namespace oktrace {

/* Tunables shared by the CLI commands. File values load first, CLI flags
 * override. Keys are dotted, one "key = value" per line, '#' comments. */
struct Settings {
    unsigned long factor_trial_bound = 1000000;     // factor.trial_bound
    int irred_witness_primes = 25;                  // irreducible.witness_primes
    unsigned long irred_max_subset_tests = 1ul << 20;  // irreducible.max_subset_tests
    unsigned hunt_workers = 1;                      // hunt.workers

    IrredOptions irred_options(std::uint64_t seed = 0) const {
        IrredOptions o;
        o.witness_primes = irred_witness_primes;
        o.max_subset_tests = irred_max_subset_tests;
        o.seed = seed;
        return o;
    }
};

/* Applies one key/value pair. Throws parse_error (position = line when
 * reading a file, 0 otherwise) on unknown keys or unparseable values. */
void settings_apply(Settings& s, const std::string& key, const std::string& value,
                    std::size_t line = 0);

/* Reads a key=value file. Missing file is io_error; malformed content is
 * parse_error with the line number as position. */
Settings load_settings(const std::string& path);

}  // namespace oktrace
