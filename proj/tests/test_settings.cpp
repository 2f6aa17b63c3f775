#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "oktrace/errors.hpp"
#include "oktrace/settings.hpp"

using namespace oktrace;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& content) {
        path = std::string("oktrace_settings_test_") +
               std::to_string(reinterpret_cast<std::uintptr_t>(this)) + ".cfg";
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("defaults") {
    Settings s;
    CHECK(s.factor_trial_bound == 1000000);
    CHECK(s.irred_witness_primes == 25);
    CHECK(s.irred_max_subset_tests == (1ul << 20));
    CHECK(s.hunt_workers == 1);
    IrredOptions o = s.irred_options(42);
    CHECK(o.witness_primes == 25);
    CHECK(o.seed == 42);
}

TEST_CASE("settings_apply") {
    Settings s;
    settings_apply(s, "factor.trial_bound", "5000");
    CHECK(s.factor_trial_bound == 5000);
    settings_apply(s, "irreducible.witness_primes", "7");
    CHECK(s.irred_witness_primes == 7);
    settings_apply(s, "irreducible.max_subset_tests", "1024");
    CHECK(s.irred_max_subset_tests == 1024);
    settings_apply(s, "hunt.workers", "3");
    CHECK(s.hunt_workers == 3);

    CHECK_THROWS_AS(settings_apply(s, "no.such.key", "1"), parse_error);
    CHECK_THROWS_AS(settings_apply(s, "hunt.workers", "banana"), parse_error);
}

TEST_CASE("load_settings parses files with comments") {
    TempFile f(
        "# comment line\n"
        "factor.trial_bound = 2000\n"
        "\n"
        "hunt.workers=2   \n");
    Settings s = load_settings(f.path);
    CHECK(s.factor_trial_bound == 2000);
    CHECK(s.hunt_workers == 2);
    CHECK(s.irred_witness_primes == 25);  // untouched default
}

TEST_CASE("load_settings error paths") {
    CHECK_THROWS_AS(load_settings("definitely_missing_settings_file.cfg"), io_error);
    TempFile bad("factor.trial_bound = 10\nbogus line without equals\n");
    try {
        load_settings(bad.path);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.position == 2);  // line number of the malformed entry
    }
}
