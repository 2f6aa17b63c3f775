#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "oktrace/errors.hpp"
#include "oktrace/hunt.hpp"

using namespace oktrace;

namespace {

struct TempPath {
    std::string path;
    explicit TempPath(const char* tag) {
        static int counter = 0;
        path = std::string("hunt_test_") + tag + "_" + std::to_string(counter++) +
               ".tmp";
    }
    ~TempPath() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

HuntSummary hunt_to(const std::string& out_path, std::size_t lo, std::size_t hi,
                    long bound, unsigned workers = 1, bool resume = false) {
    HuntConfig cfg;
    cfg.degree_lo = lo;
    cfg.degree_hi = hi;
    cfg.coeff_bound = bound;
    cfg.out_path = out_path;
    cfg.workers = workers;
    cfg.resume = resume;
    std::ostringstream progress;
    return run_hunt(cfg, Settings{}, progress);
}

}  // namespace

TEST_CASE("degree-2 bound-1 hunt: counts and validated lines") {
    TempPath out("counts");
    HuntSummary s = hunt_to(out.path, 2, 2, 1);
    CHECK(s.candidates == 9);
    CHECK(s.reducible == 4);
    CHECK(s.analyzed == 5);
    CHECK(s.unknown == 0);
    CHECK(s.duplicates == 0);
    CHECK(s.statuses.at(ConjectureStatus::consistent_positive) == 4);
    CHECK(s.statuses.at(ConjectureStatus::consistent_negative) == 1);
    CHECK(s.counterexamples.empty());

    auto ls = lines_of(slurp(out.path));
    REQUIRE(ls.size() == 5);
    // enumeration order is lexicographic over (a_1, a_0)
    std::vector<std::string> polys;
    for (const auto& l : ls) {
        FieldReport r = report_from_json(nlohmann::json::parse(l));  // re-validates
        polys.push_back(report_to_csv(r).substr(0, report_to_csv(r).find(',')));
    }
    CHECK(polys == std::vector<std::string>{"x^2-x-1", "x^2-x+1", "x^2+1",
                                            "x^2+x-1", "x^2+x+1"});

    std::string table = s.table();
    CHECK(table.find("candidates") != std::string::npos);
    CHECK(table.find("9") != std::string::npos);
}

TEST_CASE("hunts are deterministic and worker-count independent") {
    TempPath a("det_a"), b("det_b"), c("det_c");
    hunt_to(a.path, 3, 3, 2);
    hunt_to(b.path, 3, 3, 2);
    hunt_to(c.path, 3, 3, 2, 4);
    std::string bytes = slurp(a.path);
    CHECK_FALSE(bytes.empty());
    CHECK(bytes == slurp(b.path));
    CHECK(bytes == slurp(c.path));
}

TEST_CASE("resume skips recorded work and reproduces the same bytes") {
    TempPath full("resume_full"), part("resume_part");
    HuntSummary all = hunt_to(full.path, 3, 3, 2);
    std::string want = slurp(full.path);

    auto ls = lines_of(want);
    REQUIRE(ls.size() > 3);
    {
        std::ofstream head(part.path, std::ios::binary);
        for (std::size_t i = 0; i < 3; ++i) head << ls[i] << "\n";
    }
    HuntSummary resumed = hunt_to(part.path, 3, 3, 2, 2, true);
    CHECK(resumed.skipped_existing == 3);
    CHECK(resumed.analyzed + 3 == all.analyzed);
    CHECK(slurp(part.path) == want);
}

TEST_CASE("counterexamples are reported with witness notes") {
    TempPath out("cx");
    HuntSummary s = hunt_to(out.path, 4, 4, 1);
    REQUIRE_FALSE(s.counterexamples.empty());
    CHECK(s.statuses.at(ConjectureStatus::counterexample) ==
          s.counterexamples.size());
    bool found = false;
    for (const auto& note : s.counterexamples) {
        CHECK(note.find("trace-1 element") != std::string::npos);
        CHECK(note.find("wild primes") != std::string::npos);
        if (note.find("x^4+x^3-x+1") != std::string::npos) found = true;
    }
    CHECK(found);
    CHECK(s.statuses.count(ConjectureStatus::theorem_violation) == 0);
}

TEST_CASE("input file mode with duplicates and comments") {
    TempPath in("input_list"), out("input_out");
    {
        std::ofstream f(in.path);
        f << "x^2-2\n";
        f << "x^2-2\n";          // exact duplicate
        f << "# a comment\n";
        f << "[1, 0, -2]\n";     // same polynomial, bracket spelling
        f << "x^2-1\n";          // reducible
        f << "\n";
    }
    HuntConfig cfg;
    cfg.input_path = in.path;
    cfg.out_path = out.path;
    std::ostringstream progress;
    HuntSummary s = run_hunt(cfg, Settings{}, progress);
    CHECK(s.candidates == 4);
    CHECK(s.duplicates == 2);
    CHECK(s.analyzed == 1);
    CHECK(s.reducible == 1);
    CHECK(lines_of(slurp(out.path)).size() == 1);
}

TEST_CASE("input file errors carry the line number") {
    TempPath in("input_bad");
    {
        std::ofstream f(in.path);
        f << "x^2-2\n";
        f << "2x^2-1\n";  // non-monic
    }
    HuntConfig cfg;
    cfg.input_path = in.path;
    std::ostringstream progress;
    try {
        run_hunt(cfg, Settings{}, progress);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
}

TEST_CASE("empty degree range yields an all-zero summary") {
    TempPath out("empty");
    HuntSummary s = hunt_to(out.path, 4, 3, 2);
    CHECK(s.candidates == 0);
    CHECK(s.analyzed == 0);
    CHECK(slurp(out.path).empty());
}

TEST_CASE("config validation") {
    std::ostringstream progress;
    HuntConfig bad_degree;
    bad_degree.degree_lo = 1;
    bad_degree.degree_hi = 2;
    bad_degree.coeff_bound = 1;
    CHECK_THROWS_AS(run_hunt(bad_degree, Settings{}, progress), parse_error);

    HuntConfig bad_bound;
    bad_bound.degree_lo = 2;
    bad_bound.degree_hi = 2;
    bad_bound.coeff_bound = 0;
    CHECK_THROWS_AS(run_hunt(bad_bound, Settings{}, progress), parse_error);

    HuntConfig bad_resume;
    bad_resume.degree_lo = 2;
    bad_resume.degree_hi = 2;
    bad_resume.coeff_bound = 1;
    bad_resume.resume = true;  // no out file
    CHECK_THROWS_AS(run_hunt(bad_resume, Settings{}, progress), parse_error);

    HuntConfig missing_input;
    missing_input.input_path = "definitely_missing_candidates.txt";
    CHECK_THROWS_AS(run_hunt(missing_input, Settings{}, progress), io_error);
}

TEST_CASE("hunt_file_to_csv validates and renders every line") {
    TempPath out("csv");
    hunt_to(out.path, 2, 2, 1);
    std::string csv = hunt_file_to_csv(out.path);
    auto rows = lines_of(csv);
    REQUIRE(rows.size() == 6);  // header + 5 fields
    CHECK(rows[0] == kCsvHeader);
    CHECK(rows[1].rfind("x^2-x-1,2,5,1,", 0) == 0);

    // corrupt line is rejected
    {
        std::ofstream f(out.path, std::ios::app);
        f << "{\"schema\": 1, \"poly\": [\"1\"]}\n";
    }
    CHECK_THROWS_AS(hunt_file_to_csv(out.path), parse_error);
}
