#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "oktrace/errors.hpp"
#include "oktrace/hunt.hpp"
#include "oktrace/oracle.hpp"
#include "oktrace/parse.hpp"
#include "oktrace/report.hpp"
#include "oktrace/settings.hpp"

namespace {

using namespace oktrace;

/* "A..B" or a single "A". */
std::pair<std::size_t, std::size_t> parse_degree_range(const std::string& range_text) {
    auto parse_one = [&](const std::string& part) -> std::size_t {
        try {
            std::size_t used = 0;
            unsigned long v = std::stoul(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
            return v;
        } catch (const std::exception&) {
            throw parse_error("bad degree '" + part + "' in '" + range_text + "'", 0);
        }
    };
    std::size_t dots = range_text.find("..");
    if (dots == std::string::npos) {
        std::size_t d = parse_one(range_text);
        return {d, d};
    }
    return {parse_one(range_text.substr(0, dots)),
            parse_one(range_text.substr(dots + 2))};
}

int cmd_analyze(const std::string& poly_text, bool as_json, bool as_csv,
                const Settings& st) {
    IntPoly f = parse_monic_polynomial(poly_text);
    auto irr = is_irreducible_over_q(f, st.irred_options());
    if (irr.status == IrreducibilityResult::Status::disproved) {
        std::cout << "reducible: divisible by " << poly_to_text(irr.witness_factor)
                  << "\n";
        return 2;
    }
    if (irr.status == IrreducibilityResult::Status::unknown) {
        std::cerr << "irreducibility unknown: effort budget exhausted (last stage: "
                  << irr.method << ")\n";
        return 3;
    }
    FieldReport r = analyze_field(f, st);
    if (as_json)
        std::cout << report_to_jsonl(r) << "\n";
    else if (as_csv)
        std::cout << kCsvHeader << "\n" << report_to_csv(r) << "\n";
    else
        std::cout << report_to_text(r);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trace surjectivity analyzer for rings of integers of number fields"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key=value settings file");

    auto* an = app.add_subcommand("analyze", "analyze one monic irreducible polynomial");
    std::string poly_text;
    bool an_json = false, an_csv = false;
    an->add_option("poly", poly_text, "\"x^3+x-6\" or \"[1, 0, 1, -6]\" (high to low)")
        ->required();
    an->add_flag("--json", an_json, "emit one compact JSON document");
    an->add_flag("--csv", an_csv, "emit a CSV header and row");

    auto* hu = app.add_subcommand("hunt", "enumerate and analyze a corpus of fields");
    std::string degree_spec, input_path, out_path;
    long bound = 0;
    unsigned workers = 0;
    std::uint64_t seed = 0;
    bool resume = false, hunt_csv = false;
    hu->add_option("--degree", degree_spec, "degree or range A..B");
    hu->add_option("--bound", bound, "coefficient bound, |a_i| <= bound");
    hu->add_option("--input", input_path, "candidate file, one polynomial per line");
    hu->add_option("--out", out_path, "JSON-lines destination (default: stdout)");
    hu->add_option("--workers", workers, "worker threads");
    hu->add_option("--seed", seed, "seed for randomized subroutines");
    hu->add_flag("--resume", resume, "skip inputs already recorded in --out");
    hu->add_flag("--csv", hunt_csv, "print the per-field CSV table (requires --out)");

    auto* od = app.add_subcommand("oracle-diff",
                                  "compare reports against independent CAS data");
    std::string report_path, oracle_path;
    od->add_option("reports", report_path, "JSON-lines report file")->required();
    od->add_option("oracle", oracle_path, "JSON array of reference entries")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        Settings st;
        if (!config_path.empty()) st = load_settings(config_path);

        if (an->parsed()) return cmd_analyze(poly_text, an_json, an_csv, st);

        if (hu->parsed()) {
            HuntConfig cfg;
            if (input_path.empty()) {
                if (degree_spec.empty())
                    throw parse_error("hunt requires --degree A..B (or --input FILE)", 0);
                if (hu->count("--bound") == 0)
                    throw parse_error("hunt requires --bound (or --input FILE)", 0);
                auto [lo, hi] = parse_degree_range(degree_spec);
                cfg.degree_lo = lo;
                cfg.degree_hi = hi;
                cfg.coeff_bound = bound;
            } else {
                cfg.input_path = input_path;
            }
            cfg.out_path = out_path;
            cfg.workers = hu->count("--workers") ? workers : st.hunt_workers;
            cfg.seed = seed;
            cfg.resume = resume;
            if (hunt_csv && out_path.empty())
                throw parse_error("--csv requires --out", 0);
            HuntSummary summary = run_hunt(cfg, st, std::cerr);
            /* keep stdout pure JSON lines when no --out was given */
            (out_path.empty() ? std::cerr : std::cout) << summary.table();
            if (hunt_csv) std::cout << hunt_file_to_csv(out_path);
            return 0;
        }

        OracleDiff d = oracle_diff(report_path, oracle_path);
        std::cout << d.table();
        return d.clean() ? 0 : 1;
    } catch (const parse_error& e) {
        std::cerr << "parse error at position " << e.position << ": " << e.what()
                  << "\n";
        return 1;
    } catch (const irreducibility_unknown& e) {
        std::cerr << "irreducibility unknown: " << e.what() << "\n";
        return 3;
    } catch (const io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const theorem_violation& e) {
        std::cerr << "theorem violation (implementation bug): " << e.what() << "\n";
        return 5;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
