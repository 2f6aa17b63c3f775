#include "oktrace/hunt.hpp"

#include <atomic>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "oktrace/errors.hpp"
#include "oktrace/parse.hpp"

namespace oktrace {

namespace {

std::string poly_key(const IntPoly& f) {
    std::string key;
    for (int k = f.degree(); k >= 0; --k) {
        if (!key.empty()) key += ',';
        key += f.coeff(static_cast<std::size_t>(k)).get_str();
    }
    return key;
}

/* Lexicographic odometer over (a_{n-1}, ..., a_0) in [-bound, bound]^n for
 * each degree of the range in turn. */
struct Enumerator {
    std::size_t degree_lo, degree_hi;
    long bound;
    std::size_t n = 0;
    std::vector<long> a;
    bool exhausted = false;

    explicit Enumerator(const HuntConfig& cfg)
        : degree_lo(cfg.degree_lo), degree_hi(cfg.degree_hi), bound(cfg.coeff_bound) {
        if (degree_lo > degree_hi) {
            exhausted = true;
        } else {
            n = degree_lo;
            a.assign(n, -bound);
        }
    }

    std::optional<IntPoly> next() {
        if (exhausted) return std::nullopt;
        std::vector<mpz_class> c(n + 1);
        c[n] = 1;
        for (std::size_t j = 0; j < n; ++j) c[n - 1 - j] = a[j];
        IntPoly out{std::move(c)};
        /* advance: last component first, carry toward a[0] */
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++a[i] <= bound) return out;
            a[i] = -bound;
        }
        if (n == degree_hi) {
            exhausted = true;
        } else {
            ++n;
            a.assign(n, -bound);
        }
        return out;
    }
};

struct TaskResult {
    enum class Kind { line, reducible, unknown };
    Kind kind = Kind::reducible;
    std::string line;            // JSON document (kind == line)
    ConjectureStatus status = ConjectureStatus::consistent_positive;
    std::string note;            // counterexample block or unknown-poly text
};

std::string counterexample_block(const FieldReport& r) {
    std::ostringstream out;
    out << poly_to_text(r.f) << ": trace-1 element coords [";
    for (std::size_t i = 0; i < r.gamma.size(); ++i)
        out << (i ? " " : "") << r.gamma[i].get_str();
    out << "], wild primes";
    for (const auto& p : r.wild_primes) out << " " << p.get_str();
    out << ", p with p|n and p^2|d_K:";
    for (const auto& p : r.deep_primes) out << " " << p.get_str();
    return out.str();
}

std::vector<IntPoly> read_candidate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open input file: " + path);
    std::vector<IntPoly> out;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        if (line[b] == '#') continue;
        try {
            out.push_back(parse_monic_polynomial(line));
        } catch (const parse_error& e) {
            throw parse_error(path + ":" + std::to_string(lineno) + ": " + e.what(),
                              e.position);
        }
    }
    return out;
}

std::set<std::string> read_recorded_keys(const std::string& path) {
    std::set<std::string> keys;
    if (!std::filesystem::exists(path)) return keys;
    std::ifstream in(path);
    if (!in) throw io_error("cannot open output file for resume: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw parse_error("corrupt JSON line in " + path, lineno);
        try {
            keys.insert(poly_key(report_from_json(j).f));
        } catch (const parse_error& e) {
            throw parse_error(path + ":" + std::to_string(lineno) + ": " + e.what(),
                              lineno);
        }
    }
    return keys;
}

}  // namespace

std::string HuntSummary::table() const {
    auto count = [&](ConjectureStatus s) -> unsigned long {
        auto it = statuses.find(s);
        return it == statuses.end() ? 0ul : it->second;
    };
    std::ostringstream out;
    out << "hunt summary\n";
    out << "  candidates              " << candidates << "\n";
    out << "  duplicates              " << duplicates << "\n";
    out << "  skipped (recorded)      " << skipped_existing << "\n";
    out << "  reducible               " << reducible << "\n";
    out << "  irreducibility unknown  " << unknown << "\n";
    out << "  analyzed                " << analyzed << "\n";
    out << "  consistent_positive     " << count(ConjectureStatus::consistent_positive)
        << "\n";
    out << "  consistent_negative     " << count(ConjectureStatus::consistent_negative)
        << "\n";
    out << "  counterexample          " << count(ConjectureStatus::counterexample)
        << "\n";
    out << "  theorem_violation       " << count(ConjectureStatus::theorem_violation)
        << "\n";
    if (!counterexamples.empty()) {
        out << "counterexamples\n";
        for (const auto& c : counterexamples) out << "  " << c << "\n";
    }
    return out.str();
}

HuntSummary run_hunt(const HuntConfig& cfg, const Settings& s, std::ostream& progress) {
    const bool use_file = !cfg.input_path.empty();
    if (!use_file && cfg.degree_lo <= cfg.degree_hi) {
        if (cfg.degree_lo < 2) throw parse_error("hunt degree must be at least 2", 0);
        if (cfg.coeff_bound < 1)
            throw parse_error("coefficient bound must be at least 1", 0);
    }
    if (cfg.resume && cfg.out_path.empty())
        throw parse_error("--resume requires an output file", 0);

    std::vector<IntPoly> file_candidates;
    if (use_file) file_candidates = read_candidate_file(cfg.input_path);

    std::set<std::string> recorded;
    if (cfg.resume) recorded = read_recorded_keys(cfg.out_path);

    std::ofstream file_out;
    std::ostream* out = &std::cout;
    if (!cfg.out_path.empty()) {
        file_out.open(cfg.out_path,
                      cfg.resume ? std::ios::out | std::ios::app : std::ios::out);
        if (!file_out) throw io_error("cannot open output file: " + cfg.out_path);
        out = &file_out;
    }

    HuntSummary summary;
    Enumerator enumerator(cfg);
    std::size_t file_pos = 0;
    std::set<std::string> seen;  // only consulted for file input; the
                                 // enumerator cannot repeat itself

    std::mutex gen_mu;
    std::size_t tasks_issued = 0;
    std::atomic<bool> failed{false};

    std::mutex res_mu;
    std::condition_variable res_cv, space_cv;
    std::map<std::size_t, TaskResult> results;
    std::size_t next_emit = 0;
    unsigned active_workers = 0;
    std::exception_ptr err;

    constexpr std::size_t kQueueCap = 1024;

    auto pull = [&]() -> std::optional<std::pair<std::size_t, IntPoly>> {
        std::lock_guard<std::mutex> l(gen_mu);
        while (true) {
            if (failed.load()) return std::nullopt;
            std::optional<IntPoly> cand;
            if (use_file) {
                if (file_pos < file_candidates.size()) cand = file_candidates[file_pos++];
            } else {
                cand = enumerator.next();
            }
            if (!cand) return std::nullopt;
            ++summary.candidates;
            std::string key = poly_key(*cand);
            if (use_file && !seen.insert(key).second) {
                ++summary.duplicates;
                continue;
            }
            if (!recorded.empty() && recorded.count(key)) {
                ++summary.skipped_existing;
                continue;
            }
            return std::make_pair(tasks_issued++, std::move(*cand));
        }
    };

    auto worker = [&]() {
        while (true) {
            auto task = pull();
            if (!task) break;
            const auto& [idx, f] = *task;
            TaskResult tr;
            try {
                auto irr = is_irreducible_over_q(f, s.irred_options(cfg.seed));
                if (irr.status == IrreducibilityResult::Status::disproved) {
                    tr.kind = TaskResult::Kind::reducible;
                } else if (irr.status == IrreducibilityResult::Status::unknown) {
                    tr.kind = TaskResult::Kind::unknown;
                    tr.note = poly_to_text(f);
                } else {
                    FieldReport r = analyze_field(f, s);
                    tr.kind = TaskResult::Kind::line;
                    tr.line = report_to_jsonl(r);
                    tr.status = r.verdict.conjecture_status;
                    if (tr.status == ConjectureStatus::counterexample)
                        tr.note = counterexample_block(r);
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lr(res_mu);
                if (!failed.exchange(true)) {
                    std::string msg =
                        "while analyzing " + poly_to_text(f) + ": " + e.what();
                    if (dynamic_cast<const theorem_violation*>(&e))
                        err = std::make_exception_ptr(theorem_violation(msg));
                    else
                        err = std::make_exception_ptr(internal_error(msg));
                }
                res_cv.notify_all();
                space_cv.notify_all();
                break;
            }
            {
                std::unique_lock<std::mutex> l(res_mu);
                space_cv.wait(l, [&] {
                    return failed || results.size() < kQueueCap || idx == next_emit;
                });
                if (failed) break;
                results.emplace(idx, std::move(tr));
                res_cv.notify_all();
            }
        }
        {
            std::lock_guard<std::mutex> l(res_mu);
            --active_workers;
            res_cv.notify_all();
        }
    };

    unsigned nworkers = cfg.workers < 1 ? 1 : cfg.workers;
    std::vector<std::thread> threads;
    {
        std::lock_guard<std::mutex> l(res_mu);
        active_workers = nworkers;
    }
    threads.reserve(nworkers);
    for (unsigned i = 0; i < nworkers; ++i) threads.emplace_back(worker);

    unsigned long next_progress = 1000;
    {
        std::unique_lock<std::mutex> l(res_mu);
        while (true) {
            res_cv.wait(l, [&] {
                return failed || results.count(next_emit) != 0 ||
                       (active_workers == 0 && results.empty());
            });
            if (failed) break;
            auto it = results.find(next_emit);
            if (it == results.end()) {
                if (active_workers == 0 && results.empty()) break;
                continue;
            }
            TaskResult tr = std::move(it->second);
            results.erase(it);
            ++next_emit;
            space_cv.notify_all();
            switch (tr.kind) {
                case TaskResult::Kind::reducible:
                    ++summary.reducible;
                    break;
                case TaskResult::Kind::unknown:
                    ++summary.unknown;
                    progress << "irreducibility unknown: " << tr.note << "\n";
                    break;
                case TaskResult::Kind::line:
                    ++summary.analyzed;
                    ++summary.statuses[tr.status];
                    (*out) << tr.line << "\n";
                    if (!tr.note.empty()) {
                        summary.counterexamples.push_back(tr.note);
                        progress << "counterexample: " << tr.note << "\n";
                    }
                    break;
            }
            if (summary.analyzed >= next_progress) {
                progress << "progress: " << summary.analyzed << " fields analyzed\n";
                next_progress += 1000;
            }
        }
    }
    for (auto& th : threads) th.join();
    if (err) std::rethrow_exception(err);

    out->flush();
    if (!cfg.out_path.empty() && !file_out)
        throw io_error("write failure on output file: " + cfg.out_path);
    return summary;
}

std::string hunt_file_to_csv(const std::string& jsonl_path) {
    std::ifstream in(jsonl_path);
    if (!in) throw io_error("cannot open report file: " + jsonl_path);
    std::ostringstream out;
    out << kCsvHeader << "\n";
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw parse_error("corrupt JSON line in " + jsonl_path, lineno);
        out << report_to_csv(report_from_json(j)) << "\n";
    }
    return out.str();
}

}  // namespace oktrace
