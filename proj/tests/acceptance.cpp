/* Acceptance gate: seven end-to-end criteria, one pass/fail line each.
 * Usage: oktrace_acceptance <oracle_sample.json>
 * Exit status is the number of failed criteria. */

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oktrace/arith.hpp"
#include "oktrace/errors.hpp"
#include "oktrace/hunt.hpp"
#include "oktrace/oracle.hpp"
#include "oktrace/parse.hpp"
#include "oktrace/report.hpp"
#include "oktrace/trace.hpp"

using namespace oktrace;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void verdict(int number, const std::string& name, bool ok,
             const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << number << ". " << name;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << "\n";
    if (!ok) ++failures;
}

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

IntPoly P(std::vector<long> low_to_high) {
    std::vector<mpz_class> c(low_to_high.begin(), low_to_high.end());
    return IntPoly(std::move(c));
}

/* ---- criterion 1: Q(sqrt 2) fixture ---- */
void criterion1() {
    auto start = Clock::now();
    FieldReport r = analyze_field(P({-2, 0, 1}));
    double ms = ms_since(start);
    bool ok = r.d_K == 8 && r.basis_den == 1 && r.basis == IntMat::identity(2) &&
              r.basis_traces == std::vector<mpz_class>{2, 0} && r.t == 2 &&
              !r.verdict.ground_truth_surjective && ms < 50.0;
    std::ostringstream d;
    d << "d_K=" << r.d_K.get_str() << " t=" << r.t.get_str() << " "
      << std::fixed << ms << "ms";
    verdict(1, "quadratic fixture x^2-2: t = 2, not surjective", ok, d.str());
}

/* ---- criterion 2: worked cubic fixture ---- */
void criterion2() {
    auto start = Clock::now();
    FieldReport r = analyze_field(P({-6, 1, 0, 1}));
    double ms = ms_since(start);
    bool shapes_ok = r.splittings.size() == 2 && r.splittings[0].p == 2 &&
                     r.splittings[0].wild && r.splittings[1].p == 61 &&
                     !r.splittings[1].wild;
    mpz_class witness_trace = 0;
    for (std::size_t i = 0; i < r.gamma.size(); ++i)
        witness_trace += r.gamma[i] * r.basis_traces[i];
    bool ok = r.disc_poly == -976 && r.index == 2 && r.d_K == -244 && shapes_ok &&
              r.verdict.thm4_applies && r.t == 1 && witness_trace == 1 && ms < 100.0;
    std::ostringstream d;
    d << "d_K=" << r.d_K.get_str() << " index=" << r.index.get_str() << " Tr(gamma)="
      << witness_trace.get_str() << " " << std::fixed << ms << "ms";
    verdict(2, "worked fixture x^3+x-6: wild at 2, t = 1 with witness", ok, d.str());
}

/* ---- criterion 3: quadratic family law ---- */
void criterion3() {
    // For squarefree d: t(Q(sqrt d)) = 1 when d = 1 mod 4, else 2.
    // (The d = 1 mod 4 half was confirmed against an independent CAS over
    // this whole range before being pinned here.)
    unsigned checked = 0, wrong = 0;
    for (long ad = 2; ad <= 50; ++ad) {
        for (long d : {ad, -ad}) {
            if (squarefree_part(mpz_class(d)) != d) continue;
            FieldReport r = analyze_field(P({-d, 0, 1}));
            mpz_class want = ((d % 4 + 4) % 4 == 1) ? 1 : 2;
            ++checked;
            if (r.t != want) ++wrong;
        }
    }
    std::ostringstream d;
    d << checked << " squarefree d, " << wrong << " deviations";
    verdict(3, "quadratic family law: t = 1 iff d = 1 mod 4, |d| <= 50",
            checked == 60 && wrong == 0, d.str());
}

struct Corpus {
    std::vector<FieldReport> reports;
    std::map<std::string, const FieldReport*> by_key;  // high-to-low coeff key
    unsigned long candidates = 0;
    unsigned long unknown = 0;
    double ms = 0.0;
};

std::string key_of(const IntPoly& f) {
    std::string key;
    for (int k = f.degree(); k >= 0; --k) {
        if (!key.empty()) key += ',';
        key += f.coeff(static_cast<std::size_t>(k)).get_str();
    }
    return key;
}

/* All monic irreducible cubics and quartics with |coefficients| <= 4,
 * analyzed single-threaded. */
Corpus run_corpus() {
    Corpus c;
    auto start = Clock::now();
    for (int deg : {3, 4}) {
        std::vector<long> a(static_cast<std::size_t>(deg), -4);
        while (true) {
            std::vector<mpz_class> coeffs(a.begin(), a.end());
            coeffs.push_back(1);
            IntPoly f{std::move(coeffs)};
            ++c.candidates;
            auto irr = is_irreducible_over_q(f);
            if (irr.status == IrreducibilityResult::Status::proved)
                c.reports.push_back(analyze_field(f));
            else if (irr.status == IrreducibilityResult::Status::unknown)
                ++c.unknown;
            int i = deg - 1;
            while (i >= 0 && a[static_cast<std::size_t>(i)] == 4) {
                a[static_cast<std::size_t>(i)] = -4;
                --i;
            }
            if (i < 0) break;
            ++a[static_cast<std::size_t>(i)];
        }
    }
    c.ms = ms_since(start);
    for (const auto& r : c.reports) c.by_key.emplace(key_of(r.f), &r);
    return c;
}

/* ---- criterion 4: invariant suite over the corpus ---- */
void criterion4(const Corpus& corpus) {
    unsigned long violations = 0;
    std::string first;
    auto fail = [&](const FieldReport& r, const std::string& what) {
        ++violations;
        if (first.empty()) first = poly_to_text(r.f) + ": " + what;
    };

    for (const auto& r : corpus.reports) {
        mpz_class n(static_cast<unsigned long>(r.degree()));
        if (!mpz_divisible_p(n.get_mpz_t(), r.t.get_mpz_t()))
            fail(r, "t does not divide n");
        mpz_class t2 = r.t * r.t;
        if (!mpz_divisible_p(r.d_K.get_mpz_t(), t2.get_mpz_t()))
            fail(r, "t^2 does not divide d_K");
        if (r.disc_poly != r.d_K * r.index * r.index)
            fail(r, "disc(f) != d_K * index^2");

        // trace Gram determinant, recomputed from the serialized basis
        Order o;
        o.f = r.f;
        o.basis = r.basis;
        o.den = r.basis_den;
        mpz_class gram_det = det(trace_gram(o));
        if (gram_det != r.d_K) fail(r, "det(trace gram) != d_K");
        // codifferent index |O^/O| = |det| of the Gram as well
        if (abs(gram_det) != abs(r.d_K)) fail(r, "codifferent index != |d_K|");

        std::set<std::string> ramified, dividing;
        for (const auto& s : r.splittings) {
            unsigned long total = 0;
            bool any_ram = false, any_wild = false;
            unsigned long tame_sum = 0;
            for (const auto& [e, f] : s.shape) {
                total += static_cast<unsigned long>(e) * f;
                if (e > 1) any_ram = true;
                mpz_class em(e);
                if (mpz_divisible_p(em.get_mpz_t(), s.p.get_mpz_t()))
                    any_wild = true;
                else
                    tame_sum += static_cast<unsigned long>(f) * (e - 1);
            }
            if (total != r.degree()) fail(r, "sum e_i f_i != n");
            if (any_ram) ramified.insert(s.p.get_str());
            if (mpz_divisible_p(r.d_K.get_mpz_t(), s.p.get_mpz_t()))
                dividing.insert(s.p.get_str());
            if (any_ram && !any_wild &&
                valuation(r.d_K, s.p) != tame_sum)
                fail(r, "tame valuation equality fails at p=" + s.p.get_str());
            if (any_wild != s.wild) fail(r, "wild flag wrong");
        }
        if (ramified != dividing)
            fail(r, "ramified primes differ from divisors of d_K");

        if (r.verdict.conjecture_status == ConjectureStatus::theorem_violation)
            fail(r, "theorem_violation status");
    }

    bool ok = corpus.candidates == 7290 && corpus.reports.size() == 5226 &&
              corpus.unknown == 0 && violations == 0 && corpus.ms < 300000.0;
    std::ostringstream d;
    d << corpus.reports.size() << " fields, " << violations << " violations, "
      << std::fixed << corpus.ms / 1000.0 << "s";
    if (!first.empty()) d << ", first: " << first;
    verdict(4, "invariant suite over all cubics/quartics with |coeff| <= 4", ok,
            d.str());
}

/* ---- criterion 5: oracle equivalence on the 200-field sample ---- */
void criterion5(const Corpus& corpus, const std::string& oracle_path) {
    std::string tmp = "acceptance_sample.jsonl";
    bool ok = false;
    std::ostringstream d;
    try {
        std::ifstream in(oracle_path);
        if (!in) throw io_error("cannot open oracle file: " + oracle_path);
        nlohmann::json oracle = nlohmann::json::parse(in);

        std::ofstream out(tmp, std::ios::binary);
        unsigned long missing = 0;
        for (const auto& e : oracle) {
            std::string key;
            for (const auto& c : e.at("polynomial")) {
                if (!key.empty()) key += ',';
                key += c.get<std::string>();
            }
            auto it = corpus.by_key.find(key);
            if (it == corpus.by_key.end()) {
                ++missing;
                continue;
            }
            out << report_to_jsonl(*it->second) << "\n";
        }
        out.close();

        OracleDiff diff = oracle_diff(tmp, oracle_path);
        ok = oracle.size() == 200 && missing == 0 && diff.compared == 200 &&
             diff.matched == 200 && diff.clean();
        d << diff.compared << " compared, " << diff.mismatches.size()
          << " mismatches, " << diff.coverage_gaps.size() << " gaps";
        for (std::size_t i = 0; i < diff.mismatches.size() && i < 3; ++i)
            d << "; " << diff.mismatches[i];
    } catch (const std::exception& e) {
        d << "error: " << e.what();
    }
    std::remove(tmp.c_str());
    verdict(5, "oracle equivalence on the 200-field CAS sample", ok, d.str());
}

/* ---- criterion 6: conjecture evidence over the quartic corpus ---- */
void criterion6(const Corpus& corpus) {
    unsigned long quartics = 0, counterexamples = 0, bad = 0;
    std::string first;
    auto fail = [&](const FieldReport& r, const std::string& what) {
        ++bad;
        if (first.empty()) first = poly_to_text(r.f) + ": " + what;
    };

    for (const auto& r : corpus.reports) {
        if (r.degree() != 4) continue;
        ++quartics;
        switch (r.verdict.conjecture_status) {
            case ConjectureStatus::consistent_positive:
            case ConjectureStatus::consistent_negative:
                if (!r.wild_primes.empty() || !r.deep_primes.empty())
                    fail(r, "witness data on a non-counterexample");
                break;
            case ConjectureStatus::counterexample: {
                ++counterexamples;
                // machine-check the witness from the report alone
                mpz_class tr = 0;
                for (std::size_t i = 0; i < r.gamma.size(); ++i)
                    tr += r.gamma[i] * r.basis_traces[i];
                if (tr != 1) fail(r, "witness element does not have trace 1");
                if (r.wild_primes.empty()) fail(r, "no wild prime listed");
                for (const auto& p : r.wild_primes) {
                    bool wild_at_p = false;
                    for (const auto& s : r.splittings)
                        if (s.p == p && s.wild) wild_at_p = true;
                    if (!wild_at_p) fail(r, "listed prime is not wild");
                }
                if (r.deep_primes.empty()) fail(r, "no deep prime listed");
                for (const auto& p : r.deep_primes) {
                    mpz_class n(static_cast<unsigned long>(r.degree()));
                    mpz_class p2 = p * p;
                    if (!mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) ||
                        !mpz_divisible_p(r.d_K.get_mpz_t(), p2.get_mpz_t()))
                        fail(r, "deep prime fails p | n, p^2 | d_K");
                }
                break;
            }
            case ConjectureStatus::theorem_violation:
                fail(r, "theorem_violation status");
                break;
        }
    }

    bool ok = quartics > 0 && bad == 0 && counterexamples > 0;
    std::ostringstream d;
    if (first.empty())
        d << quartics << " quartics, " << counterexamples
          << " counterexamples, all witnesses verified";
    else
        d << "first failure: " << first;
    verdict(6, "quartic hunt classification completeness with checked witnesses",
            ok, d.str());
}

/* ---- criterion 7: byte-identical hunts ---- */
void criterion7() {
    auto run = [&](const std::string& path, unsigned workers) {
        HuntConfig cfg;
        cfg.degree_lo = 3;
        cfg.degree_hi = 3;
        cfg.coeff_bound = 2;
        cfg.out_path = path;
        cfg.workers = workers;
        std::ostringstream progress;
        run_hunt(cfg, Settings{}, progress);
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        std::remove(path.c_str());
        return ss.str();
    };
    std::string a = run("acceptance_hunt_a.jsonl", 1);
    std::string b = run("acceptance_hunt_b.jsonl", 1);
    std::string c = run("acceptance_hunt_c.jsonl", 4);
    bool ok = !a.empty() && a == b && a == c;
    std::ostringstream d;
    d << a.size() << " bytes, workers 1 and 4 identical";
    verdict(7, "determinism: identical hunt configs give identical bytes", ok,
            d.str());
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: oktrace_acceptance <oracle_sample.json>\n";
        return 64;
    }
    try {
        criterion1();
        criterion2();
        criterion3();
        Corpus corpus = run_corpus();
        criterion4(corpus);
        criterion5(corpus, argv[1]);
        criterion6(corpus);
        criterion7();
    } catch (const std::exception& e) {
        std::cerr << "acceptance run aborted: " << e.what() << "\n";
        return 65;
    }
    if (failures == 0) std::cout << "all acceptance criteria passed\n";
    return failures;
}
