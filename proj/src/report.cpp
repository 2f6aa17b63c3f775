#include "oktrace/report.hpp"

#include <chrono>
#include <sstream>

#include "oktrace/arith.hpp"
#include "oktrace/errors.hpp"
#include "oktrace/parse.hpp"

namespace oktrace {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string zstr(const mpz_class& v) { return v.get_str(); }

mpz_class zparse(const json& j, const char* field) {
    if (!j.is_string())
        throw parse_error(std::string(field) + " must be a decimal string", 0);
    const std::string& s = j.get_ref<const std::string&>();
    mpz_class v;
    if (s.empty() || mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
        throw parse_error(std::string(field) + ": bad integer '" + s + "'", 0);
    return v;
}

ordered_json zvec(const std::vector<mpz_class>& xs) {
    ordered_json a = ordered_json::array();
    for (const auto& x : xs) a.push_back(zstr(x));
    return a;
}

std::vector<mpz_class> zvec_parse(const json& j, const char* field) {
    if (!j.is_array())
        throw parse_error(std::string(field) + " must be an array", 0);
    std::vector<mpz_class> xs;
    xs.reserve(j.size());
    for (const auto& e : j) xs.push_back(zparse(e, field));
    return xs;
}

const json& member(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end())
        throw parse_error(std::string("missing field '") + field + "'", 0);
    return *it;
}

bool bool_member(const json& j, const char* field) {
    const json& v = member(j, field);
    if (!v.is_boolean())
        throw parse_error(std::string(field) + " must be a boolean", 0);
    return v.get<bool>();
}

ConjectureStatus status_from_string(const std::string& s) {
    if (s == "consistent_positive") return ConjectureStatus::consistent_positive;
    if (s == "consistent_negative") return ConjectureStatus::consistent_negative;
    if (s == "counterexample") return ConjectureStatus::counterexample;
    if (s == "theorem_violation") return ConjectureStatus::theorem_violation;
    throw parse_error("unknown conjecture status '" + s + "'", 0);
}

/* num/den in lowest terms, e.g. "(a^2+a)/2", "a^2", "1". */
std::string element_text(IntPoly num, mpz_class den) {
    mpz_class g = poly_content(num);
    if (g != 0) {
        mpz_class common = gcd(g, den);
        if (common > 1) {
            std::vector<mpz_class> c = num.c;
            for (auto& v : c) v /= common;
            num = IntPoly(std::move(c));
            den /= common;
        }
    }
    std::string body = poly_to_text(num, "a");
    if (den == 1) return body;
    int nonzero = 0;
    for (const auto& v : num.c) nonzero += v != 0;
    if (nonzero <= 1) return body + "/" + zstr(den);
    return "(" + body + ")/" + zstr(den);
}

std::string basis_row_text(const FieldReport& r, std::size_t i) {
    std::vector<mpz_class> c(r.degree());
    for (std::size_t j = 0; j < r.degree(); ++j) c[j] = r.basis.at(i, j);
    return element_text(IntPoly{std::move(c)}, r.basis_den);
}

}  // namespace

const char* kCsvHeader = "poly,n,d_K,t,tame,thm4,status";

FieldReport analyze_field(const IntPoly& f, const Settings& s) {
    auto start = std::chrono::steady_clock::now();
    FieldReport r;
    r.f = f;

    MaximalOrder m = maximal_order(f);
    r.disc_poly = m.disc_poly;
    r.d_K = m.disc;
    r.index = m.index;
    r.basis_den = m.o.den;
    r.basis = m.o.basis;

    mpz_class ad = abs(m.disc_poly);
    if (ad != 1) {
        for (const auto& [p, e] : factor(ad, s.factor_trial_bound).factors)
            r.splittings.push_back(split_prime(m, p));
    }
    r.tame = is_tame_field(r.splittings);
    for (const auto& sp : r.splittings) {
        bool ramified = false;
        for (const auto& [e, f] : sp.shape)
            if (e > 1) ramified = true;
        bool divides_dk =
            mpz_divisible_p(m.disc.get_mpz_t(), sp.p.get_mpz_t()) != 0;
        // Prop 2: the ramified primes are exactly the divisors of d_K.
        OKT_ASSERT(ramified == divides_dk,
                   "ramified primes must coincide with divisors of d_K");
        if (divides_dk) valuation_check(m, sp);
    }

    CodifferentCheck cd = codifferent_index(m);
    OKT_ASSERT(cd.dual_index == abs(m.disc), "codifferent index != |disc|");

    TraceProfile profile = trace_profile(m);
    verify_thm4_mechanics(profile, m);
    r.basis_traces = profile.basis_traces;
    r.t = profile.t;
    r.gamma = profile.gamma.coords;

    r.verdict = evaluate_criteria(f, m, r.splittings, profile);
    if (r.verdict.conjecture_status == ConjectureStatus::counterexample) {
        for (const auto& sp : r.splittings)
            if (sp.wild) r.wild_primes.push_back(sp.p);
        mpz_class n(static_cast<unsigned long>(r.degree()));
        for (const auto& [p, e] : factor(n, s.factor_trial_bound).factors)
            if (valuation(m.disc, p) >= 2) r.deep_primes.push_back(p);
        OKT_ASSERT(!r.wild_primes.empty() && !r.deep_primes.empty(),
                   "counterexample without witness primes");
    }

    r.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    return r;
}

ordered_json report_to_json(const FieldReport& r) {
    ordered_json j;
    j["schema"] = 1;
    {
        ordered_json poly = ordered_json::array();
        for (int k = r.f.degree(); k >= 0; --k)
            poly.push_back(zstr(r.f.coeff(static_cast<std::size_t>(k))));
        j["poly"] = std::move(poly);
    }
    j["degree"] = r.degree();
    j["disc_poly"] = zstr(r.disc_poly);
    j["d_K"] = zstr(r.d_K);
    j["index"] = zstr(r.index);
    {
        ordered_json basis;
        basis["den"] = zstr(r.basis_den);
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < r.basis.rows; ++i) {
            ordered_json row = ordered_json::array();
            for (std::size_t jx = 0; jx < r.basis.cols; ++jx)
                row.push_back(zstr(r.basis.at(i, jx)));
            rows.push_back(std::move(row));
        }
        basis["rows"] = std::move(rows);
        j["basis"] = std::move(basis);
    }
    {
        ordered_json sp = ordered_json::array();
        for (const auto& s : r.splittings) {
            ordered_json e;
            e["p"] = zstr(s.p);
            ordered_json shape = ordered_json::array();
            for (const auto& [ei, fi] : s.shape)
                shape.push_back(ordered_json::array({ei, fi}));
            e["shape"] = std::move(shape);
            e["wild"] = s.wild;
            e["index_divides"] = s.index_divides;
            sp.push_back(std::move(e));
        }
        j["splittings"] = std::move(sp);
    }
    j["tame"] = r.tame;
    j["basis_traces"] = zvec(r.basis_traces);
    j["t"] = zstr(r.t);
    j["gamma"] = zvec(r.gamma);
    {
        ordered_json c;
        c["prop1"] = r.verdict.prop1_applies;
        c["tame"] = r.verdict.tame_applies;
        c["cor3"] = r.verdict.cor3_applies;
        c["thm4"] = r.verdict.thm4_applies;
        c["surjective"] = r.verdict.ground_truth_surjective;
        c["status"] = to_string(r.verdict.conjecture_status);
        j["criteria"] = std::move(c);
    }
    if (r.verdict.conjecture_status == ConjectureStatus::counterexample) {
        ordered_json w;
        w["trace_one_element"] = zvec(r.gamma);
        w["wild_primes"] = zvec(r.wild_primes);
        w["deep_primes"] = zvec(r.deep_primes);
        j["counterexample_witness"] = std::move(w);
    }
    return j;
}

std::string report_to_jsonl(const FieldReport& r) { return report_to_json(r).dump(); }

FieldReport report_from_json(const json& j) {
    if (!j.is_object()) throw parse_error("report must be a JSON object", 0);
    {
        const json& sv = member(j, "schema");
        if (!sv.is_number_integer() || sv.get<long>() != 1)
            throw parse_error("unsupported schema version", 0);
    }
    FieldReport r;
    {
        std::vector<mpz_class> high = zvec_parse(member(j, "poly"), "poly");
        std::vector<mpz_class> low(high.rbegin(), high.rend());
        r.f = IntPoly(std::move(low));
    }
    if (r.f.degree() < 1 || !r.f.is_monic())
        throw parse_error("poly must be monic of degree >= 1", 0);
    std::size_t n = r.degree();
    {
        const json& dv = member(j, "degree");
        if (!dv.is_number_unsigned() || dv.get<std::size_t>() != n)
            throw parse_error("degree does not match poly", 0);
    }
    r.disc_poly = zparse(member(j, "disc_poly"), "disc_poly");
    r.d_K = zparse(member(j, "d_K"), "d_K");
    r.index = zparse(member(j, "index"), "index");
    {
        const json& b = member(j, "basis");
        r.basis_den = zparse(member(b, "den"), "basis.den");
        const json& rows = member(b, "rows");
        if (!rows.is_array() || rows.size() != n)
            throw parse_error("basis.rows must have n rows", 0);
        r.basis = IntMat(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<mpz_class> row = zvec_parse(rows[i], "basis.rows");
            if (row.size() != n) throw parse_error("basis row of wrong length", 0);
            for (std::size_t k = 0; k < n; ++k) r.basis.at(i, k) = row[k];
        }
        if (r.basis_den < 1) throw parse_error("basis.den must be positive", 0);
    }
    {
        const json& sp = member(j, "splittings");
        if (!sp.is_array()) throw parse_error("splittings must be an array", 0);
        for (const auto& e : sp) {
            PrimeSplitting s;
            s.p = zparse(member(e, "p"), "splittings.p");
            const json& shape = member(e, "shape");
            if (!shape.is_array() || shape.empty())
                throw parse_error("splitting shape must be a nonempty array", 0);
            mpz_class total = 0;
            for (const auto& pair : shape) {
                if (!pair.is_array() || pair.size() != 2 ||
                    !pair[0].is_number_unsigned() || !pair[1].is_number_unsigned())
                    throw parse_error("shape entries must be [e, f] pairs", 0);
                unsigned ei = pair[0].get<unsigned>(), fi = pair[1].get<unsigned>();
                if (ei == 0 || fi == 0)
                    throw parse_error("shape entries must be positive", 0);
                s.shape.emplace_back(ei, fi);
                total += mpz_class(ei) * fi;
            }
            if (total != static_cast<unsigned long>(n))
                throw parse_error("splitting shape does not sum to the degree", 0);
            s.wild = bool_member(e, "wild");
            s.index_divides = bool_member(e, "index_divides");
            r.splittings.push_back(std::move(s));
        }
    }
    r.tame = bool_member(j, "tame");
    r.basis_traces = zvec_parse(member(j, "basis_traces"), "basis_traces");
    if (r.basis_traces.size() != n)
        throw parse_error("basis_traces must have n entries", 0);
    r.t = zparse(member(j, "t"), "t");
    r.gamma = zvec_parse(member(j, "gamma"), "gamma");
    if (r.gamma.size() != n) throw parse_error("gamma must have n coordinates", 0);
    {
        const json& c = member(j, "criteria");
        r.verdict.prop1_applies = bool_member(c, "prop1");
        r.verdict.tame_applies = bool_member(c, "tame");
        r.verdict.cor3_applies = bool_member(c, "cor3");
        r.verdict.thm4_applies = bool_member(c, "thm4");
        r.verdict.ground_truth_surjective = bool_member(c, "surjective");
        const json& st = member(c, "status");
        if (!st.is_string()) throw parse_error("criteria.status must be a string", 0);
        r.verdict.conjecture_status =
            status_from_string(st.get_ref<const std::string&>());
    }
    if (r.verdict.conjecture_status == ConjectureStatus::counterexample) {
        const json& w = member(j, "counterexample_witness");
        r.wild_primes = zvec_parse(member(w, "wild_primes"), "wild_primes");
        r.deep_primes = zvec_parse(member(w, "deep_primes"), "deep_primes");
        if (r.wild_primes.empty() || r.deep_primes.empty())
            throw parse_error("counterexample witness must list primes", 0);
        if (zvec_parse(member(w, "trace_one_element"), "trace_one_element") != r.gamma)
            throw parse_error("witness element must equal gamma", 0);
    }

    /* Re-validation: the internal consistency a report certifies. */
    if (r.t < 1) throw parse_error("t must be positive", 0);
    if (r.index < 1) throw parse_error("index must be positive", 0);
    if (r.d_K * r.index * r.index != r.disc_poly)
        throw parse_error("disc_poly != d_K * index^2", 0);
    mpz_class nn(static_cast<unsigned long>(n));
    if (!mpz_divisible_p(nn.get_mpz_t(), r.t.get_mpz_t()))
        throw parse_error("t does not divide the degree", 0);
    mpz_class t2 = r.t * r.t;
    if (!mpz_divisible_p(r.d_K.get_mpz_t(), t2.get_mpz_t()))
        throw parse_error("t^2 does not divide d_K", 0);
    if (r.verdict.ground_truth_surjective != (r.t == 1))
        throw parse_error("surjective flag inconsistent with t", 0);
    if (gcd_all(r.basis_traces) != r.t)
        throw parse_error("t != gcd of basis traces", 0);
    bool any_wild = false;
    for (const auto& s : r.splittings) any_wild = any_wild || s.wild;
    if (r.tame != !any_wild)
        throw parse_error("tame flag inconsistent with splittings", 0);
    if ((r.verdict.prop1_applies || r.verdict.tame_applies ||
         r.verdict.cor3_applies || r.verdict.thm4_applies) &&
        !r.verdict.ground_truth_surjective)
        throw parse_error("an applicable criterion contradicts surjectivity", 0);
    return r;
}

std::string splitting_to_text(const PrimeSplitting& s) {
    std::ostringstream out;
    out << s.p.get_str() << ":";
    for (const auto& [e, f] : s.shape) out << " " << e << "^" << f;
    out << " (" << (s.wild ? "wild" : "tame");
    if (s.index_divides) out << ", divides index";
    out << ")";
    return out.str();
}

std::string report_to_text(const FieldReport& r) {
    std::ostringstream out;
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    out << "input           " << poly_to_text(r.f) << "\n";
    out << "degree          " << r.degree() << "\n";
    out << "disc(f)         " << zstr(r.disc_poly) << "\n";
    out << "index           " << zstr(r.index) << "\n";
    out << "d_K             " << zstr(r.d_K) << "\n";
    out << "integral basis  ";
    for (std::size_t i = 0; i < r.basis.rows; ++i)
        out << (i ? ", " : "") << basis_row_text(r, i);
    out << "\n";
    if (r.splittings.empty()) {
        out << "splittings      (no prime divides disc(f))\n";
    } else {
        for (std::size_t i = 0; i < r.splittings.size(); ++i)
            out << (i ? "                " : "splittings      ")
                << splitting_to_text(r.splittings[i]) << "\n";
    }
    out << "tame            " << yn(r.tame) << "\n";
    out << "basis traces    ";
    for (std::size_t i = 0; i < r.basis_traces.size(); ++i)
        out << (i ? ", " : "") << zstr(r.basis_traces[i]);
    out << "\n";
    out << "t               " << zstr(r.t) << "\n";
    {
        /* gamma in power-basis form: sum of coords * basis rows over den. */
        std::vector<mpz_class> acc(r.degree(), 0);
        for (std::size_t i = 0; i < r.degree(); ++i)
            for (std::size_t jx = 0; jx < r.degree(); ++jx)
                acc[jx] += r.gamma[i] * r.basis.at(i, jx);
        out << "trace witness   " << element_text(IntPoly{std::move(acc)}, r.basis_den)
            << "   [trace " << zstr(r.t) << "]\n";
    }
    out << "criteria        prop1=" << yn(r.verdict.prop1_applies)
        << " tame=" << yn(r.verdict.tame_applies)
        << " cor3=" << yn(r.verdict.cor3_applies)
        << " thm4=" << yn(r.verdict.thm4_applies) << "\n";
    out << "surjective      " << yn(r.verdict.ground_truth_surjective) << "\n";
    out << "status          " << to_string(r.verdict.conjecture_status) << "\n";
    if (!r.wild_primes.empty()) {
        out << "witness         wild primes:";
        for (const auto& p : r.wild_primes) out << " " << zstr(p);
        out << "; p with p|n, p^2|d_K:";
        for (const auto& p : r.deep_primes) out << " " << zstr(p);
        out << "\n";
    }
    std::ostringstream ms;
    ms.setf(std::ios::fixed);
    ms.precision(1);
    ms << r.elapsed_ms;
    out << "elapsed_ms      " << ms.str() << "\n";
    return out.str();
}

std::string report_to_csv(const FieldReport& r) {
    std::ostringstream out;
    out << poly_to_text(r.f) << "," << r.degree() << "," << zstr(r.d_K) << ","
        << zstr(r.t) << "," << (r.tame ? "true" : "false") << ","
        << (r.verdict.thm4_applies ? "true" : "false") << ","
        << to_string(r.verdict.conjecture_status);
    return out.str();
}

}  // namespace oktrace
