#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "oktrace/arith.hpp"
#include "oktrace/errors.hpp"
#include "oktrace/hunt.hpp"
#include "oktrace/parse.hpp"
#include "oktrace/report.hpp"

namespace py = pybind11;
using namespace oktrace;

namespace {

/* Raised instead of returning a report when the input polynomial factors. */
struct reducible_input : std::runtime_error {
    using std::runtime_error::runtime_error;
};

mpz_class to_mpz(const std::string& s) {
    mpz_class v;
    if (s.empty() || mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
        throw py::value_error("bad integer '" + s + "'");
    return v;
}

IntPoly checked_poly(const std::string& text) {
    return parse_monic_polynomial(text);
}

IntPoly proven_irreducible(const std::string& text, const Settings& st) {
    IntPoly f = checked_poly(text);
    auto irr = is_irreducible_over_q(f, st.irred_options());
    if (irr.status == IrreducibilityResult::Status::disproved)
        throw reducible_input("reducible: divisible by " +
                              poly_to_text(irr.witness_factor));
    if (irr.status == IrreducibilityResult::Status::unknown)
        throw irreducibility_unknown("effort budget exhausted (last stage: " +
                                     irr.method + ")");
    return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "trace surjectivity analysis over rings of integers of number fields";

    py::register_exception<reducible_input>(m, "ReducibleInput", PyExc_ValueError);
    py::register_exception<irreducibility_unknown>(m, "IrreducibilityUnknown",
                                                   PyExc_RuntimeError);
    static py::exception<parse_error> parse_exc(m, "ParseError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const parse_error& e) {
            py::set_error(parse_exc, (std::string(e.what()) + " (position " +
                                      std::to_string(e.position) + ")")
                                         .c_str());
        }
    });

    m.def(
        "analyze_json",
        [](const std::string& poly) {
            Settings st;
            return report_to_jsonl(analyze_field(proven_irreducible(poly, st), st));
        },
        py::arg("poly"),
        "Full analysis of a monic irreducible polynomial; returns the report as a "
        "compact JSON string (schema 1, unbounded integers as decimal strings).");

    m.def(
        "poly_coeffs",
        [](const std::string& text) {
            IntPoly f = parse_polynomial(text);
            std::vector<std::string> high;
            for (int k = f.degree(); k >= 0; --k)
                high.push_back(f.coeff(static_cast<std::size_t>(k)).get_str());
            return high;
        },
        py::arg("text"), "Parse a polynomial; coefficients high to low.");

    m.def(
        "poly_text",
        [](const std::vector<std::string>& high) {
            std::vector<mpz_class> low;
            for (auto it = high.rbegin(); it != high.rend(); ++it)
                low.push_back(to_mpz(*it));
            return poly_to_text(IntPoly{std::move(low)});
        },
        py::arg("coeffs"), "Render high-to-low coefficients as canonical text.");

    m.def(
        "discriminant",
        [](const std::string& text) {
            return discriminant(parse_polynomial(text)).get_str();
        },
        py::arg("poly"), "disc(f) as a decimal string.");

    m.def(
        "is_irreducible",
        [](const std::string& text) {
            auto r = is_irreducible_over_q(checked_poly(text));
            const char* status =
                r.status == IrreducibilityResult::Status::proved     ? "proved"
                : r.status == IrreducibilityResult::Status::disproved ? "disproved"
                                                                      : "unknown";
            return std::make_pair(std::string(status), r.method);
        },
        py::arg("poly"), "(status, deciding stage) for a monic polynomial.");

    m.def(
        "factor",
        [](const std::string& n) {
            std::vector<std::pair<std::string, unsigned>> out;
            for (const auto& [p, e] : factor(to_mpz(n)).factors)
                out.emplace_back(p.get_str(), e);
            return out;
        },
        py::arg("n"), "Certified prime factorization, [(p, exponent), ...].");

    m.def(
        "is_prime", [](const std::string& n) { return is_prime(to_mpz(n)); },
        py::arg("n"));

    m.def(
        "power_sums",
        [](const std::string& text, std::size_t k_max) {
            IntPoly f = checked_poly(text);
            std::vector<std::string> out;
            for (const auto& v : power_sums(f, k_max)) out.push_back(v.get_str());
            return out;
        },
        py::arg("poly"), py::arg("k_max"),
        "Root power sums p_0..p_kmax of a monic polynomial.");

    m.attr("__version__") = "0.1.0";
}
