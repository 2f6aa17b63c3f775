#include "oktrace/parse.hpp"

#include <cctype>
#include <cstddef>

#include "oktrace/errors.hpp"

namespace oktrace {

namespace {

struct Scanner {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) throw parse_error(what, i);
    }
};

mpz_class scan_digits(Scanner& sc) {
    sc.skip_ws();
    std::size_t start = sc.i;
    std::string digits;
    while (sc.i < sc.s.size() && std::isdigit(static_cast<unsigned char>(sc.s[sc.i])))
        digits.push_back(sc.s[sc.i++]);
    if (digits.empty()) throw parse_error("expected digits", start);
    return mpz_class(digits, 10);
}

mpz_class scan_integer(Scanner& sc) {
    sc.skip_ws();
    int sign = 1;
    if (sc.accept('-'))
        sign = -1;
    else
        sc.accept('+');
    mpz_class v = scan_digits(sc);
    return sign < 0 ? mpz_class(-v) : v;
}

/* "[c_n, ..., c_0]", highest coefficient first, at least one entry. */
IntPoly parse_bracket_list(Scanner& sc) {
    sc.expect('[', "expected '['");
    std::vector<mpz_class> high_to_low;
    if (!sc.accept(']')) {
        high_to_low.push_back(scan_integer(sc));
        while (sc.accept(',')) high_to_low.push_back(scan_integer(sc));
        sc.expect(']', "expected ',' or ']'");
    }
    if (high_to_low.empty()) throw parse_error("empty coefficient list", sc.i);
    std::vector<mpz_class> c(high_to_low.rbegin(), high_to_low.rend());
    return IntPoly(std::move(c));
}

constexpr unsigned long kMaxExponent = 4096;

/* Sum of terms; each term is [sign] [coeff] ['*'] ['x' ['^' k]]. */
IntPoly parse_expression(Scanner& sc) {
    std::vector<mpz_class> c;
    bool first = true;
    while (!sc.eof()) {
        sc.skip_ws();
        std::size_t term_pos = sc.i;
        int sign = 1;
        if (sc.accept('-'))
            sign = -1;
        else if (!sc.accept('+') && !first)
            throw parse_error("expected '+' or '-' between terms", sc.i);
        first = false;

        sc.skip_ws();
        term_pos = sc.i;
        bool have_coeff = sc.i < sc.s.size() &&
                          std::isdigit(static_cast<unsigned char>(sc.s[sc.i]));
        mpz_class coeff = have_coeff ? scan_digits(sc) : mpz_class(1);
        if (have_coeff) sc.accept('*');

        unsigned long k = 0;
        if (sc.accept('x')) {
            k = 1;
            if (sc.accept('^')) {
                sc.skip_ws();
                std::size_t exp_pos = sc.i;
                mpz_class e = scan_digits(sc);
                if (e > kMaxExponent) throw parse_error("exponent too large", exp_pos);
                k = e.get_ui();
            }
        } else if (!have_coeff) {
            throw parse_error("expected a term (coefficient or 'x')", term_pos);
        }

        if (c.size() < k + 1) c.resize(k + 1, 0);
        c[k] += sign < 0 ? mpz_class(-coeff) : coeff;
    }
    if (c.empty()) throw parse_error("empty polynomial", 0);
    return IntPoly(std::move(c));
}

}  // namespace

IntPoly parse_polynomial(const std::string& text) {
    Scanner sc{text};
    if (sc.eof()) throw parse_error("empty polynomial", 0);
    if (sc.peek() == '[') {
        IntPoly p = parse_bracket_list(sc);
        if (!sc.eof()) throw parse_error("trailing characters after ']'", sc.i);
        return p;
    }
    return parse_expression(sc);
}

IntPoly parse_monic_polynomial(const std::string& text) {
    IntPoly p = parse_polynomial(text);
    if (p.degree() < 1) throw parse_error("polynomial must have degree at least 1", 0);
    if (!p.is_monic())
        throw parse_error("polynomial must be monic (leading coefficient 1)", 0);
    return p;
}

std::string poly_to_text(const IntPoly& f, const std::string& var) {
    if (f.degree() < 0) return "0";
    std::string out;
    for (long k = f.degree(); k >= 0; --k) {
        const mpz_class& c = f.coeff(static_cast<std::size_t>(k));
        if (c == 0) continue;
        mpz_class a = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? "-" : "+";
        }
        bool unit = a == 1;
        if (!unit || k == 0) out += a.get_str();
        if (k > 0) {
            out += var;
            if (k > 1) {
                out += "^";
                out += std::to_string(k);
            }
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace oktrace
