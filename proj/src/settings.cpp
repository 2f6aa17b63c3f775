#include "oktrace/settings.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

#include "oktrace/errors.hpp"

namespace oktrace {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

unsigned long parse_ulong(const std::string& v, std::size_t line) {
    try {
        std::size_t used = 0;
        unsigned long r = std::stoul(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw parse_error("expected a nonnegative integer, got '" + v + "'", line);
    }
}

}  // namespace

void settings_apply(Settings& s, const std::string& key, const std::string& value,
                    std::size_t line) {
    if (key == "factor.trial_bound") {
        s.factor_trial_bound = parse_ulong(value, line);
    } else if (key == "irreducible.witness_primes") {
        s.irred_witness_primes = static_cast<int>(parse_ulong(value, line));
    } else if (key == "irreducible.max_subset_tests") {
        s.irred_max_subset_tests = parse_ulong(value, line);
    } else if (key == "hunt.workers") {
        unsigned long w = parse_ulong(value, line);
        if (w < 1) throw parse_error("hunt.workers must be at least 1", line);
        s.hunt_workers = static_cast<unsigned>(w);
    } else {
        throw parse_error("unknown setting '" + key + "'", line);
    }
}

Settings load_settings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file: " + path);
    Settings s;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error("expected 'key = value'", lineno);
        settings_apply(s, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno);
    }
    return s;
}

}  // namespace oktrace
