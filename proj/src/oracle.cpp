#include "oktrace/oracle.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "oktrace/errors.hpp"
#include "oktrace/parse.hpp"
#include "oktrace/report.hpp"

namespace oktrace {

using nlohmann::json;

namespace {

using Shape = std::vector<std::pair<unsigned, unsigned>>;

struct OracleEntry {
    std::string poly_text;
    mpz_class d_K, index, t;
    std::map<mpz_class, Shape> splittings;
};

mpz_class zparse(const json& j, const char* what) {
    if (!j.is_string()) throw parse_error(std::string(what) + " must be a string", 0);
    mpz_class v;
    const std::string& s = j.get_ref<const std::string&>();
    if (s.empty() || mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
        throw parse_error(std::string(what) + ": bad integer '" + s + "'", 0);
    return v;
}

std::string shape_text(const Shape& shape) {
    std::ostringstream out;
    for (std::size_t i = 0; i < shape.size(); ++i)
        out << (i ? " " : "") << shape[i].first << "^" << shape[i].second;
    return out.str();
}

std::pair<std::string, OracleEntry> parse_oracle_entry(const json& e) {
    if (!e.is_object()) throw parse_error("oracle entries must be objects", 0);
    auto need = [&](const char* f) -> const json& {
        auto it = e.find(f);
        if (it == e.end())
            throw parse_error(std::string("oracle entry missing '") + f + "'", 0);
        return *it;
    };
    const json& poly = need("polynomial");
    if (!poly.is_array() || poly.empty())
        throw parse_error("oracle polynomial must be a nonempty array", 0);
    std::vector<mpz_class> low;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it)
        low.push_back(zparse(*it, "oracle polynomial"));
    IntPoly f{std::move(low)};
    std::string key;
    for (int k = f.degree(); k >= 0; --k) {
        if (!key.empty()) key += ',';
        key += f.coeff(static_cast<std::size_t>(k)).get_str();
    }
    OracleEntry oe;
    oe.poly_text = poly_to_text(f);
    oe.d_K = zparse(need("d_K"), "oracle d_K");
    oe.index = zparse(need("index"), "oracle index");
    oe.t = zparse(need("t"), "oracle t");
    const json& sp = need("splittings");
    if (!sp.is_array()) throw parse_error("oracle splittings must be an array", 0);
    for (const auto& s : sp) {
        if (!s.is_object())
            throw parse_error("oracle splitting entries must be objects", 0);
        auto pit = s.find("p");
        if (pit == s.end()) throw parse_error("oracle splitting missing 'p'", 0);
        mpz_class p = zparse(*pit, "oracle p");
        auto shape_it = s.find("shape");
        if (shape_it == s.end())
            throw parse_error("oracle splitting missing 'shape'", 0);
        const json& shape = *shape_it;
        if (!shape.is_array() || shape.empty())
            throw parse_error("oracle shape must be a nonempty array", 0);
        Shape sh;
        for (const auto& pair : shape) {
            if (!pair.is_array() || pair.size() != 2 ||
                !pair[0].is_number_unsigned() || !pair[1].is_number_unsigned())
                throw parse_error("oracle shape entries must be [e, f] pairs", 0);
            sh.emplace_back(pair[0].get<unsigned>(), pair[1].get<unsigned>());
        }
        oe.splittings.emplace(std::move(p), std::move(sh));
    }
    return {key, std::move(oe)};
}

}  // namespace

std::string OracleDiff::table() const {
    std::ostringstream out;
    out << "oracle diff\n";
    out << "  compared      " << compared << "\n";
    out << "  matched       " << matched << "\n";
    out << "  mismatched    " << mismatches.size() << "\n";
    out << "  coverage gaps " << coverage_gaps.size() << "\n";
    for (const auto& m : mismatches) out << "mismatch: " << m << "\n";
    for (const auto& g : coverage_gaps) out << "coverage gap: " << g << "\n";
    return out.str();
}

OracleDiff oracle_diff(const std::string& report_path, const std::string& oracle_path) {
    std::ifstream oin(oracle_path);
    if (!oin) throw io_error("cannot open oracle file: " + oracle_path);
    json oracle = json::parse(oin, nullptr, false);
    if (oracle.is_discarded() || !oracle.is_array())
        throw parse_error("oracle file must be a JSON array", 0);
    std::map<std::string, OracleEntry> entries;
    for (const auto& e : oracle) entries.insert(parse_oracle_entry(e));

    std::ifstream rin(report_path);
    if (!rin) throw io_error("cannot open report file: " + report_path);

    OracleDiff diff;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(rin, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw parse_error("corrupt JSON line in " + report_path, lineno);
        FieldReport r = report_from_json(j);
        std::string key;
        for (int k = r.f.degree(); k >= 0; --k) {
            if (!key.empty()) key += ',';
            key += r.f.coeff(static_cast<std::size_t>(k)).get_str();
        }
        std::string poly_text = poly_to_text(r.f);
        auto it = entries.find(key);
        if (it == entries.end()) {
            diff.coverage_gaps.push_back(poly_text);
            continue;
        }
        const OracleEntry& oe = it->second;
        ++diff.compared;
        bool ok = true;
        auto mismatch = [&](const std::string& what, const std::string& ours,
                            const std::string& theirs) {
            ok = false;
            diff.mismatches.push_back(poly_text + ": " + what + " ours=" + ours +
                                      " oracle=" + theirs);
        };
        if (r.d_K != oe.d_K) mismatch("d_K", r.d_K.get_str(), oe.d_K.get_str());
        if (r.index != oe.index)
            mismatch("index", r.index.get_str(), oe.index.get_str());
        if (r.t != oe.t) mismatch("t", r.t.get_str(), oe.t.get_str());
        std::map<mpz_class, Shape> ours;
        for (const auto& s : r.splittings) ours.emplace(s.p, s.shape);
        if (ours.size() != oe.splittings.size()) {
            mismatch("split prime count", std::to_string(ours.size()),
                     std::to_string(oe.splittings.size()));
        } else {
            for (const auto& [p, sh] : oe.splittings) {
                auto oit = ours.find(p);
                if (oit == ours.end()) {
                    mismatch("splitting at " + p.get_str(), "(absent)", shape_text(sh));
                } else if (oit->second != sh) {
                    mismatch("splitting at " + p.get_str(), shape_text(oit->second),
                             shape_text(sh));
                }
            }
        }
        if (ok) ++diff.matched;
    }
    return diff;
}

}  // namespace oktrace
