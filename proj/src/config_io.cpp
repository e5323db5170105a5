#include "kneadlab/config_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace kneadlab {

namespace {

using nlohmann::json;

Rational num_field(const json& j, const std::string& where) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw std::invalid_argument(where + ": expected a fraction string or integer");
}

Branch parse_branch(const json& jb, const std::string& where) {
    if (!jb.is_object()) throw std::invalid_argument(where + ": expected an object");
    if (!jb.contains("domain") || !jb["domain"].is_array() || jb["domain"].size() != 2)
        throw std::invalid_argument(where + ".domain: expected [lo, hi]");
    Rational lo = num_field(jb["domain"][0], where + ".domain[0]");
    Rational hi = num_field(jb["domain"][1], where + ".domain[1]");
    if (lo > hi) throw std::invalid_argument(where + ".domain: lo > hi");
    Interval dom(lo, hi);

    bool has_affine = jb.contains("affine");
    bool has_table = jb.contains("table");
    if (has_affine == has_table)
        throw std::invalid_argument(where + ": need exactly one of \"affine\" or \"table\"");

    if (has_affine) {
        const json& ja = jb["affine"];
        if (!ja.is_object() || !ja.contains("slope") || !ja.contains("intercept"))
            throw std::invalid_argument(where + ".affine: expected {slope, intercept}");
        return Branch::affine(dom, num_field(ja["slope"], where + ".affine.slope"),
                              num_field(ja["intercept"], where + ".affine.intercept"));
    }

    const json& jt = jb["table"];
    if (!jt.is_array() || jt.size() < 2)
        throw std::invalid_argument(where + ".table: expected at least two [x, y] knots");
    std::vector<std::pair<Rational, Rational>> knots;
    knots.reserve(jt.size());
    for (size_t k = 0; k < jt.size(); ++k) {
        const json& row = jt[k];
        std::string rw = where + ".table[" + std::to_string(k) + "]";
        if (!row.is_array() || row.size() != 2) throw std::invalid_argument(rw + ": expected [x, y]");
        knots.emplace_back(num_field(row[0], rw + "[0]"), num_field(row[1], rw + "[1]"));
    }
    if (knots.front().first != dom.lo || knots.back().first != dom.hi)
        throw std::invalid_argument(where + ".table: first/last knot x must equal the domain endpoints");
    return Branch::table(std::move(knots));
}

}  // namespace

System parse_system(const std::string& json_text, const std::string& origin) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(origin + ": JSON parse error: " + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument(origin + ": top level must be an object");
    if (!j.contains("branches") || !j["branches"].is_array() || j["branches"].empty())
        throw std::invalid_argument(origin + ": \"branches\" must be a nonempty array");

    std::vector<Branch> branches;
    branches.reserve(j["branches"].size());
    for (size_t i = 0; i < j["branches"].size(); ++i)
        branches.push_back(parse_branch(j["branches"][i], origin + ": branches[" + std::to_string(i) + "]"));

    bool degenerate = j.value("degenerate", false);
    std::string name = j.value("name", std::string{});
    try {
        return System(std::move(branches), degenerate, name);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(origin + ": " + e.what());
    }
}

System load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system(buf.str(), path);
}

}  // namespace kneadlab
