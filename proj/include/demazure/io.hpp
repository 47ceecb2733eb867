#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "demazure/fgl.hpp"
#include "demazure/lattice.hpp"
#include "demazure/power_series.hpp"

namespace demazure::io {

using nlohmann::json;

inline json series_to_json(const PowerSeries& f)
{
    json terms = json::array();
    for (const auto& [m, c] : f.terms()) {
        json exp = json::array();
        for (int i = 0; i < f.nvars(); ++i) exp.push_back(m.exp(i));
        terms.push_back({{"exp", exp}, {"coef", c.str()}});
    }
    return json{{"nvars", f.nvars()},
                {"order", f.order()},
                {"reliable", f.reliable()},
                {"terms", terms}};
}

inline PowerSeries series_from_json(const json& j)
{
    if (!j.contains("nvars") || !j.contains("order"))
        throw ParseError("series JSON needs nvars and order");
    int nvars = j.at("nvars").get<int>();
    int order = j.at("order").get<int>();
    int reliable = j.value("reliable", order);
    PowerSeries f(nvars, order, reliable);
    for (const auto& t : j.value("terms", json::array())) {
        std::vector<int32_t> e = t.at("exp").get<std::vector<int32_t>>();
        if (static_cast<int>(e.size()) != nvars) throw ParseError("bad exponent length");
        f.add_term(Mono(std::move(e)), Scalar::parse(t.at("coef").get<std::string>()));
    }
    return f;
}

inline json gcm_to_json(const Gcm& g)
{
    json rows = json::array();
    for (const auto& row : g.matrix()) rows.push_back(row);
    return json{{"matrix", rows}};
}

inline Gcm gcm_from_json(const json& j)
{
    const json& m = j.contains("matrix") ? j.at("matrix") : j;
    if (!m.is_array()) throw ParseError("GCM JSON needs a \"matrix\" array");
    linalg::IntMat a;
    for (const auto& row : m) a.push_back(row.get<linalg::IntVec>());
    try {
        return Gcm(std::move(a));
    } catch (const InvalidGcm&) {
        throw;
    }
}

// Lattice files embed their Cartan matrix and give either the square basis
// matrix B (columns in root coordinates, rational strings) or explicit
// simple-root columns plus coroot rows for non-square embeddings.
inline Lattice lattice_from_json(const json& j)
{
    if (!j.contains("gcm")) throw ParseError("lattice JSON needs a \"gcm\" member");
    Gcm g = gcm_from_json(j.at("gcm"));
    if (j.contains("B")) {
        const json& b = j.at("B");
        linalg::RatMat rows;
        for (const auto& row : b) {
            linalg::RatVec r;
            for (const auto& x : row) {
                if (x.is_string())
                    r.push_back(parse_rational(x.get<std::string>()));
                else
                    r.push_back(Rational(x.get<int64_t>()));
            }
            rows.push_back(std::move(r));
        }
        return Lattice::from_B(g, rows);
    }
    if (j.contains("simple_roots") && j.contains("coroots")) {
        linalg::IntMat s, c;
        for (const auto& row : j.at("simple_roots")) s.push_back(row.get<linalg::IntVec>());
        for (const auto& row : j.at("coroots")) c.push_back(row.get<linalg::IntVec>());
        return Lattice(g, std::move(s), std::move(c));
    }
    throw ParseError("lattice JSON needs either \"B\" or \"simple_roots\"+\"coroots\"");
}

inline json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

} // namespace demazure::io
