#pragma once

// JSON ingestion of coefficient tables and CSV output.
//
// Weighted polynomial:  {"m": [m_1, ...], "terms": [{"K": [...], "L": [...], "re": x, "im": y}, ...]}
// Defining function:    {"n": n,          "terms": [{"K": [...], "L": [...], "re": x, "im": y}, ...]}
//
// Each unordered pair {K, L} is listed once; "im" defaults to 0.

#include "squeezing/scaling.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <variant>

namespace squeezing {

using json = nlohmann::json;

namespace detail {

inline const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(where + ": missing key '" + key + "'");
    return j.at(key);
}

inline MultiIndex read_index(const json& j, const std::string& where) {
    if (!j.is_array()) throw ValidationError(where + ": multi-index must be an array");
    MultiIndex out;
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw ValidationError(where + ": multi-index entries must be integers");
        out.push_back(e.get<int>());
    }
    return out;
}

inline cplx read_coeff(const json& t, const std::string& where) {
    const json& re = require(t, "re", where);
    if (!re.is_number()) throw ValidationError(where + ": 're' must be a number");
    double im = 0.0;
    if (t.contains("im")) {
        if (!t.at("im").is_number()) throw ValidationError(where + ": 'im' must be a number");
        im = t.at("im").get<double>();
    }
    return {re.get<double>(), im};
}

inline void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw ValidationError(where + ": expected an object");
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || item.key() == a;
        if (!ok) throw ValidationError(where + ": unknown key '" + item.key() + "'");
    }
}

}  // namespace detail

inline Polynomial polynomial_from_json(const json& j) {
    detail::check_keys(j, {"m", "terms"}, "polynomial");
    const json& m = detail::require(j, "m", "polynomial");
    MultiWeight w(detail::read_index(m, "polynomial.m"));
    const json& terms = detail::require(j, "terms", "polynomial");
    if (!terms.is_array()) throw ValidationError("polynomial: 'terms' must be an array");
    std::vector<Term<double>> out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string where = "polynomial.terms[" + std::to_string(i) + "]";
        detail::check_keys(terms[i], {"K", "L", "re", "im"}, where);
        out.push_back({detail::read_index(detail::require(terms[i], "K", where), where),
                       detail::read_index(detail::require(terms[i], "L", where), where),
                       detail::read_coeff(terms[i], where)});
    }
    return Polynomial(w, out);
}

inline json polynomial_to_json(const Polynomial& P) {
    json terms = json::array();
    for (const auto& t : P.representatives()) {
        terms.push_back({{"K", t.K}, {"L", t.L}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
    }
    return {{"m", P.weights().exponents()}, {"terms", terms}};
}

inline DefiningFunctionPoly defining_function_from_json(const json& j) {
    detail::check_keys(j, {"n", "terms"}, "function");
    const json& n = detail::require(j, "n", "function");
    if (!n.is_number_integer() || n.get<long long>() < 1) throw ValidationError("function: 'n' must be a positive integer");
    const json& terms = detail::require(j, "terms", "function");
    if (!terms.is_array()) throw ValidationError("function: 'terms' must be an array");
    std::vector<std::tuple<MultiIndex, MultiIndex, cplx>> reps;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string where = "function.terms[" + std::to_string(i) + "]";
        detail::check_keys(terms[i], {"K", "L", "re", "im"}, where);
        reps.emplace_back(detail::read_index(detail::require(terms[i], "K", where), where),
                          detail::read_index(detail::require(terms[i], "L", where), where),
                          detail::read_coeff(terms[i], where));
    }
    return DefiningFunctionPoly(n.get<std::size_t>(), reps);
}

inline json defining_function_to_json(const DefiningFunctionPoly& f) {
    json terms = json::array();
    for (const auto& [k, c] : f.table()) {
        if (k.second < k.first) continue;
        terms.push_back({{"K", k.first}, {"L", k.second}, {"re", c.real()}, {"im", c.imag()}});
    }
    return {{"n", f.dim()}, {"terms", terms}};
}

/// Point as [[re, im], ...].
inline cvec point_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw ValidationError(where + ": point must be an array of [re, im] pairs");
    cvec z;
    for (const auto& c : j) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
            throw ValidationError(where + ": coordinates must be [re, im] pairs");
        }
        z.emplace_back(c[0].get<double>(), c[1].get<double>());
    }
    return z;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("'" + path + "': " + e.what());
    }
}

// --- tables -------------------------------------------------------------------

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) {
        if (row.size() != columns.size()) throw ParameterError("Table: row has wrong width");
        rows.push_back(std::move(row));
    }
};

/// %.17g, so doubles round-trip and output is byte-stable.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

inline void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_cell(r[i]);
        os << "\n";
    }
}

inline void write_csv_file(const std::string& path, const Table& t) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    write_csv(out, t);
}

}  // namespace squeezing
