#pragma once

// JSON and CSV interchange. Exact values always travel as "p/q" strings;
// floating point appears only in quadrature payloads. Term order and object
// key order are canonical, so identical inputs serialize byte-identically.

#include "apolar/forms.hpp"
#include "apolar/moments.hpp"
#include "apolar/multivar.hpp"
#include "apolar/ops.hpp"
#include "apolar/poly.hpp"
#include "apolar/quadrature.hpp"

#include <json.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace apolar {

using Json = nlohmann::json;

inline Json poly_to_json(const Poly& p) {
    Json terms = Json::array();
    for (const auto& [mono, coef] : p.terms()) {
        Json exps = Json::array();
        for (const auto& [v, pw] : mono)
            exps.push_back({v.block, v.coord, static_cast<std::uint32_t>(v.kind), pw});
        terms.push_back({{"exp", exps}, {"coef", rational_to_string(coef)}});
    }
    return terms;
}

inline Poly poly_from_json(const Json& j) {
    Poly out;
    for (const auto& term : j) {
        Monomial mono;
        for (const auto& e : term.at("exp")) {
            if (!e.is_array() || e.size() != 4)
                throw std::invalid_argument("polynomial JSON: exponent entries are [block, coord, kind, power]");
            const std::uint32_t kind = e[2].get<std::uint32_t>();
            if (kind > 1) throw std::invalid_argument("polynomial JSON: kind must be 0 (x) or 1 (y)");
            mono.emplace_back(
                VarId{e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>(), static_cast<VarKind>(kind)},
                e[3].get<std::uint32_t>());
        }
        std::sort(mono.begin(), mono.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        out.add_term(mono, rational_from_string(term.at("coef").get<std::string>()));
    }
    return out;
}

inline Json form_to_json(const BinaryForm& f) {
    Json coeffs = Json::array();
    for (const auto& c : f.coeffs) coeffs.push_back(rational_to_string(c));
    return Json{{"degree", f.degree}, {"coeffs", coeffs}};
}

inline BinaryForm form_from_json(const Json& j) {
    BinaryForm f{j.at("degree").get<std::uint32_t>(), {}};
    for (const auto& c : j.at("coeffs")) f.coeffs.push_back(rational_from_string(c.get<std::string>()));
    check_form(f, "form_from_json");
    return f;
}

inline MultiIndex multi_index_from_string(const std::string& s) {
    MultiIndex k;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) k.push_back(static_cast<std::uint32_t>(std::stoul(part)));
    if (k.empty()) throw std::invalid_argument("empty multi-index");
    return k;
}

inline Json multi_form_to_json(const MultiForm& f) {
    Json coeffs = Json::object();
    for (const auto& [k, c] : f.coeffs) coeffs[multi_index_to_string(k)] = rational_to_string(c);
    return Json{{"degree", f.n.comps}, {"coeffs", coeffs}};
}

inline MultiForm multi_form_from_json(const Json& j) {
    MultiForm f{MultiDegree{j.at("degree").get<std::vector<std::uint32_t>>()}, {}};
    for (const auto& [key, val] : j.at("coeffs").items())
        f.coeffs[multi_index_from_string(key)] = rational_from_string(val.get<std::string>());
    check_multi_form(f, "multi_form_from_json");
    return f;
}

// Moment file schema:
//   {"d": 0,
//    "classes": {"1": {"builtin": "hermite"},
//                "2": {"moments": ["1","0","1", ...]},       (d = 0)
//                "3": {"moments": {"0,0": "1", ...}},        (d >= 1)
//                "4": {"product": ["hermite", "laguerre"]}},
//    "blocks": {"5": 2},        optional block -> class assignments
//    "up_to": 32}               optional builtin generation order
inline MomentFunctional moments_from_json(const Json& j) {
    const std::uint32_t d = j.value("d", 0u);
    const std::uint32_t up_to = j.value("up_to", 32u);
    MomentFunctional M(d);
    if (!j.contains("classes")) throw std::invalid_argument("moment JSON: missing 'classes'");
    for (const auto& [key, spec] : j.at("classes").items()) {
        const auto cls = static_cast<std::uint32_t>(std::stoul(key));
        if (spec.contains("builtin")) {
            if (d != 0)
                throw std::invalid_argument("moment JSON: 'builtin' tables are one-dimensional; use 'product'");
            M.set_class_moments(cls, builtin_moments({spec.at("builtin").get<std::string>(), {}}, up_to));
        } else if (spec.contains("product")) {
            const auto names = spec.at("product").get<std::vector<std::string>>();
            if (names.size() != d + 1)
                throw std::invalid_argument("moment JSON: 'product' needs d+1 table names");
            M.set_class_moments(cls, MomentFunctional::product_box_table(names, up_to));
        } else if (spec.contains("moments")) {
            const Json& m = spec.at("moments");
            if (m.is_array()) {
                if (d != 0)
                    throw std::invalid_argument("moment JSON: array moments are one-dimensional; key by \"k0,k1\"");
                std::vector<Rational> a;
                for (const auto& v : m) a.push_back(rational_from_string(v.get<std::string>()));
                M.set_class_moments(cls, a);
            } else {
                std::map<MultiIndex, Rational> table;
                for (const auto& [mk, mv] : m.items())
                    table[multi_index_from_string(mk)] = rational_from_string(mv.get<std::string>());
                M.set_class_moments(cls, std::move(table));
            }
        } else {
            throw std::invalid_argument("moment JSON: class '" + key +
                                        "' needs 'builtin', 'product', or 'moments'");
        }
    }
    if (j.contains("blocks"))
        for (const auto& [block, cls] : j.at("blocks").items())
            M.assign_block(static_cast<std::uint32_t>(std::stoul(block)), cls.get<std::uint32_t>());
    return M;
}

// Canonical emitted form: every class materialized to explicit moments.
inline Json moments_to_json(const MomentFunctional& M) {
    Json classes = Json::object();
    for (const std::uint32_t cls : M.classes()) {
        const auto& table = M.class_table(cls);
        if (M.dimension() == 0) {
            std::uint32_t up_to = 0;
            for (const auto& [k, v] : table) up_to = std::max(up_to, k[0]);
            Json a = Json::array();
            for (std::uint32_t k = 0; k <= up_to; ++k)
                a.push_back(rational_to_string(table.at(MultiIndex{k})));
            classes[std::to_string(cls)] = Json{{"moments", a}};
        } else {
            Json m = Json::object();
            for (const auto& [k, v] : table) m[multi_index_to_string(k)] = rational_to_string(v);
            classes[std::to_string(cls)] = Json{{"moments", m}};
        }
    }
    return Json{{"d", M.dimension()}, {"classes", classes}};
}

inline Json rule_to_json(const QuadratureRule& rule) {
    return Json{{"n", rule.n},
                {"nodes", rule.nodes},
                {"weights", rule.weights},
                {"weights_vandermonde", rule.weights_vandermonde},
                {"source", rule.source},
                {"tol", rule.tol}};
}

inline Json gops_entry_to_json(const GopsEntry& entry) {
    Json j{{"n", entry.n},
           {"m", entry.m},
           {"path", entry.path == GopsPath::determinantal ? "det" : "sym"},
           {"poly", poly_to_json(entry.poly)},
           {"leading", rational_to_string(entry.leading)},
           {"text", entry.poly.to_string()}};
    if (!entry.warning.empty()) j["warning"] = entry.warning;
    return j;
}

// CSV table of entries: n, m, then dense x0 coefficients as "p/q", padded to
// the widest entry.
inline std::string emit_table_csv(const std::vector<GopsEntry>& entries) {
    std::uint32_t max_n = 0;
    for (const auto& e : entries) max_n = std::max(max_n, e.n);
    std::ostringstream out;
    out << "n,m";
    for (std::uint32_t k = 0; k <= max_n; ++k) out << ",c" << k;
    out << "\n";
    for (const auto& e : entries) {
        out << e.n << "," << e.m;
        const auto coeffs = x0_coefficients(e.poly);
        for (std::uint32_t k = 0; k <= max_n; ++k)
            out << "," << (k < coeffs.size() ? rational_to_string(coeffs[k]) : "");
        out << "\n";
    }
    return out.str();
}

}  // namespace apolar
