#pragma once

// JSON documents for operators, radii, search results and degree tables.

#include <json.hpp>
#include <string>
#include <vector>

#include "operlab/fusion.hpp"
#include "operlab/modsearch.hpp"

namespace operlab {

using Json = nlohmann::json;

inline std::vector<std::int64_t> coeff_list(const Poly& f) {
    return std::vector<std::int64_t>(f.coeffs().begin(), f.coeffs().end());
}

inline Json to_json(const RationalFunction& f) {
    if (f.is_polynomial()) return coeff_list(f.num());
    return Json{{"num", coeff_list(f.num())}, {"den", coeff_list(f.den())}};
}

inline Poly poly_from_json(Prime p, const Json& j) {
    if (j.is_number_integer()) return Poly::constant(p, j.get<std::int64_t>());
    if (!j.is_array()) throw Error(Errc::Parse, "polynomial must be an integer or an array of integers");
    std::vector<std::int64_t> c;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw Error(Errc::Parse, "polynomial coefficients must be integers");
        c.push_back(v.get<std::int64_t>());
    }
    return Poly::from_signed(p, c);
}

/// Accepts an integer, a coefficient array (lowest degree first) or
/// {"num": [...], "den": [...]}.
inline RationalFunction ratfn_from_json(Prime p, const Json& j) {
    if (j.is_object()) {
        if (!j.contains("num")) throw Error(Errc::Parse, "rational function needs \"num\"");
        Poly den = j.contains("den") ? poly_from_json(p, j["den"]) : Poly::constant(p, 1);
        if (den.is_zero()) throw Error(Errc::DivisionByZeroPoly, "zero denominator");
        return RationalFunction(poly_from_json(p, j["num"]), std::move(den));
    }
    return RationalFunction(poly_from_json(p, j));
}

inline Json to_json(const OreOperator& d) {
    Json c = Json::array();
    for (const auto& f : d.coeffs()) c.push_back(to_json(f));
    return Json{{"p", d.prime().value()}, {"gauge", gauge_name(d.gauge())}, {"coeffs", c}, {"text", to_string(d)}};
}

inline Gauge parse_gauge(const std::string& s) {
    if (s == "partial" || s == "d") return Gauge::Partial;
    if (s == "theta" || s == "t") return Gauge::Theta;
    throw Error(Errc::Parse, "unknown gauge '" + s + "'");
}

inline OreOperator operator_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("coeffs"))
        throw Error(Errc::Parse, "operator document needs \"p\" and \"coeffs\"");
    const Prime p(j["p"].get<std::int64_t>());
    const Gauge g = parse_gauge(j.value("gauge", std::string("partial")));
    std::vector<RationalFunction> c;
    for (const auto& f : j["coeffs"]) c.push_back(ratfn_from_json(p, f));
    return OreOperator(p, g, std::move(c));
}

inline Json to_json(const ExponentSet& e) {
    return std::vector<std::int64_t>(e.elements().begin(), e.elements().end());
}

inline Json to_json(const RadiusClass& c) { return Json{{"p", c.prime().value()}, {"rep", to_json(c.rep())}}; }

inline RadiusClass radius_from_json(const Json& j) {
    const Prime p(j.at("p").get<std::int64_t>());
    return canonicalize(ExponentSet(p, j.at("rep").get<std::vector<std::int64_t>>()));
}

inline Json to_json(ProjPoint pt) { return pt.infinite ? Json("inf") : Json(pt.value); }

inline ProjPoint point_from_json(const Json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "infinity") return ProjPoint::infinity();
        try {
            return ProjPoint::at(static_cast<std::uint32_t>(std::stoul(s)));
        } catch (const std::exception&) {
            throw Error(Errc::Parse, "bad point '" + s + "'");
        }
    }
    return ProjPoint::at(j.get<std::uint32_t>());
}

inline Json to_json(const SearchSpec& s) {
    Json pts = Json::array();
    for (const auto& pt : s.points) pts.push_back(to_json(pt));
    return Json{{"p", s.prime.value()},
                {"n", s.n},
                {"points", pts},
                {"radii", s.radii ? Json(radii_key(*s.radii)) : Json(nullptr)},
                {"self_dual", kind_name(s.self_dual)}};
}

inline SearchSpec spec_from_json(const Json& j) {
    const Prime p(j.at("p").get<std::int64_t>());
    SearchSpec s{p, j.at("n").get<int>(), {}, std::nullopt, parse_kind(j.value("self_dual", std::string("none")))};
    for (const auto& pt : j.at("points")) s.points.push_back(point_from_json(pt));
    if (j.contains("radii") && !j["radii"].is_null()) s.radii = parse_radii_key(p, j["radii"].get<std::string>());
    return s;
}

inline Json to_json(const FoundOper& f) {
    Json j = to_json(f.op);
    Json e = Json::array();
    for (const auto& x : f.exponents) e.push_back(to_json(x));
    j["exponents"] = e;
    j["radii"] = radii_key(f.radii);
    return j;
}

inline Json table_entries_json(const DegreeTable& t) {
    Json j = Json::object();
    for (const auto& [k, v] : t.entries) j[k] = v;
    return j;
}

/// {"spec": ..., "kind": ..., "closure": ..., "operators": [...], "table": {...}}
inline Json search_document(const SearchSpec& spec, const SearchResult& res, bool with_operators, bool with_table) {
    Json j{{"spec", to_json(spec)}, {"kind", table_kind(spec.self_dual)}, {"candidates", res.candidates}};
    if (with_operators) {
        Json ops = Json::array();
        for (const auto& f : res.operators) ops.push_back(to_json(f));
        j["operators"] = ops;
    }
    if (with_table) {
        const DegreeTable t = table_from(spec, res);
        j["table"] = table_entries_json(t);
        j["closure"] = t.closure;
    }
    return j;
}

inline DegreeTable table_from_json(const Json& j) {
    if (!j.contains("spec") || !j.contains("table")) throw Error(Errc::Parse, "table document needs \"spec\" and \"table\"");
    const SearchSpec s = spec_from_json(j["spec"]);
    DegreeTable t{s.prime, s.n, table_kind(s.self_dual), s.r(), j.value("closure", true), {}};
    if (j.contains("kind")) t.kind = j["kind"].get<std::string>();
    for (const auto& [k, v] : j["table"].items()) {
        const RadiusTuple rho = parse_radii_key(s.prime, k);
        if (rho.size() != t.r) throw Error(Errc::Parse, "key '" + k + "' has the wrong number of points");
        t.entries[radii_key(rho)] = v.get<std::uint64_t>();
    }
    return t;
}

inline std::string table_csv(const DegreeTable& t) {
    std::string s = "radii,count\n";
    for (const auto& [k, v] : t.entries) s += "\"" + k + "\"," + std::to_string(v) + "\n";
    return s;
}

inline Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

inline Json to_json(const FusionRing& ring, const std::vector<Character>& chars) {
    Json basis = Json::array();
    for (const auto& c : ring.basis()) basis.push_back(c.to_string());
    Json cs = Json::array();
    for (const auto& chi : chars) {
        Json v = Json::object();
        for (std::size_t a = 0; a < ring.rank(); ++a) v[ring.basis()[a].to_string()] = to_json(chi.values[a]);
        cs.push_back(Json{{"values", v}, {"cas", to_json(chi.cas)}});
    }
    return Json{{"basis", basis}, {"characters", cs}};
}

}  // namespace operlab
