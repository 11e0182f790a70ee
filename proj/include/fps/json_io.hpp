#pragma once

/**
 * JSON bindings for the toolkit's wire formats. Rationals travel as exact
 * strings ("p", "-p", "p/q"); series as {"kind":"series","order":N,
 * "coeffs":[...]} with exactly N+1 ascending coefficients; polynomials as
 * {"kind":"poly","coeffs":[<series>...]} ascending in t. Unknown keys are
 * ignored on input; output objects carry sorted keys, so identical inputs
 * produce byte-identical documents.
 */

#include <string>
#include <vector>

#include <json.hpp>

#include "fps/constructions.hpp"
#include "fps/decomp.hpp"
#include "fps/error.hpp"
#include "fps/growth.hpp"
#include "fps/rational.hpp"
#include "fps/series.hpp"

namespace fps::io {

using nlohmann::json;

inline constexpr const char* kSchema = "fps-transcend/1";

namespace detail {

inline const json& require_field(const json& j, const char* key, const char* what) {
    const auto it = j.find(key);
    if (it == j.end())
        throw DomainError(std::string(what) + ": missing field \"" + key + "\"");
    return *it;
}

inline void require_kind(const json& j, const char* kind, const char* what) {
    if (!j.is_object())
        throw DomainError(std::string(what) + ": expected a JSON object");
    const auto it = j.find("kind");
    if (it != j.end() && (!it->is_string() || it->get<std::string>() != kind))
        throw DomainError(std::string(what) + ": field \"kind\" must be \"" + kind + "\"");
}

inline Rational rational_field(const json& j, const char* what) {
    if (!j.is_string())
        throw DomainError(std::string(what) + ": rationals are JSON strings");
    return parse_rational(j.get<std::string>());
}

} // namespace detail

inline Series parse_series(const json& j) {
    detail::require_kind(j, "series", "series");
    const json& order_j = detail::require_field(j, "order", "series");
    if (!order_j.is_number_unsigned())
        throw DomainError("series: \"order\" must be a nonnegative integer");
    const std::size_t order = order_j.get<std::size_t>();
    const json& coeffs_j = detail::require_field(j, "coeffs", "series");
    if (!coeffs_j.is_array() || coeffs_j.size() != order + 1)
        throw DomainError("series: \"coeffs\" must hold exactly order + 1 entries");
    std::vector<Rational> coeffs;
    coeffs.reserve(order + 1);
    for (const auto& c : coeffs_j)
        coeffs.push_back(detail::rational_field(c, "series"));
    return Series(std::move(coeffs));
}

inline json to_json(const Series& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs())
        coeffs.push_back(to_string(c));
    return json{{"kind", "series"}, {"order", s.order()}, {"coeffs", std::move(coeffs)}};
}

inline SeriesPoly parse_poly(const json& j) {
    detail::require_kind(j, "poly", "poly");
    const json& coeffs_j = detail::require_field(j, "coeffs", "poly");
    if (!coeffs_j.is_array() || coeffs_j.empty())
        throw DomainError("poly: \"coeffs\" must be a nonempty array of series");
    std::vector<Series> coeffs;
    coeffs.reserve(coeffs_j.size());
    for (const auto& s : coeffs_j)
        coeffs.push_back(parse_series(s));
    return SeriesPoly(std::move(coeffs));
}

inline json to_json(const SeriesPoly& p) {
    json coeffs = json::array();
    for (const auto& s : p.coeffs())
        coeffs.push_back(to_json(s));
    return json{{"kind", "poly"}, {"coeffs", std::move(coeffs)}};
}

inline AbsValue parse_abs(const json& j) {
    if (!j.is_object())
        throw DomainError("abs: expected a JSON object");
    const std::string type =
        detail::require_field(j, "type", "abs").get<std::string>();
    if (type == "archimedean")
        return AbsValue::archimedean();
    if (type == "padic") {
        const json& p = detail::require_field(j, "p", "abs");
        if (!p.is_number_unsigned())
            throw DomainError("abs: \"p\" must be a positive integer");
        return AbsValue::padic(p.get<std::uint64_t>());
    }
    throw DomainError("abs: unknown type \"" + type + "\"");
}

inline LogMagInterval parse_log_interval(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw DomainError("growth table entries are [lo, hi] pairs of rational strings");
    const std::string lo = j[0].get<std::string>();
    const std::string hi = j[1].get<std::string>();
    if (lo == "-inf" || hi == "-inf") {
        if (lo != hi)
            throw DomainError("a zero-magnitude table entry must be [\"-inf\",\"-inf\"]");
        return LogMagInterval::neg_infinity();
    }
    const Rational lo_r = parse_rational(lo);
    const Rational hi_r = parse_rational(hi);
    if (lo_r > hi_r)
        throw DomainError("growth table entry has lo > hi");
    return LogMagInterval(lo_r, hi_r);
}

inline GrowthSpec parse_growth(const json& j) {
    detail::require_kind(j, "growth", "growth");
    const std::string type =
        detail::require_field(j, "type", "growth").get<std::string>();
    if (type == "factorial_exponent") {
        return GrowthSpec::factorial_exponent(
            detail::rational_field(detail::require_field(j, "a", "growth"), "growth"),
            detail::rational_field(detail::require_field(j, "b", "growth"), "growth"),
            detail::rational_field(detail::require_field(j, "c", "growth"), "growth"));
    }
    if (type == "geometric") {
        return GrowthSpec::geometric(
            detail::rational_field(detail::require_field(j, "log2r", "growth"), "growth"));
    }
    if (type == "table") {
        const json& entries = detail::require_field(j, "log2", "growth");
        if (!entries.is_array() || entries.empty())
            throw DomainError("growth: \"log2\" must be a nonempty array");
        std::vector<LogMagInterval> table;
        table.reserve(entries.size());
        for (const auto& e : entries)
            table.push_back(parse_log_interval(e));
        return GrowthSpec::table(std::move(table));
    }
    if (type == "from_series") {
        return GrowthSpec::from_series(
            parse_series(detail::require_field(j, "series", "growth")),
            parse_abs(detail::require_field(j, "abs", "growth")));
    }
    throw DomainError("growth: unknown type \"" + type + "\"");
}

inline RhoSpec parse_rho(const json& j) {
    detail::require_kind(j, "rho", "rho");
    const std::string type = detail::require_field(j, "type", "rho").get<std::string>();
    if (type == "factorial")
        return RhoSpec::factorial();
    if (type == "one")
        return RhoSpec::one();
    if (type == "geometric")
        return RhoSpec::geometric(
            detail::rational_field(detail::require_field(j, "r", "rho"), "rho"));
    if (type == "polynomial") {
        const json& deg = detail::require_field(j, "degree", "rho");
        if (!deg.is_number_unsigned())
            throw DomainError("rho: \"degree\" must be a nonnegative integer");
        return RhoSpec::polynomial(deg.get<unsigned>());
    }
    if (type == "table") {
        const json& entries = detail::require_field(j, "values", "rho");
        if (!entries.is_array() || entries.empty())
            throw DomainError("rho: \"values\" must be a nonempty array");
        std::vector<Rational> values;
        values.reserve(entries.size());
        for (const auto& e : entries)
            values.push_back(detail::rational_field(e, "rho"));
        return RhoSpec::table(std::move(values));
    }
    throw DomainError("rho: unknown type \"" + type + "\"");
}

inline json to_json(const DecompComponents& c) {
    return json{{"n", c.n},
                {"lambda", c.lambda},
                {"head", to_string(c.head)},
                {"gamma", to_string(c.gamma)},
                {"delta", to_string(c.delta)},
                {"epsilon", to_string(c.epsilon)},
                {"alpha_n", to_string(c.alpha_n)},
                {"identity_ok", true}};
}

inline json to_json(const RegionTally& t) {
    const auto bucket = [](const RegionTally::Bucket& b) {
        return json{{"count", b.count}, {"sum", to_string(b.sum)}};
    };
    return json{{"n", t.n},
                {"lambda", t.lambda},
                {"core", bucket(t.core)},
                {"epsilon", bucket(t.epsilon)},
                {"gamma", bucket(t.gamma)},
                {"head", bucket(t.head)},
                {"alpha_n", to_string(t.total())}};
}

inline json to_json(const MarginInterval& m) {
    using State = MarginInterval::State;
    switch (m.state) {
    case State::PosInfinite:
        return json{{"lo", "+inf"}, {"hi", "+inf"}};
    case State::NegInfinite:
        return json{{"lo", "-inf"}, {"hi", "-inf"}};
    case State::Finite:
        break;
    }
    return json{{"lo", to_string(m.lo)}, {"hi", to_string(m.hi)}};
}

inline json to_json(const CriteriaReport& r) {
    json cells = json::array();
    for (const auto& cell : r.cells) {
        json kinds = json::array();
        for (const auto& kr : cell.kinds) {
            json margins = json::array();
            for (const auto& sample : kr.margins) {
                json m = to_json(sample.margin);
                m["n"] = sample.n;
                margins.push_back(std::move(m));
            }
            kinds.push_back(json{{"kind", margin_kind_name(kr.kind)},
                                 {"verdict", verdict_name(kr.verdict)},
                                 {"margins", std::move(margins)}});
        }
        cells.push_back(json{{"lambda", cell.lambda},
                             {"m", cell.m},
                             {"verdict", verdict_name(cell.verdict)},
                             {"kinds", std::move(kinds)}});
    }
    return json{{"mode", r.mode == AbsMode::Archimedean ? "archimedean" : "nonarchimedean"},
                {"precondition_x0", r.precondition_x0},
                {"precondition_x0_indeterminate", r.precondition_indeterminate},
                {"lambda_max", r.lambda_max},
                {"m_max", r.m_max},
                {"n_range", json::array({r.n_begin, r.n_end})},
                {"cells", std::move(cells)},
                {"verdict", verdict_name(r.verdict)}};
}

inline json to_json(const Prop1Report& r) {
    const auto violation = [](const Prop1Report::Violation& v) {
        return json{{"series", std::string(1, v.series)},
                    {"n", v.n},
                    {"value", to_string(v.value)},
                    {"bound", to_string(v.bound)}};
    };
    json premise = json::array();
    for (const auto& v : r.premise_violations)
        premise.push_back(violation(v));
    json out{{"order", r.order},
             {"premises_ok", r.premises_ok},
             {"premise_violations", std::move(premise)},
             {"bound_ok", r.bound_ok}};
    out["first_bound_violation"] =
        r.first_bound_violation ? violation(*r.first_bound_violation) : json(nullptr);
    out["status"] = !r.premises_ok ? "PREMISE_FAIL" : (r.bound_ok ? "BOUND_OK" : "BOUND_FAIL");
    return out;
}

inline json to_json(const GapClaimReport& r) {
    json coeffs = json::array();
    for (const auto& c : r.coeff_at_c)
        coeffs.push_back(to_string(c));
    json counterexamples = json::array();
    for (const auto& ce : r.counterexamples)
        counterexamples.push_back(
            json{{"j", ce.j}, {"n", ce.n}, {"value", to_string(ce.value)}});
    return json{{"p", r.p},
                {"q", r.q},
                {"c_index", r.c},
                {"coeff_at_c", std::move(coeffs)},
                {"p_factorial", r.p_factorial.get_str()},
                {"q_factorial", r.q_factorial.get_str()},
                {"matches_p_factorial", r.matches_p_factorial},
                {"matches_q_factorial", r.matches_q_factorial},
                {"zeros_below_p", r.zeros_below_p},
                {"zero_window_radius_verified", r.zero_window_radius_verified},
                {"candidate_radius", r.candidate_radius},
                {"paper_radius_holds", r.paper_radius_holds},
                {"counterexamples", std::move(counterexamples)},
                {"computed_order", r.computed_order}};
}

inline json to_json(const PunchlineReport& r) {
    json out{{"p", r.p},
             {"q", r.q},
             {"n", r.n},
             {"d", r.d},
             {"window_radius", r.window},
             {"conclusive", r.conclusive}};
    out["required_q"] = r.required_q ? json(*r.required_q) : json(nullptr);
    if (r.conclusive) {
        out["lhs"] = to_string(r.lhs);
        out["rhs"] = to_string(r.rhs);
        out["equal"] = r.equal;
        out["nonzero"] = r.nonzero;
    }
    return out;
}

inline json to_json(const GrowthClass& g) {
    json out{{"classification", growth_class_name(g.kind)}, {"heuristic", true}};
    out["estimate_log2_r"] =
        g.estimate_log2_r ? json(to_string(*g.estimate_log2_r)) : json(nullptr);
    return out;
}

} // namespace fps::io
