#pragma once

#include <string>
#include <variant>

#include "json.hpp"

#include "armlin/bruno.hpp"
#include "armlin/coarmould.hpp"
#include "armlin/linearizer.hpp"

namespace armlin {

using Json = nlohmann::json; // object keys serialize sorted

// Scalar parts in JSON: numbers in float mode, "p" / "p/q" strings (or
// integers) in rational mode.
template <class S>
struct JsonScalar;

template <>
struct JsonScalar<GaussianRational> {
    static constexpr const char* mode = "rational";
    static Json part(const Rational& r) { return rational_to_string(r); }
    static Json re(const GaussianRational& v) { return part(v.re); }
    static Json im(const GaussianRational& v) { return part(v.im); }
    static Rational parse_part(const Json& j, const std::string& where) {
        if (j.is_string()) return rational_from_string(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long long>());
        throw ParseError(where + ": rational mode requires string or integer coefficients");
    }
    static GaussianRational from_parts(const Json& re, const Json& im, const std::string& where) {
        return {parse_part(re, where), parse_part(im, where)};
    }
};

template <>
struct JsonScalar<Complex> {
    static constexpr const char* mode = "float";
    static Json re(const Complex& v) { return v.real(); }
    static Json im(const Complex& v) { return v.imag(); }
    static double parse_part(const Json& j, const std::string& where) {
        if (j.is_number()) return j.get<double>();
        if (j.is_string()) return to_double(rational_from_string(j.get<std::string>()));
        throw ParseError(where + ": expected a number");
    }
    static Complex from_parts(const Json& re, const Json& im, const std::string& where) {
        return {parse_part(re, where), parse_part(im, where)};
    }
};

template <class S>
Json series_to_json(const TruncatedSeries<S>& s) {
    Json terms = Json::array();
    for (const auto& [m, c] : s.terms()) {
        Json t;
        t["exponent"] = m.entries();
        t["re"] = JsonScalar<S>::re(c);
        t["im"] = JsonScalar<S>::im(c);
        terms.push_back(std::move(t));
    }
    Json j;
    j["dimension"] = s.dim();
    j["cap"] = s.cap();
    j["terms"] = std::move(terms);
    return j;
}

template <class S>
TruncatedSeries<S> series_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dimension") || !j.contains("cap") || !j.contains("terms"))
        throw ParseError("series: expected {dimension, cap, terms}");
    TruncatedSeries<S> s(j.at("dimension").get<int>(), j.at("cap").get<int>());
    for (const auto& t : j.at("terms")) {
        MultiIndex m{t.at("exponent").get<std::vector<int>>()};
        s.add_term(m, JsonScalar<S>::from_parts(t.at("re"), t.at("im"), "series term"));
    }
    return s;
}

template <class S>
Json tuple_to_json(const SeriesTuple<S>& t) {
    Json arr = Json::array();
    for (const auto& c : t.components()) arr.push_back(series_to_json(c));
    return arr;
}

template <class S>
SeriesTuple<S> tuple_from_json(const Json& j) {
    std::vector<TruncatedSeries<S>> comps;
    for (const auto& c : j) comps.push_back(series_from_json<S>(c));
    return SeriesTuple<S>(std::move(comps));
}

template <class S>
Json operator_to_json(const HomogeneousOperator<S>& op) {
    Json terms = Json::array();
    for (const auto& [p, c] : op.terms()) {
        Json t;
        t["profile"] = p.entries();
        t["re"] = JsonScalar<S>::re(c);
        t["im"] = JsonScalar<S>::im(c);
        terms.push_back(std::move(t));
    }
    Json j;
    j["weight"] = op.weight().entries();
    j["degree"] = op.degree();
    j["terms"] = std::move(terms);
    return j;
}

using AnyProblemSpec = std::variant<ProblemSpec<GaussianRational>, ProblemSpec<Complex>>;

AnyProblemSpec parse_problem_spec(const Json& j);
AnyProblemSpec load_problem_spec(const std::string& path);
Json load_json_file(const std::string& path);

inline bool is_rational_mode(const AnyProblemSpec& spec) {
    return std::holds_alternative<ProblemSpec<GaussianRational>>(spec);
}

template <class S>
Json result_to_json(const ProblemSpec<S>& spec, const LinearizationResult<S>& result) {
    Json j;
    j["kind"] = kind_name(spec.kind);
    j["mode"] = JsonScalar<S>::mode;
    j["method"] = result.method;
    j["dimension"] = spec.a.dim();
    j["cap"] = spec.cap;
    j["h"] = tuple_to_json(result.h);
    Json d;
    d["trees_enumerated"] = result.diag.trees_enumerated;
    d["trees_contributing"] = result.diag.trees_contributing;
    d["max_abs_armould"] = result.diag.max_abs_armould;
    d["residual"] = result.diag.residual;
    j["diagnostics"] = std::move(d);
    return j;
}

Json diagnostics_to_json(const BrunoDiagnostics& d);
std::string diagnostics_to_csv(const BrunoDiagnostics& d);

} // namespace armlin
