#include "armlin/io.hpp"

#include <fstream>
#include <sstream>

namespace armlin {

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

namespace {

template <class S>
ProblemSpec<S> build_spec(const Json& j) {
    const int dim = j.at("dimension").get<int>();
    if (dim < 1) throw ParseError("spec: dimension must be >= 1");
    const int cap = j.at("truncation").get<int>();
    if (cap < 1) throw ParseError("spec: truncation must be >= 1");

    std::string kind_str = j.at("kind").get<std::string>();
    Kind kind;
    if (kind_str == "diffeo")
        kind = Kind::Diffeo;
    else if (kind_str == "field")
        kind = Kind::Field;
    else
        throw ParseError("spec: kind must be \"diffeo\" or \"field\"");

    const Json& spectrum_json = j.at("spectrum");
    if (!spectrum_json.is_array() || static_cast<int>(spectrum_json.size()) != dim)
        throw ParseError("spec: spectrum must list exactly dimension eigenvalues");
    Spectrum<S> spectrum;
    spectrum.kind = kind;
    for (const auto& entry : spectrum_json) {
        if (!entry.is_array() || entry.size() != 2)
            throw ParseError("spec: spectrum entries are [re, im] pairs");
        spectrum.values.push_back(JsonScalar<S>::from_parts(entry[0], entry[1], "spectrum"));
    }

    auto a = SeriesTuple<S>::zero(dim, cap);
    std::vector<TruncatedSeries<S>> comps(a.components());
    if (j.contains("nonlinear")) {
        for (const auto& entry : j.at("nonlinear")) {
            int component = entry.at("component").get<int>();
            if (component < 1 || component > dim)
                throw ParseError("spec: nonlinear component out of range (1-based)");
            MultiIndex m{entry.at("exponent").get<std::vector<int>>()};
            if (m.dim() != dim) throw ParseError("spec: exponent dimension mismatch");
            if (!m.all_nonneg() || m.degree() < 2)
                throw ParseError("spec: exponent " + m.to_string() +
                                 " must have non-negative entries and |m| >= 2");
            if (m.degree() > cap)
                throw ParseError("spec: exponent " + m.to_string() + " exceeds the truncation");
            const Json& coeff = entry.at("coeff");
            if (!coeff.is_array() || coeff.size() != 2)
                throw ParseError("spec: coeff must be a [re, im] pair");
            comps[static_cast<size_t>(component - 1)].add_term(
                m, JsonScalar<S>::from_parts(coeff[0], coeff[1], "nonlinear coeff"));
        }
    }
    return ProblemSpec<S>{kind, std::move(spectrum), SeriesTuple<S>(std::move(comps)), cap};
}

} // namespace

AnyProblemSpec parse_problem_spec(const Json& j) {
    try {
        std::string mode = j.value("mode", "float");
        if (mode == "rational") return build_spec<GaussianRational>(j);
        if (mode == "float") return build_spec<Complex>(j);
        throw ParseError("spec: mode must be \"float\" or \"rational\"");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("spec: ") + e.what());
    }
}

AnyProblemSpec load_problem_spec(const std::string& path) {
    return parse_problem_spec(load_json_file(path));
}

Json diagnostics_to_json(const BrunoDiagnostics& d) {
    Json j;
    j["kind"] = kind_name(d.kind);
    Json spectrum = Json::array();
    for (const auto& v : d.spectrum) spectrum.push_back(Json::array({v.real(), v.imag()}));
    j["spectrum"] = std::move(spectrum);
    j["kmax"] = d.kmax;
    j["omega"] = d.omega;
    j["alpha"] = d.alpha;
    j["epsilon"] = d.epsilon;
    j["partial_sums"] = d.partial;
    j["bruno_partial"] = d.bruno_partial;
    j["gamma"] = d.gamma;
    j["gamma_tol"] = d.gamma_tol;
    j["B"] = d.B;
    j["tail_note"] = d.tail_note;
    return j;
}

std::string diagnostics_to_csv(const BrunoDiagnostics& d) {
    std::ostringstream out;
    out << "k,omega,alpha,epsilon,bruno_partial\n";
    out.precision(17);
    for (int k = 1; k <= d.kmax; ++k) {
        size_t i = static_cast<size_t>(k - 1);
        out << k << "," << d.omega[i] << "," << d.alpha[i] << "," << d.epsilon[i] << ","
            << d.partial[i] << "\n";
    }
    return out.str();
}

} // namespace armlin
