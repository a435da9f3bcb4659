// armlin: batch front-end for the tree-expansion linearizer and the
// small-divisor diagnostics.
//
// Exit codes: 0 success, 2 parse/validation error, 3 resonance,
// 4 invariant failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "armlin/io.hpp"

namespace {

using namespace armlin;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitResonance = 3;
constexpr int kExitInvariant = 4;

void write_output(const std::string& path, const std::string& payload) {
    std::string text = payload;
    if (text.empty() || text.back() != '\n') text += '\n';
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write to " + path);
    out << text;
}

template <class S>
Json run_linearize(const ProblemSpec<S>& spec, const std::string& method) {
    if (method == "tree") {
        auto result = linearize_tree(spec);
        result.diag.residual = conjugacy_residual(spec, result.h);
        return result_to_json(spec, result);
    }
    if (method == "recursive") {
        auto result = linearize_recursive(spec);
        result.diag.residual = conjugacy_residual(spec, result.h);
        return result_to_json(spec, result);
    }
    auto tree = linearize_tree(spec);
    auto recursive = linearize_recursive(spec);
    tree.diag.residual = conjugacy_residual(spec, tree.h);
    recursive.diag.residual = conjugacy_residual(spec, recursive.h);
    double discrepancy = 0.0;
    for (int i = 0; i < spec.a.dim(); ++i)
        discrepancy = std::max(discrepancy, max_coefficient_distance(tree.h[i], recursive.h[i]));
    Json j;
    j["method"] = "both";
    j["tree"] = result_to_json(spec, tree);
    j["recursive"] = result_to_json(spec, recursive);
    j["max_discrepancy"] = discrepancy;
    j["exact_match"] = ScalarOps<S>::exact ? Json(tree.h == recursive.h) : Json(nullptr);
    return j;
}

int cmd_linearize(const std::string& spec_path, const std::string& method,
                  const std::string& out_path) {
    auto spec = load_problem_spec(spec_path);
    Json j = std::visit([&](const auto& s) { return run_linearize(s, method); }, spec);
    write_output(out_path, j.dump(2));
    return kExitOk;
}

int cmd_bruno(const std::string& spec_path, int kmax, const std::string& csv_path,
              double b, double M, bool has_b, bool has_M, double gamma_tol,
              const std::string& out_path) {
    auto any = load_problem_spec(spec_path);
    BrunoSpectrum spectrum =
        std::visit([](const auto& s) { return BrunoSpectrum::from(s.spectrum); }, any);
    auto diag = make_diagnostics(spectrum, kmax, gamma_tol);
    Json j = diagnostics_to_json(diag);
    if (has_b) {
        if (!has_M)
            M = std::visit([&](const auto& s) { return coefficient_sum_M(s.a, b); }, any);
        j["radius"] = Json{{"b", b},
                           {"M", M},
                           {"B", diag.B},
                           {"kmax", kmax},
                           {"lower_bound", radius_lower_bound(
                                               b, M, spectrum.dim(), diag.B)}};
    }
    if (!csv_path.empty()) write_output(csv_path, diagnostics_to_csv(diag));
    write_output(out_path, j.dump(2));
    return kExitOk;
}

int cmd_forests(int dim, const std::string& decorations, const std::string& decorations_file,
                int weight, const std::string& filter_name, bool count_only) {
    std::vector<MultiIndex> alphabet;
    auto add_inline = [&](const std::string& text) {
        std::string token;
        std::istringstream in(text);
        while (std::getline(in, token, ';')) {
            size_t a = token.find_first_not_of(" \t\n");
            if (a == std::string::npos) continue;
            alphabet.push_back(parse_multi_index(token, dim));
        }
    };
    if (!decorations_file.empty()) {
        std::ifstream in(decorations_file);
        if (!in) throw ParseError("cannot open decorations file: " + decorations_file);
        std::string line;
        while (std::getline(in, line)) add_inline(line);
    }
    if (!decorations.empty()) add_inline(decorations);
    if (alphabet.empty()) throw ParseError("forests: no decorations given");

    ForestFilter filter = ForestFilter::All;
    if (filter_name == "fplus")
        filter = ForestFilter::Fplus;
    else if (filter_name == "nv")
        filter = ForestFilter::NVCandidates;
    else if (filter_name != "all")
        throw ParseError("forests: filter must be all, fplus or nv");

    long count = 0;
    for_each_forest(dim, alphabet, weight, filter, [&](const Forest& f) {
        ++count;
        if (!count_only) std::cout << to_notation(f) << "\n";
    });
    if (count_only) std::cout << count << "\n";
    return kExitOk;
}

struct CheckRow {
    std::string name;
    std::string status; // PASS / FAIL / SKIP
    std::string detail;
};

class VerifySuite {
  public:
    VerifySuite(AnyProblemSpec any, int weight_cap, int kmax, std::string h_path)
        : any_(std::move(any)), weight_cap_(weight_cap), kmax_(kmax), h_path_(std::move(h_path)) {
        dim_ = std::visit([](const auto& s) { return s.a.dim(); }, any_);
        auto support = std::visit(
            [](const auto& s) {
                CoarmouldEvaluator eval(s.a);
                return eval.support_decorations();
            },
            any_);
        alphabet_ = std::move(support);
    }

    bool run(const std::vector<std::string>& checks) {
        for (const auto& c : checks) dispatch(c);
        size_t width = 0;
        for (const auto& r : rows_) width = std::max(width, r.name.size());
        bool ok = true;
        for (const auto& r : rows_) {
            ok = ok && r.status != "FAIL";
            std::cout << r.name << std::string(width - r.name.size() + 2, ' ') << r.status
                      << (r.detail.empty() ? "" : "  " + r.detail) << "\n";
        }
        return ok;
    }

  private:
    void record(const std::string& name, bool ok, const std::string& detail = "") {
        rows_.push_back({name, ok ? "PASS" : "FAIL", detail});
    }
    void skip(const std::string& name, const std::string& why) {
        rows_.push_back({name, "SKIP", why});
    }

    template <class S>
    static TruncatedSeries<S> probe_series(int dim, int cap, int variant) {
        // small deterministic polynomials exercising every variable
        TruncatedSeries<S> s(dim, cap);
        for (int i = 0; i < dim; ++i) {
            s.add_term(MultiIndex::unit(dim, i), ScalarOps<S>::from_int(1 + ((i + variant) % 3)));
            MultiIndex sq = MultiIndex::unit(dim, i) + MultiIndex::unit(dim, (i + variant) % dim);
            s.add_term(sq, ScalarOps<S>::from_int(2 + ((i * variant) % 3)));
        }
        return s;
    }

    void check_closed_recursive() {
        bool ok = std::visit(
            [&](const auto& s) {
                using S = std::decay_t<decltype(s.spectrum.values[0])>;
                CoarmouldEvaluator<S> eval(s.a);
                bool all = true;
                for_each_forest(dim_, alphabet_, weight_cap_, ForestFilter::All,
                                [&](const Forest& f) {
                                    auto chk_lhs = eval.D(f);
                                    auto chk_rhs = eval.D_closed(f);
                                    if (ScalarOps<S>::exact)
                                        all = all && (chk_lhs == chk_rhs);
                                    else
                                        all = all && operators_close(chk_lhs, chk_rhs);
                                });
                return all;
            },
            any_);
        record("closed-vs-recursive", ok);
    }

    template <class S>
    static bool operators_close(const HomogeneousOperator<S>& a, const HomogeneousOperator<S>& b) {
        for (const auto& [p, c] : a.terms())
            if (!approx_equal(ScalarOps<S>::to_complex(c),
                              ScalarOps<S>::to_complex(b.terms().count(p) ? b.terms().at(p)
                                                                          : ScalarOps<S>::zero()),
                              1e-10))
                return false;
        for (const auto& [p, c] : b.terms())
            if (!a.terms().count(p) && ScalarOps<S>::abs(c) > 1e-10) return false;
        return true;
    }

    void check_cosep() {
        bool ok = std::visit(
            [&](const auto& s) {
                using S = std::decay_t<decltype(s.spectrum.values[0])>;
                CoarmouldEvaluator<S> eval(s.a);
                auto phi = probe_series<S>(dim_, s.cap, 1);
                auto psi = probe_series<S>(dim_, s.cap, 2);
                bool all = true;
                for_each_forest(dim_, alphabet_, weight_cap_, ForestFilter::All,
                                [&](const Forest& f) {
                                    auto chk = verify_coseparativity(eval, f, phi, psi);
                                    all = all && (ScalarOps<S>::exact ? chk.exact_equal
                                                                      : chk.max_error <= 1e-10);
                                });
                return all;
            },
            any_);
        record("coseparativity", ok);
    }

    void check_product_rule() {
        bool ok = std::visit(
            [&](const auto& s) {
                using S = std::decay_t<decltype(s.spectrum.values[0])>;
                CoarmouldEvaluator<S> eval(s.a);
                auto forests = enumerate_forests(dim_, alphabet_, weight_cap_, ForestFilter::All);
                bool all = true;
                for (const auto& f1 : forests)
                    for (const auto& f2 : forests) {
                        if (f1.abs_weight() + f2.abs_weight() > weight_cap_) continue;
                        auto chk = verify_product_rule(eval, f1, f2);
                        all = all &&
                              (ScalarOps<S>::exact ? chk.exact_equal : chk.max_error <= 1e-9);
                    }
                return all;
            },
            any_);
        record("product-rule", ok);
    }

    void check_vanishing_hierarchy() {
        VanishingOracle oracle(dim_, alphabet_);
        bool all = true;
        for_each_forest(dim_, alphabet_, weight_cap_, ForestFilter::All, [&](const Forest& f) {
            if (!oracle.is_universally_vanishing(f) && !is_Fplus(f)) all = false;
        });
        record("vanishing-hierarchy", all, "NV(N) within F+(N)");
    }

    void check_cut_vanish() {
        VanishingOracle oracle(dim_, alphabet_);
        bool all = true;
        for_each_forest(dim_, alphabet_, weight_cap_, ForestFilter::All, [&](const Forest& f) {
            if (oracle.is_universally_vanishing(f)) return;
            for (const auto& cut : admissible_cuts(f)) {
                if (oracle.is_universally_vanishing(cut.pruned) ||
                    oracle.is_universally_vanishing(cut.remaining))
                    all = false;
                if (cut.remaining.abs_weight() <
                    static_cast<int>(cut.selected.size()) - f.degree())
                    all = false;
            }
        });
        record("cut-vanish", all, "cuts of NV forests stay in NV; |‖R^c‖| >= #c - deg F");
    }

    void check_counting() {
        BrunoSpectrum spectrum =
            std::visit([](const auto& s) { return BrunoSpectrum::from(s.spectrum); }, any_);
        VanishingOracle oracle(dim_, alphabet_);
        bool all = true;
        for_each_forest(dim_, alphabet_, weight_cap_, ForestFilter::NVCandidates,
                        [&](const Forest& f) {
                            if (oracle.is_universally_vanishing(f)) return;
                            all = all && counting_check(f, spectrum, kmax_).ok;
                        });
        record("counting", all);
    }

    void check_armould_bounds() {
        BrunoSpectrum spectrum =
            std::visit([](const auto& s) { return BrunoSpectrum::from(s.spectrum); }, any_);
        VanishingOracle oracle(dim_, alphabet_);
        bool all = true;
        for_each_forest(dim_, alphabet_, weight_cap_, ForestFilter::NVCandidates,
                        [&](const Forest& f) {
                            if (oracle.is_universally_vanishing(f)) return;
                            all = all && armould_bound_check(f, spectrum).ok;
                        });
        record("armould-bounds", all);
    }

    void check_majorant() {
        BrunoSpectrum spectrum =
            std::visit([](const auto& s) { return BrunoSpectrum::from(s.spectrum); }, any_);
        double total;
        try {
            total = bruno_total_constant_omega(spectrum);
        } catch (const ParameterError&) {
            skip("majorant", "Omega(k) not constant at the probe; no closed-form Bruno sum");
            return;
        }
        double B = std::exp(gamma_constant(1e-6) + total);
        bool ok = std::visit(
            [&](const auto& s) {
                auto spec_f = to_float_spec(s);
                auto h = linearize_tree(spec_f).h;
                auto w = majorant_for(spec_f, 1.0, B);
                bool all = true;
                for (int i = 0; i < dim_; ++i) all = all && majorizes(w[i], h[i]);
                return all;
            },
            any_);
        record("majorant", ok);
    }

    static ProblemSpec<Complex> to_float_spec(const ProblemSpec<Complex>& s) { return s; }
    static ProblemSpec<Complex> to_float_spec(const ProblemSpec<GaussianRational>& s) {
        Spectrum<Complex> spectrum;
        spectrum.kind = s.spectrum.kind;
        for (const auto& v : s.spectrum.values)
            spectrum.values.push_back(ScalarOps<GaussianRational>::to_complex(v));
        std::vector<TruncatedSeries<Complex>> comps;
        for (const auto& c : s.a.components()) {
            TruncatedSeries<Complex> f(s.a.dim(), s.a.cap());
            for (const auto& [m, v] : c.terms())
                f.add_term(m, ScalarOps<GaussianRational>::to_complex(v));
            comps.push_back(std::move(f));
        }
        return {s.kind, std::move(spectrum), SeriesTuple<Complex>(std::move(comps)), s.cap};
    }

    void check_residual() {
        bool ok = std::visit(
            [&](const auto& s) {
                using S = std::decay_t<decltype(s.spectrum.values[0])>;
                if (!h_path_.empty()) {
                    auto h = tuple_from_json<S>(load_json_file(h_path_));
                    double r = conjugacy_residual(s, h);
                    double scale = 1.0;
                    for (int i = 0; i < s.a.dim(); ++i)
                        scale = std::max(scale, h[i].max_abs_coefficient());
                    return ScalarOps<S>::exact ? r == 0.0 : r <= 1e-9 * (1.0 + scale);
                }
                auto tree = linearize_tree(s);
                auto recursive = linearize_recursive(s);
                double disc = 0.0, scale = 1.0;
                for (int i = 0; i < s.a.dim(); ++i) {
                    disc = std::max(disc, max_coefficient_distance(tree.h[i], recursive.h[i]));
                    scale = std::max(scale, tree.h[i].max_abs_coefficient());
                }
                double r = conjugacy_residual(s, tree.h);
                if (ScalarOps<S>::exact) return tree.h == recursive.h && r == 0.0;
                return disc <= 1e-9 * (1.0 + scale) && r <= 1e-9 * (1.0 + scale);
            },
            any_);
        record("residual", ok, h_path_.empty() ? "tree vs recursive + conjugacy defect"
                                               : "h from " + h_path_);
    }

    void dispatch(const std::string& name) {
        if (name == "closed-vs-recursive")
            check_closed_recursive();
        else if (name == "cosep")
            check_cosep();
        else if (name == "product-rule")
            check_product_rule();
        else if (name == "vanishing-hierarchy")
            check_vanishing_hierarchy();
        else if (name == "cut-vanish")
            check_cut_vanish();
        else if (name == "counting")
            check_counting();
        else if (name == "armould-bounds")
            check_armould_bounds();
        else if (name == "majorant")
            check_majorant();
        else if (name == "residual")
            check_residual();
        else
            throw ParseError("unknown check: " + name);
    }

    AnyProblemSpec any_;
    int dim_;
    int weight_cap_;
    int kmax_;
    std::string h_path_;
    std::vector<MultiIndex> alphabet_;
    std::vector<CheckRow> rows_;
};

const std::vector<std::string> kAllChecks = {
    "closed-vs-recursive", "cosep",          "product-rule", "vanishing-hierarchy",
    "cut-vanish",          "counting",       "armould-bounds", "majorant",
    "residual"};

int cmd_verify(const std::string& spec_path, const std::string& checks, int weight_cap, int kmax,
               const std::string& h_path) {
    std::vector<std::string> selected;
    if (checks == "all") {
        selected = kAllChecks;
    } else {
        std::istringstream in(checks);
        std::string token;
        while (std::getline(in, token, ',')) selected.push_back(token);
    }
    VerifySuite suite(load_problem_spec(spec_path), weight_cap, kmax, h_path);
    return suite.run(selected) ? kExitOk : kExitInvariant;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linearization of germs and vector fields via tree expansions"};
    app.require_subcommand(1);

    std::string spec_path, out_path, method = "both";
    auto* lin = app.add_subcommand("linearize", "compute the linearizing transformation h");
    lin->add_option("spec", spec_path, "problem spec JSON")->required();
    lin->add_option("--method", method, "tree|recursive|both")
        ->check(CLI::IsMember({"tree", "recursive", "both"}));
    lin->add_option("--out", out_path, "output path (default stdout)");

    std::string bruno_spec, bruno_csv, bruno_out;
    int kmax = 10;
    double opt_b = 0.0, opt_M = 0.0, gamma_tol = 1e-6;
    auto* bruno = app.add_subcommand("bruno", "small-divisor diagnostics and radius bound");
    bruno->add_option("spec", bruno_spec, "problem spec JSON")->required();
    bruno->add_option("--kmax", kmax, "partial-sum depth")->check(CLI::PositiveNumber);
    bruno->add_option("--csv", bruno_csv, "write (k, omega, alpha, epsilon, partial) table");
    auto* bopt = bruno->add_option("--b", opt_b, "polydisc radius of analyticity");
    auto* Mopt = bruno->add_option("--M", opt_M, "sup bound for |a|/b (default: coefficient sum)");
    bruno->add_option("--gamma-tol", gamma_tol, "absolute tolerance for gamma");
    bruno->add_option("--out", bruno_out, "output path (default stdout)");

    std::string verify_spec, verify_checks = "all", verify_h;
    int verify_cap = 4, verify_kmax = 8;
    auto* verify = app.add_subcommand("verify", "run invariant suites, print a pass/fail table");
    verify->add_option("spec", verify_spec, "problem spec JSON")->required();
    verify->add_option("--checks", verify_checks, "all or comma-separated check names");
    verify->add_option("--weight-cap", verify_cap, "forest sweep weight cap");
    verify->add_option("--kmax", verify_kmax, "counting-check depth");
    verify->add_option("--h-file", verify_h, "verify a stored h JSON against the spec");

    int f_dim = 1, f_weight = 0;
    std::string f_decos, f_decos_file, f_filter = "all";
    bool f_count = false;
    auto* forests = app.add_subcommand("forests", "stream decorated forests in text notation");
    forests->add_option("--dim", f_dim, "ambient dimension")->required();
    forests->add_option("--decorations", f_decos, "inline tuples, e.g. \"(1,-1);(2,0)\"");
    forests->add_option("--decorations-file", f_decos_file, "file with one tuple per line");
    forests->add_option("--weight", f_weight, "cap on |‖F‖|")->required();
    forests->add_option("--filter", f_filter, "all|fplus|nv");
    forests->add_flag("--count-only", f_count, "print only the count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (lin->parsed()) return cmd_linearize(spec_path, method, out_path);
        if (bruno->parsed())
            return cmd_bruno(bruno_spec, kmax, bruno_csv, opt_b, opt_M, bopt->count() > 0,
                             Mopt->count() > 0, gamma_tol, bruno_out);
        if (verify->parsed())
            return cmd_verify(verify_spec, verify_checks, verify_cap, verify_kmax, verify_h);
        if (forests->parsed())
            return cmd_forests(f_dim, f_decos, f_decos_file, f_weight, f_filter, f_count);
    } catch (const ResonanceError& e) {
        std::cerr << "resonance: " << e.what() << "\n";
        return kExitResonance;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const StructuralError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitOk;
}
