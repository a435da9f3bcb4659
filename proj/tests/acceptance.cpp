// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code = number of failures.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "armlin/bruno.hpp"
#include "armlin/io.hpp"
#include "armlin/linearizer.hpp"

using namespace armlin;

using Q = GaussianRational;
using SQ = TruncatedSeries<Q>;
using TQ = SeriesTuple<Q>;
using SC = TruncatedSeries<Complex>;
using TC = SeriesTuple<Complex>;

namespace {

MultiIndex mi(std::vector<int> v) { return MultiIndex{std::move(v)}; }
Q q(long long v) { return ScalarOps<Q>::from_int(v); }
Q q(long long p, long long den) { return ScalarOps<Q>::from_ratio(p, den); }

const double kGoldenMean = (1.0 + std::sqrt(5.0)) / 2.0;

// ---------------------------------------------------------------- matrix --

struct MatrixEntry {
    std::string name;
    ProblemSpec<Q> spec;
};

ProblemSpec<Q> make_spec(Kind kind, std::vector<Q> eigen,
                         std::vector<std::tuple<int, std::vector<int>, Q>> monomials, int cap) {
    int dim = static_cast<int>(eigen.size());
    std::vector<SQ> comps(static_cast<size_t>(dim), SQ::zero(dim, cap));
    for (auto& [component, exponent, coeff] : monomials)
        comps[static_cast<size_t>(component - 1)].add_term(mi(exponent), coeff);
    return {kind, Spectrum<Q>{kind, std::move(eigen)}, TQ(std::move(comps)), cap};
}

// Test matrix: every named spectrum from the gate plus rational companions.
// All spectra here have Omega(k) constant in k, so the full Bruno series is
// log(1/Omega(1)) in closed form (probed, not assumed).
std::vector<MatrixEntry> rational_matrix() {
    std::vector<MatrixEntry> m;
    m.push_back({"diffeo q=2 1-D a=z^2 K=8",
                 make_spec(Kind::Diffeo, {q(2)}, {{1, {2}, q(1)}}, 8)});
    m.push_back({"diffeo q=3/2 1-D a=z^2+2z^3 K=7",
                 make_spec(Kind::Diffeo, {q(3, 2)}, {{1, {2}, q(1)}, {1, {3}, q(2)}}, 7)});
    m.push_back({"field lambda=1 1-D a=z^2 K=8",
                 make_spec(Kind::Field, {q(1)}, {{1, {2}, q(1)}}, 8)});
    m.push_back({"field lambda=2/3 1-D a=z^3 K=7",
                 make_spec(Kind::Field, {q(2, 3)}, {{1, {3}, q(1)}}, 7)});
    m.push_back({"diffeo q=(2,3) 2-D K=6",
                 make_spec(Kind::Diffeo, {q(2), q(3)},
                           {{1, {0, 2}, q(1)}, {2, {1, 1}, q(1, 2)}}, 6)});
    m.push_back({"field lambda=(3,5) 2-D K=6",
                 make_spec(Kind::Field, {q(3), q(5)},
                           {{1, {0, 2}, q(1)}, {2, {2, 0}, q(-2)}}, 6)});
    m.push_back({"diffeo q=(2,3,5) 3-D K=5",
                 make_spec(Kind::Diffeo, {q(2), q(3), q(5)},
                           {{1, {0, 1, 1}, q(1)}, {3, {2, 0, 0}, q(1)}}, 5)});
    m.push_back({"field lambda=(3,5,7) 3-D K=5",
                 make_spec(Kind::Field, {q(3), q(5), q(7)},
                           {{1, {0, 1, 1}, q(1)}, {2, {0, 0, 2}, q(1)}, {3, {1, 1, 0}, q(1)}}, 5)});
    return m;
}

ProblemSpec<Complex> to_float(const ProblemSpec<Q>& s, int cap) {
    Spectrum<Complex> spectrum{s.kind, {}};
    for (const auto& v : s.spectrum.values)
        spectrum.values.push_back(ScalarOps<Q>::to_complex(v));
    std::vector<SC> comps;
    for (const auto& c : s.a.components()) {
        SC f(s.a.dim(), cap);
        for (const auto& [m, v] : c.terms()) f.add_term(m, ScalarOps<Q>::to_complex(v));
        comps.push_back(std::move(f));
    }
    return {s.kind, std::move(spectrum), TC(std::move(comps)), cap};
}

std::vector<std::pair<std::string, ProblemSpec<Complex>>> float_matrix(int cap_override = 0) {
    std::vector<std::pair<std::string, ProblemSpec<Complex>>> m;
    for (const auto& e : rational_matrix()) {
        int cap = cap_override > 0 ? cap_override : e.spec.cap;
        m.emplace_back(e.name + " [float]", to_float(e.spec, cap));
    }
    {
        int cap = cap_override > 0 ? cap_override : 6;
        SC a1(2, cap), a2(2, cap);
        a1.add_term(mi({1, 1}), Complex(1.0));
        a2.add_term(mi({2, 0}), Complex(1.0));
        ProblemSpec<Complex> golden{Kind::Field,
                                    Spectrum<Complex>{Kind::Field,
                                                      {Complex(1.0), Complex(kGoldenMean)}},
                                    TC({a1, a2}), cap};
        m.emplace_back("field lambda=(1,golden) 2-D", std::move(golden));
    }
    return m;
}

// ----------------------------------------------------------- sweep tools --

std::vector<std::vector<MultiIndex>> sweep_alphabets() {
    return {
        {mi({1}), mi({2})},
        {mi({1, 0}), mi({2, -1}), mi({-1, 2})},
        {mi({1, 1, -1}), mi({-1, 2, 0}), mi({1, 0, 0})},
    };
}

TQ distinct_value_data(int dim, const std::vector<MultiIndex>& alphabet, int cap) {
    std::vector<SQ> comps;
    long long counter = 1;
    for (int i = 0; i < dim; ++i) {
        SQ s(dim, cap);
        for (const auto& n : alphabet) {
            MultiIndex m = n + MultiIndex::unit(dim, i);
            if (m.all_nonneg() && m.degree() <= cap) s.add_term(m, q(2 * counter + 1, 7));
            ++counter;
        }
        comps.push_back(std::move(s));
    }
    return TQ(std::move(comps));
}

std::map<MultiIndex, int> decoration_multiset(const Forest& f) {
    std::map<MultiIndex, int> out;
    std::function<void(const Tree&)> walk = [&](const Tree& t) {
        ++out[t.decoration()];
        for (const auto& c : t.children()) walk(c);
    };
    for (const auto& t : f.trees()) walk(t);
    return out;
}

struct CriterionResult {
    bool ok = true;
    std::string detail;
};

// ------------------------------------------------------------- criteria --

// 1: tree expansion == classical recursion, exact in rational mode,
//    <= 1e-9 relative in float mode, within 60 s.
CriterionResult criterion1() {
    auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    int count = 0;
    for (const auto& e : rational_matrix()) {
        auto tree = linearize_tree(e.spec);
        auto recursive = linearize_recursive(e.spec);
        if (!(tree.h == recursive.h)) {
            r.ok = false;
            r.detail += " exact mismatch: " + e.name + ";";
        }
        ++count;
    }
    for (const auto& [name, spec] : float_matrix()) {
        auto tree = linearize_tree(spec);
        auto recursive = linearize_recursive(spec);
        double scale = 1.0;
        for (int i = 0; i < spec.a.dim(); ++i)
            scale = std::max(scale, tree.h[i].max_abs_coefficient());
        for (int i = 0; i < spec.a.dim(); ++i)
            if (max_coefficient_distance(tree.h[i], recursive.h[i]) > 1e-9 * (1.0 + scale)) {
                r.ok = false;
                r.detail += " float mismatch: " + name + ";";
            }
        ++count;
    }
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > 60.0) {
        r.ok = false;
        r.detail += " exceeded 60 s;";
    }
    std::ostringstream os;
    os << count << " specs, " << std::fixed << std::setprecision(2) << elapsed << " s";
    r.detail = os.str() + r.detail;
    return r;
}

// 2: conjugacy residual exactly 0 in rational mode; frozen h values.
CriterionResult criterion2() {
    CriterionResult r;
    for (const auto& e : rational_matrix()) {
        auto tree = linearize_tree(e.spec);
        if (conjugacy_residual(e.spec, tree.h) != 0.0) {
            r.ok = false;
            r.detail += " nonzero residual: " + e.name + ";";
        }
    }
    auto q2 = linearize_tree(make_spec(Kind::Diffeo, {q(2)}, {{1, {2}, q(1)}}, 3)).h;
    if (!(q2[0].coefficient(mi({2})) == q(1) && q2[0].coefficient(mi({3})) == q(2, 3))) {
        r.ok = false;
        r.detail += " q=2 sample coefficients;";
    }
    auto l1 = linearize_tree(make_spec(Kind::Field, {q(1)}, {{1, {2}, q(1)}}, 3)).h;
    if (!(l1[0].coefficient(mi({2})) == q(1) && l1[0].coefficient(mi({3})) == q(1))) {
        r.ok = false;
        r.detail += " lambda=1 sample coefficients;";
    }
    if (r.ok) r.detail = "residual 0 on all rational specs; h2=1, h3=2/3 and h2=h3=1 reproduced";
    return r;
}

// 3: closed formula == recursion for every |w(F)| <= 5, alphabets <= 3, nu <= 3.
CriterionResult criterion3() {
    CriterionResult r;
    long forests = 0;
    for (const auto& alphabet : sweep_alphabets()) {
        int dim = alphabet.front().dim();
        CoarmouldEvaluator<Q> generic(generic_ones_data(dim, alphabet));
        CoarmouldEvaluator<Q> distinct(distinct_value_data(dim, alphabet, 6));
        for (const auto& f : enumerate_forests(dim, alphabet, 5)) {
            ++forests;
            if (!(generic.D(f) == generic.D_closed(f)) ||
                !(distinct.D(f) == distinct.D_closed(f))) {
                r.ok = false;
                r.detail += " mismatch at " + to_notation(f) + ";";
                if (r.detail.size() > 200) return r;
            }
        }
    }
    if (r.ok) r.detail = std::to_string(forests) + " forests x 2 data sets, exact";
    return r;
}

// 4: coseparativity, product rule with cut multiplicities, NV within F+,
//    cut-vanish closure, |w(R^c)| >= #c - deg F. Exhaustive, |w(F)| <= 5.
CriterionResult criterion4() {
    CriterionResult r;
    long cosep_count = 0, pair_count = 0, cut_count = 0;
    for (const auto& alphabet : sweep_alphabets()) {
        const int dim = alphabet.front().dim();
        CoarmouldEvaluator<Q> eval(distinct_value_data(dim, alphabet, 6));
        VanishingOracle oracle(dim, alphabet);
        auto forests = enumerate_forests(dim, alphabet, 5);

        // coseparativity with fixed probe series
        SQ phi(dim, 11), psi(dim, 11);
        phi.add_term(MultiIndex::unit(dim, 0), q(1));
        phi.add_term(MultiIndex::unit(dim, 0) + MultiIndex::unit(dim, dim - 1), q(-2));
        psi.add_term(MultiIndex::unit(dim, dim - 1), q(3));
        psi.add_term(MultiIndex::unit(dim, 0) + MultiIndex::unit(dim, dim - 1), q(1, 2));
        for (const auto& f : forests) {
            ++cosep_count;
            if (!verify_coseparativity(eval, f, phi, psi).exact_equal) {
                r.ok = false;
                r.detail += " cosep fails at " + to_notation(f) + ";";
            }
        }

        // product rule: bucket candidates by decoration multiset, count cuts
        std::map<std::map<MultiIndex, int>, std::vector<size_t>> buckets;
        std::vector<std::vector<AdmissibleCut>> cuts(forests.size());
        for (size_t i = 0; i < forests.size(); ++i) {
            buckets[decoration_multiset(forests[i])].push_back(i);
            cuts[i] = admissible_cuts(forests[i]);
        }
        for (size_t i = 0; i < forests.size(); ++i) {
            for (size_t j = 0; j < forests.size(); ++j) {
                const Forest& f1 = forests[i];
                const Forest& f2 = forests[j];
                if (f1.abs_weight() + f2.abs_weight() > 5) continue;
                ++pair_count;
                auto want = decoration_multiset(f1);
                for (const auto& [n, c] : decoration_multiset(f2)) want[n] += c;
                std::map<size_t, int> k_map;
                auto bucket_it = buckets.find(want);
                if (bucket_it != buckets.end())
                    for (size_t g : bucket_it->second)
                        for (const auto& cut : cuts[g])
                            if (cut.pruned == f1 && cut.remaining == f2) ++k_map[g];
                // operator identity on the falling-factorial-complete grid:
                // per-variable degrees up to deg(F1)+deg(F2) pin the profile
                // polynomials uniquely
                int dmax = f1.degree() + f2.degree();
                int series_cap = dmax * dim + f1.abs_weight() + f2.abs_weight();
                std::vector<int> m(static_cast<size_t>(dim), 0);
                bool done = false;
                while (!done) {
                    MultiIndex mm{m};
                    if (mm.degree() <= dmax * dim) {
                        auto zm = SQ::monomial(dim, series_cap, mm, q(1));
                        auto lhs = eval.D(f1).apply(eval.D(f2).apply(zm));
                        SQ rhs(dim, series_cap);
                        for (const auto& [g, k] : k_map)
                            rhs = rhs + (q(k) * eval.D(forests[g]).apply(zm));
                        if (!(lhs == rhs)) {
                            r.ok = false;
                            r.detail += " product rule fails at " + to_notation(f1) + " x " +
                                        to_notation(f2) + ";";
                            if (r.detail.size() > 200) return r;
                        }
                    }
                    size_t pos = 0;
                    while (pos < m.size() && m[pos] == dmax) m[pos++] = 0;
                    if (pos == m.size())
                        done = true;
                    else
                        ++m[pos];
                }
            }
        }

        // NV within F+, cut-vanish closure, weight inequality
        for (size_t i = 0; i < forests.size(); ++i) {
            const Forest& f = forests[i];
            bool nv = !oracle.is_universally_vanishing(f);
            if (nv && !is_Fplus(f)) {
                r.ok = false;
                r.detail += " NV outside F+ at " + to_notation(f) + ";";
            }
            if (!nv) continue;
            for (const auto& cut : cuts[i]) {
                ++cut_count;
                if (oracle.is_universally_vanishing(cut.pruned) ||
                    oracle.is_universally_vanishing(cut.remaining)) {
                    r.ok = false;
                    r.detail += " cut-vanish fails at " + to_notation(f) + ";";
                }
                if (cut.remaining.abs_weight() <
                    static_cast<int>(cut.selected.size()) - f.degree()) {
                    r.ok = false;
                    r.detail += " weight inequality fails at " + to_notation(f) + ";";
                }
            }
        }
    }
    if (r.ok)
        r.detail = std::to_string(cosep_count) + " forests, " + std::to_string(pair_count) +
                   " pairs, " + std::to_string(cut_count) + " cuts, zero violations";
    return r;
}

struct SweepSpectrum {
    std::string name;
    BrunoSpectrum spectrum;
    std::vector<MultiIndex> alphabet;
};

std::vector<SweepSpectrum> spectrum_matrix() {
    std::vector<SweepSpectrum> out;
    std::vector<MultiIndex> a1 = {mi({1}), mi({2})};
    std::vector<MultiIndex> a2 = {mi({1, 0}), mi({2, -1}), mi({-1, 2})};
    out.push_back({"diffeo q=2", BrunoSpectrum::diffeo({Complex(2.0)}), a1});
    out.push_back({"field lambda=1", BrunoSpectrum::field({Complex(1.0)}), a1});
    out.push_back({"diffeo q=(2,3)", BrunoSpectrum::diffeo({Complex(2.0), Complex(3.0)}), a2});
    out.push_back({"field lambda=(1,golden)",
                   BrunoSpectrum::field({Complex(1.0), Complex(kGoldenMean)}), a2});
    const double twopi = 2.0 * std::acos(-1.0);
    out.push_back({"diffeo golden rotation",
                   BrunoSpectrum::diffeo({std::exp(Complex(0.0, twopi * kGoldenMean))}), a1});
    return out;
}

// 5: counting lemma over all NV forests |w(F)| <= 6 and k <= 10.
CriterionResult criterion5() {
    CriterionResult r;
    long checked = 0;
    for (const auto& s : spectrum_matrix()) {
        int dim = s.spectrum.dim();
        VanishingOracle oracle(dim, s.alphabet);
        auto omegas = omega_table(s.spectrum, 10);
        for (const auto& f : enumerate_forests(dim, s.alphabet, 6, ForestFilter::NVCandidates)) {
            if (oracle.is_universally_vanishing(f)) continue;
            ++checked;
            if (!counting_check(f, s.spectrum, 10, omegas).ok) {
                r.ok = false;
                r.detail += " violation at " + to_notation(f) + " (" + s.name + ");";
                if (r.detail.size() > 200) return r;
            }
        }
    }
    if (r.ok) r.detail = std::to_string(checked) + " NV forests x k<=10, zero violations";
    return r;
}

// 6: finite-K armould bound on the same sweep; |S^F| <= B^{|w(F)|} with the
//    closed-form Bruno value for q = 2.
CriterionResult criterion6() {
    CriterionResult r;
    long checked = 0;
    for (const auto& s : spectrum_matrix()) {
        int dim = s.spectrum.dim();
        VanishingOracle oracle(dim, s.alphabet);
        auto omegas = omega_table(s.spectrum, 6);
        for (const auto& f : enumerate_forests(dim, s.alphabet, 6, ForestFilter::NVCandidates)) {
            if (oracle.is_universally_vanishing(f)) continue;
            ++checked;
            if (!armould_bound_check(f, s.spectrum, omegas).ok) {
                r.ok = false;
                r.detail += " finite-K bound fails at " + to_notation(f) + " (" + s.name + ");";
                if (r.detail.size() > 200) return r;
            }
        }
    }
    // q = 2: closed-form Bruno value log(2 pi / log 2)
    auto q2 = BrunoSpectrum::diffeo({Complex(2.0)});
    double bruno = bruno_total_constant_omega(q2);
    double closed_form = std::log(2.0 * std::acos(-1.0) / std::log(2.0));
    if (std::abs(bruno - closed_form) > 1e-12) {
        r.ok = false;
        r.detail += " q=2 Bruno value differs from log(2 pi/log 2);";
    }
    double logB = gamma_constant(1e-6) + bruno;
    VanishingOracle oracle(1, {mi({1}), mi({2})});
    for (const auto& f :
         enumerate_forests(1, {mi({1}), mi({2})}, 6, ForestFilter::NVCandidates)) {
        if (f.is_empty() || oracle.is_universally_vanishing(f)) continue;
        double log_abs_S = 0.0;
        for (const auto& [ref, sigma] : forest_stats(f).subtree_weights)
            log_abs_S -= std::log(q2.abs_divisor(sigma));
        if (log_abs_S > f.abs_weight() * logB + 1e-9) {
            r.ok = false;
            r.detail += " |S^F| > B^{|w|} at " + to_notation(f) + ";";
        }
    }
    if (r.ok) r.detail = std::to_string(checked) + " NV forests; q=2 geometric bound holds";
    return r;
}

// 7: majorant domination through K = 8 on every float-mode matrix spec.
CriterionResult criterion7() {
    CriterionResult r;
    const int cap = 8;
    double gamma = gamma_constant(1e-6);
    int checked = 0;
    for (const auto& [name, spec] : float_matrix(cap)) {
        auto bs = BrunoSpectrum::from(spec.spectrum);
        double bruno = bruno_total_constant_omega(bs); // probed constant Omega
        double B = std::exp(gamma + bruno);
        double b = 1.0;
        double M = coefficient_sum_M(spec.a, b);
        auto h = linearize_tree(spec).h;
        auto w = majorant_bound<Complex>(spec.a.dim(), cap, Complex(b), Complex(M), Complex(B));
        for (int i = 0; i < spec.a.dim(); ++i)
            if (!majorizes(w[i], h[i])) {
                r.ok = false;
                r.detail += " domination fails: " + name + " component " + std::to_string(i + 1) + ";";
            }
        ++checked;
    }
    if (r.ok)
        r.detail = std::to_string(checked) + " float specs at K=8, componentwise domination";
    return r;
}

// 8: kappa sandwich on the 61-point log grid; max-modulus on a 200x200 grid.
CriterionResult criterion8() {
    CriterionResult r;
    for (int j = 0; j <= 60; ++j) {
        double beta = std::pow(10.0, -3.0 + 0.1 * j);
        try {
            double k = kappa(beta); // throws if the sandwich fails
            if (!(k > 0.0 && k < 1.0)) throw ParameterError("range");
        } catch (const std::exception&) {
            r.ok = false;
            r.detail += " kappa sandwich fails at beta = " + std::to_string(beta) + ";";
        }
    }
    auto mm = max_modulus_check(200);
    if (!mm.ok) {
        r.ok = false;
        r.detail += " max-modulus violations: " + std::to_string(mm.violations) + ";";
    }
    if (r.ok) r.detail = "61 beta points + 200x200 grid, zero violations";
    return r;
}

// 9: radius formula, exact special case and composed q = 2 pipeline.
CriterionResult criterion9() {
    CriterionResult r;
    if (radius_lower_bound(1.0, 1.0, 1, 1.0) != 1.0 / 6.0) {
        r.ok = false;
        r.detail += " radius(1,1,1,1) != 1/6;";
    }
    double gamma = gamma_constant(1e-6);
    double bruno = bruno_total_constant_omega(BrunoSpectrum::diffeo({Complex(2.0)}));
    double B = std::exp(gamma + bruno);
    struct Case {
        double b, M;
        int nu;
    } cases[] = {{1.0, 1.0, 1}, {0.7, 1.3, 2}, {2.5, 0.25, 3}};
    for (const auto& c : cases) {
        double via_op = radius_lower_bound(c.b, c.M, c.nu, B);
        double direct = c.b * std::exp(-gamma - bruno) / (c.nu * (4.0 * c.M * c.nu + 2.0));
        if (std::abs(via_op - direct) > 1e-12 * std::abs(direct)) {
            r.ok = false;
            r.detail += " composed radius differs beyond 1e-12;";
        }
    }
    if (r.ok) r.detail = "1/6 exact; composed q=2 pipeline within 1e-12 relative";
    return r;
}

// 10: geometric armould expansion equals composition with the inverse of g.
CriterionResult criterion10() {
    CriterionResult r;
    std::mt19937 rng(2026);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::vector<std::pair<Q, Q>> cases = {{q(-1), q(1)}, {q(1), q(2)}};
    int checked = 0;
    for (int dim = 1; dim <= 2; ++dim) {
        const int cap = 6;
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<SQ> comps;
            for (int i = 0; i < dim; ++i) {
                SQ s(dim, cap);
                for (int tries = 0; tries < 5; ++tries) {
                    std::vector<int> e(static_cast<size_t>(dim));
                    int total = 0;
                    for (auto& v : e) {
                        v = std::abs(coeff(rng)) % 4;
                        total += v;
                    }
                    if (total < 2 || total > cap) continue;
                    s.add_term(mi(e), q(coeff(rng)));
                }
                comps.push_back(std::move(s));
            }
            TQ a(std::move(comps));
            CoarmouldEvaluator<Q> eval(a);
            for (const auto& ab : cases) {
                const Q& A = ab.first;
                const Q& B = ab.second;
                auto armould = [&](const Forest& fo) { return geometric_armould(fo, A, B); };
                std::vector<SQ> gcomps;
                for (int i = 0; i < dim; ++i) {
                    SQ scaled(dim, cap);
                    for (const auto& [m, c] : a[i].terms())
                        scaled.add_term(m, c * pow_int(B, m.degree()));
                    gcomps.push_back(SQ::variable(dim, cap, i) - ((A / B) * scaled));
                }
                auto w = invert_tangent_identity(TQ(std::move(gcomps)));
                bool all = true;
                for (int i = 0; i < dim; ++i) {
                    auto zi = SQ::variable(dim, cap, i);
                    all = all && (tree_expand<Q>(armould, eval, zi) == compose(zi, w));
                }
                SQ probe(dim, cap);
                probe.add_term(MultiIndex::unit(dim, 0), q(2));
                probe.add_term(MultiIndex::unit(dim, 0) + MultiIndex::unit(dim, dim - 1), q(-1));
                all = all && (tree_expand<Q>(armould, eval, probe) == compose(probe, w));
                if (!all) {
                    r.ok = false;
                    r.detail += " identity fails (dim " + std::to_string(dim) + ");";
                }
                ++checked;
            }
        }
    }
    if (r.ok) r.detail = std::to_string(checked) + " (a, A, B) cases, exact";
    return r;
}

} // namespace

int main() {
    struct Row {
        int id;
        const char* name;
        CriterionResult (*fn)();
    };
    Row rows[] = {
        {1, "oracle equivalence (tree vs recursive)", criterion1},
        {2, "conjugacy residual and frozen samples", criterion2},
        {3, "closed formula vs recursion", criterion3},
        {4, "structural identities sweep", criterion4},
        {5, "counting lemma", criterion5},
        {6, "armould bounds", criterion6},
        {7, "majorant domination", criterion7},
        {8, "kappa sandwich + max modulus", criterion8},
        {9, "radius formula", criterion9},
        {10, "geometric armould identity", criterion10},
    };
    int failures = 0;
    for (const auto& row : rows) {
        CriterionResult result;
        try {
            result = row.fn();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        if (!result.ok) ++failures;
        std::cout << "criterion " << std::setw(2) << row.id << " (" << row.name
                  << "): " << (result.ok ? "PASS" : "FAIL")
                  << (result.detail.empty() ? "" : " — " + result.detail) << "\n";
    }
    std::cout << (failures == 0 ? "all criteria passed" : "FAILURES: " + std::to_string(failures))
              << "\n";
    return failures;
}
