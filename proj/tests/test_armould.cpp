#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "armlin/armould.hpp"

using namespace armlin;

using Q = GaussianRational;
using SQ = TruncatedSeries<Q>;
using TQ = SeriesTuple<Q>;

namespace {

MultiIndex mi(std::vector<int> v) { return MultiIndex{std::move(v)}; }
Q q(long long v) { return ScalarOps<Q>::from_int(v); }
Q q(long long p, long long den) { return ScalarOps<Q>::from_ratio(p, den); }

Spectrum<Q> diffeo_q(std::vector<Q> values) { return {Kind::Diffeo, std::move(values)}; }
Spectrum<Q> field_q(std::vector<Q> values) { return {Kind::Field, std::move(values)}; }

TQ random_nonlinear(std::mt19937& rng, int dim, int cap) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> entry(0, 2);
    std::vector<SQ> comps;
    for (int i = 0; i < dim; ++i) {
        SQ s(dim, cap);
        for (int tries = 0; tries < 6; ++tries) {
            std::vector<int> e(static_cast<size_t>(dim));
            int total = 0;
            for (auto& v : e) {
                v = entry(rng);
                total += v;
            }
            if (total < 2 || total > cap) continue;
            s.add_term(mi(e), q(coeff(rng)));
        }
        comps.push_back(std::move(s));
    }
    return TQ(std::move(comps));
}

// a_i(B z): coefficient of z^m picks up B^{|m|}
SQ scale_inputs(const SQ& s, const Q& B) {
    SQ out(s.dim(), s.cap());
    for (const auto& [m, c] : s.terms()) out.add_term(m, c * pow_int(B, m.degree()));
    return out;
}

} // namespace

TEST_CASE("non-resonance checks") {
    CHECK_NOTHROW(diffeo_q({q(2)}).check_nonresonant(8));
    CHECK_NOTHROW(field_q({q(1)}).check_nonresonant(8));
    // q = (2,4): q^(2,-1) = 1 exactly
    CHECK_THROWS_AS(diffeo_q({q(2), q(4)}).check_nonresonant(2), ResonanceError);
    // lambda = (1,-1): lambda.(1,1) = 0
    CHECK_THROWS_AS(field_q({q(1), q(-1)}).check_nonresonant(2), ResonanceError);
    // q = 1 is resonant at the first multi-index already
    CHECK_THROWS_AS(diffeo_q({q(1)}).check_nonresonant(1), ResonanceError);
}

TEST_CASE("S armould for diffeomorphisms: hand values") {
    auto spectrum = diffeo_q({q(2)});
    CHECK(S_diffeo(Forest::empty(1), spectrum) == q(1));
    CHECK(S_diffeo(Forest::single(Tree(mi({1}))), spectrum) == q(1));
    CHECK(S_diffeo(Forest::single(bamboo({mi({1}), mi({1})})), spectrum) == q(1, 3));
}

TEST_CASE("S armould for fields: hand values and float golden mean") {
    auto spectrum = field_q({q(1)});
    CHECK(S_field(Forest::empty(1), spectrum) == q(1));
    CHECK(S_field(Forest::single(bamboo({mi({1}), mi({1})})), spectrum) == q(1, 2));

    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    Spectrum<Complex> golden{Kind::Field, {Complex(1.0), Complex(phi)}};
    auto t = Forest::single(Tree(mi({1, 0})));
    CHECK(std::abs(S_field(t, golden) - Complex(1.0)) < 1e-15);
}

TEST_CASE("S values vanish exactly off F+(N)") {
    auto bad = Forest::single(bamboo({mi({-1, 2}), mi({-1, 2})}));
    Spectrum<Q> spectrum = field_q({q(3), q(5)});
    CHECK(S_field(bad, spectrum) == q(0));
}

TEST_CASE("resonance guard raises instead of dividing by zero") {
    // lambda = (1,-1) resonates at sigma = (1,1); build the only offending tree
    auto t = Forest::single(Tree(mi({2, -1}), {Tree(mi({-1, 2}))}));
    CHECK(t.trees().front().weight() == mi({1, 1}));
    Spectrum<Q> spectrum = field_q({q(1), q(-1)});
    CHECK_THROWS_AS(S_field(t, spectrum), ResonanceError);
}

TEST_CASE("geometric armould: values and separativity") {
    // #F = 2 and |‖F‖| = 3 with A = -1, B = 2 -> 8
    auto two = Forest::single(Tree(mi({2}))) * Forest::single(Tree(mi({1})));
    CHECK(two.size() == 2);
    CHECK(two.abs_weight() == 3);
    CHECK(geometric_armould(two, q(-1), q(2)) == q(8));
    CHECK(geometric_armould(Forest::empty(1), q(-1), q(2)) == q(1));
    CHECK_THROWS_AS(geometric_armould(two, q(1), q(0)), ParameterError);

    std::mt19937 rng(9);
    auto pool = enumerate_forests(1, {mi({1}), mi({2})}, 4);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    for (int it = 0; it < 40; ++it) {
        const auto& f1 = pool[pick(rng)];
        const auto& f2 = pool[pick(rng)];
        CHECK(geometric_armould(f1 * f2, q(3), q(2)) ==
              geometric_armould(f1, q(3), q(2)) * geometric_armould(f2, q(3), q(2)));
    }
}

TEST_CASE("separativity of the linearizing armoulds on enumerated pairs") {
    auto spectrum = diffeo_q({q(2)});
    auto pool = enumerate_forests(1, {mi({1}), mi({2})}, 4);
    for (const auto& f1 : pool)
        for (const auto& f2 : pool) {
            if (f1.abs_weight() + f2.abs_weight() > 4) continue;
            CHECK(S_diffeo(f1 * f2, spectrum) ==
                  S_diffeo(f1, spectrum) * S_diffeo(f2, spectrum));
        }
}

TEST_CASE("elementary armoulds I and J") {
    auto empty = Forest::empty(1);
    CHECK(elementary_armoulds<Q>(empty) == std::make_pair(q(1), q(0)));
    auto single = Forest::single(Tree(mi({1})));
    CHECK(elementary_armoulds<Q>(single) == std::make_pair(q(1), q(1)));
    auto tall = Forest::single(bamboo({mi({1}), mi({2})}));
    CHECK(elementary_armoulds<Q>(tall) == std::make_pair(q(0), q(0)));
    // height-1 forest of several leaves is still in the support of I
    auto flat = single * Forest::single(Tree(mi({2})));
    CHECK(elementary_armoulds<Q>(flat).first == q(1));
    CHECK(elementary_armoulds<Q>(flat).second == q(0));
}

TEST_CASE("tree expansion of I recovers the composition operator C_{id+a}") {
    std::mt19937 rng(31);
    for (int dim = 1; dim <= 2; ++dim) {
        auto a = random_nonlinear(rng, dim, 5);
        CoarmouldEvaluator<Q> eval(a);
        std::vector<SQ> fcomps;
        for (int i = 0; i < dim; ++i) fcomps.push_back(SQ::variable(dim, 5, i) + a[i]);
        TQ f(std::move(fcomps));
        auto armould = [](const Forest& fo) { return elementary_armoulds<Q>(fo).first; };
        SQ phi(dim, 5);
        phi.add_term(mi(std::vector<int>(static_cast<size_t>(dim), 1)), q(2));
        phi.add_term(MultiIndex::unit(dim, 0), q(-1));
        CHECK(tree_expand<Q>(armould, eval, phi) == compose(phi, f));
    }
}

TEST_CASE("tree expansion of J recovers the derivation X_a") {
    std::mt19937 rng(32);
    for (int dim = 1; dim <= 2; ++dim) {
        auto a = random_nonlinear(rng, dim, 5);
        CoarmouldEvaluator<Q> eval(a);
        auto armould = [](const Forest& fo) { return elementary_armoulds<Q>(fo).second; };
        SQ phi(dim, 5);
        phi.add_term(MultiIndex::unit(dim, 0) + MultiIndex::unit(dim, dim - 1), q(3));
        phi.add_term(MultiIndex::unit(dim, dim - 1), q(1));
        CHECK(tree_expand<Q>(armould, eval, phi) == derive(a, phi));
    }
}

TEST_CASE("geometric expansion is composition with the inverse of g") {
    std::mt19937 rng(33);
    std::vector<std::pair<Q, Q>> cases = {{q(-1), q(1)}, {q(1), q(2)}, {q(2), q(3)}};
    for (int dim = 1; dim <= 2; ++dim) {
        auto a = random_nonlinear(rng, dim, 5);
        CoarmouldEvaluator<Q> eval(a);
        for (const auto& ab : cases) {
            const Q& A = ab.first;
            const Q& B = ab.second;
            auto armould = [&](const Forest& fo) { return geometric_armould(fo, A, B); };
            // g_i(z) = z_i - (A/B) a_i(B z)
            std::vector<SQ> gcomps;
            for (int i = 0; i < dim; ++i)
                gcomps.push_back(SQ::variable(dim, 5, i) - ((A / B) * scale_inputs(a[i], B)));
            auto w = invert_tangent_identity(TQ(std::move(gcomps)));
            SQ phi(dim, 5);
            phi.add_term(MultiIndex::unit(dim, 0), q(1));
            phi.add_term(MultiIndex::unit(dim, 0) + MultiIndex::unit(dim, dim - 1), q(-2));
            CHECK(tree_expand<Q>(armould, eval, phi) == compose(phi, w));
        }
    }
}

TEST_CASE("separative expansions are algebra morphisms, antiseparative are derivations") {
    std::mt19937 rng(34);
    auto a = random_nonlinear(rng, 2, 5);
    CoarmouldEvaluator<Q> eval(a);
    SQ phi(2, 5), psi(2, 5);
    phi.add_term(mi({1, 0}), q(1));
    phi.add_term(mi({0, 2}), q(2));
    psi.add_term(mi({0, 1}), q(-1));
    psi.add_term(mi({1, 1}), q(1));

    auto sep = [](const Forest& fo) { return geometric_armould(fo, q(2), q(1)); };
    CHECK(tree_expand<Q>(sep, eval, mul(phi, psi)) ==
          mul(tree_expand<Q>(sep, eval, phi), tree_expand<Q>(sep, eval, psi)));

    auto antisep = [](const Forest& fo) { return elementary_armoulds<Q>(fo).second; };
    CHECK(tree_expand<Q>(antisep, eval, mul(phi, psi)) ==
          mul(tree_expand<Q>(antisep, eval, phi), psi) +
              mul(phi, tree_expand<Q>(antisep, eval, psi)));
}
