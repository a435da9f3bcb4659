#pragma once

#include <functional>

#include "armlin/coarmould.hpp"
#include "armlin/forest.hpp"

namespace armlin {

enum class Kind { Diffeo, Field };

inline const char* kind_name(Kind k) { return k == Kind::Diffeo ? "diffeo" : "field"; }

// Float-mode guard: a denominator this small is treated as a genuine
// resonance rather than a legitimate tiny divisor.
inline constexpr double kResonanceGuard = 1e-300;

template <class S>
S pow_int(const S& base, int e) {
    if (e < 0) return ScalarOps<S>::one() / pow_int(base, -e);
    S acc = ScalarOps<S>::one();
    S b = base;
    for (int k = e; k > 0; k >>= 1) {
        if (k & 1) acc *= b;
        b *= b;
    }
    return acc;
}

// Eigenvalues q (diffeomorphism) or lambda (vector field).
template <class S>
struct Spectrum {
    Kind kind;
    std::vector<S> values;

    int dim() const { return static_cast<int>(values.size()); }

    // q^n (n in Z^nu) for the diffeo kind.
    S power(const MultiIndex& n) const {
        S acc = ScalarOps<S>::one();
        for (int j = 0; j < n.dim(); ++j) acc *= pow_int(values[static_cast<size_t>(j)], n[j]);
        return acc;
    }

    S dot(const MultiIndex& n) const {
        S acc = ScalarOps<S>::zero();
        for (int j = 0; j < n.dim(); ++j)
            acc += ScalarOps<S>::from_int(n[j]) * values[static_cast<size_t>(j)];
        return acc;
    }

    // The small divisor attached to a subtree weight: q^s - 1 or lambda.s.
    S divisor(const MultiIndex& sigma_hat) const {
        if (kind == Kind::Diffeo) return power(sigma_hat) - ScalarOps<S>::one();
        return dot(sigma_hat);
    }

    S divisor_checked(const MultiIndex& sigma_hat) const {
        S d = divisor(sigma_hat);
        if (ScalarOps<S>::abs(d) < kResonanceGuard)
            throw ResonanceError("vanishing small divisor at n = " + sigma_hat.to_string());
        return d;
    }

    // q^n != 1 (resp. lambda.n != 0) for all n in N with |n| <= weight_cap.
    void check_nonresonant(int weight_cap) const {
        for (const auto& n : enumerate_N(dim(), weight_cap)) (void)divisor_checked(n);
    }
};

// S^F(q) = prod_sigma 1/(q^{sigma_hat} - 1) and
// S~^F(lambda) = prod_sigma 1/(lambda . sigma_hat), both zero off F+(N).
template <class S>
S linearizing_armould(const Spectrum<S>& spectrum, const Forest& forest) {
    if (!is_Fplus(forest)) return ScalarOps<S>::zero();
    S acc = ScalarOps<S>::one();
    std::function<MultiIndex(const Tree&)> walk = [&](const Tree& t) {
        MultiIndex w = t.decoration();
        for (const auto& c : t.children()) w += walk(c);
        acc /= spectrum.divisor_checked(w);
        return w;
    };
    for (const auto& t : forest.trees()) walk(t);
    return acc;
}

template <class S>
S S_diffeo(const Forest& forest, const Spectrum<S>& q) {
    if (q.kind != Kind::Diffeo) throw ParameterError("S_diffeo: spectrum kind mismatch");
    return linearizing_armould(q, forest);
}

template <class S>
S S_field(const Forest& forest, const Spectrum<S>& lambda) {
    if (lambda.kind != Kind::Field) throw ParameterError("S_field: spectrum kind mismatch");
    return linearizing_armould(lambda, forest);
}

// K^F = A^{#F} B^{|‖F‖|}, separative for any A and nonzero B.
template <class S>
S geometric_armould(const Forest& forest, const S& A, const S& B) {
    if (ScalarOps<S>::is_zero(B)) throw ParameterError("geometric armould: B must be nonzero");
    return pow_int(A, forest.size()) * pow_int(B, forest.abs_weight());
}

// I^F = [height <= 1] (separative), J^F = [#F = 1] (antiseparative).
template <class S>
std::pair<S, S> elementary_armoulds(const Forest& forest) {
    S i = forest.height() <= 1 ? ScalarOps<S>::one() : ScalarOps<S>::zero();
    S j = forest.size() == 1 ? ScalarOps<S>::one() : ScalarOps<S>::zero();
    return {i, j};
}

// Action of sum_F A^F D_F(a) on phi, truncated at phi's cap. Homogeneity
// makes the sum finite: a forest of weight degree w only feeds coefficients
// of degree >= w, so |‖F‖| <= cap suffices for exactness through the cap.
template <class S>
TruncatedSeries<S> tree_expand(const std::function<S(const Forest&)>& armould,
                               CoarmouldEvaluator<S>& eval, const TruncatedSeries<S>& phi) {
    auto support = eval.support_decorations();
    TruncatedSeries<S> out(phi.dim(), phi.cap());
    for_each_forest(eval.dim(), support, phi.cap(), ForestFilter::All, [&](const Forest& f) {
        const auto& op = eval.D(f);
        if (op.is_zero()) return;
        S value = armould(f);
        if (ScalarOps<S>::is_zero(value)) return;
        out = out + (value * op.apply(phi));
    });
    return out;
}

} // namespace armlin
