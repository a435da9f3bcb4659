#pragma once

#include <cstdlib>
#include <string>
#include <thread>

#include "armlin/armould.hpp"

namespace armlin {

template <class S>
struct ProblemSpec {
    Kind kind;
    Spectrum<S> spectrum;
    SeriesTuple<S> a; // nonlinear part
    int cap;

    void validate() const {
        if (spectrum.kind != kind) throw StructuralError("spec: spectrum kind mismatch");
        if (spectrum.dim() != a.dim()) throw StructuralError("spec: spectrum/data dimension mismatch");
        if (a.cap() != cap) throw StructuralError("spec: data cap mismatch");
        if (!is_nonlinear_part(a)) throw StructuralError("spec: data is not a nonlinear part");
        spectrum.check_nonresonant(cap);
    }
};

struct LinearizeDiagnostics {
    long trees_enumerated = 0;
    long trees_contributing = 0;
    double max_abs_armould = 0.0;
    double residual = 0.0;
};

template <class S>
struct LinearizationResult {
    SeriesTuple<S> h;
    std::string method;
    LinearizeDiagnostics diag;
};

inline int worker_threads() {
    const char* env = std::getenv("ARMLIN_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    if (n < 1) return 1;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? std::min(n, static_cast<int>(hw)) : n;
}

// h_i = z_i + sum over non-vanishing trees T with |‖T‖| <= K-1 of
// S^T . (D_T z_i). The enumeration prunes with the necessary NV conditions;
// pruning is only an optimization since vanishing trees contribute zero.
// Contributions are homogeneous and reduced in enumeration order, so the
// result does not depend on the worker count.
template <class S>
LinearizationResult<S> linearize_tree(const ProblemSpec<S>& spec) {
    spec.validate();
    const int dim = spec.a.dim(), cap = spec.cap;
    CoarmouldEvaluator<S> eval(spec.a);
    auto support = eval.support_decorations();
    auto trees = enumerate_trees(dim, support, std::max(0, cap - 1), ForestFilter::NVCandidates);

    struct Contribution {
        MultiIndex weight;
        std::vector<S> kappa; // S^T * (coefficient of D_T z_i), per i
    };
    std::vector<Contribution> contribs(trees.size());
    std::vector<char> alive(trees.size(), 0);

    auto work = [&](size_t begin, size_t end, CoarmouldEvaluator<S>& worker_eval) {
        for (size_t t = begin; t < end; ++t) {
            const auto& op = worker_eval.D(trees[t]);
            if (op.is_zero()) continue;
            S value = linearizing_armould(spec.spectrum, Forest::single(trees[t]));
            if (ScalarOps<S>::is_zero(value)) continue;
            Contribution c;
            c.weight = op.weight();
            c.kappa.resize(static_cast<size_t>(dim), ScalarOps<S>::zero());
            for (const auto& [prof, kappa] : op.terms())
                for (int i = 0; i < dim; ++i)
                    if (prof == MultiIndex::unit(dim, i)) c.kappa[static_cast<size_t>(i)] = value * kappa;
            contribs[t] = std::move(c);
            alive[t] = 1;
        }
    };

    int nthreads = std::min<int>(worker_threads(), std::max<size_t>(trees.size(), 1));
    if (nthreads <= 1) {
        work(0, trees.size(), eval);
    } else {
        // Each worker keeps a private memo cache; no shared mutable state.
        std::vector<std::thread> pool;
        size_t chunk = (trees.size() + static_cast<size_t>(nthreads) - 1) / static_cast<size_t>(nthreads);
        for (int w = 0; w < nthreads; ++w) {
            size_t b = static_cast<size_t>(w) * chunk, e = std::min(trees.size(), b + chunk);
            if (b >= e) break;
            pool.emplace_back([&, b, e] {
                CoarmouldEvaluator<S> private_eval(spec.a);
                work(b, e, private_eval);
            });
        }
        for (auto& th : pool) th.join();
    }

    std::vector<TruncatedSeries<S>> comps;
    for (int i = 0; i < dim; ++i) comps.push_back(TruncatedSeries<S>::variable(dim, cap, i));
    LinearizeDiagnostics diag;
    diag.trees_enumerated = static_cast<long>(trees.size());
    for (size_t t = 0; t < trees.size(); ++t) {
        if (!alive[t]) continue;
        ++diag.trees_contributing;
        const auto& c = contribs[t];
        bool any = false;
        for (int i = 0; i < dim; ++i) {
            const S& kappa = c.kappa[static_cast<size_t>(i)];
            if (ScalarOps<S>::is_zero(kappa)) continue;
            any = true;
            comps[static_cast<size_t>(i)].add_term(c.weight + MultiIndex::unit(dim, i), kappa);
        }
        if (any) {
            double armould_abs =
                ScalarOps<S>::abs(linearizing_armould(spec.spectrum, Forest::single(trees[t])));
            diag.max_abs_armould = std::max(diag.max_abs_armould, armould_abs);
        }
    }
    return {SeriesTuple<S>(std::move(comps)), "tree", diag};
}

// Classical order-by-order solution of the conjugacy equation, used as the
// independent oracle for the tree expansion:
//   diffeo: (q^m - q_i) h_{i,m} = q_i [a_i o h]_m
//   field:  (lambda.m - lambda_i) h_{i,m} = [a_i o h]_m
// The right-hand side at degree d only involves h through degree d-1.
template <class S>
LinearizationResult<S> linearize_recursive(const ProblemSpec<S>& spec) {
    spec.validate();
    const int dim = spec.a.dim(), cap = spec.cap;
    std::vector<TruncatedSeries<S>> h;
    for (int i = 0; i < dim; ++i) h.push_back(TruncatedSeries<S>::variable(dim, cap, i));

    for (int d = 2; d <= cap; ++d) {
        SeriesTuple<S> current(h);
        for (int i = 0; i < dim; ++i) {
            auto rhs = compose(spec.a[i], current);
            for (const auto& [m, c] : rhs.terms()) {
                if (m.degree() != d) continue;
                S divisor, numerator;
                if (spec.kind == Kind::Diffeo) {
                    const S& qi = spec.spectrum.values[static_cast<size_t>(i)];
                    divisor = spec.spectrum.power(m) - qi;
                    numerator = qi * c;
                } else {
                    divisor = spec.spectrum.dot(m) -
                              spec.spectrum.values[static_cast<size_t>(i)];
                    numerator = c;
                }
                if (ScalarOps<S>::abs(divisor) < kResonanceGuard)
                    throw ResonanceError("resonant divisor at degree " + m.to_string());
                h[static_cast<size_t>(i)].add_term(m, numerator / divisor);
            }
        }
    }
    LinearizeDiagnostics diag;
    return {SeriesTuple<S>(std::move(h)), "recursive", diag};
}

template <class S>
TruncatedSeries<S> scale_arguments(const TruncatedSeries<S>& phi, const Spectrum<S>& q) {
    // phi(R_q z) = sum c_m q^m z^m
    TruncatedSeries<S> out(phi.dim(), phi.cap());
    for (const auto& [m, c] : phi.terms()) out.add_term(m, c * q.power(m));
    return out;
}

// Max coefficient modulus of the conjugacy defect through the cap:
//   diffeo: R_q o (id + a) o h - h o R_q
//   field:  lambda_i h_i + a_i o h - L_lambda h_i
template <class S>
double conjugacy_residual(const ProblemSpec<S>& spec, const SeriesTuple<S>& h) {
    if (!is_tangent_to_identity(h))
        throw StructuralError("residual: h is not tangent to identity");
    const int dim = spec.a.dim();
    double worst = 0.0;
    for (int i = 0; i < dim; ++i) {
        TruncatedSeries<S> res(h.dim(), h.cap());
        if (spec.kind == Kind::Diffeo) {
            auto fi = TruncatedSeries<S>::variable(dim, spec.cap, i) + spec.a[i];
            auto lhs = spec.spectrum.values[static_cast<size_t>(i)] * compose(fi, h);
            auto rhs = scale_arguments(h[i], spec.spectrum);
            res = lhs - rhs;
        } else {
            auto lhs = spec.spectrum.values[static_cast<size_t>(i)] * h[i] + compose(spec.a[i], h);
            TruncatedSeries<S> rhs(dim, spec.cap);
            for (const auto& [m, c] : h[i].terms()) rhs.add_term(m, spec.spectrum.dot(m) * c);
            res = lhs - rhs;
        }
        worst = std::max(worst, res.max_abs_coefficient());
    }
    return worst;
}

// Majorant tuple w of Theorem-style form: w = g^{o(-1)} with
// g_i(z) = z_i - sum_{k>=2} M (B/b)^{k-1} Z^k, Z = z_1 + ... + z_nu.
// Coefficientwise, w dominates the linearization h of any problem whose
// data satisfies |a_{i,n}| <= M / b^{|n|} and whose armould obeys
// |S^F| <= B^{|‖F‖|}.
template <class S>
SeriesTuple<S> majorant_bound(int dim, int cap, const S& b, const S& M, const S& B) {
    if (!ScalarOps<S>::is_real_nonneg(b) || ScalarOps<S>::is_zero(b))
        throw ParameterError("majorant: b must be real positive");
    if (!ScalarOps<S>::is_real_nonneg(M)) throw ParameterError("majorant: M must be real >= 0");
    if (!ScalarOps<S>::is_real_nonneg(B - ScalarOps<S>::one()))
        throw ParameterError("majorant: B must be >= 1 (B = e^{gamma + Bruno sum})");

    TruncatedSeries<S> Z(dim, cap);
    for (int i = 0; i < dim; ++i) Z.add_term(MultiIndex::unit(dim, i), ScalarOps<S>::one());
    std::vector<TruncatedSeries<S>> comps;
    TruncatedSeries<S> tail(dim, cap);
    S ratio = B / b;
    S coeff = M * ratio;
    auto zpow = mul(Z, Z);
    for (int k = 2; k <= cap; ++k) {
        tail = tail + (coeff * zpow);
        if (k < cap) {
            zpow = mul(zpow, Z);
            coeff *= ratio;
        }
    }
    for (int i = 0; i < dim; ++i)
        comps.push_back(TruncatedSeries<S>::variable(dim, cap, i) - tail);
    return invert_tangent_identity(SeriesTuple<S>(std::move(comps)));
}

// Coefficient-sum upper bound for M = sup |a_i| / b on the closed polydisc
// of radius b: (1/b) max_i sum_m |a_{i,m}| b^{|m|}. The sup of a polynomial
// is at most this, so the theorem's inequality survives the substitution.
template <class S>
double coefficient_sum_M(const SeriesTuple<S>& a, double b) {
    double best = 0.0;
    for (const auto& comp : a.components()) {
        double sum = 0.0;
        for (const auto& [m, c] : comp.terms())
            sum += ScalarOps<S>::abs(c) * std::pow(b, m.degree());
        best = std::max(best, sum / b);
    }
    return best;
}

// Majorant for a concrete problem: M defaults to the coefficient-sum bound
// on the polydisc of radius b.
template <class S>
SeriesTuple<Complex> majorant_for(const ProblemSpec<S>& spec, double b, double B) {
    double M = coefficient_sum_M(spec.a, b);
    return majorant_bound<Complex>(spec.a.dim(), spec.cap, Complex(b), Complex(M), Complex(B));
}

// Taylor expansion of Psi_{alpha,nu}: the composition inverse of
// phi_{alpha,nu,i} = z_i - alpha (Z^2 + Z^3 + ...). In one dimension
//   Psi_{alpha,1}(z) = (1 + z - (1 - 2(1+2alpha) z + z^2)^{1/2}) / (2(1+alpha)),
// and Psi_{alpha,nu,i}(z) = z_i + (Psi_{alpha nu,1}(Z) - Z)/nu.
// The square root is expanded binomially, which keeps coefficients exact
// in the rational backend.
template <class S>
SeriesTuple<S> psi_closed_form(const S& alpha, int dim, int cap) {
    if (!ScalarOps<S>::is_real_nonneg(alpha) || ScalarOps<S>::is_zero(alpha))
        throw ParameterError("psi: alpha must be real positive");
    if (cap < 1) throw ParameterError("psi: cap must be >= 1");

    S alpha_nu = ScalarOps<S>::from_int(dim) * alpha;
    // dense 1-D arithmetic on coefficient vectors c[0..cap]
    using Poly = std::vector<S>;
    auto zero_poly = [&] { return Poly(static_cast<size_t>(cap) + 1, ScalarOps<S>::zero()); };
    auto mul_poly = [&](const Poly& x, const Poly& y) {
        Poly r = zero_poly();
        for (int p = 0; p <= cap; ++p)
            for (int q = 0; p + q <= cap; ++q) r[static_cast<size_t>(p + q)] += x[static_cast<size_t>(p)] * y[static_cast<size_t>(q)];
        return r;
    };

    Poly u = zero_poly(); // (1 - 2(1+2a)z + z^2) - 1
    u[1] = ScalarOps<S>::from_int(-2) * (ScalarOps<S>::one() + ScalarOps<S>::from_int(2) * alpha_nu);
    if (cap >= 2) u[2] = ScalarOps<S>::one();

    Poly sqrt_series = zero_poly();
    sqrt_series[0] = ScalarOps<S>::one();
    Poly upow = zero_poly();
    upow[0] = ScalarOps<S>::one();
    Rational binom(1); // C(1/2, j)
    for (int j = 1; j <= cap; ++j) {
        binom *= Rational(3 - 2 * j) / Rational(2 * j);
        upow = mul_poly(upow, u);
        S factor = ScalarOps<S>::from_rational(binom);
        for (int p = 0; p <= cap; ++p) sqrt_series[static_cast<size_t>(p)] += factor * upow[static_cast<size_t>(p)];
    }

    S denom = ScalarOps<S>::from_int(2) * (ScalarOps<S>::one() + alpha_nu);
    Poly psi1 = zero_poly(); // Psi_{alpha nu, 1}
    psi1[0] = (ScalarOps<S>::one() - sqrt_series[0]) / denom;
    if (cap >= 1) psi1[1] = (ScalarOps<S>::one() - sqrt_series[1]) / denom;
    for (int p = 2; p <= cap; ++p) psi1[static_cast<size_t>(p)] = -sqrt_series[static_cast<size_t>(p)] / denom;

    TruncatedSeries<S> Z(dim, cap);
    for (int i = 0; i < dim; ++i) Z.add_term(MultiIndex::unit(dim, i), ScalarOps<S>::one());
    TruncatedSeries<S> correction(dim, cap); // (Psi1(Z) - Z)/nu
    TruncatedSeries<S> zpow = mul(Z, Z);
    S inv_nu = ScalarOps<S>::one() / ScalarOps<S>::from_int(dim);
    for (int k = 2; k <= cap; ++k) {
        correction = correction + ((inv_nu * psi1[static_cast<size_t>(k)]) * zpow);
        if (k < cap) zpow = mul(zpow, Z);
    }
    std::vector<TruncatedSeries<S>> comps;
    for (int i = 0; i < dim; ++i)
        comps.push_back(TruncatedSeries<S>::variable(dim, cap, i) + correction);
    return SeriesTuple<S>(std::move(comps));
}

// phi_{alpha,nu}: the tuple whose inverse psi_closed_form expands.
template <class S>
SeriesTuple<S> phi_alpha_nu(const S& alpha, int dim, int cap) {
    TruncatedSeries<S> Z(dim, cap);
    for (int i = 0; i < dim; ++i) Z.add_term(MultiIndex::unit(dim, i), ScalarOps<S>::one());
    TruncatedSeries<S> tail(dim, cap);
    auto zpow = mul(Z, Z);
    for (int k = 2; k <= cap; ++k) {
        tail = tail + (alpha * zpow);
        if (k < cap) zpow = mul(zpow, Z);
    }
    std::vector<TruncatedSeries<S>> comps;
    for (int i = 0; i < dim; ++i)
        comps.push_back(TruncatedSeries<S>::variable(dim, cap, i) - tail);
    return SeriesTuple<S>(std::move(comps));
}

// (r_m f)(z) = (1/m) f(m z): coefficient of z^n picks up m^{|n|-1}.
// Group automorphism of the tangent-to-identity diffeos.
template <class S>
SeriesTuple<S> rescale(const S& m, const SeriesTuple<S>& f) {
    if (!ScalarOps<S>::is_real_nonneg(m) || ScalarOps<S>::is_zero(m))
        throw ParameterError("rescale: m must be real positive");
    if (!is_tangent_to_identity(f))
        throw StructuralError("rescale: tuple is not tangent to identity");
    std::vector<TruncatedSeries<S>> comps;
    for (int i = 0; i < f.size(); ++i) {
        TruncatedSeries<S> out(f.dim(), f.cap());
        for (const auto& [n, c] : f[i].terms())
            out.add_term(n, c * pow_int(m, n.degree() - 1));
        comps.push_back(std::move(out));
    }
    return SeriesTuple<S>(std::move(comps));
}

} // namespace armlin
