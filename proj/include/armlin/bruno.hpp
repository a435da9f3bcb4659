#pragma once

#include <complex>
#include <vector>

#include "armlin/armould.hpp"
#include "armlin/forest.hpp"

namespace armlin {

// Double-precision spectrum for the small-divisor diagnostics. For the
// diffeo kind, lambda is the principal branch Log(q_j)/(2 pi i); Omega is
// independent of the branch choice.
struct BrunoSpectrum {
    Kind kind;
    std::vector<Complex> values; // q (diffeo) or lambda (field)
    std::vector<Complex> lambda;

    static BrunoSpectrum diffeo(std::vector<Complex> q);
    static BrunoSpectrum field(std::vector<Complex> lambda);
    template <class S>
    static BrunoSpectrum from(const Spectrum<S>& s) {
        std::vector<Complex> v;
        for (const auto& x : s.values) v.push_back(ScalarOps<S>::to_complex(x));
        return s.kind == Kind::Diffeo ? diffeo(std::move(v)) : field(std::move(v));
    }

    int dim() const { return static_cast<int>(values.size()); }
    Complex lambda_dot(const MultiIndex& n) const;
    Complex q_power(const MultiIndex& n) const;
    // |q^{sigma}-1| (diffeo) or |lambda.sigma| (field), with resonance guard.
    double abs_divisor(const MultiIndex& sigma_hat) const;
    // Distance d(lambda.n, Z) for the diffeo kind, |lambda.n| for fields.
    double divisor_measure(const MultiIndex& n) const;
    // q^n != 1 / lambda.n != 0 over n in N, |n| <= weight_cap.
    void check_nonresonant(int weight_cap) const;
};

// Euclidean distance from a complex number to the integer lattice on R.
double distance_to_integers(Complex z);

// Omega(k) (diffeo) or Omega_v.f.(k): min over {1} and the divisor measures
// of all n in N with |n| <= k.
double omega(const BrunoSpectrum& spectrum, int k);

// omega(1..kmax) in one pass; index k-1 holds Omega(k). Sweeps over many
// forests share this table instead of re-enumerating N per forest.
std::vector<double> omega_table(const BrunoSpectrum& spectrum, int kmax);

// Comparison functions used in the literature, reported as diagnostics:
// alpha(k) = min{1} u { |e^{m.lambda - lambda_j} - 1| }, epsilon(k) =
// min{1} u { |q^m - q_j| } over j in [nu], m in N^nu, 2 <= |m| <= k+1.
std::pair<double, double> alpha_epsilon(const BrunoSpectrum& spectrum, int k);

// Partial Bruno sum  sum_{k=1}^{kmax} (1/k - 1/(k+1)) log(1/Omega(k)),
// a non-decreasing lower bound of the full series.
double bruno_partial(const BrunoSpectrum& spectrum, int kmax);
double bruno_partial_from(const std::function<double(int)>& omega_fn, int kmax);

// Exact value of the Bruno series for a spectrum whose Omega is constant in
// k; verified by probing Omega(1) == Omega(probe). Every bundled acceptance
// spectrum is of this type, which keeps B = e^{gamma + B} honest.
double bruno_total_constant_omega(const BrunoSpectrum& spectrum, int probe = 24);

// gamma = sum_{k>=1} (1/k - 1/(k+1)) log(k+2), absolute error <= tol.
// Partial summation to K0 plus the integral tail bound
//   sum_{k>K0} log(k+2)/k^2 <= log(K0+2)/K0 + (1/2) log(1 + 2/K0);
// the returned value is partial + bound, an over-estimate within tol.
double gamma_constant(double tol);

// b / (B nu (4 M nu + 2)) with B = e^{gamma + Bruno}.
double radius_lower_bound(double b, double M, int nu, double B);

// kappa_beta = 1 + 2 beta - 2 sqrt(beta(1+beta)), evaluated in the
// cancellation-free form 1/(1 + 2 beta + 2 sqrt(beta(1+beta))); the
// sandwich 1/(4 beta + 1) > kappa > 1/(4 beta + 2) is asserted.
double kappa(double beta);

struct CountingRow {
    int k = 0;
    int cardinality = 0; // #W_k(F)
    int abs_weight = 0;  // |‖F‖|
    bool ok = false;     // (k+1) #W_k <= |‖F‖|
};

struct CountingReport {
    bool ok = true;
    std::vector<CountingRow> rows;
};

// W_k(F) = vertices whose divisor measure is < Omega(k)/(k+2); asserts the
// counting bound #W_k <= |‖F‖|/(k+1) for k = 0..kmax. F must be
// non-vanishing for the bound to be guaranteed.
CountingReport counting_check(const Forest& forest, const BrunoSpectrum& spectrum, int kmax);
CountingReport counting_check(const Forest& forest, const BrunoSpectrum& spectrum, int kmax,
                              const std::vector<double>& omegas);

struct ArmouldBoundReport {
    bool ok = true;
    double log_abs_S = 0.0;
    double bound = 0.0;
};

// Finite form of the armould estimate with K = |‖F‖|:
//   log |S^F| <= |‖F‖| ( L_K / K + sum_{k=1}^{K-1} (1/k - 1/(k+1)) L_k ),
// L_k = log((k+2)/Omega(k)).
ArmouldBoundReport armould_bound_check(const Forest& forest, const BrunoSpectrum& spectrum);
ArmouldBoundReport armould_bound_check(const Forest& forest, const BrunoSpectrum& spectrum,
                                       const std::vector<double>& omegas);

struct MaxModulusReport {
    bool ok = true;
    long violations = 0;
    double min_margin = 0.0;
};

// Samples z on a resolution x resolution grid over [-1/2,1/2] x [-2,2] and
// checks |e^{2 i pi z} - 1| > 1/3 when |Im z| > 1/2, >= d(z, Z) otherwise.
MaxModulusReport max_modulus_check(int resolution);

struct BrunoDiagnostics {
    Kind kind = Kind::Diffeo;
    std::vector<Complex> spectrum;
    int kmax = 0;
    std::vector<double> omega;   // Omega(1..kmax)
    std::vector<double> alpha;   // diagnostics only
    std::vector<double> epsilon; // diagnostics only
    std::vector<double> partial; // Bruno partial sums through k
    double bruno_partial = 0.0;
    double gamma = 0.0;
    double gamma_tol = 0.0;
    double B = 0.0; // e^{gamma + bruno_partial}, kmax-truncated surrogate
    std::string tail_note;
};

BrunoDiagnostics make_diagnostics(const BrunoSpectrum& spectrum, int kmax, double gamma_tol);

} // namespace armlin
