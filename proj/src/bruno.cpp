#include "armlin/bruno.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace armlin {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

BrunoSpectrum BrunoSpectrum::diffeo(std::vector<Complex> q) {
    BrunoSpectrum s;
    s.kind = Kind::Diffeo;
    s.values = std::move(q);
    for (const auto& qi : s.values) {
        if (std::abs(qi) == 0.0) throw ParameterError("diffeo spectrum: q_i must be nonzero");
        s.lambda.push_back(std::log(qi) / Complex(0.0, kTwoPi));
    }
    return s;
}

BrunoSpectrum BrunoSpectrum::field(std::vector<Complex> lambda) {
    BrunoSpectrum s;
    s.kind = Kind::Field;
    s.values = lambda;
    s.lambda = std::move(lambda);
    return s;
}

Complex BrunoSpectrum::lambda_dot(const MultiIndex& n) const {
    Complex acc = 0.0;
    for (int j = 0; j < n.dim(); ++j) acc += static_cast<double>(n[j]) * lambda[static_cast<size_t>(j)];
    return acc;
}

Complex BrunoSpectrum::q_power(const MultiIndex& n) const {
    Complex acc = 1.0;
    for (int j = 0; j < n.dim(); ++j) {
        int e = n[j];
        const Complex& q = values[static_cast<size_t>(j)];
        for (int t = 0; t < std::abs(e); ++t) acc = e > 0 ? acc * q : acc / q;
    }
    return acc;
}

double BrunoSpectrum::abs_divisor(const MultiIndex& sigma_hat) const {
    double d = kind == Kind::Diffeo ? std::abs(q_power(sigma_hat) - 1.0)
                                    : std::abs(lambda_dot(sigma_hat));
    if (d < kResonanceGuard)
        throw ResonanceError("vanishing small divisor at n = " + sigma_hat.to_string());
    return d;
}

double BrunoSpectrum::divisor_measure(const MultiIndex& n) const {
    return kind == Kind::Diffeo ? distance_to_integers(lambda_dot(n))
                                : std::abs(lambda_dot(n));
}

void BrunoSpectrum::check_nonresonant(int weight_cap) const {
    for (const auto& n : enumerate_N(dim(), weight_cap)) (void)abs_divisor(n);
}

double distance_to_integers(Complex z) {
    double lo = std::floor(z.real());
    double d = std::abs(z - Complex(lo, 0.0));
    d = std::min(d, std::abs(z - Complex(lo + 1.0, 0.0)));
    return d;
}

double omega(const BrunoSpectrum& spectrum, int k) {
    if (k < 1) throw ParameterError("omega: k must be >= 1");
    double best = 1.0;
    for (const auto& n : enumerate_N(spectrum.dim(), k)) {
        double m = spectrum.divisor_measure(n);
        if (m < kResonanceGuard)
            throw ResonanceError("resonant multi-index " + n.to_string());
        best = std::min(best, m);
    }
    return best;
}

std::pair<double, double> alpha_epsilon(const BrunoSpectrum& spectrum, int k) {
    if (k < 1) throw ParameterError("alpha_epsilon: k must be >= 1");
    const int dim = spectrum.dim();
    std::vector<Complex> q(spectrum.values);
    if (spectrum.kind == Kind::Field)
        for (auto& v : q) v = std::exp(Complex(0.0, kTwoPi) * v);

    double alpha = 1.0, epsilon = 1.0;
    std::vector<int> m(static_cast<size_t>(dim), 0);
    std::function<void(int, int)> walk = [&](int pos, int degree) {
        if (pos == dim) {
            if (degree < 2 || degree > k + 1) return;
            MultiIndex mm{m};
            for (int j = 0; j < dim; ++j) {
                Complex shift = spectrum.lambda_dot(mm) - spectrum.lambda[static_cast<size_t>(j)];
                alpha = std::min(alpha, std::abs(std::exp(shift) - 1.0));
                Complex qm = 1.0;
                for (int t = 0; t < dim; ++t)
                    for (int e = 0; e < m[static_cast<size_t>(t)]; ++e) qm *= q[static_cast<size_t>(t)];
                epsilon = std::min(epsilon, std::abs(qm - q[static_cast<size_t>(j)]));
            }
            return;
        }
        for (int v = 0; degree + v <= k + 1; ++v) {
            m[static_cast<size_t>(pos)] = v;
            walk(pos + 1, degree + v);
        }
        m[static_cast<size_t>(pos)] = 0;
    };
    walk(0, 0);
    return {alpha, epsilon};
}

std::vector<double> omega_table(const BrunoSpectrum& spectrum, int kmax) {
    std::vector<double> out;
    out.reserve(static_cast<size_t>(kmax));
    for (int k = 1; k <= kmax; ++k) out.push_back(omega(spectrum, k));
    return out;
}

double bruno_partial_from(const std::function<double(int)>& omega_fn, int kmax) {
    if (kmax < 1) throw ParameterError("bruno_partial: kmax must be >= 1");
    double sum = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        double w = 1.0 / k - 1.0 / (k + 1);
        sum += w * std::log(1.0 / omega_fn(k));
    }
    return sum;
}

double bruno_partial(const BrunoSpectrum& spectrum, int kmax) {
    return bruno_partial_from([&](int k) { return omega(spectrum, k); }, kmax);
}

double bruno_total_constant_omega(const BrunoSpectrum& spectrum, int probe) {
    double w1 = omega(spectrum, 1);
    double wp = omega(spectrum, probe);
    if (w1 != wp)
        throw ParameterError("bruno_total_constant_omega: Omega is not constant up to the probe");
    return std::log(1.0 / w1);
}

double gamma_constant(double tol) {
    if (!(tol > 0.0)) throw ParameterError("gamma: tolerance must be positive");
    static std::map<double, double> cache;
    static std::mutex mutex;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(tol);
        if (it != cache.end()) return it->second;
    }
    auto tail_bound = [](double x) {
        return std::log(x + 2.0) / x + 0.5 * std::log1p(2.0 / x);
    };
    long long k0 = 1024;
    while (tail_bound(static_cast<double>(k0)) > tol) {
        if (k0 > (1LL << 40))
            throw ParameterError("gamma: tolerance below the reach of the documented tail bound");
        k0 *= 2;
    }
    // Kahan summation from the small terms up.
    double sum = 0.0, carry = 0.0;
    for (long long k = k0; k >= 1; --k) {
        double kd = static_cast<double>(k);
        double term = std::log(kd + 2.0) / (kd * (kd + 1.0));
        double y = term - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value = sum + tail_bound(static_cast<double>(k0));
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(tol, value);
    return value;
}

double radius_lower_bound(double b, double M, int nu, double B) {
    if (!(b > 0.0)) throw ParameterError("radius: b must be positive");
    if (!(M >= 0.0)) throw ParameterError("radius: M must be >= 0");
    if (nu < 1) throw ParameterError("radius: nu must be >= 1");
    if (!(B >= 1.0)) throw ParameterError("radius: B must be >= 1");
    return b / (B * nu * (4.0 * M * nu + 2.0));
}

double kappa(double beta) {
    if (!(beta > 0.0)) throw ParameterError("kappa: beta must be positive");
    double k = 1.0 / (1.0 + 2.0 * beta + 2.0 * std::sqrt(beta * (1.0 + beta)));
    if (!(1.0 / (4.0 * beta + 1.0) > k && k > 1.0 / (4.0 * beta + 2.0)))
        throw ParameterError("kappa: sandwich bound violated");
    return k;
}

CountingReport counting_check(const Forest& forest, const BrunoSpectrum& spectrum, int kmax,
                              const std::vector<double>& omegas) {
    if (static_cast<int>(omegas.size()) < kmax)
        throw ParameterError("counting_check: omega table shorter than kmax");
    CountingReport report;
    auto stats = forest_stats(forest);
    std::vector<double> measures;
    measures.reserve(stats.subtree_weights.size());
    for (const auto& [ref, sigma] : stats.subtree_weights)
        measures.push_back(spectrum.divisor_measure(sigma));
    for (int k = 0; k <= kmax; ++k) {
        CountingRow row;
        row.k = k;
        row.abs_weight = stats.abs_weight;
        if (k == 0) {
            row.cardinality = stats.size;
        } else {
            double threshold = omegas[static_cast<size_t>(k - 1)] / (k + 2);
            for (double m : measures)
                if (m < threshold) ++row.cardinality;
        }
        row.ok = static_cast<long>(k + 1) * row.cardinality <= stats.abs_weight;
        report.ok = report.ok && row.ok;
        report.rows.push_back(row);
    }
    return report;
}

CountingReport counting_check(const Forest& forest, const BrunoSpectrum& spectrum, int kmax) {
    return counting_check(forest, spectrum, kmax, omega_table(spectrum, kmax));
}

ArmouldBoundReport armould_bound_check(const Forest& forest, const BrunoSpectrum& spectrum,
                                       const std::vector<double>& omegas) {
    ArmouldBoundReport report;
    if (forest.is_empty()) return report; // S^empty = 1, bound 0
    if (!is_Fplus(forest))
        throw StructuralError("armould bound: forest outside F+(N) has S^F = 0");
    auto stats = forest_stats(forest);
    if (static_cast<int>(omegas.size()) < stats.abs_weight)
        throw ParameterError("armould_bound_check: omega table shorter than |w(F)|");
    for (const auto& [ref, sigma] : stats.subtree_weights)
        report.log_abs_S -= std::log(spectrum.abs_divisor(sigma));

    const int K = stats.abs_weight;
    double inner = std::log((K + 2.0) / omegas[static_cast<size_t>(K - 1)]) / K;
    for (int k = 1; k < K; ++k) {
        double w = 1.0 / k - 1.0 / (k + 1);
        inner += w * std::log((k + 2.0) / omegas[static_cast<size_t>(k - 1)]);
    }
    report.bound = stats.abs_weight * inner;
    report.ok = report.log_abs_S <= report.bound + 1e-9 * (1.0 + std::abs(report.bound));
    return report;
}

ArmouldBoundReport armould_bound_check(const Forest& forest, const BrunoSpectrum& spectrum) {
    int K = std::max(1, forest.abs_weight());
    return armould_bound_check(forest, spectrum, omega_table(spectrum, K));
}

MaxModulusReport max_modulus_check(int resolution) {
    if (resolution < 2) throw ParameterError("max_modulus_check: resolution must be >= 2");
    MaxModulusReport report;
    report.min_margin = std::numeric_limits<double>::infinity();
    for (int ix = 0; ix < resolution; ++ix) {
        double x = -0.5 + ix / (resolution - 1.0);
        for (int iy = 0; iy < resolution; ++iy) {
            double y = -2.0 + 4.0 * iy / (resolution - 1.0);
            Complex z(x, y);
            double lhs = std::abs(std::exp(Complex(0.0, kTwoPi) * z) - 1.0);
            double margin;
            if (std::abs(y) > 0.5)
                margin = lhs - 1.0 / 3.0;
            else
                margin = lhs - distance_to_integers(z) + 1e-12;
            report.min_margin = std::min(report.min_margin, margin);
            if (margin < 0.0) ++report.violations;
        }
    }
    report.ok = report.violations == 0;
    return report;
}

BrunoDiagnostics make_diagnostics(const BrunoSpectrum& spectrum, int kmax, double gamma_tol) {
    if (kmax < 1) throw ParameterError("diagnostics: kmax must be >= 1");
    spectrum.check_nonresonant(kmax);
    BrunoDiagnostics d;
    d.kind = spectrum.kind;
    d.spectrum = spectrum.values;
    d.kmax = kmax;
    double partial = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        double om = omega(spectrum, k);
        auto [al, ep] = alpha_epsilon(spectrum, k);
        d.omega.push_back(om);
        d.alpha.push_back(al);
        d.epsilon.push_back(ep);
        partial += (1.0 / k - 1.0 / (k + 1)) * std::log(1.0 / om);
        d.partial.push_back(partial);
    }
    d.bruno_partial = partial;
    d.gamma_tol = gamma_tol;
    d.gamma = gamma_constant(gamma_tol);
    d.B = std::exp(d.gamma + d.bruno_partial);
    d.tail_note = "bruno_partial truncates the Bruno series at kmax and is a lower bound; "
                  "B is the corresponding surrogate for e^{gamma + Bruno}";
    return d;
}

} // namespace armlin
