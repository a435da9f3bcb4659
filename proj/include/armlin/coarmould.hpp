#pragma once

#include <map>
#include <vector>

#include "armlin/forest.hpp"
#include "armlin/series.hpp"

namespace armlin {

// Gamma(i, m) = prod_j m_j! / (m_j - d_j)!  when d <= m componentwise, else 0:
// the eigenvalue of the 0-homogeneous operator z^d d^d on the monomial z^m.
inline long long gamma_factor(const MultiIndex& profile, const MultiIndex& m) {
    long long g = 1;
    for (int j = 0; j < profile.dim(); ++j) {
        int d = profile[j];
        if (d > m[j]) return 0;
        for (int v = m[j]; v > m[j] - d; --v) g *= v;
    }
    return g;
}

// Finite representation of a ||F||-homogeneous operator:
//     op = z^weight * sum_profiles  coeff(profile) * z^profile d^profile,
// acting on z^m as sum_p coeff(p) * Gamma(p, m) * z^{m + weight}.
// The profile table is the contracted form of Eq-style sums over maps
// i: roots -> [nu]; profiles always sum to the operator degree.
template <class S>
class HomogeneousOperator {
  public:
    using Terms = std::map<MultiIndex, S>;

    HomogeneousOperator(int dim, MultiIndex weight, int degree, Terms terms)
        : dim_(dim), weight_(std::move(weight)), degree_(degree), terms_(std::move(terms)) {
        if (weight_.dim() != dim_) throw StructuralError("operator: weight dimension mismatch");
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first.dim() != dim_ || !it->first.all_nonneg() ||
                it->first.degree() != degree_)
                throw StructuralError("operator: profile degree != operator degree");
            if (ScalarOps<S>::is_zero(it->second))
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    static HomogeneousOperator identity(int dim) {
        Terms t;
        t.emplace(MultiIndex::zeros(dim), ScalarOps<S>::one());
        return HomogeneousOperator(dim, MultiIndex::zeros(dim), 0, std::move(t));
    }

    int dim() const { return dim_; }
    const MultiIndex& weight() const { return weight_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // sum_p coeff(p) * Gamma(p, m): the scalar by which the operator maps
    // z^m to that multiple of z^{m + weight}.
    S action_scalar(const MultiIndex& m) const {
        S acc = ScalarOps<S>::zero();
        for (const auto& [p, c] : terms_) {
            long long g = gamma_factor(p, m);
            if (g != 0) acc += ScalarOps<S>::from_int(g) * c;
        }
        return acc;
    }

    friend bool operator==(const HomogeneousOperator& a, const HomogeneousOperator& b) {
        if (a.terms_.empty() && b.terms_.empty()) return a.dim_ == b.dim_;
        return a.dim_ == b.dim_ && a.weight_ == b.weight_ && a.degree_ == b.degree_ &&
               a.terms_ == b.terms_;
    }

    // Monomial-wise action, truncated at phi's cap.
    TruncatedSeries<S> apply(const TruncatedSeries<S>& phi) const {
        if (dim_ != phi.dim()) throw StructuralError("apply: dimension mismatch");
        TruncatedSeries<S> out(phi.dim(), phi.cap());
        for (const auto& [m, c] : phi.terms()) {
            S factor = action_scalar(m);
            if (ScalarOps<S>::is_zero(factor)) continue;
            MultiIndex target = m + weight_;
            if (target.degree() > phi.cap()) continue;
            if (!target.all_nonneg())
                throw StructuralError("apply: operator produced a negative exponent");
            out.add_term(target, c * factor);
        }
        return out.with_exact_degree(phi.exact_degree());
    }

  private:
    int dim_;
    MultiIndex weight_;
    int degree_;
    Terms terms_;
};

// Builds the coarmould D_bullet(a) on demand, memoized by canonical forest.
// Rules: D_empty = Id;  D_{n<|F} = sum_i (D_F a_{i,n} z^{n+e_i}) d_i;
// products get the 1/(d_1!...d_r!) multinomial prefactor.
template <class S>
class CoarmouldEvaluator {
  public:
    explicit CoarmouldEvaluator(SeriesTuple<S> a) : a_(std::move(a)) {
        if (!is_nonlinear_part(a_))
            throw StructuralError("coarmould: data is not a nonlinear part (ord >= 2)");
    }

    const SeriesTuple<S>& data() const { return a_; }
    int dim() const { return a_.dim(); }

    // a_{i,n}: coefficient of z^{n+e_i} in a_i; zero off N^nu.
    S coeff(int i, const MultiIndex& n) const {
        MultiIndex m = n + MultiIndex::unit(a_.dim(), i);
        if (!m.all_nonneg() || m.degree() > a_.cap()) return ScalarOps<S>::zero();
        return a_[i].coefficient(m);
    }

    // Decorations n with a_{i,n} != 0 for some i.
    std::vector<MultiIndex> support_decorations() const {
        std::set<MultiIndex> s;
        for (int i = 0; i < a_.dim(); ++i)
            for (const auto& [m, c] : a_[i].terms())
                s.insert(m - MultiIndex::unit(a_.dim(), i));
        return {s.begin(), s.end()};
    }

    const HomogeneousOperator<S>& D(const Forest& forest) {
        auto it = cache_.find(forest);
        if (it != cache_.end()) return it->second;
        HomogeneousOperator<S> op = build(forest);
        return cache_.emplace(forest, std::move(op)).first->second;
    }

    const HomogeneousOperator<S>& D(const Tree& tree) { return D(Forest::single(tree)); }

    // Appendix closed formula:
    //   D_F = z^{||F||}/sym(F) * sum_{j: V_F -> [nu]}
    //         prod_sigma Gamma(j on successors(sigma), N(sigma)+e_{j(sigma)})
    //                    * a_{j(sigma), N(sigma)}   * delta_{j on roots}.
    HomogeneousOperator<S> D_closed(const Forest& forest) const {
        const int dim = a_.dim();
        if (forest.is_empty()) return HomogeneousOperator<S>::identity(dim);

        struct Vertex {
            MultiIndex deco;
            std::vector<int> successors;
            bool is_root;
        };
        std::vector<Vertex> vertices;
        std::function<int(const Tree&, bool)> visit = [&](const Tree& t, bool root) {
            int self = static_cast<int>(vertices.size());
            vertices.push_back(Vertex{t.decoration(), {}, root});
            for (const auto& c : t.children()) {
                int child = visit(c, false); // recursion may reallocate vertices
                vertices[static_cast<size_t>(self)].successors.push_back(child);
            }
            return self;
        };
        for (const auto& t : forest.trees()) visit(t, true);

        const int n = static_cast<int>(vertices.size());
        typename HomogeneousOperator<S>::Terms terms;
        std::vector<int> j(static_cast<size_t>(n), 0);
        while (true) {
            S factor = ScalarOps<S>::one();
            bool dead = false;
            for (int v = 0; v < n && !dead; ++v) {
                const auto& vert = vertices[static_cast<size_t>(v)];
                S av = coeff(j[static_cast<size_t>(v)], vert.deco);
                if (ScalarOps<S>::is_zero(av)) {
                    dead = true;
                    break;
                }
                MultiIndex prof = MultiIndex::zeros(dim);
                for (int s : vert.successors)
                    prof += MultiIndex::unit(dim, j[static_cast<size_t>(s)]);
                long long g = gamma_factor(
                    prof, vert.deco + MultiIndex::unit(dim, j[static_cast<size_t>(v)]));
                if (g == 0) {
                    dead = true;
                    break;
                }
                factor *= av * ScalarOps<S>::from_int(g);
            }
            if (!dead) {
                MultiIndex root_prof = MultiIndex::zeros(dim);
                for (int v = 0; v < n; ++v)
                    if (vertices[static_cast<size_t>(v)].is_root)
                        root_prof += MultiIndex::unit(dim, j[static_cast<size_t>(v)]);
                auto [it, inserted] = terms.emplace(root_prof, factor);
                if (!inserted) it->second += factor;
            }
            int v = 0;
            while (v < n && j[static_cast<size_t>(v)] == dim - 1) j[static_cast<size_t>(v++)] = 0;
            if (v == n) break;
            ++j[static_cast<size_t>(v)];
        }

        S sym = ScalarOps<S>::from_int(static_cast<long long>(symmetry_factor(forest)));
        for (auto it = terms.begin(); it != terms.end();) {
            it->second /= sym;
            if (ScalarOps<S>::is_zero(it->second))
                it = terms.erase(it);
            else
                ++it;
        }
        return HomogeneousOperator<S>(dim, forest.weight(), forest.degree(), std::move(terms));
    }

  private:
    HomogeneousOperator<S> build(const Forest& forest) {
        const int dim = a_.dim();
        if (forest.is_empty()) return HomogeneousOperator<S>::identity(dim);

        if (forest.degree() == 1) {
            const Tree& t = forest.trees().front();
            const auto& inner = D(Forest(dim, t.children()));
            typename HomogeneousOperator<S>::Terms terms;
            for (int i = 0; i < dim; ++i) {
                S av = coeff(i, t.decoration());
                if (ScalarOps<S>::is_zero(av)) continue;
                S kappa = av * inner.action_scalar(t.decoration() + MultiIndex::unit(dim, i));
                if (ScalarOps<S>::is_zero(kappa)) continue;
                terms.emplace(MultiIndex::unit(dim, i), std::move(kappa));
            }
            return HomogeneousOperator<S>(dim, t.weight(), 1, std::move(terms));
        }

        // product rule (iii): multiply the degree-1 linear forms of the trees
        std::map<MultiIndex, S> poly;
        poly.emplace(MultiIndex::zeros(dim), ScalarOps<S>::one());
        for (const auto& t : forest.trees()) {
            const auto& op = D(t);
            std::map<MultiIndex, S> next;
            for (const auto& [prof, c] : poly) {
                for (const auto& [unit, kappa] : op.terms()) {
                    MultiIndex p = prof + unit;
                    S v = c * kappa;
                    auto [it, inserted] = next.emplace(std::move(p), v);
                    if (!inserted) it->second += v;
                }
            }
            poly = std::move(next);
            if (poly.empty()) break;
        }
        S denom = ScalarOps<S>::one();
        for (const auto& [t, mult] : forest.factor_multiset())
            for (int k = 2; k <= mult; ++k) denom *= ScalarOps<S>::from_int(k);
        typename HomogeneousOperator<S>::Terms terms;
        for (auto& [p, c] : poly) {
            c /= denom;
            if (!ScalarOps<S>::is_zero(c)) terms.emplace(p, std::move(c));
        }
        return HomogeneousOperator<S>(dim, forest.weight(), forest.degree(), std::move(terms));
    }

    SeriesTuple<S> a_;
    std::map<Forest, HomogeneousOperator<S>> cache_;
};

// Nonlinear part with a_{i,n} = 1 on every admissible pair (n + e_i in N^nu)
// over the given decorations. Lemma-backed: the beta polynomials have
// non-negative rational coefficients, so D_F vanishes at this point iff it
// vanishes for every admissible data.
inline SeriesTuple<GaussianRational> generic_ones_data(int dim,
                                                       const std::vector<MultiIndex>& decorations) {
    int cap = 2;
    for (const auto& n : decorations) cap = std::max(cap, n.degree() + 1);
    std::vector<TruncatedSeries<GaussianRational>> comps;
    for (int i = 0; i < dim; ++i) {
        TruncatedSeries<GaussianRational> s(dim, cap);
        for (const auto& n : decorations) {
            MultiIndex m = n + MultiIndex::unit(dim, i);
            if (m.all_nonneg()) s.add_term(m, GaussianRational(1));
        }
        comps.push_back(std::move(s));
    }
    return SeriesTuple<GaussianRational>(std::move(comps));
}

// Decides F in V(N) exactly; never use the float backend for this.
class VanishingOracle {
  public:
    VanishingOracle(int dim, const std::vector<MultiIndex>& decorations)
        : eval_(generic_ones_data(dim, decorations)) {}

    bool is_universally_vanishing(const Forest& forest) {
        auto it = cache_.find(forest);
        if (it != cache_.end()) return it->second;
        bool v = eval_.D(forest).is_zero();
        cache_.emplace(forest, v);
        return v;
    }

  private:
    CoarmouldEvaluator<GaussianRational> eval_;
    std::map<Forest, bool> cache_;
};

inline bool is_universally_vanishing(const Forest& forest) {
    auto decos = decorations_of(forest);
    VanishingOracle oracle(forest.dim(), {decos.begin(), decos.end()});
    return oracle.is_universally_vanishing(forest);
}

struct IdentityCheck {
    bool exact_equal = true;
    double max_error = 0.0;

    void record(double err, bool eq) {
        exact_equal = exact_equal && eq;
        max_error = std::max(max_error, err);
    }
};

// D_F(phi psi) = sum over ordered factorizations F = F' F'' of
// (D_{F'} phi)(D_{F''} psi).
template <class S>
IdentityCheck verify_coseparativity(CoarmouldEvaluator<S>& eval, const Forest& forest,
                                    const TruncatedSeries<S>& phi, const TruncatedSeries<S>& psi) {
    auto lhs = eval.D(forest).apply(mul(phi, psi));
    TruncatedSeries<S> rhs(phi.dim(), phi.cap());
    for (const auto& [f1, f2] : ordered_factorizations(forest))
        rhs = rhs + mul(eval.D(f1).apply(phi), eval.D(f2).apply(psi));
    IdentityCheck chk;
    chk.record(max_coefficient_distance(lhs, rhs), lhs == rhs);
    return chk;
}

// k(F1, F2, F): number of admissible cuts of F with P^c = F1, R^c = F2.
// Candidates are exactly the forests whose decoration multiset is the
// union of the operands' multisets.
std::map<Forest, int> product_rule_multiplicities(const Forest& f1, const Forest& f2, int cap);

// Checks D_{F1} D_{F2} = sum_F k(F1,F2,F) D_F as an operator identity.
// Both sides act on z^m through polynomials of per-variable degree at most
// deg(F1) + deg(F2) in m (falling factorials), so agreement on the full box
// m in [0..deg(F1)+deg(F2)]^nu proves equality on every monomial.
template <class S>
IdentityCheck verify_product_rule(CoarmouldEvaluator<S>& eval, const Forest& f1,
                                  const Forest& f2) {
    auto ks = product_rule_multiplicities(f1, f2, f1.abs_weight() + f2.abs_weight());
    const int dim = eval.dim();
    const int dmax = f1.degree() + f2.degree();
    const int series_cap = dmax * dim + f1.abs_weight() + f2.abs_weight();
    IdentityCheck chk;
    std::vector<int> m(static_cast<size_t>(dim), 0);
    while (true) {
        MultiIndex mm{m};
        auto zm = TruncatedSeries<S>::monomial(dim, series_cap, mm, ScalarOps<S>::one());
        auto lhs = eval.D(f1).apply(eval.D(f2).apply(zm));
        TruncatedSeries<S> rhs(dim, series_cap);
        for (const auto& [f, k] : ks)
            rhs = rhs + (ScalarOps<S>::from_int(k) * eval.D(f).apply(zm));
        chk.record(max_coefficient_distance(lhs, rhs), lhs == rhs);
        size_t i = 0;
        while (i < m.size() && m[i] == dmax) m[i++] = 0;
        if (i == m.size()) break;
        ++m[i];
    }
    return chk;
}

} // namespace armlin
