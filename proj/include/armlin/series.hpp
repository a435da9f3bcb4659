#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "armlin/multi_index.hpp"
#include "armlin/scalar.hpp"

namespace armlin {

// Formal power series in nu variables truncated at total degree K, sparse
// canonical storage (no explicit zeros, keys in lexicographic order).
// Values are immutable after construction; every operation is pure.
//
// Truncation contract: when all inputs are exact through degree K and every
// substituted tuple has ord >= 1, all public operations return coefficients
// that are exact through degree K. The one exception is derivation along a
// tuple with a component of order 0, which loses one degree; the guaranteed
// degree is tracked in exact_degree().
template <class S>
class TruncatedSeries {
  public:
    using Terms = std::map<MultiIndex, S>;

    TruncatedSeries(int dim, int cap) : dim_(dim), cap_(cap), exact_(cap) {
        if (dim < 1) throw StructuralError("series: dimension must be >= 1");
        if (cap < 0) throw StructuralError("series: cap must be >= 0");
    }

    TruncatedSeries(int dim, int cap, Terms terms) : TruncatedSeries(dim, cap) {
        for (auto it = terms.begin(); it != terms.end();) {
            validate_key(it->first);
            if (ScalarOps<S>::is_zero(it->second))
                it = terms.erase(it);
            else
                ++it;
        }
        terms_ = std::move(terms);
    }

    static TruncatedSeries zero(int dim, int cap) { return TruncatedSeries(dim, cap); }

    static TruncatedSeries constant(int dim, int cap, S c) {
        TruncatedSeries s(dim, cap);
        s.set_unchecked(MultiIndex::zeros(dim), std::move(c));
        return s;
    }

    static TruncatedSeries monomial(int dim, int cap, const MultiIndex& m, S c) {
        TruncatedSeries s(dim, cap);
        s.validate_key(m);
        s.set_unchecked(m, std::move(c));
        return s;
    }

    // The coordinate series z_i (0-based i).
    static TruncatedSeries variable(int dim, int cap, int i) {
        return monomial(dim, cap, MultiIndex::unit(dim, i), ScalarOps<S>::one());
    }

    int dim() const { return dim_; }
    int cap() const { return cap_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Highest total degree whose coefficients are guaranteed exact
    // (== cap unless a degree-losing derivation was involved).
    int exact_degree() const { return exact_; }
    TruncatedSeries with_exact_degree(int e) const {
        TruncatedSeries r = *this;
        r.exact_ = std::min(e, cap_);
        return r;
    }

    S coefficient(const MultiIndex& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? ScalarOps<S>::zero() : it->second;
    }

    // Total order: minimal |m| over nonzero terms, nullopt for the zero series.
    std::optional<int> ord() const {
        std::optional<int> best;
        for (const auto& [m, c] : terms_) {
            int d = m.degree();
            if (!best || d < *best) best = d;
        }
        return best;
    }

    double max_abs_coefficient() const {
        double v = 0.0;
        for (const auto& [m, c] : terms_) v = std::max(v, ScalarOps<S>::abs(c));
        return v;
    }

    TruncatedSeries operator-() const {
        TruncatedSeries r(dim_, cap_);
        r.exact_ = exact_;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check_compatible(b);
        TruncatedSeries r = a;
        r.exact_ = std::min(a.exact_, b.exact_);
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a + (-b);
    }

    friend TruncatedSeries operator*(const S& c, const TruncatedSeries& a) {
        TruncatedSeries r(a.dim_, a.cap_);
        r.exact_ = a.exact_;
        if (ScalarOps<S>::is_zero(c)) return r;
        for (const auto& [m, v] : a.terms_) r.set_unchecked(m, c * v);
        return r;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.dim_ == b.dim_ && a.cap_ == b.cap_ && a.terms_ == b.terms_;
    }

    void check_compatible(const TruncatedSeries& o) const {
        if (o.dim_ != dim_ || o.cap_ != cap_)
            throw StructuralError("series: dimension or cap mismatch");
    }

    // Internal mutator used by the builder-style free functions below;
    // callers never observe a partially built value.
    void add_term(const MultiIndex& m, const S& c) {
        if (!m.all_nonneg() || m.degree() > cap_) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!ScalarOps<S>::is_zero(c)) terms_.emplace(m, c);
            return;
        }
        it->second += c;
        if (ScalarOps<S>::is_zero(it->second)) terms_.erase(it);
    }

  private:
    void validate_key(const MultiIndex& m) const {
        if (m.dim() != dim_) throw StructuralError("series: term dimension mismatch");
        if (!m.all_nonneg()) throw StructuralError("series: negative exponent");
        if (m.degree() > cap_) throw StructuralError("series: term degree exceeds cap");
    }
    void set_unchecked(MultiIndex m, S c) {
        if (!ScalarOps<S>::is_zero(c)) terms_.emplace(std::move(m), std::move(c));
    }

    int dim_;
    int cap_;
    int exact_;
    Terms terms_;
};

// nu-tuple of series sharing dimension and cap; models maps/vector fields
// (id + a, V_lambda + a) through their nonlinear parts.
template <class S>
class SeriesTuple {
  public:
    explicit SeriesTuple(std::vector<TruncatedSeries<S>> components)
        : components_(std::move(components)) {
        if (components_.empty()) throw StructuralError("tuple: empty");
        for (const auto& c : components_) components_.front().check_compatible(c);
    }

    static SeriesTuple zero(int dim, int cap) {
        return SeriesTuple(std::vector<TruncatedSeries<S>>(
            static_cast<size_t>(dim), TruncatedSeries<S>::zero(dim, cap)));
    }

    static SeriesTuple identity(int dim, int cap) {
        std::vector<TruncatedSeries<S>> comps;
        comps.reserve(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) comps.push_back(TruncatedSeries<S>::variable(dim, cap, i));
        return SeriesTuple(std::move(comps));
    }

    int dim() const { return components_.front().dim(); }
    int cap() const { return components_.front().cap(); }
    int size() const { return static_cast<int>(components_.size()); }
    const TruncatedSeries<S>& operator[](int i) const { return components_[static_cast<size_t>(i)]; }
    const std::vector<TruncatedSeries<S>>& components() const { return components_; }

    friend bool operator==(const SeriesTuple& a, const SeriesTuple& b) {
        return a.components_ == b.components_;
    }

  private:
    std::vector<TruncatedSeries<S>> components_;
};

// Membership in the nonlinear parts P~_nu: every component of order >= 2.
// Stored exponents are >= 0, so n = m - e_i automatically lands in N and
// n + e_i = m in N^nu for every retained coefficient.
template <class S>
bool is_nonlinear_part(const SeriesTuple<S>& a) {
    if (a.size() != a.dim()) return false;
    for (const auto& c : a.components()) {
        auto o = c.ord();
        if (o && *o < 2) return false;
    }
    return true;
}

template <class S>
bool is_tangent_to_identity(const SeriesTuple<S>& f) {
    if (f.size() != f.dim()) return false;
    for (int i = 0; i < f.dim(); ++i) {
        auto rest = f[i] - TruncatedSeries<S>::variable(f.dim(), f.cap(), i);
        auto o = rest.ord();
        if (o && *o < 2) return false;
    }
    return true;
}

template <class S>
SeriesTuple<S> nonlinear_part_of(const SeriesTuple<S>& f) {
    std::vector<TruncatedSeries<S>> comps;
    for (int i = 0; i < f.size(); ++i)
        comps.push_back(f[i] - TruncatedSeries<S>::variable(f.dim(), f.cap(), i));
    return SeriesTuple<S>(std::move(comps));
}

template <class S>
TruncatedSeries<S> mul(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
    a.check_compatible(b);
    TruncatedSeries<S> r(a.dim(), a.cap());
    r = r.with_exact_degree(std::min(a.exact_degree(), b.exact_degree()));
    for (const auto& [ma, ca] : a.terms()) {
        if (ma.degree() > a.cap()) continue;
        for (const auto& [mb, cb] : b.terms()) {
            if (ma.degree() + mb.degree() > a.cap()) continue;
            r.add_term(ma + mb, ca * cb);
        }
    }
    return r;
}

template <class S>
TruncatedSeries<S> derive_partial(const TruncatedSeries<S>& a, int i) {
    TruncatedSeries<S> r(a.dim(), a.cap());
    for (const auto& [m, c] : a.terms()) {
        int mi = m[i];
        if (mi == 0) continue;
        r.add_term(m - MultiIndex::unit(a.dim(), i), ScalarOps<S>::from_int(mi) * c);
    }
    return r;
}

// C_v phi = phi o v.  Exact through the cap because ord(v_i) >= 1.
template <class S>
TruncatedSeries<S> compose(const TruncatedSeries<S>& phi, const SeriesTuple<S>& v) {
    phi.check_compatible(v[0]);
    if (v.size() != phi.dim()) throw StructuralError("compose: tuple arity != dimension");
    int exact = phi.exact_degree();
    for (int i = 0; i < v.size(); ++i) {
        auto o = v[i].ord();
        if (!v[i].is_zero() && *o < 1)
            throw StructuralError("compose: substitution with constant term (ord 0)");
        exact = std::min(exact, v[i].exact_degree());
    }
    const int dim = phi.dim(), cap = phi.cap();
    // powers[i][e] = v_i^e, filled on demand
    std::vector<std::vector<TruncatedSeries<S>>> powers(
        static_cast<size_t>(dim), {TruncatedSeries<S>::constant(dim, cap, ScalarOps<S>::one())});
    auto power = [&](int i, int e) -> const TruncatedSeries<S>& {
        auto& ps = powers[static_cast<size_t>(i)];
        while (static_cast<int>(ps.size()) <= e) ps.push_back(mul(ps.back(), v[i]));
        return ps[static_cast<size_t>(e)];
    };
    TruncatedSeries<S> r(dim, cap);
    for (const auto& [m, c] : phi.terms()) {
        auto t = TruncatedSeries<S>::constant(dim, cap, c);
        for (int i = 0; i < dim && !t.is_zero(); ++i)
            if (m[i] > 0) t = mul(t, power(i, m[i]));
        r = r + t;
    }
    return r.with_exact_degree(exact);
}

template <class S>
SeriesTuple<S> compose(const SeriesTuple<S>& f, const SeriesTuple<S>& v) {
    std::vector<TruncatedSeries<S>> comps;
    for (int i = 0; i < f.size(); ++i) comps.push_back(compose(f[i], v));
    return SeriesTuple<S>(std::move(comps));
}

// X_v phi = sum_i v_i d(phi)/dz_i.  Exact through the cap when every
// ord(v_i) >= 1; one degree is lost per order-0 component (dphi is only
// known through cap-1), recorded in the result's exact_degree.
template <class S>
TruncatedSeries<S> derive(const SeriesTuple<S>& v, const TruncatedSeries<S>& phi) {
    phi.check_compatible(v[0]);
    if (v.size() != phi.dim()) throw StructuralError("derive: tuple arity != dimension");
    int exact = phi.exact_degree();
    for (int i = 0; i < v.size(); ++i) {
        auto o = v[i].ord();
        exact = std::min(exact, v[i].exact_degree());
        if (o && *o < 1) exact = std::min(exact, phi.exact_degree() - 1);
    }
    TruncatedSeries<S> r(phi.dim(), phi.cap());
    for (int i = 0; i < phi.dim(); ++i) r = r + mul(v[i], derive_partial(phi, i));
    return r.with_exact_degree(exact);
}

// Composition inverse of a tangent-to-identity tuple, exact through the cap.
// One homogeneous correction per degree: f o (w + u) = f o w + u + h.o.t.
template <class S>
SeriesTuple<S> invert_tangent_identity(const SeriesTuple<S>& f) {
    if (!is_tangent_to_identity(f))
        throw StructuralError("invert: tuple is not tangent to identity");
    const int dim = f.dim(), cap = f.cap();
    SeriesTuple<S> w = SeriesTuple<S>::identity(dim, cap);
    for (int d = 2; d <= cap; ++d) {
        std::vector<TruncatedSeries<S>> comps;
        bool dirty = false;
        for (int i = 0; i < dim; ++i) {
            auto residual = compose(f[i], w) - TruncatedSeries<S>::variable(dim, cap, i);
            TruncatedSeries<S> fix(dim, cap);
            for (const auto& [m, c] : residual.terms())
                if (m.degree() == d) fix.add_term(m, c);
            dirty = dirty || !fix.is_zero();
            comps.push_back(w[i] - fix);
        }
        if (dirty) w = SeriesTuple<S>(std::move(comps));
    }
    return w;
}

// True iff |phi_n| <= psi_n for all |n| <= cap; psi must have real
// non-negative coefficients.
template <class S>
bool majorizes(const TruncatedSeries<S>& psi, const TruncatedSeries<S>& phi) {
    psi.check_compatible(phi);
    for (const auto& [m, c] : psi.terms())
        if (!ScalarOps<S>::is_real_nonneg(c))
            throw StructuralError("majorizes: majorant has negative or non-real coefficient");
    for (const auto& [m, c] : phi.terms())
        if (!ScalarOps<S>::abs_le(c, psi.coefficient(m))) return false;
    return true;
}

// Relative closeness in the float backend: |x - y| <= tol * (1 + max|.|).
inline bool approx_equal(const Complex& x, const Complex& y, double tol) {
    return std::abs(x - y) <= tol * (1.0 + std::max(std::abs(x), std::abs(y)));
}

template <class S>
double max_coefficient_distance(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
    a.check_compatible(b);
    double worst = 0.0;
    auto scan = [&](const TruncatedSeries<S>& x, const TruncatedSeries<S>& y) {
        for (const auto& [m, c] : x.terms()) {
            double d = ScalarOps<S>::abs(c - y.coefficient(m));
            worst = std::max(worst, d);
        }
    };
    scan(a, b);
    scan(b, a);
    return worst;
}

} // namespace armlin
