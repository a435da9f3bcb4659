#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "armlin/errors.hpp"

namespace armlin {

// Element of Z^nu: monomial exponent, homogeneity degree or forest weight.
class MultiIndex {
  public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries) : e_(std::move(entries)) {
        if (e_.empty()) throw StructuralError("MultiIndex: dimension must be >= 1");
    }
    static MultiIndex zeros(int dim) { return MultiIndex(std::vector<int>(static_cast<size_t>(dim), 0)); }
    static MultiIndex unit(int dim, int i) {
        auto m = zeros(dim);
        m.e_[static_cast<size_t>(i)] = 1;
        return m;
    }

    int dim() const { return static_cast<int>(e_.size()); }
    int operator[](int i) const { return e_[static_cast<size_t>(i)]; }
    const std::vector<int>& entries() const { return e_; }

    // |m| = sum of entries; the total degree (may be negative off N^nu).
    int degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

    bool all_nonneg() const {
        return std::all_of(e_.begin(), e_.end(), [](int v) { return v >= 0; });
    }

    // n in N  <=>  |n| >= 1, every entry >= -1, at most one entry equal to -1.
    // Closed form of { m - e_i : m in N^nu, |m| >= 2 }.
    bool in_N() const {
        if (degree() < 1) return false;
        int minus_ones = 0;
        for (int v : e_) {
            if (v < -1) return false;
            if (v == -1) ++minus_ones;
        }
        return minus_ones <= 1;
    }

    MultiIndex& operator+=(const MultiIndex& o) {
        check_dim(o);
        for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
        return *this;
    }
    friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }
    MultiIndex& operator-=(const MultiIndex& o) {
        check_dim(o);
        for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
        return *this;
    }
    friend MultiIndex operator-(MultiIndex a, const MultiIndex& b) { return a -= b; }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return a.e_ != b.e_; }
    // Lexicographic; the canonical key order for series storage.
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return a.e_ < b.e_; }

    std::string to_string() const {
        std::string s = "(";
        for (size_t i = 0; i < e_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(e_[i]);
        }
        return s + ")";
    }

  private:
    void check_dim(const MultiIndex& o) const {
        if (o.dim() != dim()) throw StructuralError("MultiIndex: dimension mismatch");
    }
    std::vector<int> e_;
};

} // namespace armlin
