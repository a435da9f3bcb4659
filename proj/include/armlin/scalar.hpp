#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <string>

#include "armlin/errors.hpp"

namespace armlin {

using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Complex number with exact rational real and imaginary parts.
// Field operations are exact; used wherever a structural question
// (vanishing, oracle equality) must be decided without rounding.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(int v) : re(v), im(0) {}           // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}  // NOLINT
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        Rational n = o.re * o.re + o.im * o.im;
        if (n == 0) throw ParameterError("division by zero GaussianRational");
        Rational r = (re * o.re + im * o.im) / n;
        Rational i = (im * o.re - re * o.im) / n;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

// Uniform access to the two coefficient backends.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<GaussianRational> {
    static constexpr bool exact = true;
    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return {1}; }
    static GaussianRational from_int(long long v) { return {Rational(v)}; }
    static GaussianRational from_ratio(long long p, long long q) { return {Rational(p) / Rational(q)}; }
    static GaussianRational from_rational(const Rational& r) { return {r}; }
    static bool is_zero(const GaussianRational& v) { return v.is_zero(); }
    static Complex to_complex(const GaussianRational& v) { return {to_double(v.re), to_double(v.im)}; }
    static double abs(const GaussianRational& v) { return std::abs(to_complex(v)); }
    // |a| <= b for real non-negative b, decided exactly.
    static bool abs_le(const GaussianRational& a, const GaussianRational& b) {
        return a.re * a.re + a.im * a.im <= b.re * b.re;
    }
    static bool is_real_nonneg(const GaussianRational& v) { return v.im == 0 && v.re >= 0; }
};

template <>
struct ScalarOps<Complex> {
    static constexpr bool exact = false;
    static Complex zero() { return {0.0, 0.0}; }
    static Complex one() { return {1.0, 0.0}; }
    static Complex from_int(long long v) { return {static_cast<double>(v), 0.0}; }
    static Complex from_ratio(long long p, long long q) {
        return {static_cast<double>(p) / static_cast<double>(q), 0.0};
    }
    static Complex from_rational(const Rational& r) { return {to_double(r), 0.0}; }
    static bool is_zero(const Complex& v) { return v.real() == 0.0 && v.imag() == 0.0; }
    static Complex to_complex(const Complex& v) { return v; }
    static double abs(const Complex& v) { return std::abs(v); }
    static bool abs_le(const Complex& a, const Complex& b) { return std::abs(a) <= b.real(); }
    static bool is_real_nonneg(const Complex& v) { return v.imag() == 0.0 && v.real() >= 0.0; }
};

// Renders "p" or "p/q" in lowest terms; parse accepts both.
std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

} // namespace armlin
