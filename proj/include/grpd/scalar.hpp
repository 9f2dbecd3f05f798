#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace grpd {

/// Exact rational scalar backed by GMP.
using Rational = boost::multiprecision::mpq_rational;

/// Gaussian rational re + i*im. The exact coefficient field of the
/// convolution algebras: every certificate computed over it is a proof,
/// not an approximation.
struct Scalar {
    Rational re{0};
    Rational im{0};

    Scalar() = default;
    Scalar(int v) : re(v) {}                      // NOLINT(google-explicit-constructor)
    Scalar(Rational r) : re(std::move(r)) {}      // NOLINT(google-explicit-constructor)
    Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    Scalar conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }

    Scalar operator-() const { return {-re, -im}; }

    Scalar& operator+=(const Scalar& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar inverse() const {
        Rational n = norm2();
        if (n == 0) throw std::domain_error("Scalar::inverse: division by zero");
        return {re / n, -im / n};
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
};

inline Scalar scalar_i() { return {Rational(0), Rational(1)}; }

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed input
/// (including q == 0).
Rational parse_rational(const std::string& s);

/// Formats as "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& r);

std::string format_scalar(const Scalar& s);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace grpd
