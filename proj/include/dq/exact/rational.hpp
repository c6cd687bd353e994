#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dq {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational factorial(int n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

inline Rational binomial(int n, int k)
{
    if (k < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(std::string_view s)
{
    Rational r;
    if (r.set_str(std::string(s), 10) != 0) throw std::invalid_argument("bad rational: " + std::string(s));
    r.canonicalize();
    return r;
}

/// Exact complex number with rational real and imaginary parts.
struct Complex {
    Rational re;
    Rational im;

    Complex() = default;
    Complex(Rational r) : re(std::move(r)) {} // NOLINT(google-explicit-constructor)
    Complex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    Complex(long r) : re(r) {} // NOLINT(google-explicit-constructor)

    static Complex i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    bool is_imag() const { return sgn(re) == 0; }

    Complex conj() const { return {re, -im}; }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o)
    {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    Complex& operator/=(const Complex& o)
    {
        Rational d = o.re * o.re + o.im * o.im;
        if (sgn(d) == 0) throw std::domain_error("complex division by zero");
        Rational r = (re * o.re + im * o.im) / d;
        Rational i = (im * o.re - re * o.im) / d;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

    /// Canonical form `(re+imi)`, e.g. `(3/2+0i)`, `(0-1/2i)`.
    std::string str() const
    {
        std::string s = "(" + re.get_str();
        s += sgn(im) < 0 ? "-" : "+";
        s += Rational(abs(im)).get_str() + "i)";
        return s;
    }
};

inline Complex pow(const Complex& base, int k)
{
    Complex r(1);
    for (int j = 0; j < k; ++j) r *= base;
    return r;
}

/// Parses the canonical `(re+imi)` form produced by Complex::str().
inline Complex parse_complex(std::string_view s)
{
    if (s.size() < 4 || s.front() != '(' || s.back() != ')' || s[s.size() - 2] != 'i')
        throw std::invalid_argument("bad complex literal: " + std::string(s));
    std::string_view body = s.substr(1, s.size() - 3);
    // split at the sign that separates re and im (not a leading sign)
    std::size_t cut = std::string_view::npos;
    for (std::size_t k = 1; k < body.size(); ++k) {
        if (body[k] == '+' || body[k] == '-') cut = k;
    }
    if (cut == std::string_view::npos) throw std::invalid_argument("bad complex literal: " + std::string(s));
    Rational re = parse_rational(body.substr(0, cut));
    Rational im = parse_rational(body.substr(cut + 1));
    if (body[cut] == '-') im = -im;
    return {re, im};
}

} // namespace dq
