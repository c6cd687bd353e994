#pragma once

// Exact polynomials on the canonical phase space R^{2n}.
//
// A monomial is an exponent vector laid out as (q_1..q_n, p_1..p_n). Terms
// are kept in a std::map so iteration order is the canonical order, and no
// zero coefficient is ever stored.

#include "dq/exact/rational.hpp"

#include <complex>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dq {

using Exponents = std::vector<int>;

class PhasePoly {
public:
    using TermMap = std::map<Exponents, Complex>;

    explicit PhasePoly(int n = 1) : n_(n)
    {
        if (n < 1) throw std::invalid_argument("phase-space dimension must be positive");
    }

    static PhasePoly constant(int n, const Complex& c)
    {
        PhasePoly f(n);
        f.add_term(Exponents(2 * n, 0), c);
        return f;
    }
    /// q_i (i is 1-based).
    static PhasePoly q(int n, int i = 1) { return variable(n, i - 1); }
    /// p_i (i is 1-based).
    static PhasePoly p(int n, int i = 1) { return variable(n, n + i - 1); }
    static PhasePoly monomial(int n, const Exponents& e, const Complex& c = Complex(1))
    {
        if (static_cast<int>(e.size()) != 2 * n) throw std::invalid_argument("exponent vector has wrong length");
        PhasePoly f(n);
        f.add_term(e, c);
        return f;
    }

    int dimension() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Total degree; -1 for the zero polynomial.
    int degree() const
    {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    Complex coefficient(const Exponents& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Complex() : it->second;
    }

    void add_term(const Exponents& e, const Complex& c)
    {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Partial derivative with respect to variable slot `var` (0..2n-1), applied `times` times.
    PhasePoly derivative(int var, int times = 1) const
    {
        PhasePoly out(n_);
        if (times == 0) return *this;
        for (const auto& [e, c] : terms_) {
            if (e[var] < times) continue;
            Exponents f = e;
            Rational fall(1);
            for (int k = 0; k < times; ++k) fall *= e[var] - k;
            f[var] -= times;
            out.add_term(f, c * Complex(fall));
        }
        return out;
    }

    PhasePoly conj() const
    {
        PhasePoly out(n_);
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, c.conj());
        return out;
    }

    std::complex<double> evaluate(std::span<const double> qs, std::span<const double> ps) const
    {
        std::complex<double> acc = 0;
        for (const auto& [e, c] : terms_) {
            double m = 1;
            for (int i = 0; i < n_; ++i) {
                for (int k = 0; k < e[i]; ++k) m *= qs[i];
                for (int k = 0; k < e[n_ + i]; ++k) m *= ps[i];
            }
            acc += std::complex<double>(c.re.get_d(), c.im.get_d()) * m;
        }
        return acc;
    }
    std::complex<double> evaluate(double q, double p) const
    {
        return evaluate(std::span<const double>(&q, 1), std::span<const double>(&p, 1));
    }

    /// Substitutes each coordinate by a linear form: u_k -> sum_j rows[k][j] u_j.
    PhasePoly substitute_linear(const std::vector<std::vector<Rational>>& rows) const;

    PhasePoly& operator+=(const PhasePoly& o)
    {
        check_dim(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    PhasePoly& operator-=(const PhasePoly& o)
    {
        check_dim(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    PhasePoly& operator*=(const Complex& s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend PhasePoly operator+(PhasePoly a, const PhasePoly& b) { return a += b; }
    friend PhasePoly operator-(PhasePoly a, const PhasePoly& b) { return a -= b; }
    friend PhasePoly operator-(PhasePoly a) { return a *= Complex(-1); }
    friend PhasePoly operator*(PhasePoly a, const Complex& s) { return a *= s; }
    friend PhasePoly operator*(const Complex& s, PhasePoly a) { return a *= s; }
    friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b)
    {
        a.check_dim(b);
        PhasePoly out(a.n_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea.size());
                for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }
    friend bool operator==(const PhasePoly& a, const PhasePoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }
    friend bool operator!=(const PhasePoly& a, const PhasePoly& b) { return !(a == b); }

    void check_dim(const PhasePoly& o) const
    {
        if (o.n_ != n_) throw std::invalid_argument("phase-space dimension mismatch");
    }

private:
    static PhasePoly variable(int n, int slot)
    {
        Exponents e(2 * n, 0);
        e[slot] = 1;
        return monomial(n, e);
    }

    int n_;
    TermMap terms_;
};

inline PhasePoly PhasePoly::substitute_linear(const std::vector<std::vector<Rational>>& rows) const
{
    const int m = 2 * n_;
    if (static_cast<int>(rows.size()) != m) throw std::invalid_argument("substitution needs 2n rows");
    std::vector<PhasePoly> images;
    images.reserve(m);
    for (int k = 0; k < m; ++k) {
        if (static_cast<int>(rows[k].size()) != m) throw std::invalid_argument("substitution rows need 2n entries");
        PhasePoly img(n_);
        for (int j = 0; j < m; ++j) {
            Exponents e(m, 0);
            e[j] = 1;
            img.add_term(e, Complex(rows[k][j]));
        }
        images.push_back(std::move(img));
    }
    PhasePoly out(n_);
    for (const auto& [e, c] : terms_) {
        PhasePoly t = constant(n_, c);
        for (int k = 0; k < m; ++k)
            for (int r = 0; r < e[k]; ++r) t = t * images[k];
        out += t;
    }
    return out;
}

/// {f, g} = sum_i df/dq_i dg/dp_i - df/dp_i dg/dq_i.
inline PhasePoly poisson_bracket(const PhasePoly& f, const PhasePoly& g)
{
    f.check_dim(g);
    const int n = f.dimension();
    PhasePoly out(n);
    for (int i = 0; i < n; ++i) {
        out += f.derivative(i) * g.derivative(n + i);
        out -= f.derivative(n + i) * g.derivative(i);
    }
    return out;
}

namespace detail {

// Enumerates all ways of writing k as an ordered sum over 2n slots
// (a_1..a_n for d_q (x) d_p, b_1..b_n for -d_p (x) d_q) with the multinomial weight.
inline void for_each_split(int n, int k, const std::function<void(const std::vector<int>&, const Rational&)>& fn)
{
    std::vector<int> parts(2 * n, 0);
    std::function<void(int, int)> rec = [&](int slot, int left) {
        if (slot == 2 * n - 1) {
            parts[slot] = left;
            Rational w = factorial(k);
            for (int x : parts) w /= factorial(x);
            fn(parts, w);
            return;
        }
        for (int a = 0; a <= left; ++a) {
            parts[slot] = a;
            rec(slot + 1, left - a);
        }
    };
    rec(0, k);
}

} // namespace detail

/// k-th power of the Poisson bidifferential operator followed by multiplication.
inline PhasePoly bidiff_power(const PhasePoly& f, const PhasePoly& g, int k)
{
    f.check_dim(g);
    if (k < 0) throw std::invalid_argument("bidiff_power needs k >= 0");
    const int n = f.dimension();
    if (k == 0) return f * g;
    PhasePoly out(n);
    if (f.degree() + g.degree() < 2 * k) return out;
    detail::for_each_split(n, k, [&](const std::vector<int>& parts, const Rational& w) {
        // parts[0..n): (d_q)^a on f, (d_p)^a on g; parts[n..2n): (d_p)^b on f, (d_q)^b on g, sign (-1)^b
        PhasePoly df = f;
        PhasePoly dg = g;
        int minus = 0;
        for (int i = 0; i < n; ++i) {
            df = df.derivative(i, parts[i]).derivative(n + i, parts[n + i]);
            dg = dg.derivative(n + i, parts[i]).derivative(i, parts[n + i]);
            minus += parts[n + i];
        }
        if (df.is_zero() || dg.is_zero()) return;
        Rational s = (minus % 2 == 0) ? w : Rational(-w);
        out += (df * dg) * Complex(s);
    });
    return out;
}

namespace detail {

inline std::string var_name(int n, int slot)
{
    return (slot < n ? "q" : "p") + std::to_string(slot % n + 1);
}

} // namespace detail

/// Canonical term text, `(c)*q1^a*p1^b`, with zero exponents omitted.
inline std::string term_string(int n, const Exponents& e, const Complex& c)
{
    std::string s = c.str();
    for (int k = 0; k < 2 * n; ++k)
        if (e[k] > 0) s += "*" + detail::var_name(n, k) + "^" + std::to_string(e[k]);
    return s;
}

} // namespace dq
