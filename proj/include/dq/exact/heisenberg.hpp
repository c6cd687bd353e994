#pragma once

// Words in Q_i, P_i with [Q_i, P_j] = i hbar delta_ij, kept in the unique
// normal form where, for every index, all Q's precede all P's. Letters with
// different indices commute, so a normal-form word is just an exponent
// vector (a_1..a_n, b_1..b_n) for Q_1^a_1..Q_n^a_n P_1^b_1..P_n^b_n, plus a
// power of the formal hbar carried by the coefficient.

#include "dq/exact/moyal.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace dq {

struct WordKey {
    Exponents letters; ///< (Q_1..Q_n, P_1..P_n) exponents in normal order
    int hbar = 0;

    friend bool operator<(const WordKey& a, const WordKey& b)
    {
        return std::tie(a.hbar, a.letters) < std::tie(b.hbar, b.letters);
    }
    friend bool operator==(const WordKey& a, const WordKey& b) = default;
};

/// A sum of normal-ordered Heisenberg words with complex-rational coefficients.
class HeisenbergPoly {
public:
    using TermMap = std::map<WordKey, Complex>;

    explicit HeisenbergPoly(int n = 1) : n_(n) {}

    static HeisenbergPoly unit(int n)
    {
        HeisenbergPoly w(n);
        w.add_term({Exponents(2 * n, 0), 0}, Complex(1));
        return w;
    }
    /// Q_i (1-based).
    static HeisenbergPoly Q(int n, int i = 1) { return letter(n, i - 1); }
    /// P_i (1-based).
    static HeisenbergPoly P(int n, int i = 1) { return letter(n, n + i - 1); }

    int dimension() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const WordKey& k, const Complex& c)
    {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    HeisenbergPoly& operator+=(const HeisenbergPoly& o)
    {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    HeisenbergPoly& operator-=(const HeisenbergPoly& o)
    {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    HeisenbergPoly& operator*=(const Complex& s)
    {
        if (s.is_zero()) terms_.clear();
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }
    friend HeisenbergPoly operator+(HeisenbergPoly a, const HeisenbergPoly& b) { return a += b; }
    friend HeisenbergPoly operator-(HeisenbergPoly a, const HeisenbergPoly& b) { return a -= b; }
    friend HeisenbergPoly operator*(HeisenbergPoly a, const Complex& s) { return a *= s; }
    friend bool operator==(const HeisenbergPoly& a, const HeisenbergPoly& b) = default;

    /// Operator product, reduced to normal form.
    friend HeisenbergPoly operator*(const HeisenbergPoly& x, const HeisenbergPoly& y)
    {
        HeisenbergPoly out(x.n_);
        for (const auto& [kx, cx] : x.terms_)
            for (const auto& [ky, cy] : y.terms_) out.multiply_words(kx, ky, cx * cy);
        return out;
    }

    /// Drops every term with hbar power above `order`.
    HeisenbergPoly truncated(int order) const
    {
        HeisenbergPoly out(n_);
        for (const auto& [k, c] : terms_)
            if (k.hbar <= order) out.terms_.emplace(k, c);
        return out;
    }

    std::string str() const
    {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [k, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += c.str();
            for (int i = 0; i < 2 * n_; ++i)
                if (k.letters[i] > 0)
                    s += "*" + std::string(i < n_ ? "Q" : "P") + std::to_string(i % n_ + 1) + "^" +
                         std::to_string(k.letters[i]);
            if (k.hbar > 0) s += "*hbar^" + std::to_string(k.hbar);
        }
        return s;
    }

private:
    static HeisenbergPoly letter(int n, int slot)
    {
        HeisenbergPoly w(n);
        Exponents e(2 * n, 0);
        e[slot] = 1;
        w.add_term({e, 0}, Complex(1));
        return w;
    }

    // (Q^a P^b)(Q^c P^d) per index: P^b Q^c = sum_k C(b,k) C(c,k) k! (-i hbar)^k Q^{c-k} P^{b-k}.
    void multiply_words(const WordKey& x, const WordKey& y, const Complex& coeff)
    {
        std::vector<std::pair<WordKey, Complex>> acc{{WordKey{Exponents(2 * n_, 0), x.hbar + y.hbar}, coeff}};
        const Complex minus_i(Rational(0), Rational(-1));
        for (int i = 0; i < n_; ++i) {
            const int a = x.letters[i], b = x.letters[n_ + i];
            const int c = y.letters[i], d = y.letters[n_ + i];
            std::vector<std::pair<WordKey, Complex>> next;
            for (const auto& [key, val] : acc) {
                for (int k = 0; k <= std::min(b, c); ++k) {
                    WordKey nk = key;
                    nk.letters[i] = a + c - k;
                    nk.letters[n_ + i] = b + d - k;
                    nk.hbar += k;
                    Complex w = val * Complex(binomial(b, k) * binomial(c, k) * factorial(k)) * pow(minus_i, k);
                    next.emplace_back(std::move(nk), w);
                }
            }
            acc = std::move(next);
        }
        for (const auto& [k, c] : acc) add_term(k, c);
    }

    int n_;
    TermMap terms_;
};

namespace detail {

// Sum over all distinct arrangements of m Q's and n P's (single index), built
// by the first letter: S(m,n) = Q S(m-1,n) + P S(m,n-1).
class ArrangementSums {
public:
    const HeisenbergPoly& get(int m, int n)
    {
        auto key = std::make_pair(m, n);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        HeisenbergPoly s(1);
        if (m == 0 && n == 0) {
            s = HeisenbergPoly::unit(1);
        } else {
            if (m > 0) s += HeisenbergPoly::Q(1) * get(m - 1, n);
            if (n > 0) s += HeisenbergPoly::P(1) * get(m, n - 1);
        }
        return cache_.emplace(key, std::move(s)).first->second;
    }

private:
    std::map<std::pair<int, int>, HeisenbergPoly> cache_;
};

inline ArrangementSums& arrangement_sums()
{
    thread_local ArrangementSums sums;
    return sums;
}

// Embeds a single-index word sum as index i of an n-dimensional algebra.
inline HeisenbergPoly embed_index(const HeisenbergPoly& w1, int n, int i)
{
    HeisenbergPoly out(n);
    for (const auto& [k, c] : w1.terms()) {
        WordKey nk{Exponents(2 * n, 0), k.hbar};
        nk.letters[i] = k.letters[0];
        nk.letters[n + i] = k.letters[1];
        out.add_term(nk, c);
    }
    return out;
}

} // namespace detail

/// Weyl ordering of q^m p^n (one index): the average over all arrangements of m Q's and n P's.
inline HeisenbergPoly weyl_symmetrize_1d(int m, int n)
{
    HeisenbergPoly s = detail::arrangement_sums().get(m, n);
    return s * Complex(Rational(1) / binomial(m + n, m));
}

/// Weyl symmetrization of a monomial; distinct indices are symmetrized independently.
inline HeisenbergPoly weyl_symmetrize(int n, const Exponents& e)
{
    HeisenbergPoly out = HeisenbergPoly::unit(n);
    for (int i = 0; i < n; ++i)
        out = out * detail::embed_index(weyl_symmetrize_1d(e[i], e[n + i]), n, i);
    return out;
}

inline HeisenbergPoly weyl_symmetrize(const PhasePoly& f, int hbar_power = 0)
{
    HeisenbergPoly out(f.dimension());
    for (const auto& [e, c] : f.terms()) {
        HeisenbergPoly w = weyl_symmetrize(f.dimension(), e) * c;
        for (const auto& [k, v] : w.terms()) out.add_term({k.letters, k.hbar + hbar_power}, v);
    }
    return out;
}

inline HeisenbergPoly weyl_symmetrize(const HbarSeries& f)
{
    HeisenbergPoly out(f.dimension());
    for (int k = 0; k <= f.order(); ++k) out += weyl_symmetrize(f[k], k);
    return out;
}

/// True iff W(f*g) equals W(f) W(g) in normal form, with * taken in the `weyl` convention.
/// In the default hbar convention the diagram closes with the factors reversed;
/// `reversed` checks W(f*g) = W(g) W(f) instead.
inline bool weyl_homomorphism_check(const PhasePoly& f, const PhasePoly& g,
                                    StarConvention conv = StarConvention::weyl, bool reversed = false)
{
    f.check_dim(g);
    if (conv == StarConvention::deformation) throw std::invalid_argument("the diagram needs a numeric hbar convention");
    // the star series terminates at min(deg f, deg g), so both sides are exact
    const int order = std::max(0, std::min(f.degree(), g.degree()));
    HeisenbergPoly lhs = weyl_symmetrize(moyal_star(f, g, order, conv));
    return lhs == (reversed ? weyl_symmetrize(g) * weyl_symmetrize(f) : weyl_symmetrize(f) * weyl_symmetrize(g));
}

} // namespace dq
