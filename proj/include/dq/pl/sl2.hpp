#pragma once

// Classical layer of the Poisson-Lie group SL(2): the Lie algebra sl(2) with
// [H, X+-] = +-2 X+-, [X+, X-] = H, its defining representation, the r-matrix
// r = X+ (x) X- - X- (x) X+, the Schouten bracket [[r, r]], and the Sklyanin
// bracket on polynomials in the matrix coordinates a, b, c, d.

#include "dq/pl/tensor.hpp"

#include <array>
#include <map>
#include <string>

namespace dq::pl {

using RMat = Mat<Rational>;

/// x_h H + x_p X+ + x_m X-.
struct Sl2Element {
    Rational h, p, m;

    static Sl2Element H() { return {1, 0, 0}; }
    static Sl2Element Xp() { return {0, 1, 0}; }
    static Sl2Element Xm() { return {0, 0, 1}; }

    friend Sl2Element operator+(const Sl2Element& a, const Sl2Element& b) { return {a.h + b.h, a.p + b.p, a.m + b.m}; }
    friend Sl2Element operator-(const Sl2Element& a, const Sl2Element& b) { return {a.h - b.h, a.p - b.p, a.m - b.m}; }
    friend Sl2Element operator*(const Rational& s, const Sl2Element& a) { return {s * a.h, s * a.p, s * a.m}; }
    friend bool operator==(const Sl2Element& a, const Sl2Element& b) { return a.h == b.h && a.p == b.p && a.m == b.m; }
};

inline Sl2Element bracket(const Sl2Element& x, const Sl2Element& y)
{
    // [H, X+] = 2 X+, [H, X-] = -2 X-, [X+, X-] = H
    return {x.p * y.m - x.m * y.p, 2 * (x.h * y.p - x.p * y.h), -2 * (x.h * y.m - x.m * y.h)};
}

inline std::array<Sl2Element, 3> sl2_basis() { return {Sl2Element::H(), Sl2Element::Xp(), Sl2Element::Xm()}; }

/// Basis triples where [[x,y],z] + cyclic does not vanish.
inline int sl2_jacobi_failures()
{
    int fails = 0;
    for (const auto& x : sl2_basis())
        for (const auto& y : sl2_basis())
            for (const auto& z : sl2_basis()) {
                const Sl2Element j = bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y);
                if (!(j == Sl2Element{})) ++fails;
            }
    return fails;
}

inline RMat mat2(long a, long b, long c, long d) { return RMat(2, {Rational(a), Rational(b), Rational(c), Rational(d)}); }

/// Defining representation with rho(H) = diag(1, -1).
inline RMat rho(const Sl2Element& x) { return x.h * mat2(1, 0, 0, -1) + x.p * mat2(0, 1, 0, 0) + x.m * mat2(0, 0, 1, 0); }

/// The alternative rho(H) = [[0, 1], [-1, 0]]; kept to show it breaks the commutation relations.
inline RMat rho_rotation_h(const Sl2Element& x) { return x.h * mat2(0, 1, -1, 0) + x.p * mat2(0, 1, 0, 0) + x.m * mat2(0, 0, 1, 0); }

/// Number of basis pairs with [rep(x), rep(y)] != rep([x, y]).
template <class Rep>
int representation_failures(Rep rep)
{
    int fails = 0;
    for (const auto& x : sl2_basis())
        for (const auto& y : sl2_basis())
            if (!(commutator(rep(x), rep(y)) == rep(bracket(x, y)))) ++fails;
    return fails;
}

/// rho (x) rho of r = X+ (x) X- - X- (x) X+.
inline RMat r_hat()
{
    return kron(rho(Sl2Element::Xp()), rho(Sl2Element::Xm())) - kron(rho(Sl2Element::Xm()), rho(Sl2Element::Xp()));
}

/// rho (x) rho of t = H (x) H / 2 + X+ (x) X- + X- (x) X+, equal to sigma - I/2.
inline RMat t_hat()
{
    const auto H = rho(Sl2Element::H()), P = rho(Sl2Element::Xp()), M = rho(Sl2Element::Xm());
    return Rational(1, 2) * kron(H, H) + kron(P, M) + kron(M, P);
}

/// [[r, r]] = [r12, r13] + [r12, r23] + [r13, r23]; r must satisfy sigma(r) = -r.
template <class F>
Mat<F> schouten_bracket_rep(const Mat<F>& r)
{
    if (r.size() != 4) throw std::invalid_argument("schouten_bracket_rep expects a 4x4 matrix");
    if (!(sigma(r) + r).is_zero()) throw std::invalid_argument("r is not antisymmetric under the flip");
    const Mat<F> r12 = leg12(r), r13 = leg13(r), r23 = leg23(r);
    return commutator(r12, r13) + commutator(r12, r23) + commutator(r13, r23);
}

/// ad^{(x)3}_X applied to an 8x8 tensor, for X = H, X+, X-; returns the three commutators.
inline std::array<RMat, 3> ad3_residuals(const RMat& tensor)
{
    std::array<RMat, 3> out;
    const RMat I = RMat::identity(2);
    int k = 0;
    for (const auto& x : sl2_basis()) {
        const RMat X = rho(x);
        const RMat D = kron(kron(X, I), I) + kron(kron(I, X), I) + kron(kron(I, I), X);
        out[static_cast<std::size_t>(k++)] = commutator(D, tensor);
    }
    return out;
}

/// [[r, r]] + [t13, t23]; zero when t fixes the Schouten bracket.
inline RMat t_identity_residual()
{
    const RMat t = t_hat();
    return schouten_bracket_rep(r_hat()) + commutator(leg13(t), leg23(t));
}

/// Commutative polynomial in a, b, c, d with rational coefficients.
class SkPoly {
public:
    using Exps = std::array<int, 4>;

    SkPoly() = default;
    SkPoly(long c) : SkPoly(Rational(c)) {} // NOLINT(google-explicit-constructor)
    SkPoly(const Rational& c) // NOLINT(google-explicit-constructor)
    {
        if (sgn(c) != 0) t_[Exps{}] = c;
    }
    /// Generator 0..3 for a, b, c, d.
    static SkPoly gen(int i)
    {
        SkPoly p;
        Exps e{};
        e[static_cast<std::size_t>(i)] = 1;
        p.t_[e] = 1;
        return p;
    }
    static SkPoly monomial(const Exps& e, const Rational& c)
    {
        SkPoly p;
        if (sgn(c) != 0) p.t_[e] = c;
        return p;
    }

    const std::map<Exps, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    friend SkPoly operator+(SkPoly a, const SkPoly& b)
    {
        for (const auto& [e, c] : b.t_) a.add(e, c);
        return a;
    }
    friend SkPoly operator-(SkPoly a, const SkPoly& b)
    {
        for (const auto& [e, c] : b.t_) a.add(e, -c);
        return a;
    }
    friend SkPoly operator*(const SkPoly& a, const SkPoly& b)
    {
        SkPoly r;
        for (const auto& [e1, c1] : a.t_)
            for (const auto& [e2, c2] : b.t_) {
                Exps e;
                for (int i = 0; i < 4; ++i) e[static_cast<std::size_t>(i)] = e1[static_cast<std::size_t>(i)] + e2[static_cast<std::size_t>(i)];
                r.add(e, c1 * c2);
            }
        return r;
    }
    SkPoly& operator+=(const SkPoly& o) { return *this = *this + o; }
    friend bool operator==(const SkPoly& a, const SkPoly& b) { return a.t_ == b.t_; }

    SkPoly derivative(int i) const
    {
        SkPoly r;
        for (const auto& [e, c] : t_) {
            const int k = e[static_cast<std::size_t>(i)];
            if (k == 0) continue;
            Exps f = e;
            --f[static_cast<std::size_t>(i)];
            r.add(f, c * k);
        }
        return r;
    }

    /// "a*d - b*c"; terms in descending lexicographic exponent order.
    std::string str() const
    {
        std::vector<std::pair<Rational, std::string>> out;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            std::string m;
            for (int i = 0; i < 4; ++i)
                for (int k = 0; k < it->first[static_cast<std::size_t>(i)]; ++k) m += std::string(m.empty() ? "" : "*") + "abcd"[i];
            out.emplace_back(it->second, m);
        }
        return detail::format_sum(out);
    }

private:
    void add(const Exps& e, const Rational& c)
    {
        Rational& x = t_[e];
        x += c;
        if (sgn(x) == 0) t_.erase(e);
    }
    std::map<Exps, Rational> t_;
};

inline bool is_zero(const SkPoly& p) { return p.is_zero(); }
inline std::string field_string(const SkPoly& p) { return p.str(); }

using SkTable = std::array<std::array<SkPoly, 4>, 4>;

/// The Sklyanin brackets {x, y} of the SL(2) coordinates, completed by antisymmetry.
inline SkTable sklyanin_table()
{
    const SkPoly a = SkPoly::gen(0), b = SkPoly::gen(1), c = SkPoly::gen(2), d = SkPoly::gen(3);
    SkTable t{};
    auto set = [&t](int i, int j, const SkPoly& v) {
        t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
        t[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = SkPoly(0) - v;
    };
    set(0, 1, a * b);
    set(0, 2, a * c);
    set(0, 3, SkPoly(2) * b * c);
    set(1, 2, SkPoly(0));
    set(1, 3, b * d);
    set(2, 3, c * d);
    return t;
}

/// {T (x), T} = [r, T (x) T] read entrywise: entry (2i+k, 2j+l) is {t_ij, t_kl}.
inline Mat<SkPoly> sklyanin_matrix(const RMat& r)
{
    Mat<SkPoly> TT(4), R(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) TT(2 * i + k, 2 * j + l) = SkPoly::gen(2 * i + j) * SkPoly::gen(2 * k + l);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) R(i, j) = SkPoly(r(i, j));
    return R * TT - TT * R;
}

/// Number of generator pairs where the r-matrix computation disagrees with the table (each pair may appear several times).
inline int sklyanin_table_mismatches(const RMat& r, const SkTable& table)
{
    const Mat<SkPoly> C = sklyanin_matrix(r);
    int bad = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    if (!(C(2 * i + k, 2 * j + l) == table[static_cast<std::size_t>(2 * i + j)][static_cast<std::size_t>(2 * k + l)])) ++bad;
    return bad;
}

/// {f, g} = sum_{x,y} df/dx dg/dy {x, y}.
inline SkPoly sklyanin_bracket(const SkPoly& f, const SkPoly& g, const SkTable& table = sklyanin_table())
{
    SkPoly r;
    for (int x = 0; x < 4; ++x) {
        const SkPoly fx = f.derivative(x);
        if (fx.is_zero()) continue;
        for (int y = 0; y < 4; ++y) {
            const SkPoly& xy = table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
            if (xy.is_zero()) continue;
            r += fx * g.derivative(y) * xy;
        }
    }
    return r;
}

/// Generator triples whose cyclic Jacobi sum is not identically zero.
inline int sklyanin_jacobi_failures(const SkTable& table = sklyanin_table())
{
    int fails = 0;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            for (int z = 0; z < 4; ++z) {
                const SkPoly X = SkPoly::gen(x), Y = SkPoly::gen(y), Z = SkPoly::gen(z);
                const SkPoly j = sklyanin_bracket(sklyanin_bracket(X, Y, table), Z, table) + sklyanin_bracket(sklyanin_bracket(Y, Z, table), X, table) +
                                 sklyanin_bracket(sklyanin_bracket(Z, X, table), Y, table);
                if (!j.is_zero()) ++fails;
            }
    return fails;
}

inline SkPoly classical_determinant() { return SkPoly::gen(0) * SkPoly::gen(3) - SkPoly::gen(1) * SkPoly::gen(2); }

} // namespace dq::pl
