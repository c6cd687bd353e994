#pragma once

// Moyal star product and brackets as terminating series on polynomials.
//
//   f * g = sum_k (1/k!) c^k P^k(f, g)
//
// where P^k is the k-th Poisson bidifferential power and c = -i/2 multiplies
// the formal parameter (hbar convention, the default) or c = 1/2 (generic
// deformation convention f*g = fg + (h/2){f,g} + ..., which is the same
// product with h = -i hbar). With [Q, P] = i hbar the Weyl map carries the
// hbar convention to the opposite operator product; `weyl` flips the sign of
// the step so that W(f*g) = W(f) W(g).

#include "dq/exact/hbar_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dq {

enum class StarConvention {
    hbar,        ///< f e^{-i hbar P / 2} g
    deformation, ///< f e^{h P / 2} g
    weyl,        ///< f e^{+i hbar P / 2} g
};

inline Complex star_step(StarConvention conv)
{
    switch (conv) {
    case StarConvention::hbar: return {Rational(0), Rational(-1, 2)};
    case StarConvention::weyl: return {Rational(0), Rational(1, 2)};
    default: return Complex(Rational(1, 2));
    }
}

namespace detail {

// Adds hbar^offset * (f * g) into `out`, dropping orders above out.order().
inline void accumulate_star(HbarSeries& out, const PhasePoly& f, const PhasePoly& g, int offset, StarConvention conv)
{
    const Complex step = star_step(conv);
    const int kmax = std::min(out.order() - offset, std::min(f.degree(), g.degree()));
    Complex c(1);
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0) c = c * step / Complex(Rational(k));
        PhasePoly term = bidiff_power(f, g, k);
        if (!term.is_zero()) out[offset + k] += term * c;
    }
}

} // namespace detail

/// Star product of two hbar-free polynomials, truncated at `order`.
inline HbarSeries moyal_star(const PhasePoly& f, const PhasePoly& g, int order,
                             StarConvention conv = StarConvention::hbar)
{
    f.check_dim(g);
    HbarSeries out(f.dimension(), order);
    detail::accumulate_star(out, f, g, 0, conv);
    return out;
}

inline HbarSeries moyal_star(const HbarSeries& f, const HbarSeries& g, StarConvention conv = StarConvention::hbar)
{
    f.check(g);
    HbarSeries out(f.dimension(), f.order());
    for (int a = 0; a <= f.order(); ++a) {
        if (f[a].is_zero()) continue;
        for (int b = 0; a + b <= f.order(); ++b) {
            if (!g[b].is_zero()) detail::accumulate_star(out, f[a], g[b], a + b, conv);
        }
    }
    return out;
}

/// f*g - g*f, the deformed bracket without normalization.
inline HbarSeries star_commutator(const HbarSeries& f, const HbarSeries& g,
                                  StarConvention conv = StarConvention::hbar)
{
    return moyal_star(f, g, conv) - moyal_star(g, f, conv);
}

/// (f*g - g*f) / (-i hbar). The top order of the result is lost to the division and left zero.
inline HbarSeries moyal_bracket(const HbarSeries& f, const HbarSeries& g)
{
    HbarSeries comm = star_commutator(f, g);
    if (!comm[0].is_zero()) throw std::logic_error("star commutator has a nonzero hbar^0 part");
    HbarSeries out(f.dimension(), f.order());
    const Complex inv = Complex(1) / Complex(Rational(0), Rational(-1));
    for (int k = 1; k <= f.order(); ++k) out[k - 1] = comm[k] * inv;
    return out;
}

/// 2n x 2n rational matrix acting on (q_1..q_n, p_1..p_n).
using RationalMatrix = std::vector<std::vector<Rational>>;

inline RationalMatrix symplectic_form(int n)
{
    RationalMatrix J(2 * n, std::vector<Rational>(2 * n));
    for (int i = 0; i < n; ++i) {
        J[i][n + i] = 1;
        J[n + i][i] = -1;
    }
    return J;
}

inline RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b)
{
    const std::size_t m = a.size();
    RationalMatrix c(m, std::vector<Rational>(b[0].size()));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline RationalMatrix transpose(const RationalMatrix& a)
{
    RationalMatrix t(a[0].size(), std::vector<Rational>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline bool is_symplectic(const RationalMatrix& S)
{
    const int n = static_cast<int>(S.size()) / 2;
    return multiply(multiply(transpose(S), symplectic_form(n)), S) == symplectic_form(n);
}

/// Exact inverse of a symplectic matrix: S^{-1} = -J S^T J.
inline RationalMatrix symplectic_inverse(const RationalMatrix& S)
{
    const int n = static_cast<int>(S.size()) / 2;
    RationalMatrix J = symplectic_form(n);
    RationalMatrix r = multiply(multiply(J, transpose(S)), J);
    for (auto& row : r)
        for (auto& x : row) x = -x;
    return r;
}

/// Largest coefficient modulus (as a double) of (f*g)∘S^{-1} - (f∘S^{-1}) * (g∘S^{-1}).
inline double symplectic_equivariance_residual(const PhasePoly& f, const PhasePoly& g, const RationalMatrix& S)
{
    f.check_dim(g);
    if (static_cast<int>(S.size()) != 2 * f.dimension()) throw std::invalid_argument("matrix size must be 2n");
    if (!is_symplectic(S)) throw std::invalid_argument("matrix is not symplectic");
    const RationalMatrix inv = symplectic_inverse(S);
    const int order = std::min(f.degree(), g.degree()) + 1;
    HbarSeries lhs = moyal_star(f, g, order);
    for (int k = 0; k <= order; ++k) lhs[k] = lhs[k].substitute_linear(inv);
    HbarSeries rhs = moyal_star(f.substitute_linear(inv), g.substitute_linear(inv), order);
    HbarSeries diff = lhs - rhs;
    double worst = 0;
    for (int k = 0; k <= order; ++k)
        for (const auto& [e, c] : diff[k].terms())
            worst = std::max(worst, std::hypot(c.re.get_d(), c.im.get_d()));
    return worst;
}

} // namespace dq
