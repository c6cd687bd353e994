#pragma once

// Weyl correspondence on the Hermite basis through Grossmann-Royer operators
//
//   [Omega(p,q) psi](x) = 2 e^{2i p (x-q) / hbar} psi(2q - x),
//   W_f = (2 pi hbar)^{-1} int f(p,q) Omega(p,q) dp dq,   W^{-1}(A)(p,q) = Tr[Omega(p,q) A].
//
// Matrix elements use x = q + sqrt(hbar) y on the Gauss-Hermite nodes y_k:
//
//   Omega_mn(p,q) = 2 sqrt(hbar) sum_k w_k psi_m(q + sqrt(hbar) y_k) e^{2i p y_k / sqrt(hbar)} psi_n(q - sqrt(hbar) y_k).
//
// Everything at fixed q shares the two psi tables, so the map and its inverse
// run row by row in q.

#include "dq/exact/moyal.hpp"
#include "dq/numeric/operator.hpp"
#include "dq/numeric/phase_grid.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dq::numeric {

/// Heuristic region where the first M Hermite functions resolve Omega(p,q).
inline bool resolved(const HermiteBasis& basis, double p, double q)
{
    return p * p + q * q <= basis.hbar() * basis.size();
}

namespace detail {

// psi tables at q +- sqrt(hbar) y_k and the node weights 2 sqrt(hbar) w_k.
struct ReflectionRow {
    Eigen::MatrixXd plus, minus;
    Eigen::VectorXd weight;
    Eigen::VectorXd y;

    ReflectionRow(const HermiteBasis& b, double q)
    {
        const auto& rule = b.quadrature();
        const int K = b.quad_order();
        const double s = std::sqrt(b.hbar());
        std::vector<double> xp(K), xm(K);
        weight.resize(K);
        y.resize(K);
        for (int k = 0; k < K; ++k) {
            y[k] = rule.nodes[k];
            xp[k] = q + s * rule.nodes[k];
            xm[k] = q - s * rule.nodes[k];
            weight[k] = 2 * s * rule.scaled_weights[k];
        }
        plus = b.table(xp);
        minus = b.table(xm);
    }
};

// phase[j, k] = e^{2i p_j y_k / sqrt(hbar)}
inline Eigen::MatrixXcd momentum_phases(const HermiteBasis& b, const std::vector<double>& ps)
{
    const auto& y = b.quadrature().nodes;
    const double s = std::sqrt(b.hbar());
    Eigen::MatrixXcd e(static_cast<Eigen::Index>(ps.size()), static_cast<Eigen::Index>(y.size()));
    for (std::size_t j = 0; j < ps.size(); ++j)
        for (std::size_t k = 0; k < y.size(); ++k) e(j, k) = std::polar(1.0, 2 * ps[j] * y[k] / s);
    return e;
}

// g_k = sum_{m,n} psi_m(q + s y_k) A_nm psi_n(q - s y_k), times the node weight
inline Eigen::VectorXcd trace_kernel(const ReflectionRow& row, const OperatorMatrix& A)
{
    Eigen::MatrixXd Br = A.real() * row.plus, Bi = A.imag() * row.plus;
    Eigen::VectorXcd g(Br.cols());
    for (Eigen::Index k = 0; k < Br.cols(); ++k)
        g[k] = row.weight[k] * cplx(row.minus.col(k).dot(Br.col(k)), row.minus.col(k).dot(Bi.col(k)));
    return g;
}

} // namespace detail

/// Omega(p,q) in the first M Hermite functions. Appends a note to `warnings` outside the resolved region.
inline OperatorMatrix grossmann_royer(const HermiteBasis& basis, double p, double q,
                                     std::vector<std::string>* warnings = nullptr)
{
    if (warnings && !resolved(basis, p, q))
        warnings->push_back("grossmann_royer: (p,q) = (" + std::to_string(p) + "," + std::to_string(q) +
                            ") is outside the region resolved by the basis");
    detail::ReflectionRow row(basis, q);
    Eigen::MatrixXcd ph = detail::momentum_phases(basis, {p});
    Eigen::VectorXcd d = row.weight.cast<cplx>().cwiseProduct(ph.row(0).transpose());
    return row.plus.cast<cplx>() * d.asDiagonal() * row.minus.transpose().cast<cplx>();
}

/// W_f as the Riemann sum (2 pi hbar)^{-1} sum f Omega dp dq over the grid.
inline OperatorMatrix weyl_map(const HermiteBasis& basis, const PhaseGrid& f, double decay_tol = 1e-12)
{
    const GridSpec& g = f.spec();
    if (f.boundary_max() > decay_tol * std::max(1.0, f.max_abs()))
        throw std::domain_error("weyl_map: symbol does not decay at the grid boundary");
    std::vector<double> ps(g.np);
    for (int j = 0; j < g.np; ++j) ps[j] = g.p(j);
    const Eigen::MatrixXcd E = detail::momentum_phases(basis, ps);
    const int M = basis.size();
    Eigen::MatrixXd Wre = Eigen::MatrixXd::Zero(M, M), Wim = Eigen::MatrixXd::Zero(M, M);
    for (int i = 0; i < g.nq; ++i) {
        Eigen::Map<const Eigen::RowVectorXcd> frow(&f(i, 0), g.np);
        if (frow.cwiseAbs().maxCoeff() == 0) continue;
        detail::ReflectionRow row(basis, g.q(i));
        Eigen::VectorXcd d = (frow * E).transpose().cwiseProduct(row.weight.cast<cplx>());
        // the psi tables are real: two real products instead of one complex one
        Wre.noalias() += row.plus * d.real().asDiagonal() * row.minus.transpose();
        Wim.noalias() += row.plus * d.imag().asDiagonal() * row.minus.transpose();
    }
    OperatorMatrix W(M, M);
    W.real() = Wre;
    W.imag() = Wim;
    return W * (g.cell() / (2 * std::numbers::pi * basis.hbar()));
}

/// Tr[Omega(p,q) A] on every grid point.
inline PhaseGrid weyl_inverse(const HermiteBasis& basis, const OperatorMatrix& A, const GridSpec& g)
{
    if (A.rows() != basis.size() || A.cols() != basis.size()) throw std::invalid_argument("operator size does not match basis");
    PhaseGrid out(g);
    std::vector<double> ps(g.np);
    for (int j = 0; j < g.np; ++j) ps[j] = g.p(j);
    const Eigen::MatrixXcd E = detail::momentum_phases(basis, ps);
    for (int i = 0; i < g.nq; ++i) {
        detail::ReflectionRow row(basis, g.q(i));
        Eigen::VectorXcd v = E * detail::trace_kernel(row, A);
        for (int j = 0; j < g.np; ++j) out(i, j) = v[j];
    }
    return out;
}

struct PhasePoint {
    double q, p;
};

/// Tr[Omega(p,q) A] at scattered points; points sharing a q value share the psi tables.
inline std::vector<cplx> weyl_inverse_at(const HermiteBasis& basis, const OperatorMatrix& A, const std::vector<PhasePoint>& pts)
{
    std::map<double, std::vector<std::size_t>> by_q;
    for (std::size_t i = 0; i < pts.size(); ++i) by_q[pts[i].q].push_back(i);
    std::vector<cplx> out(pts.size());
    for (const auto& [q, idx] : by_q) {
        detail::ReflectionRow row(basis, q);
        std::vector<double> ps;
        for (auto i : idx) ps.push_back(pts[i].p);
        Eigen::VectorXcd v = detail::momentum_phases(basis, ps) * detail::trace_kernel(row, A);
        for (std::size_t j = 0; j < idx.size(); ++j) out[idx[j]] = v[static_cast<Eigen::Index>(j)];
    }
    return out;
}

/// Wigner function of a pure state given by Hermite coefficients, normalized so that
/// int rho dp dq / (2 pi hbar) = 1.
inline PhaseGrid wigner_from_state(const HermiteBasis& basis, const Eigen::VectorXcd& coeffs, const GridSpec& g)
{
    if (coeffs.size() != basis.size()) throw std::invalid_argument("state size does not match basis");
    if (std::abs(coeffs.squaredNorm() - 1) > 1e-10) throw std::domain_error("wigner_from_state: state is not normalized");
    return weyl_inverse(basis, coeffs * coeffs.adjoint(), g);
}

/// rho(p,q) = int du e^{i u p / hbar} psi*(q + u/2) psi(q - u/2), trapezoid rule on [-u_max, u_max].
template <class Psi>
PhaseGrid wigner_from_samples(const Psi& psi, double hbar, const GridSpec& g, double u_max, int nu)
{
    PhaseGrid out(g);
    const double du = 2 * u_max / (nu - 1);
    for (int i = 0; i < g.nq; ++i) {
        const double q = g.q(i);
        std::vector<cplx> prod(nu);
        for (int k = 0; k < nu; ++k) {
            const double u = -u_max + k * du;
            prod[k] = std::conj(cplx(psi(q + u / 2))) * cplx(psi(q - u / 2)) * (k == 0 || k == nu - 1 ? 0.5 : 1.0);
        }
        for (int j = 0; j < g.np; ++j) {
            cplx s = 0;
            for (int k = 0; k < nu; ++k) s += std::polar(1.0, (-u_max + k * du) * g.p(j) / hbar) * prod[k];
            out(i, j) = s * du;
        }
    }
    return out;
}

struct SmearedTrace {
    cplx smeared;  ///< int int f(x) g(x') Tr[Omega(x) Omega(x')]
    cplx direct;   ///< 2 pi hbar int f g
    double relative;
};

/// Smeared form of Tr[Omega(x) Omega(x')] = 2 pi hbar delta(x - x').
inline SmearedTrace smeared_trace_product(const HermiteBasis& basis, const PhaseGrid& f, const PhaseGrid& g)
{
    if (!(f.spec() == g.spec())) throw std::invalid_argument("grids differ");
    const double scale = 2 * std::numbers::pi * basis.hbar();
    OperatorMatrix Wf = weyl_map(basis, f), Wg = weyl_map(basis, g);
    cplx lhs = scale * scale * (Wf * Wg).trace();
    cplx s = 0;
    for (std::size_t k = 0; k < f.values().size(); ++k) s += f.values()[k] * g.values()[k];
    cplx rhs = scale * s * f.spec().cell();
    const double denom = std::max(std::abs(rhs), std::abs(lhs));
    return {lhs, rhs, denom == 0 ? 0.0 : std::abs(lhs - rhs) / denom};
}

/// Radial window 0.5 erfc((r - r0) / width).
struct Window {
    double r0 = 6.0;
    double width = 0.8;
    double operator()(double q, double p) const { return 0.5 * std::erfc((std::hypot(q, p) - r0) / width); }
};

struct CrossValidation {
    double residual = 0;   ///< max |numeric - exact| / max |exact| on the trusted disc
    double max_exact = 0;
    int points = 0;
};

/// Compares W^{-1}(W_f W_g) with the exact star product f * g at numeric hbar, on |x| <= trusted.
/// The operator product realizes the `weyl` sign of the series, see moyal.hpp.
inline CrossValidation cross_validate_star(const HermiteBasis& basis, const PhasePoly& f, const PhasePoly& g,
                                           const GridSpec& grid, Window win = {}, double trusted = 2.0)
{
    auto windowed = [&](const PhasePoly& h) {
        return PhaseGrid::sample(grid, [&](double q, double p) { return h.evaluate(q, p) * win(q, p); });
    };
    OperatorMatrix A = weyl_map(basis, windowed(f)) * weyl_map(basis, windowed(g));
    const int order = std::max(0, std::min(f.degree(), g.degree()));
    HbarSeries exact = moyal_star(f, g, order, StarConvention::weyl);

    std::vector<PhasePoint> pts;
    for (int i = 0; i < grid.nq; ++i)
        for (int j = 0; j < grid.np; ++j)
            if (std::hypot(grid.q(i), grid.p(j)) <= trusted) pts.push_back({grid.q(i), grid.p(j)});
    std::vector<cplx> num = weyl_inverse_at(basis, A, pts);

    CrossValidation cv;
    double worst = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        cplx ex = 0;
        for (int h = 0; h <= order; ++h) ex += exact[h].evaluate(pts[k].q, pts[k].p) * std::pow(basis.hbar(), h);
        cv.max_exact = std::max(cv.max_exact, std::abs(ex));
        worst = std::max(worst, std::abs(num[k] - ex));
    }
    cv.points = static_cast<int>(pts.size());
    cv.residual = cv.max_exact > 0 ? worst / cv.max_exact : worst;
    return cv;
}

} // namespace dq::numeric
