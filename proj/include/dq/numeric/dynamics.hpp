#pragma once

// Phase-space dynamics of a Weyl-quantized polynomial Hamiltonian:
//
//   Xi(t) = W^{-1}(e^{-i t W_H / hbar}),   i hbar d/dt Xi = H * Xi,
//   Gamma(E) = (2 pi hbar)^{-1} int dt w(t) Xi(t) e^{+i t E / hbar}.
//
// Traces are regularized with the mode filter F: Xi(t) = Tr[Omega U(t) F].

#include "dq/numeric/weyl.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace dq::numeric {

/// Eigen-decomposition of a Hermitian truncated Hamiltonian.
class Spectrum {
public:
    Spectrum(const HermiteBasis& basis, const PhasePoly& H) : hbar_(basis.hbar()), filter_(mode_filter(basis.size()))
    {
        OperatorMatrix W = operator_from_poly(basis, H);
        if (hermitian_residual(W) > 1e-12) throw std::invalid_argument("Hamiltonian symbol is not real");
        Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(W);
        energies_ = es.eigenvalues();
        vectors_ = es.eigenvectors();
    }

    const Eigen::VectorXd& energies() const { return energies_; }
    const OperatorMatrix& vectors() const { return vectors_; }
    const OperatorMatrix& filter() const { return filter_; }

    /// V diag(g(E_n)) V^dagger F
    template <class G>
    OperatorMatrix apply(const G& g) const
    {
        Eigen::VectorXcd d(energies_.size());
        for (Eigen::Index n = 0; n < d.size(); ++n) d[n] = g(energies_[n]);
        return vectors_ * d.asDiagonal() * vectors_.adjoint() * filter_;
    }

    OperatorMatrix evolution(double t) const
    {
        return apply([&](double E) { return std::polar(1.0, -t * E / hbar_); });
    }

    /// Smallest spacing among the first `levels` energies.
    double gap(int levels) const
    {
        double g = INFINITY;
        for (int n = 0; n + 1 < std::min<int>(levels, static_cast<int>(energies_.size())); ++n)
            g = std::min(g, energies_[n + 1] - energies_[n]);
        return g;
    }

private:
    double hbar_;
    OperatorMatrix filter_;
    Eigen::VectorXd energies_;
    OperatorMatrix vectors_;
};

inline PhasePoly harmonic_hamiltonian()
{
    return (PhasePoly::q(1) * PhasePoly::q(1) + PhasePoly::p(1) * PhasePoly::p(1)) * Complex(make_rational(1, 2));
}

inline void check_propagator_time(double t)
{
    if (std::abs(std::cos(t / 2)) <= 0.1) throw std::domain_error("propagator time too close to a sec(t/2) singularity");
}

/// Xi_H(p, q, t) for H = (p^2 + q^2) / 2.
inline PhaseGrid moyal_propagator_ho(const HermiteBasis& basis, double t, const GridSpec& g)
{
    check_propagator_time(t);
    Spectrum s(basis, harmonic_hamiltonian());
    return weyl_inverse(basis, s.evolution(t), g);
}

/// Closed form sec(t/2) exp(-(2i/hbar) tan(t/2) H) for the oscillator.
inline cplx propagator_ho_exact(double t, double q, double p, double hbar)
{
    return std::polar(1.0 / std::cos(t / 2), -2 * std::tan(t / 2) * (p * p + q * q) / 2 / hbar);
}

struct StarSchrodinger {
    double residual = 0;  ///< max |i hbar dXi/dt - H * Xi| / max |Xi| on the test points
    double max_xi = 0;
};

/// i hbar dXi/dt - H * Xi with centered differences (step `dt` in time, `delta` in phase space)
/// and the exact series H * Xi = sum_k (-i hbar/2)^k / k! P^k(H, Xi), which stops at k = 2 for quadratic H.
inline StarSchrodinger star_schrodinger_residual(const HermiteBasis& basis, const PhasePoly& H, double t,
                                                 const std::vector<PhasePoint>& pts, double dt = 0.005, double delta = 0.005)
{
    if (H.degree() > 2) throw std::invalid_argument("star-Schroedinger check needs a Hamiltonian of degree <= 2");
    check_propagator_time(t);
    const double hbar = basis.hbar();
    Spectrum s(basis, H);
    const OperatorMatrix U = s.evolution(t), Up = s.evolution(t + dt), Um = s.evolution(t - dt);

    // nine-point stencil around each test point
    std::vector<PhasePoint> stencil;
    for (const auto& x : pts)
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b) stencil.push_back({x.q + a * delta, x.p + b * delta});
    const std::vector<cplx> xi = weyl_inverse_at(basis, U, stencil);
    const std::vector<cplx> xp = weyl_inverse_at(basis, Up, pts), xm = weyl_inverse_at(basis, Um, pts);

    const PhasePoly Hq = H.derivative(0), Hp = H.derivative(1);
    const PhasePoly Hqq = H.derivative(0, 2), Hpp = H.derivative(1, 2), Hqp = H.derivative(0).derivative(1);
    const cplx step(0, -hbar / 2);
    StarSchrodinger out;
    double worst = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        auto at = [&](int a, int b) { return xi[9 * k + (a + 1) * 3 + (b + 1)]; };
        const cplx f = at(0, 0);
        const cplx fq = (at(1, 0) - at(-1, 0)) / (2 * delta), fp = (at(0, 1) - at(0, -1)) / (2 * delta);
        const cplx fqq = (at(1, 0) - 2.0 * f + at(-1, 0)) / (delta * delta);
        const cplx fpp = (at(0, 1) - 2.0 * f + at(0, -1)) / (delta * delta);
        const cplx fqp = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * delta * delta);
        const double q = pts[k].q, p = pts[k].p;
        const cplx P1 = Hq.evaluate(q, p) * fp - Hp.evaluate(q, p) * fq;
        const cplx P2 = Hqq.evaluate(q, p) * fpp - 2.0 * Hqp.evaluate(q, p) * fqp + Hpp.evaluate(q, p) * fqq;
        const cplx star = H.evaluate(q, p) * f + step * P1 + step * step / 2.0 * P2;
        const cplx lhs = cplx(0, hbar) * (xp[k] - xm[k]) / (2 * dt);
        worst = std::max(worst, std::abs(lhs - star));
        out.max_xi = std::max(out.max_xi, std::abs(f));
    }
    out.residual = out.max_xi > 0 ? worst / out.max_xi : worst;
    return out;
}

/// Fourier transform of the Hann window cos^2(pi t / 2T) on [-T, T] at frequency E / hbar.
inline double hann_transform(double E, double T, double hbar)
{
    auto sinc = [](double x) { return std::abs(x) < 1e-8 ? 1 - x * x / 6 : std::sin(x) / x; };
    const double a = E / hbar * T;
    return T * sinc(a) + T / 2 * (sinc(a + std::numbers::pi) + sinc(a - std::numbers::pi));
}

class SpectralProjector {
public:
    SpectralProjector(const HermiteBasis& basis, const PhasePoly& H, double T, int levels = 6)
        : basis_(basis), spectrum_(basis, H), T_(T)
    {
        const double gap = spectrum_.gap(levels + 1);
        if (T < 4 * std::numbers::pi * basis.hbar() / gap)
            throw std::domain_error("time window too short to resolve the level spacing");
    }

    OperatorMatrix op(double E) const
    {
        const double hbar = basis_.hbar();
        return spectrum_.apply([&](double En) { return cplx(hann_transform(E - En, T_, hbar)); }) /
               (2 * std::numbers::pi * hbar);
    }

    PhaseGrid grid(double E, const GridSpec& g) const { return weyl_inverse(basis_, op(E), g); }

    /// int Gamma(E) dp dq / (2 pi hbar) = Tr of the projector, without a grid.
    double trace(double E) const { return op(E).trace().real(); }

    /// Local maxima of trace(E) on [e_min, e_max], refined by a parabola through the top three samples.
    std::vector<double> peaks(double e_min, double e_max, double step) const
    {
        std::vector<double> es, tr;
        for (double e = e_min; e <= e_max + 1e-12; e += step) {
            es.push_back(e);
            tr.push_back(trace(e));
        }
        std::vector<double> out;
        for (std::size_t k = 1; k + 1 < es.size(); ++k) {
            if (tr[k] > tr[k - 1] && tr[k] >= tr[k + 1] && tr[k] > 0.5 * tr_max(tr)) {
                const double denom = tr[k - 1] - 2 * tr[k] + tr[k + 1];
                out.push_back(es[k] + (denom != 0 ? 0.5 * step * (tr[k - 1] - tr[k + 1]) / denom : 0.0));
            }
        }
        return out;
    }

    const Spectrum& spectrum() const { return spectrum_; }

private:
    static double tr_max(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

    const HermiteBasis& basis_;
    Spectrum spectrum_;
    double T_;
};

/// Gamma_H(p, q, E) for the oscillator over t in [-T, T].
inline PhaseGrid spectral_projection_ho(const HermiteBasis& basis, double E, double T, const GridSpec& g)
{
    return SpectralProjector(basis, harmonic_hamiltonian(), T).grid(E, g);
}

} // namespace dq::numeric
