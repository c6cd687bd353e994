#pragma once

// Galilei group G(1,1) with elements (b, a, v): time translation, space
// translation, boost. Orbit O_alpha = {p = alpha} with canonical coordinates
// p = h, q = k / alpha; PUIR on L^2(R) in the velocity variable w.
//
// The kernel family
//
//   [Omega(p,q) psi](w) = 2 e^{i phi(w + p/alpha)} e^{2i alpha q (w + p/alpha)} psi(-w - 2p/alpha)
//
// is U(s(p,q)) Omega(0,0) U(s(p,q))^{-1} with Omega(0,0) psi(w) = 2 e^{i phi(w)} psi(-w).
// For phi = 0 it is the Grossmann-Royer operator at (x, xi) = (-p/alpha, q)
// with hbar = 1/alpha.

#include "dq/numeric/operator.hpp"
#include "dq/numeric/phase_grid.hpp"
#include "dq/sw/affine.hpp"
#include "dq/sw/report.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dq::sw {

using numeric::GridSpec;
using numeric::HermiteBasis;
using numeric::OperatorMatrix;
using numeric::PhaseGrid;

struct GalileiElement {
    double b = 0, a = 0, v = 0;
};

inline GalileiElement galilei_compose(const GalileiElement& g1, const GalileiElement& g2)
{
    return {g1.b + g2.b, g1.a + g2.a + g1.v * g2.b, g1.v + g2.v};
}

inline GalileiElement galilei_inverse(const GalileiElement& g) { return {-g.b, -g.a + g.v * g.b, -g.v}; }

/// A point h H* + p P* + k K* of the dual of the Lie algebra.
struct DualPoint {
    double h = 0, p = 0, k = 0;
};

inline DualPoint galilei_coadjoint(const GalileiElement& g, const DualPoint& x)
{
    return {x.h - g.v * x.p, x.p, g.b * x.p + x.k};
}

struct GalileiOrbitPoint {
    double p = 0, q = 0;
};

inline DualPoint galilei_dual(const GalileiOrbitPoint& x, double alpha) { return {x.p, alpha, alpha * x.q}; }

inline GalileiOrbitPoint galilei_canonical(const DualPoint& x)
{
    if (x.p == 0) throw std::invalid_argument("p = 0 is not on a two-dimensional orbit");
    return {x.h, x.k / x.p};
}

/// g . x in canonical coordinates.
inline GalileiOrbitPoint galilei_act(const GalileiElement& g, const GalileiOrbitPoint& x, double alpha)
{
    return galilei_canonical(galilei_coadjoint(g, galilei_dual(x, alpha)));
}

inline GalileiElement galilei_section(double p, double q, double alpha) { return {q, 0, -p / alpha}; }

/// [U(b,a,v) psi](w) = e^{-i alpha (a - b w)} psi(w - v)
inline AffineOp galilei_puir_op(const GalileiElement& g, double alpha)
{
    AffineOp U;
    U.chi = [=](double w) { return std::polar(1.0, -alpha * (g.a - g.b * w)); };
    U.shift = -g.v;
    return U;
}

inline LineState galilei_puir(const GalileiElement& g, double alpha, const LineState& psi)
{
    return apply(galilei_puir_op(g, alpha), psi);
}

struct GalileiKernel {
    std::string id = "galilei-phi0";
    double alpha = 1;
    std::function<double(double)> phi = [](double) { return 0.0; };
};

inline GalileiKernel galilei_kernel_phi0(double alpha = 1) { return {"galilei-phi0", alpha, [](double) { return 0.0; }}; }

/// phi(w) = pi (floor|w| mod 2): a square wave with phi(w) + phi(-w) in 2 pi Z and phi(0) = 0.
inline GalileiKernel galilei_kernel_square_wave(double alpha = 1)
{
    return {"galilei-square-wave", alpha, [](double w) {
                return std::numbers::pi * static_cast<double>(static_cast<long long>(std::floor(std::abs(w))) % 2);
            }};
}

struct PhaseConstraints {
    double hermiticity = 0; ///< max distance of phi(w) + phi(-w) to 2 pi Z
    double unit_trace = 0;  ///< distance of phi(0) to 2 pi Z
    bool ok(double tol = 1e-9) const { return hermiticity <= tol && unit_trace <= tol; }
};

/// Samples w uniformly on [-range, range].
inline PhaseConstraints check_phase(const GalileiKernel& k, int samples = 1024, double range = 10)
{
    PhaseConstraints c;
    for (int i = 0; i < samples; ++i) {
        const double w = -range + 2 * range * (i + 0.5) / samples;
        c.hermiticity = std::max(c.hermiticity, distance_to_2pi_z(k.phi(w) + k.phi(-w)));
    }
    c.unit_trace = distance_to_2pi_z(k.phi(0));
    return c;
}

inline AffineOp galilei_kernel_op(const GalileiKernel& k, double p, double q)
{
    const double c = p / k.alpha, al = k.alpha;
    auto phi = k.phi;
    AffineOp O;
    O.chi = [=](double w) { return 2.0 * std::polar(1.0, phi(w + c) + 2 * al * q * (w + c)); };
    O.sign = -1;
    O.shift = -2 * c;
    return O;
}

inline LineState galilei_sw_kernel(const GalileiKernel& k, double p, double q, const LineState& psi)
{
    if (!check_phase(k).ok()) throw std::invalid_argument("phase function violates the kernel constraints");
    return apply(galilei_kernel_op(k, p, q), psi);
}

namespace detail {

// Gaussian wave packets with random centre, width and chirp; evaluated on [-8, 8].
struct PacketSet {
    std::vector<std::function<cplx(double)>> psi;
    std::vector<double> xs;

    PacketSet(std::mt19937_64& rng, int count)
    {
        std::uniform_real_distribution<double> c(-1.5, 1.5), s(0.7, 1.4), k(-2, 2);
        for (int i = 0; i < count; ++i) {
            const double w0 = c(rng), sig = s(rng), k0 = k(rng);
            psi.push_back([=](double w) { return std::exp(cplx(-0.5 * (w - w0) * (w - w0) / (sig * sig), k0 * w)); });
        }
        for (int i = 0; i <= 320; ++i) xs.push_back(-8 + 0.05 * i);
    }

    // max |(L - R) psi| / max |R psi|
    double compare(const AffineOp& L, const AffineOp& R) const
    {
        double num = 0, den = 0;
        for (const auto& f : psi)
            for (double x : xs) {
                const cplx r = R.apply(f, x);
                num = std::max(num, std::abs(L.apply(f, x) - r));
                den = std::max(den, std::abs(r));
            }
        return den == 0 ? num : num / den;
    }
};

} // namespace detail

/// max over random (g, x) of |U(g) Omega(x) U(g)^{-1} psi - Omega(g.x) psi| on wave packets.
inline double galilei_covariance_residual(const GalileiKernel& k, int samples = 50, unsigned seed = 1)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    detail::PacketSet tests(rng, 3);
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
        const GalileiElement g{u(rng), u(rng), u(rng)};
        const GalileiOrbitPoint x{u(rng), u(rng)};
        const AffineOp lhs = galilei_puir_op(g, k.alpha) * galilei_kernel_op(k, x.p, x.q) *
                             galilei_puir_op(galilei_inverse(g), k.alpha);
        const GalileiOrbitPoint gx = galilei_act(g, x, k.alpha);
        worst = std::max(worst, tests.compare(lhs, galilei_kernel_op(k, gx.p, gx.q)));
    }
    return worst;
}

/// |[U(X), Omega(0)]| for the isotropy generator X = P, by a central difference of U(0, a, 0).
inline double galilei_commutator_residual(const GalileiKernel& k, double eps = 1e-5)
{
    std::mt19937_64 rng(7);
    detail::PacketSet tests(rng, 3);
    const AffineOp A = galilei_kernel_op(k, 0, 0);
    const AffineOp Up = galilei_puir_op({0, eps, 0}, k.alpha), Um = galilei_puir_op({0, -eps, 0}, k.alpha);
    // (U_+ A - A U_+ - U_- A + A U_-) / 2 eps against A itself
    double num = 0, den = 0;
    for (const auto& f : tests.psi)
        for (double x : tests.xs) {
            const cplx c = ((Up * A).apply(f, x) - (A * Up).apply(f, x) - (Um * A).apply(f, x) + (A * Um).apply(f, x)) /
                           (2 * eps);
            num = std::max(num, std::abs(c));
            den = std::max(den, std::abs(A.apply(f, x)));
        }
    return num / den;
}

/// Kernel matrices, symbols and dequantization in the Hermite basis with hbar = 1/alpha.
///
/// Matrix elements use the midpoint rule on u = w + p/alpha with cells of width 1/n;
/// the grid is symmetric under the reflection w -> -w - 2p/alpha, so Hermiticity
/// holds exactly, and jumps of phi at integer u fall on cell edges.
class GalileiNumerics {
private:
    struct Row {
        int K;
        double c;
        Eigen::MatrixXd H; // psi_n(u_i - c), i = 0..2K-1
    };

    Row row(double p) const
    {
        const double hb = basis_.hbar(), c = p / k_.alpha;
        const double reach = std::sqrt(2 * size() * hb) + 10 * std::sqrt(hb) + std::abs(c);
        Row r{static_cast<int>(std::ceil(reach / dw_)), c, {}};
        std::vector<double> xs(2 * r.K);
        for (int i = 0; i < 2 * r.K; ++i) xs[i] = u(r, i) - c;
        r.H = basis_.table(xs);
        return r;
    }

    double u(const Row& r, int i) const { return (i - r.K + 0.5) * dw_; }
    cplx weight(const Row& r, int i) const { return 2 * dw_ * std::polar(1.0, k_.phi(u(r, i))); }

    // e^{2i alpha q u} for every grid q and every u cell up to the widest row
    struct Phases {
        int Kmax;
        Eigen::MatrixXcd table;
        Phases(const GalileiNumerics& n, const GridSpec& g)
        {
            const double hb = n.basis_.hbar();
            const double reach = std::sqrt(2 * n.size() * hb) + 10 * std::sqrt(hb) +
                                 std::max(std::abs(g.p_min), std::abs(g.p_max)) / n.k_.alpha;
            Kmax = static_cast<int>(std::ceil(reach / n.dw_)) + 1;
            table.resize(g.nq, 2 * Kmax);
            for (int i = 0; i < g.nq; ++i)
                for (int k = 0; k < 2 * Kmax; ++k) table(i, k) = std::polar(1.0, 2 * n.k_.alpha * g.q(i) * (k - Kmax + 0.5) * n.dw_);
        }
        auto block(const Row& r) const { return table.middleCols(Kmax - r.K, 2 * r.K); }
    };


public:
    GalileiNumerics(GalileiKernel k, int M, int cells_per_unit = 32)
        : k_(std::move(k)), basis_(M, 1.0 / k_.alpha), dw_(1.0 / cells_per_unit)
    {
        if (!check_phase(k_).ok()) throw std::invalid_argument("phase function violates the kernel constraints");
    }

    const GalileiKernel& kernel_family() const { return k_; }
    const HermiteBasis& basis() const { return basis_; }
    int size() const { return basis_.size(); }

    OperatorMatrix kernel(double p, double q) const
    {
        Row r = row(p);
        Eigen::VectorXcd chi(2 * r.K);
        for (int i = 0; i < 2 * r.K; ++i) chi[i] = weight(r, i) * std::polar(1.0, 2 * k_.alpha * q * u(r, i));
        return r.H.cast<cplx>() * chi.asDiagonal() * r.H.rowwise().reverse().transpose().cast<cplx>();
    }

    /// Tr[A Omega(p,q)] with q along the grid's q axis and p along its p axis.
    PhaseGrid symbol(const OperatorMatrix& A, const GridSpec& g) const
    {
        check(A);
        PhaseGrid out(g);
        const Phases E(*this, g);
        for (int j = 0; j < g.np; ++j) {
            Row r = row(g.p(j));
            const Eigen::MatrixXd Hr = r.H.rowwise().reverse();
            const Eigen::MatrixXd Br = A.real() * r.H, Bi = A.imag() * r.H;
            Eigen::VectorXcd gk(2 * r.K);
            for (int i = 0; i < 2 * r.K; ++i) gk[i] = weight(r, i) * cplx(Hr.col(i).dot(Br.col(i)), Hr.col(i).dot(Bi.col(i)));
            const Eigen::VectorXcd v = E.block(r) * gk;
            for (int i = 0; i < g.nq; ++i) out(i, j) = v[i];
        }
        return out;
    }

    /// sum f(x) Omega(x) mu dp dq over the grid; mu = 1/(2 pi) is the invariant measure constant.
    OperatorMatrix dequantize(const PhaseGrid& f, double mu = 1 / (2 * std::numbers::pi), double decay_tol = 1e-8) const
    {
        const GridSpec& g = f.spec();
        if (f.boundary_max() > decay_tol * std::max(1.0, f.max_abs()))
            throw std::domain_error("dequantize: symbol does not decay at the grid boundary");
        const int M = size();
        const Phases E(*this, g);
        Eigen::MatrixXd Wre = Eigen::MatrixXd::Zero(M, M), Wim = Eigen::MatrixXd::Zero(M, M);
        Eigen::VectorXcd col(g.nq);
        for (int j = 0; j < g.np; ++j) {
            for (int i = 0; i < g.nq; ++i) col[i] = f(i, j);
            if (col.cwiseAbs().maxCoeff() == 0) continue;
            Row r = row(g.p(j));
            Eigen::VectorXcd d = E.block(r).transpose() * col;
            for (int i = 0; i < 2 * r.K; ++i) d[i] *= weight(r, i);
            const Eigen::MatrixXd Hr = r.H.rowwise().reverse();
            Wre.noalias() += r.H * d.real().asDiagonal() * Hr.transpose();
            Wim.noalias() += r.H * d.imag().asDiagonal() * Hr.transpose();
        }
        OperatorMatrix W(M, M);
        W.real() = Wre;
        W.imag() = Wim;
        return W * (g.cell() * mu);
    }

    void check(const OperatorMatrix& A) const
    {
        if (A.rows() != size() || A.cols() != size()) throw std::invalid_argument("operator size does not match basis");
    }

    GalileiKernel k_;
    HermiteBasis basis_;
    double dw_;
};

/// Basis size, orbit box and grid of a Galilei orbit computation.
struct GalileiResolution {
    int M = 24;
    double half_width = 11;
    int points = 89;
    int cells_per_unit = 32;

    GridSpec grid() const { return GridSpec::square(half_width, points); }
    GalileiResolution refined() const { return {2 * M, half_width + 4, 2 * points + 41, cells_per_unit}; }
    std::string str() const
    {
        std::ostringstream s;
        s << "M=" << M << " box=" << half_width << " points=" << points << " cells/unit=" << cells_per_unit;
        return s.str();
    }
};

struct TracialityResult {
    double residual = 0;
    double calibrated_mu = 0; ///< least-squares measure constant; 1/(2 pi) in theory
};

/// || int dmu(x) Tr[Omega(y) Omega(x)] Omega(x) - Omega(y) || on the first `test_modes` Hermite
/// functions, relative and pooled over the points ys; the orbit integral is cut to the resolution's box.
/// Omega(y) inside the trace is regularized as F Omega(y) F with the smooth mode filter F.
inline TracialityResult galilei_traciality(const GalileiKernel& k, const GalileiResolution& res,
                                           const std::vector<GalileiOrbitPoint>& ys = {{}}, int test_modes = 6)
{
    GalileiNumerics N(k, res.M, res.cells_per_unit);
    const int m = std::min(test_modes, res.M);
    const OperatorMatrix F = numeric::mode_filter(res.M);
    const double mu = 1 / (2 * std::numbers::pi);
    double num = 0, den = 0, lr = 0, ll = 0;
    for (const auto& y : ys) {
        const OperatorMatrix Oy = N.kernel(y.p, y.q);
        const PhaseGrid T = N.symbol(F * Oy * F, res.grid());
        const OperatorMatrix L1 = N.dequantize(T, 1.0, INFINITY).topLeftCorner(m, m);
        const OperatorMatrix R = Oy.topLeftCorner(m, m);
        num += (mu * L1 - R).squaredNorm();
        den += R.squaredNorm();
        lr += L1.cwiseProduct(R.conjugate()).sum().real();
        ll += L1.squaredNorm();
    }
    return {std::sqrt(num / den), lr / ll};
}

/// Random Hermitian operators supported on the first m modes of an M-mode basis.
inline std::vector<OperatorMatrix> band_limited_operators(int M, int m, int count, unsigned seed = 11)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0, 1);
    std::vector<OperatorMatrix> out;
    for (int c = 0; c < count; ++c) {
        OperatorMatrix A = OperatorMatrix::Zero(M, M);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) A(i, j) = cplx(n(rng), n(rng));
        out.push_back((A + A.adjoint()) / 2);
    }
    return out;
}

/// int dmu(y) K(x,y) W(y) against W(x) for symbols W = Tr[A Omega] of band-limited A,
/// over the points xs (the origin alone gives the weaker variant).
inline double galilei_reproducing_residual(const GalileiKernel& k, const GalileiResolution& res,
                                           const std::vector<GalileiOrbitPoint>& xs, int count = 4, int band = 6)
{
    GalileiNumerics N(k, res.M, res.cells_per_unit);
    const GridSpec g = res.grid();
    const OperatorMatrix F = numeric::mode_filter(res.M);
    const auto As = band_limited_operators(res.M, std::min(band, res.M), count);
    std::vector<PhaseGrid> Ws;
    for (const auto& A : As) Ws.push_back(N.symbol(A, g));
    const double mu = 1 / (2 * std::numbers::pi);
    double num = 0, den = 0;
    for (const auto& x : xs) {
        const OperatorMatrix Ox = N.kernel(x.p, x.q);
        const PhaseGrid K = N.symbol(F * Ox * F, g);
        for (std::size_t a = 0; a < As.size(); ++a) {
            cplx lhs = 0;
            for (std::size_t i = 0; i < K.values().size(); ++i) lhs += K.values()[i] * Ws[a].values()[i];
            lhs *= mu * g.cell();
            const cplx rhs = (As[a] * Ox).trace();
            num += std::norm(lhs - rhs);
            den += std::norm(rhs);
        }
    }
    return std::sqrt(num / den);
}

/// Windowed trace Tr[F Omega(p,q)].
inline cplx galilei_unit_trace(const GalileiKernel& k, int M, GalileiOrbitPoint x = {})
{
    GalileiNumerics N(k, M);
    return (numeric::mode_filter(M) * N.kernel(x.p, x.q)).trace();
}

/// Tr[Omega(p,q) S] with S the convolution by a normalized Gaussian of width eps:
/// int chi(w) rho(-2w - 2p/alpha) dw, the computation int 2 delta(2w) = 1 with a mollified delta.
inline cplx galilei_mollified_trace(const GalileiKernel& k, GalileiOrbitPoint x = {}, double eps = 0.05, int points = 4001)
{
    const AffineOp O = galilei_kernel_op(k, x.p, x.q);
    const double c = x.p / k.alpha, half = 10 * eps, dw = 2 * half / (points - 1);
    cplx s = 0;
    for (int i = 0; i < points; ++i) {
        const double w = -c - half / 2 + i * dw / 2;
        const double z = (-2 * w - 2 * c) / eps;
        s += O.chi(w) * std::exp(-0.5 * z * z) * (i == 0 || i == points - 1 ? 0.5 : 1.0);
    }
    return s * (dw / 2) / (eps * std::sqrt(2 * std::numbers::pi));
}

} // namespace dq::sw
