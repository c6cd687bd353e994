#pragma once

// Newton-Hooke group NH(1,1), elements (b, a, v) with characteristic time tau.
// The orbit O_1 = {p^2 + k^2/tau^2 = 1} is a cylinder with canonical
// coordinates j = tau h, alpha = arctan(k / (tau p)).
//
// States on the circle are Fourier coefficients c_r of psi(t) = sum c_r e^{irt} / sqrt(2 pi),
// r in [-R, R]. The PUIR used here is
//
//   [U(b,a,v) psi](t) = e^{-i (a/tau cos(t - b/tau) + v sin(t - b/tau))} psi(t - b/tau),
//
// i.e. a translation T(b/tau) after the multiplier M(a,v); this ordering is what makes
// U a homomorphism for the group law, and the sign of the exponent is the one for which
// conjugating 'a(t) psi(-t)' along the section gives
//
//   [Omega(j, alpha) psi](t) = e^{2i (j/tau) sin(t - alpha)} a(t - alpha) psi(2 alpha - t).
//
// In modes Omega(j, alpha)_rs = e^{i(s-r) alpha} G_j(r+s), G_j(k) = sum_n J_n(2j/tau) ahat(k-n).

#include "dq/sw/affine.hpp"
#include "dq/sw/report.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dq::sw {

using ModeMatrix = Eigen::MatrixXcd;

struct NHElement {
    double b = 0, a = 0, v = 0;
};

inline NHElement nh_compose(const NHElement& g1, const NHElement& g2, double tau = 1)
{
    const double c = std::cos(g2.b / tau), s = std::sin(g2.b / tau);
    return {g1.b + g2.b, g1.a * c + g1.v * tau * s + g2.a, g1.v * c - g1.a / tau * s + g2.v};
}

inline NHElement nh_inverse(const NHElement& g, double tau = 1)
{
    const double c = std::cos(g.b / tau), s = std::sin(g.b / tau);
    return {-g.b, -g.a * c + g.v * tau * s, -g.v * c - g.a / tau * s};
}

/// Dual point (h, p, k) as for the Galilei group.
inline auto nh_coadjoint(const NHElement& g, double h, double p, double k, double tau = 1)
{
    const double c = std::cos(g.b / tau), s = std::sin(g.b / tau);
    struct {
        double h, p, k;
    } out{h - g.v * p + g.a * k / (tau * tau), p * c - k / tau * s, p * tau * s + k * c};
    return out;
}

inline double nh_orbit_invariant(double p, double k, double tau = 1) { return p * p + k * k / (tau * tau); }

struct NHOrbitPoint {
    double j = 0, alpha = 0;
};

/// (h, p, k) of a point on the unit cylinder.
inline std::array<double, 3> nh_dual(const NHOrbitPoint& x, double tau = 1)
{
    return {x.j / tau, std::cos(x.alpha), tau * std::sin(x.alpha)};
}

inline NHOrbitPoint nh_canonical(double h, double p, double k, double tau = 1) { return {tau * h, std::atan2(k, tau * p)}; }

inline NHOrbitPoint nh_act(const NHElement& g, const NHOrbitPoint& x, double tau = 1)
{
    const auto d = nh_dual(x, tau);
    const auto y = nh_coadjoint(g, d[0], d[1], d[2], tau);
    return nh_canonical(y.h, y.p, y.k, tau);
}

/// s(alpha, j) = (tau alpha, 0, 0)(0, 0, -j/tau)
inline NHElement nh_section(const NHOrbitPoint& x, double tau = 1)
{
    return nh_compose({tau * x.alpha, 0, 0}, {0, 0, -x.j / tau}, tau);
}

/// J_n(x) for any integer n and real x.
inline double bessel_j(int n, double x)
{
    const int m = std::abs(n);
    double v = std::cyl_bessel_j(static_cast<double>(m), std::abs(x));
    if ((n < 0 && m % 2) != (x < 0 && m % 2)) v = -v;
    return v;
}

/// Orders beyond which |J_n(x)| is below double precision.
inline int bessel_band(double x)
{
    const double ax = std::abs(x);
    return static_cast<int>(std::ceil(ax + 12 * std::cbrt(ax) + 20));
}

/// Fourier coefficients c_r, r in [-R, R].
struct CircleState {
    int R = 0;
    Eigen::VectorXcd c;

    explicit CircleState(int R_ = 0) : R(R_), c(Eigen::VectorXcd::Zero(2 * R_ + 1)) {}
    CircleState(int R_, Eigen::VectorXcd coeffs) : R(R_), c(std::move(coeffs))
    {
        if (c.size() != 2 * R + 1) throw std::invalid_argument("CircleState: wrong number of coefficients");
    }

    cplx& operator[](int r) { return c[r + R]; }
    cplx operator[](int r) const { return c[r + R]; }
    double norm() const { return c.norm(); }

    cplx operator()(double t) const
    {
        cplx s = 0;
        for (int r = -R; r <= R; ++r) s += c[r + R] * std::polar(1.0, r * t);
        return s / std::sqrt(2 * std::numbers::pi);
    }

    /// Projection of psi by the trapezoid rule with 8(2R+1) nodes.
    template <class F>
    static CircleState project(const F& psi, int R)
    {
        CircleState s(R);
        const int N = 8 * (2 * R + 1);
        for (int i = 0; i < N; ++i) {
            const double t = -std::numbers::pi + 2 * std::numbers::pi * i / N;
            const cplx f = psi(t);
            for (int r = -R; r <= R; ++r) s[r] += f * std::polar(1.0, -r * t);
        }
        s.c *= std::sqrt(2 * std::numbers::pi) / N;
        return s;
    }
};

/// psi(t - b) on modes [-R, R].
inline ModeMatrix nh_translation(double b, int R)
{
    Eigen::VectorXcd d(2 * R + 1);
    for (int r = -R; r <= R; ++r) d[r + R] = std::polar(1.0, -r * b);
    return d.asDiagonal();
}

/// Multiplication by e^{-i (A cos t + v sin t)}, by Jacobi-Anger:
/// e^{-i rho cos(t - theta)} = sum_n (-i)^n J_n(rho) e^{in(t - theta)}.
inline ModeMatrix nh_multiplier(double A, double v, int R)
{
    const double rho = std::hypot(A, v), theta = std::atan2(v, A);
    ModeMatrix M = ModeMatrix::Zero(2 * R + 1, 2 * R + 1);
    const int band = std::min(bessel_band(rho), 2 * R);
    for (int n = -band; n <= band; ++n) {
        const cplx m = std::pow(cplx(0, -1), n) * bessel_j(n, rho) * std::polar(1.0, -n * theta);
        for (int s = -R; s <= R; ++s)
            if (std::abs(s + n) <= R) M(s + n + R, s + R) = m;
    }
    return M;
}

/// U(g) on modes [-R, R]; only the block |r|, |s| <= R - bessel_band(rho) is exact.
inline ModeMatrix nh_puir_matrix(const NHElement& g, int R, double tau = 1)
{
    return nh_translation(g.b / tau, R) * nh_multiplier(g.a / tau, g.v, R);
}

/// U(g) psi. Throws std::out_of_range when the multiplier pushes more than 1e-10 of the norm past R.
inline CircleState nh_puir(const NHElement& g, const CircleState& psi, double tau = 1)
{
    const int ext = psi.R + bessel_band(std::hypot(g.a / tau, g.v));
    Eigen::VectorXcd big = Eigen::VectorXcd::Zero(2 * ext + 1);
    big.segment(ext - psi.R, 2 * psi.R + 1) = psi.c;
    const Eigen::VectorXcd out = nh_puir_matrix(g, ext, tau) * big;
    const Eigen::VectorXcd kept = out.segment(ext - psi.R, 2 * psi.R + 1);
    const double lost = std::sqrt(std::max(0.0, out.squaredNorm() - kept.squaredNorm()));
    if (lost > 1e-10 * std::max(1.0, psi.norm())) throw std::out_of_range("nh_puir: mode truncation overflow");
    return {psi.R, kept};
}

/// Profile a(t) of the kernel family, with its Fourier coefficients ahat(k) = (2 pi)^{-1} int a e^{-ikt}.
struct NHProfile {
    std::string id;
    std::function<cplx(double)> value;
    std::function<cplx(int)> fourier;
};

inline double wrap_angle(double t)
{
    const double tp = 2 * std::numbers::pi;
    return t - tp * std::floor((t + std::numbers::pi) / tp);
}

/// a(t) = 2 sqrt(cos t) on |t| < pi/2, zero elsewhere;
/// ahat(k) = Gamma(3/2) / (sqrt 2 Gamma(5/4 + k/2) Gamma(5/4 - k/2)).
inline NHProfile nh_default_profile()
{
    auto value = [](double t) -> cplx {
        const double w = wrap_angle(t);
        return std::abs(w) < std::numbers::pi / 2 ? 2 * std::sqrt(std::cos(w)) : 0.0;
    };
    auto fourier = [](int k) -> cplx {
        const double x = std::abs(k) / 2.0, g32 = std::sqrt(std::numbers::pi) / 2;
        if (x < 2) return g32 / (std::sqrt(2.0) * std::tgamma(1.25 + x) * std::tgamma(1.25 - x));
        // reflection: 1/Gamma(5/4 - x) = sin(pi (5/4 - x)) Gamma(x - 1/4) / pi
        const double ratio = std::exp(std::lgamma(x - 0.25) - std::lgamma(x + 1.25));
        return g32 / std::sqrt(2.0) * std::sin(std::numbers::pi * (1.25 - x)) * ratio / std::numbers::pi;
    };
    return {"nh-default", value, fourier};
}

/// a = 2: the plain parity Ansatz 2 psi(-t).
inline NHProfile nh_parity_profile()
{
    return {"nh-parity", [](double) { return cplx(2); }, [](int k) { return k == 0 ? cplx(2) : cplx(0); }};
}

/// Profile given pointwise; coefficients by the trapezoid rule on `samples` nodes.
inline NHProfile nh_profile_from_function(std::string id, std::function<cplx(double)> a, int samples = 4096)
{
    auto table = std::make_shared<std::vector<cplx>>(samples);
    for (int i = 0; i < samples; ++i) (*table)[i] = a(-std::numbers::pi + 2 * std::numbers::pi * i / samples);
    auto fourier = [table, samples](int k) {
        cplx s = 0;
        for (int i = 0; i < samples; ++i) s += (*table)[i] * std::polar(1.0, -k * (-std::numbers::pi + 2 * std::numbers::pi * i / samples));
        return s / double(samples);
    };
    return {std::move(id), std::move(a), fourier};
}

struct ProfileConstraints {
    double conjugation = 0; ///< max |a(-t) - conj a(t)|
    double modulus = 0;     ///< max ||a(t)|^2 + |a(t+pi)|^2 - 4|cos t||
    bool ok(double tol = 1e-9) const { return conjugation <= tol && modulus <= tol; }
};

inline ProfileConstraints check_profile(const NHProfile& a, int samples = 1024)
{
    ProfileConstraints c;
    for (int i = 0; i < samples; ++i) {
        const double t = -std::numbers::pi + 2 * std::numbers::pi * (i + 0.5) / samples;
        c.conjugation = std::max(c.conjugation, std::abs(a.value(-t) - std::conj(a.value(t))));
        c.modulus = std::max(c.modulus, std::abs(std::norm(a.value(t)) + std::norm(a.value(t + std::numbers::pi)) -
                                                 4 * std::abs(std::cos(t))));
    }
    return c;
}

/// A candidate kernel: the operator at the origin and its orbit through the section.
/// B(j, R) is Omega(j, 0) on modes [-R, R]; alpha enters as Omega_rs = e^{i(s-r) alpha} B_rs.
struct NHKernel {
    std::string id;
    double tau = 1;
    std::function<ModeMatrix(int R)> origin;
    std::function<ModeMatrix(double j, int R)> B;
};

namespace detail {

// ahat(k) for |k| <= K, cached per profile.
class FourierTable {
public:
    explicit FourierTable(std::function<cplx(int)> f) : f_(std::move(f)) {}
    cplx operator()(int k)
    {
        auto it = cache_.find(k);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(k, f_(k)).first->second;
    }

private:
    std::function<cplx(int)> f_;
    std::map<int, cplx> cache_;
};

} // namespace detail

/// G_j(k), |k| <= 2R, for a profile.
inline std::vector<cplx> nh_g_coefficients(detail::FourierTable& ahat, double j, int R, double tau = 1)
{
    const double x = 2 * j / tau;
    const int nb = bessel_band(x);
    std::vector<double> J(2 * nb + 1);
    for (int n = -nb; n <= nb; ++n) J[n + nb] = bessel_j(n, x);
    std::vector<cplx> G(4 * R + 1);
    for (int k = -2 * R; k <= 2 * R; ++k) {
        cplx s = 0;
        for (int n = -nb; n <= nb; ++n) s += J[n + nb] * ahat(k - n);
        G[k + 2 * R] = s;
    }
    return G;
}

/// Rejects profiles that fail check_profile unless `validate` is false (negative controls).
inline NHKernel nh_kernel(const NHProfile& a, double tau = 1, bool validate = true)
{
    if (validate && !check_profile(a).ok()) throw std::invalid_argument("profile violates the kernel constraints");
    auto table = std::make_shared<detail::FourierTable>(a.fourier);
    NHKernel k;
    k.id = a.id;
    k.tau = tau;
    k.B = [table, tau](double j, int R) {
        const auto G = nh_g_coefficients(*table, j, R, tau);
        ModeMatrix B(2 * R + 1, 2 * R + 1);
        for (int r = -R; r <= R; ++r)
            for (int s = -R; s <= R; ++s) B(r + R, s + R) = G[r + s + 2 * R];
        return B;
    };
    k.origin = [B = k.B](int R) { return B(0.0, R); };
    return k;
}

/// Kernel transported from an arbitrary origin operator by conjugation along the section.
inline NHKernel nh_kernel_from_origin(std::string id, std::function<ModeMatrix(int R)> origin, double tau = 1)
{
    NHKernel k;
    k.id = std::move(id);
    k.tau = tau;
    k.origin = origin;
    k.B = [origin, tau](double j, int R) {
        const int ext = R + bessel_band(j / tau);
        // U(0, 0, -j/tau) A U(0, 0, j/tau); M(0, w) multiplies by e^{-i w sin t}
        const ModeMatrix X = nh_multiplier(0, -j / tau, ext) * origin(ext) * nh_multiplier(0, j / tau, ext);
        return ModeMatrix(X.block(ext - R, ext - R, 2 * R + 1, 2 * R + 1));
    };
    return k;
}

/// The three parity-like Ansaetze at the origin: 2 psi(-t), 2 psi(t + 2 pi), 2 psi(-t + pi).
inline NHKernel nh_ansatz_reflection(double tau = 1)
{
    NHKernel k = nh_kernel(nh_parity_profile(), tau, false);
    k.id = "ansatz-reflection";
    return k;
}

inline NHKernel nh_ansatz_shift(double tau = 1)
{
    // psi(t + 2 pi) = psi(t) for functions on the circle
    return nh_kernel_from_origin("ansatz-shift-2pi", [](int R) { return ModeMatrix(2 * ModeMatrix::Identity(2 * R + 1, 2 * R + 1)); }, tau);
}

inline NHKernel nh_ansatz_reflection_pi(double tau = 1)
{
    return nh_kernel_from_origin("ansatz-reflection-pi", [](int R) {
        ModeMatrix A = ModeMatrix::Zero(2 * R + 1, 2 * R + 1);
        for (int s = -R; s <= R; ++s) A(-s + R, s + R) = (s % 2 ? -2.0 : 2.0);
        return A;
    }, tau);
}

inline ModeMatrix nh_kernel_matrix(const NHKernel& k, const NHOrbitPoint& x, int R)
{
    ModeMatrix O = k.B(x.j, R);
    for (int r = -R; r <= R; ++r)
        for (int s = -R; s <= R; ++s) O(r + R, s + R) *= std::polar(1.0, (s - r) * x.alpha);
    return O;
}

/// Omega(j, alpha) psi, truncated to the modes of psi.
inline CircleState nh_sw_kernel(const NHKernel& k, const NHOrbitPoint& x, const CircleState& psi)
{
    return {psi.R, nh_kernel_matrix(k, x, psi.R) * psi.c};
}

inline ModeMatrix crop(const ModeMatrix& A, int from, int to)
{
    return A.block(from - to, from - to, 2 * to + 1, 2 * to + 1);
}

/// Relative residual of U(g) Omega(x) U(g)^{-1} = Omega(g.x) on modes |r|, |s| <= R, worst over random (g, x).
inline double nh_covariance_residual(const NHKernel& k, int samples = 50, int R = 6, unsigned seed = 2)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1), ang(-std::numbers::pi, std::numbers::pi), jj(-2, 2);
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
        const NHElement g{ang(rng), u(rng), u(rng)};
        const NHOrbitPoint x{jj(rng), ang(rng)};
        const int ext = R + bessel_band(std::hypot(g.a / k.tau, g.v)) + 1;
        const ModeMatrix lhs = nh_puir_matrix(g, ext, k.tau) * nh_kernel_matrix(k, x, ext) *
                               nh_puir_matrix(nh_inverse(g, k.tau), ext, k.tau);
        const ModeMatrix rhs = nh_kernel_matrix(k, nh_act(g, x, k.tau), R);
        worst = std::max(worst, (crop(lhs, ext, R) - rhs).norm() / rhs.norm());
    }
    return worst;
}

/// |[U(P), Omega(0)]| / |Omega(0)| on modes |r|, |s| <= R; U(P) = -(i/tau) cos t.
inline double nh_commutator_residual(const NHKernel& k, int R = 6)
{
    const int ext = R + 1;
    const ModeMatrix A = k.origin(ext);
    ModeMatrix C = ModeMatrix::Zero(2 * ext + 1, 2 * ext + 1);
    for (int r = -ext; r < ext; ++r) C(r + 1 + ext, r + ext) = C(r + ext, r + 1 + ext) = cplx(0, -0.5 / k.tau);
    return crop(C * A - A * C, ext, R).norm() / crop(A, ext, R).norm();
}

/// Mode truncation, j window and quadrature of a cylinder computation.
/// The alpha rule has 4R+4 nodes, which integrates the trigonometric dependence exactly.
struct NHResolution {
    int R = 12;
    double j_max = 20;
    double dj = 0.1;

    int n_alpha() const { return 4 * R + 4; }
    int n_j() const { return static_cast<int>(std::lround(2 * j_max / dj)) + 1; }
    double j(int i) const { return -j_max + i * dj; }
    double alpha(int m) const { return -std::numbers::pi + 2 * std::numbers::pi * m / n_alpha(); }
    /// Cosine taper over the outer half of the j window.
    double taper(double j) const
    {
        const double x = std::abs(j) / j_max;
        return x <= 0.5 ? 1.0 : x >= 1 ? 0.0 : 0.5 * (1 + std::cos(std::numbers::pi * (x - 0.5) / 0.5));
    }
    NHResolution refined() const { return {R + 4, 2 * j_max, dj}; }
    std::string str() const
    {
        std::ostringstream s;
        s << "R=" << R << " jmax=" << j_max << " dj=" << dj << " nalpha=" << n_alpha();
        return s.str();
    }
};

/// Omega(j_i, 0) for every node of the j window.
inline std::vector<ModeMatrix> nh_j_blocks(const NHKernel& k, const NHResolution& res)
{
    std::vector<ModeMatrix> out;
    out.reserve(res.n_j());
    for (int i = 0; i < res.n_j(); ++i) out.push_back(k.B(res.j(i), res.R));
    return out;
}

// Omega(j, alpha) from Omega(j, 0): conjugation by diag(e^{-ir alpha}).
inline ModeMatrix nh_rotate(const ModeMatrix& B, double alpha)
{
    const int R = static_cast<int>(B.rows() - 1) / 2;
    Eigen::VectorXcd e(2 * R + 1);
    for (int r = -R; r <= R; ++r) e[r + R] = std::polar(1.0, r * alpha);
    return e.conjugate().asDiagonal() * B * e.asDiagonal();
}

/// sum over the orbit nodes of dmu(x) Tr[A Omega(x)] Omega(x), dmu = taper dj dalpha / (2 pi).
inline ModeMatrix nh_reproduce(const NHResolution& res, const ModeMatrix& A, const std::vector<ModeMatrix>& blocks)
{
    const int n = 2 * res.R + 1;
    ModeMatrix L = ModeMatrix::Zero(n, n);
    const double da = 2 * std::numbers::pi / res.n_alpha();
    for (int i = 0; i < res.n_j(); ++i) {
        const double w = res.taper(res.j(i)) * res.dj * da / (2 * std::numbers::pi);
        if (w == 0) continue;
        for (int m = 0; m < res.n_alpha(); ++m) {
            const ModeMatrix O = nh_rotate(blocks[i], res.alpha(m));
            L += (w * A.transpose().cwiseProduct(O).sum()) * O;
        }
    }
    return L;
}

struct NHTraciality {
    double residual = 0;
    double calibrated_mu = 0; ///< least-squares measure constant, 1/(2 pi) in theory
};

/// || int dmu(x) Tr[Omega(y) Omega(x)] Omega(x) - Omega(y) || on modes |r|, |s| <= test_modes,
/// relative and pooled over the points ys.
inline NHTraciality nh_traciality(const NHKernel& k, const NHResolution& res, const std::vector<NHOrbitPoint>& ys = {{}},
                                  int test_modes = 3)
{
    const auto blocks = nh_j_blocks(k, res);
    const double mu = 1 / (2 * std::numbers::pi);
    double num = 0, den = 0, lr = 0, ll = 0;
    for (const auto& y : ys) {
        const ModeMatrix Oy = nh_kernel_matrix(k, y, res.R);
        const ModeMatrix Li = crop(nh_reproduce(res, Oy, blocks), res.R, test_modes), Ri = crop(Oy, res.R, test_modes);
        num += (Li - Ri).squaredNorm();
        den += Ri.squaredNorm();
        // Li carries mu already
        lr += Li.cwiseProduct(Ri.conjugate()).sum().real() / mu;
        ll += Li.squaredNorm() / (mu * mu);
    }
    return {std::sqrt(num / den), lr / ll};
}

/// Random Hermitian operators on modes |r| <= m inside [-R, R].
inline std::vector<ModeMatrix> nh_band_limited_operators(int R, int m, int count, unsigned seed = 13)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0, 1);
    std::vector<ModeMatrix> out;
    for (int c = 0; c < count; ++c) {
        ModeMatrix A = ModeMatrix::Zero(2 * R + 1, 2 * R + 1);
        for (int r = -m; r <= m; ++r)
            for (int s = -m; s <= m; ++s) A(r + R, s + R) = cplx(n(rng), n(rng));
        out.push_back((A + A.adjoint()) / 2);
    }
    return out;
}

/// int dmu(y) K(x,y) W(y) against W(x) for W = Tr[A Omega] with band-limited A, over the points xs;
/// the origin alone is the weaker variant.
inline double nh_reproducing_residual(const NHKernel& k, const NHResolution& res, const std::vector<NHOrbitPoint>& xs,
                                      int count = 4, int band = 3)
{
    const auto blocks = nh_j_blocks(k, res);
    const auto As = nh_band_limited_operators(res.R, band, count);
    const double da = 2 * std::numbers::pi / res.n_alpha();
    double num = 0, den = 0;
    for (const auto& x : xs) {
        const ModeMatrix Ox = nh_kernel_matrix(k, x, res.R);
        std::vector<cplx> lhs(As.size(), 0.0);
        for (int i = 0; i < res.n_j(); ++i) {
            const double w = res.taper(res.j(i)) * res.dj * da / (2 * std::numbers::pi);
            if (w == 0) continue;
            for (int m = 0; m < res.n_alpha(); ++m) {
                const ModeMatrix Oy = nh_rotate(blocks[i], res.alpha(m));
                const cplx K = Ox.transpose().cwiseProduct(Oy).sum();
                for (std::size_t a = 0; a < As.size(); ++a) lhs[a] += w * K * As[a].transpose().cwiseProduct(Oy).sum();
            }
        }
        for (std::size_t a = 0; a < As.size(); ++a) {
            const cplx rhs = As[a].transpose().cwiseProduct(Ox).sum();
            num += std::norm(lhs[a] - rhs);
            den += std::norm(rhs);
        }
    }
    return std::sqrt(num / den);
}

/// Tr[A Omega(j, alpha)] on the resolution's (j, alpha) nodes; row i is j_i, column m is alpha_m.
inline Eigen::MatrixXcd nh_symbol(const NHResolution& res, const ModeMatrix& A, const std::vector<ModeMatrix>& blocks)
{
    Eigen::MatrixXcd W(res.n_j(), res.n_alpha());
    for (int i = 0; i < res.n_j(); ++i)
        for (int m = 0; m < res.n_alpha(); ++m) W(i, m) = A.transpose().cwiseProduct(nh_rotate(blocks[i], res.alpha(m))).sum();
    return W;
}

/// sum dmu W Omega with the tapered measure.
inline ModeMatrix nh_dequantize(const NHResolution& res, const Eigen::MatrixXcd& W, const std::vector<ModeMatrix>& blocks)
{
    const int n = 2 * res.R + 1;
    ModeMatrix L = ModeMatrix::Zero(n, n);
    const double da = 2 * std::numbers::pi / res.n_alpha();
    for (int i = 0; i < res.n_j(); ++i) {
        const double w = res.taper(res.j(i)) * res.dj * da / (2 * std::numbers::pi);
        if (w == 0) continue;
        for (int m = 0; m < res.n_alpha(); ++m) L += (w * W(i, m)) * nh_rotate(blocks[i], res.alpha(m));
    }
    return L;
}

} // namespace dq::sw
