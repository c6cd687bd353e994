#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dq/numeric/dynamics.hpp"

#include <numbers>
#include <sstream>

using namespace dq;
using namespace dq::numeric;

namespace {

const double pi = std::numbers::pi;

double max_diff(const PhaseGrid& a, const PhaseGrid& b, double radius = 1e300)
{
    double m = 0;
    const auto& s = a.spec();
    for (int i = 0; i < s.nq; ++i)
        for (int j = 0; j < s.np; ++j)
            if (std::hypot(s.q(i), s.p(j)) <= radius) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

PhaseGrid gaussian(const GridSpec& g, double q0, double p0, double s, cplx amp = 1)
{
    return PhaseGrid::sample(g, [=](double q, double p) { return amp * std::exp(-((q - q0) * (q - q0) + (p - p0) * (p - p0)) / s); });
}

const HermiteBasis& basis64()
{
    static const HermiteBasis b(64, 1.0);
    return b;
}

} // namespace

TEST_CASE("hermite basis and quadrature")
{
    const auto& b = basis64();
    CHECK(b.quad_order() >= 2 * 64 + 16);
    CHECK((b.overlap() - Eigen::MatrixXd::Identity(64, 64)).cwiseAbs().maxCoeff() < 1e-10);
    HermiteBasis small(8, 0.5);
    CHECK((small.overlap() - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-10);
    // closed forms at hbar = 1/2
    const double x = 0.3;
    Eigen::VectorXd v = small.evaluate(x);
    CHECK(v[0] == doctest::Approx(std::pow(pi / 2, -0.25) * std::exp(-x * x)).epsilon(1e-14));
    CHECK(v[1] == doctest::Approx(std::pow(pi / 2, -0.25) * std::sqrt(2.0) * (x / std::sqrt(0.5)) * std::exp(-x * x)).epsilon(1e-14));
    CHECK_THROWS(HermiteBasis(0));
    CHECK_THROWS(HermiteBasis(4, -1.0));
    CHECK_THROWS(HermiteBasis(10, 1.0, 20));
}

TEST_CASE("grossmann-royer operators")
{
    const auto& b = basis64();
    OperatorMatrix O = grossmann_royer(b, 0, 0);
    OperatorMatrix parity = OperatorMatrix::Zero(64, 64);
    for (int n = 0; n < 64; ++n) parity(n, n) = n % 2 ? -2.0 : 2.0;
    CHECK((O - parity).cwiseAbs().maxCoeff() < 1e-12);

    OperatorMatrix A = grossmann_royer(b, 0.7, -0.4);
    CHECK(hermitian_residual(A) < 1e-12);
    OperatorMatrix sq = A * A;
    CHECK((sq.topLeftCorner(20, 20) - 4.0 * OperatorMatrix::Identity(20, 20)).cwiseAbs().maxCoeff() < 1e-8);

    std::vector<std::string> warnings;
    grossmann_royer(b, 1, 1, &warnings);
    CHECK(warnings.empty());
    grossmann_royer(b, 7, 7, &warnings);
    CHECK(warnings.size() == 1);
}

TEST_CASE("weyl map")
{
    const auto& b = basis64();
    GridSpec g = GridSpec::square(8, 129);
    OperatorMatrix W = weyl_map(b, gaussian(g, 0, 0, 1.0, 2.0));
    OperatorMatrix P0 = OperatorMatrix::Zero(64, 64);
    P0(0, 0) = 1;
    CHECK((W - P0).cwiseAbs().maxCoeff() < 1e-6);

    // low Wigner cross functions must have died out before the window edge
    GridSpec wide = GridSpec::square(12, 171);
    Window win{7.0, 0.8};
    OperatorMatrix Wq = weyl_map(b, PhaseGrid::sample(wide, [&](double q, double p) { return q * win(q, p); }));
    OperatorMatrix Q = position_matrix(64, 1.0);
    CHECK((Wq - Q).topLeftCorner(6, 6).cwiseAbs().maxCoeff() < 1e-6);

    CHECK(weyl_map(b, PhaseGrid(g)).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(weyl_map(b, PhaseGrid::sample(g, [](double q, double) { return q; })), std::domain_error);
}

TEST_CASE("weyl inverse")
{
    const auto& b = basis64();
    GridSpec g = GridSpec::square(4, 41);
    OperatorMatrix P0 = OperatorMatrix::Zero(64, 64);
    P0(0, 0) = 1;
    CHECK(max_diff(weyl_inverse(b, P0, g), gaussian(g, 0, 0, 1.0, 2.0)) < 1e-12);

    PhaseGrid unit = weyl_inverse(b, mode_filter(64), g);
    CHECK(max_diff(unit, PhaseGrid::sample(g, [](double, double) { return cplx(1); }), 3.0) < 1e-6);

    OperatorMatrix R = OperatorMatrix::Random(64, 64);
    R = (R + R.adjoint()).eval() * 0.5;
    CHECK(weyl_inverse(b, R, g).max_imag() < 1e-10);

    // scattered points agree with the grid
    std::vector<PhasePoint> pts{{g.q(3), g.p(7)}, {g.q(20), g.p(1)}, {g.q(3), g.p(40)}};
    PhaseGrid full = weyl_inverse(b, R, g);
    auto at = weyl_inverse_at(b, R, pts);
    CHECK(std::abs(at[0] - full(3, 7)) < 1e-12);
    CHECK(std::abs(at[1] - full(20, 1)) < 1e-12);
    CHECK(std::abs(at[2] - full(3, 40)) < 1e-12);
}

TEST_CASE("wigner functions")
{
    const auto& b = basis64();
    GridSpec g = GridSpec::square(6, 61);
    PhaseGrid w0 = wigner_from_state(b, Eigen::VectorXcd::Unit(64, 0), g);
    CHECK(max_diff(w0, gaussian(g, 0, 0, 1.0, 2.0)) < 1e-12);
    CHECK(std::abs(w0.integral() / (2 * pi) - 1.0) < 1e-6);

    PhaseGrid w1 = wigner_from_state(b, Eigen::VectorXcd::Unit(64, 1), g);
    CHECK(w1(30, 30).real() == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(w1.max_imag() < 1e-12);

    Eigen::VectorXcd mix = Eigen::VectorXcd::Zero(64);
    mix[0] = cplx(0.6, 0);
    mix[3] = cplx(0, 0.8);
    PhaseGrid wm = wigner_from_state(b, mix, g);
    CHECK(wm.max_imag() < 1e-12);
    CHECK(std::abs(wm.integral() / (2 * pi) - 1.0) < 1e-6);
    auto psi = [&](double x) {
        Eigen::VectorXd v = b.evaluate(x);
        cplx s = 0;
        for (int n = 0; n < 64; ++n) s += mix[n] * v[n];
        return s;
    };
    GridSpec coarse = GridSpec::square(3, 13);
    CHECK(max_diff(wigner_from_samples(psi, 1.0, coarse, 16, 801), wigner_from_state(b, mix, coarse)) < 1e-10);

    CHECK_THROWS_AS(wigner_from_state(b, 2.0 * Eigen::VectorXcd::Unit(64, 0), g), std::domain_error);
}

TEST_CASE("smeared trace of two reflection operators")
{
    const auto& b = basis64();
    GridSpec g = GridSpec::square(8, 129);
    SmearedTrace s = smeared_trace_product(b, gaussian(g, 0, 0, 1.0), gaussian(g, 0, 0, 1.0));
    CHECK(s.relative < 1e-4);
    CHECK(std::abs(s.direct - 2 * pi * pi / 2) < 1e-8);
    SmearedTrace z = smeared_trace_product(b, PhaseGrid(g), gaussian(g, 0, 0, 1.0));
    CHECK(std::abs(z.smeared) == 0.0);
    SmearedTrace far = smeared_trace_product(b, gaussian(g, -3, 0, 0.1), gaussian(g, 3, 0, 0.1));
    CHECK(std::abs(far.smeared) < 1e-10);
}

TEST_CASE("moyal propagator of the oscillator")
{
    const auto& b = basis64();
    GridSpec g = GridSpec::square(2, 21);
    PhaseGrid x0 = moyal_propagator_ho(b, 0, g);
    CHECK(max_diff(x0, PhaseGrid::sample(g, [](double, double) { return cplx(1); })) < 1e-8);
    PhaseGrid x5 = moyal_propagator_ho(b, 0.5, g);
    CHECK(max_diff(x5, PhaseGrid::sample(g, [](double q, double p) { return propagator_ho_exact(0.5, q, p, 1.0); })) < 1e-8);

    Spectrum s(b, harmonic_hamiltonian());
    auto a = weyl_inverse_at(b, s.evolution(0), {{0.3, 0.2}});
    auto c = weyl_inverse_at(b, s.evolution(2 * pi), {{0.3, 0.2}});
    CHECK(std::abs(a[0] + c[0]) < 1e-8);
    CHECK_THROWS_AS(moyal_propagator_ho(b, pi - 0.1, g), std::domain_error);

    std::vector<PhasePoint> pts;
    for (double q = -2; q <= 2.01; q += 0.5)
        for (double p = -2; p <= 2.01; p += 0.5)
            if (std::hypot(q, p) <= 2) pts.push_back({q, p});
    CHECK(star_schrodinger_residual(b, harmonic_hamiltonian(), 0.5, pts).residual < 1e-3);
    CHECK(star_schrodinger_residual(b, harmonic_hamiltonian(), 1.0, pts).residual < 1e-3);
}

TEST_CASE("spectral projection of the oscillator")
{
    const auto& b = basis64();
    SpectralProjector sp(b, harmonic_hamiltonian(), 40);
    auto peaks = sp.peaks(0, 6, 0.01);
    REQUIRE(peaks.size() == 6);
    for (int n = 0; n < 6; ++n) CHECK(std::abs(peaks[n] - (n + 0.5)) / (n + 0.5) < 0.02);

    GridSpec g = GridSpec::square(6, 61);
    PhaseGrid G = sp.grid(0.5, g);
    PhaseGrid W0 = wigner_from_state(b, Eigen::VectorXcd::Unit(64, 0), g);
    cplx dot = 0;
    double n1 = 0, n2 = 0;
    for (std::size_t k = 0; k < G.values().size(); ++k) {
        dot += std::conj(G.values()[k]) * W0.values()[k];
        n1 += std::norm(G.values()[k]);
        n2 += std::norm(W0.values()[k]);
    }
    CHECK(std::abs(dot) / std::sqrt(n1 * n2) > 0.99);
    // phase-space integral matches the trace
    CHECK(std::abs(G.integral() / (2 * pi) - sp.trace(0.5)) < 1e-6);
    CHECK(std::abs(sp.trace(1.0)) < 0.01 * sp.trace(0.5));
    CHECK(sp.grid(1.0, g).max_abs() < 0.01 * G.max_abs());
    CHECK_THROWS_AS(SpectralProjector(b, harmonic_hamiltonian(), 5), std::domain_error);
}

TEST_CASE("numeric star product against the exact series")
{
    const auto& b = basis64();
    GridSpec g = GridSpec::square(10.5, 151);
    PhasePoly q = PhasePoly::q(1), p = PhasePoly::p(1), one = PhasePoly::constant(1, Complex(1));
    CHECK(cross_validate_star(b, q, p, g).residual < 1e-6);
    CHECK(cross_validate_star(b, one, one, g).residual < 1e-10);
    CHECK(cross_validate_star(b, q * q, p * p, g).residual < 1e-5);
}

TEST_CASE("correspondence properties")
{
    const auto& b = basis64();
    GridSpec g = GridSpec::square(8, 129);
    PhaseGrid f = gaussian(g, 0.5, -0.3, 0.8, cplx(1, 0.2));
    PhaseGrid h = gaussian(g, -0.4, 0.2, 1.3);
    PhaseGrid rt = weyl_inverse(b, weyl_map(b, f), g);
    CHECK(max_diff(rt, f, 4.0) < 1e-6);

    OperatorMatrix Wh = weyl_map(b, h);
    CHECK(hermitian_residual(Wh) < 1e-12);
    CHECK(weyl_inverse(b, Wh, g).max_imag() < 1e-10);

    // Tr(AB) = int W_A W_B dp dq / (2 pi hbar)
    OperatorMatrix Wf = weyl_map(b, f);
    cplx tr = (Wf * Wh).trace();
    cplx s = 0;
    for (std::size_t k = 0; k < f.values().size(); ++k) s += f.values()[k] * h.values()[k];
    s *= g.cell() / (2 * pi);
    CHECK(std::abs(tr - s) / std::abs(s) < 1e-5);

    // int f*g = int f g
    PhaseGrid star = weyl_inverse(b, Wf * Wh, g);
    CHECK(std::abs(star.integral() / (2 * pi) - s) / std::abs(s) < 1e-5);
}

TEST_CASE("convergence in the basis size")
{
    HermiteBasis b48(48), b96(96);
    GridSpec g = GridSpec::square(15, 215);
    Window wide{7.5, 0.8};
    PhasePoly q2 = PhasePoly::q(1) * PhasePoly::q(1), p2 = PhasePoly::p(1) * PhasePoly::p(1);
    const double cv48 = cross_validate_star(b48, q2, p2, g, wide).residual;
    const double cv96 = cross_validate_star(b96, q2, p2, g, wide).residual;
    CHECK(cv96 < cv48);

    PhaseGrid f = gaussian(g, 0, 0, 8.0);
    const double rt48 = max_diff(weyl_inverse(b48, weyl_map(b48, f), g), f, 4.0);
    const double rt96 = max_diff(weyl_inverse(b96, weyl_map(b96, f), g), f, 4.0);
    CHECK(rt96 < rt48);

    GridSpec small = GridSpec::square(2, 21);
    auto prop_err = [&](const HermiteBasis& b) {
        return max_diff(moyal_propagator_ho(b, 1.0, small),
                        PhaseGrid::sample(small, [](double q, double p) { return propagator_ho_exact(1.0, q, p, 1.0); }));
    };
    CHECK(prop_err(b96) < prop_err(b48));
}

TEST_CASE("grid and operator serialization")
{
    GridSpec g{-1, 2, -3, 1, 7, 5};
    PhaseGrid f = PhaseGrid::sample(g, [](double q, double p) { return cplx(q * p + 1.0 / 3, std::sin(q - p)); });
    CHECK(f.index(1, 0) == 5);
    std::stringstream ss;
    f.write_csv(ss, 0.25);
    double hbar = 0;
    PhaseGrid back = PhaseGrid::read_csv(ss, &hbar);
    CHECK(back.spec() == g);
    CHECK(hbar == 0.25);
    CHECK(back.values() == f.values());
    CHECK(f.sidecar(0.25, "test")["layout"] == "row-major, p fastest");

    OperatorMatrix A = OperatorMatrix::Random(5, 5);
    CHECK(operator_from_json(to_json(A, 1.0)) == A);
}

TEST_CASE("polynomial operators")
{
    HermiteBasis b(16, 0.7);
    OperatorMatrix H = operator_from_poly(b, harmonic_hamiltonian());
    for (int n = 0; n < 16; ++n) CHECK(std::abs(H(n, n) - 0.7 * (n + 0.5)) < 1e-12);
    CHECK((H - OperatorMatrix(H.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);
    OperatorMatrix qp = operator_from_poly(b, PhasePoly::q(1) * PhasePoly::p(1));
    OperatorMatrix Q = position_matrix(17, 0.7), P = momentum_matrix(17, 0.7);
    OperatorMatrix sym = ((Q * P + P * Q) / 2.0).topLeftCorner(16, 16);
    CHECK((qp - sym).cwiseAbs().maxCoeff() < 1e-12);
}
