#pragma once

#include "dq/exact/heisenberg.hpp"
#include "dq/numeric/hermite.hpp"

#include "json.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace dq::numeric {

using cplx = std::complex<double>;
/// Operator in the first M Hermite functions; row/column n is psi_n.
using OperatorMatrix = Eigen::MatrixXcd;

inline OperatorMatrix position_matrix(int M, double hbar)
{
    OperatorMatrix Q = OperatorMatrix::Zero(M, M);
    for (int n = 0; n + 1 < M; ++n) Q(n, n + 1) = Q(n + 1, n) = std::sqrt(hbar * (n + 1) / 2.0);
    return Q;
}

inline OperatorMatrix momentum_matrix(int M, double hbar)
{
    OperatorMatrix P = OperatorMatrix::Zero(M, M);
    for (int n = 0; n + 1 < M; ++n) {
        const double s = std::sqrt(hbar * (n + 1) / 2.0);
        P(n, n + 1) = cplx(0, -s);
        P(n + 1, n) = cplx(0, s);
    }
    return P;
}

/// Smooth cutoff 0.5 erfc((n - M/2) / (M/10)); regularizes traces of reflection operators.
inline OperatorMatrix mode_filter(int M)
{
    OperatorMatrix F = OperatorMatrix::Zero(M, M);
    for (int n = 0; n < M; ++n) F(n, n) = 0.5 * std::erfc((n - M / 2.0) / (M / 10.0));
    return F;
}

/// Weyl quantization of a polynomial symbol, exact on the first M rows and columns:
/// the normal-ordered words are multiplied out in a basis enlarged by the degree.
inline OperatorMatrix operator_from_poly(const HermiteBasis& basis, const PhasePoly& f)
{
    if (f.dimension() != 1) throw std::invalid_argument("numeric Weyl map is one-dimensional");
    const int M = basis.size();
    const int big = M + std::max(f.degree(), 0) + 1;
    const double hbar = basis.hbar();
    const OperatorMatrix Q = position_matrix(big, hbar), P = momentum_matrix(big, hbar);
    OperatorMatrix out = OperatorMatrix::Zero(big, big);
    const HeisenbergPoly words = weyl_symmetrize(f);
    for (const auto& [key, c] : words.terms()) {
        OperatorMatrix w = OperatorMatrix::Identity(big, big);
        for (int a = 0; a < key.letters[0]; ++a) w = w * Q;
        for (int b = 0; b < key.letters[1]; ++b) w = w * P;
        out += cplx(c.re.get_d(), c.im.get_d()) * std::pow(hbar, key.hbar) * w;
    }
    return out.topLeftCorner(M, M);
}

/// ||A - A^dagger||_F / ||A||_F (0 for the zero matrix).
inline double hermitian_residual(const OperatorMatrix& A)
{
    const double n = A.norm();
    return n == 0 ? 0.0 : (A - A.adjoint()).norm() / n;
}

/// Dense-matrix JSON: {"size", "hbar", "re": [[..]], "im": [[..]]}.
inline nlohmann::json to_json(const OperatorMatrix& A, double hbar)
{
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        nlohmann::json r = nlohmann::json::array(), m = nlohmann::json::array();
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            r.push_back(A(i, j).real());
            m.push_back(A(i, j).imag());
        }
        re.push_back(std::move(r));
        im.push_back(std::move(m));
    }
    return {{"size", A.rows()}, {"hbar", hbar}, {"re", re}, {"im", im}};
}

inline OperatorMatrix operator_from_json(const nlohmann::json& j)
{
    const int M = j.at("size").get<int>();
    OperatorMatrix A(M, M);
    for (int r = 0; r < M; ++r)
        for (int c = 0; c < M; ++c) A(r, c) = cplx(j.at("re").at(r).at(c).get<double>(), j.at("im").at(r).at(c).get<double>());
    return A;
}

} // namespace dq::numeric
