#pragma once

// Hermite functions with an explicit hbar,
//
//   psi_n(x) = (pi hbar)^{-1/4} (2^n n!)^{-1/2} H_n(x / sqrt(hbar)) e^{-x^2 / 2 hbar},
//
// and a Gauss-Hermite rule in the scaled variable y = x / sqrt(hbar).

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace dq::numeric {

struct GaussHermite {
    std::vector<double> nodes;
    /// w_k e^{y_k^2}: integrates g(y) directly, sum_k w_k g(y_k) ~ int g dy for Gaussian-decaying g.
    std::vector<double> scaled_weights;
};

/// Golub-Welsch nodes; weights from the Christoffel sum of normalized Hermite functions,
/// which stays finite where w_k itself would underflow.
inline GaussHermite gauss_hermite(int order)
{
    if (order < 1) throw std::invalid_argument("quadrature order must be positive");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd sub(std::max(order - 1, 0));
    for (int k = 1; k < order; ++k) sub[k - 1] = std::sqrt(k / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

    GaussHermite rule;
    rule.nodes.resize(order);
    rule.scaled_weights.resize(order);
    const double h0 = std::pow(std::numbers::pi, -0.25);
    for (int k = 0; k < order; ++k) {
        const double y = es.eigenvalues()[k];
        double prev = 0, cur = h0 * std::exp(-0.5 * y * y), sum = cur * cur;
        for (int j = 0; j + 1 < order; ++j) {
            double next = std::sqrt(2.0 / (j + 1)) * y * cur - std::sqrt(double(j) / (j + 1)) * prev;
            prev = cur;
            cur = next;
            sum += cur * cur;
        }
        rule.nodes[k] = y;
        rule.scaled_weights[k] = 1.0 / sum;
    }
    return rule;
}

class HermiteBasis {
public:
    explicit HermiteBasis(int size, double hbar = 1.0, int quad_order = 0)
        : M_(size), hbar_(hbar), quad_(gauss_hermite(quad_order > 0 ? quad_order : default_quad_order(size)))
    {
        if (size < 1) throw std::invalid_argument("basis size must be positive");
        if (!(hbar > 0)) throw std::invalid_argument("hbar must be positive");
        if (quad_order > 0 && quad_order < 2 * size + 16)
            throw std::invalid_argument("quadrature order must be at least 2M+16");
    }

    /// Enough nodes for e^{2ipy} psi_m psi_n with |p| up to the resolved radius sqrt(2 M hbar):
    /// the node spacing pi / sqrt(2K) has to beat the frequency 2 sqrt(2M) + 2|p|/sqrt(hbar).
    static int default_quad_order(int size)
    {
        const double band = 2 * std::sqrt(2.0 * size) + 6;
        return std::max(2 * size + 16, static_cast<int>(std::ceil(band * band / 2)));
    }

    int size() const { return M_; }
    double hbar() const { return hbar_; }
    const GaussHermite& quadrature() const { return quad_; }
    int quad_order() const { return static_cast<int>(quad_.nodes.size()); }

    /// psi_0..psi_{count-1} at x, written to out (length count).
    void evaluate(double x, double* out, int count) const
    {
        const double s = x / std::sqrt(hbar_);
        double prev = 0, cur = std::pow(std::numbers::pi * hbar_, -0.25) * std::exp(-0.5 * s * s);
        for (int n = 0; n < count; ++n) {
            out[n] = cur;
            double next = std::sqrt(2.0 / (n + 1)) * s * cur - std::sqrt(double(n) / (n + 1)) * prev;
            prev = cur;
            cur = next;
        }
    }

    Eigen::VectorXd evaluate(double x) const
    {
        Eigen::VectorXd v(M_);
        evaluate(x, v.data(), M_);
        return v;
    }

    /// M x K table with column k holding psi_n(xs[k]).
    Eigen::MatrixXd table(const std::vector<double>& xs) const
    {
        Eigen::MatrixXd t(M_, static_cast<Eigen::Index>(xs.size()));
        for (std::size_t k = 0; k < xs.size(); ++k) evaluate(xs[k], t.col(static_cast<Eigen::Index>(k)).data(), M_);
        return t;
    }

    /// Quadrature overlap <psi_m|psi_n>; the identity up to rounding.
    Eigen::MatrixXd overlap() const
    {
        std::vector<double> xs(quad_.nodes.size());
        for (std::size_t k = 0; k < xs.size(); ++k) xs[k] = std::sqrt(hbar_) * quad_.nodes[k];
        Eigen::MatrixXd t = table(xs);
        Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(quad_.scaled_weights.data(), t.cols());
        return std::sqrt(hbar_) * t * w.asDiagonal() * t.transpose();
    }

private:
    int M_;
    double hbar_;
    GaussHermite quad_;
};

} // namespace dq::numeric
