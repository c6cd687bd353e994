#pragma once

// Symbol calculus on the two orbits: symbols W_A(x) = Tr[A Omega(x)],
// dequantization A = int dmu W_A Omega, and the trikernel product
//
//   (f * g)(x) = int int dmu(y) dmu(z) Tr[Omega(x) Omega(y) Omega(z)] f(y) g(z).
//
// The double integral factorizes as Tr[Omega(x) F G] with F, G the dequantized
// symbols; trikernel_literal evaluates it term by term for cross-checks.

#include "dq/sw/galilei.hpp"
#include "dq/sw/newton_hooke.hpp"

#include <stdexcept>
#include <vector>

namespace dq::sw {

/// sum_{y,z} w_y w_z Tr[Ox Oy Oz] f(y) g(z). Throws std::length_error when nodes^2 * dim^2 exceeds budget.
inline cplx trikernel_literal(const Eigen::MatrixXcd& Ox, const std::vector<Eigen::MatrixXcd>& nodes,
                              const std::vector<double>& weights, const std::vector<cplx>& f, const std::vector<cplx>& g,
                              double budget = 5e8)
{
    const double n = static_cast<double>(nodes.size()), d = static_cast<double>(Ox.rows());
    if (n * n * d * d > budget) throw std::length_error("trikernel_literal: grid exceeds the cost budget");
    cplx s = 0;
    for (std::size_t y = 0; y < nodes.size(); ++y) {
        if (f[y] == cplx(0)) continue;
        const Eigen::MatrixXcd XY = Ox * nodes[y];
        for (std::size_t z = 0; z < nodes.size(); ++z) {
            // Tr[XY Oz] = sum_ab XY_ab Oz_ba
            const cplx L = XY.cwiseProduct(nodes[z].transpose()).sum();
            s += weights[y] * weights[z] * L * f[y] * g[z];
        }
    }
    return s;
}

/// (f * g) on the grid of f and g, through the factorized trikernel.
inline PhaseGrid galilei_star(const GalileiNumerics& N, const PhaseGrid& f, const PhaseGrid& g)
{
    if (!(f.spec() == g.spec())) throw std::invalid_argument("grids differ");
    return N.symbol(N.dequantize(f) * N.dequantize(g), f.spec());
}

/// ||dequantize(symbol(A)) - A|| / ||A||.
inline double galilei_round_trip(const GalileiNumerics& N, const OperatorMatrix& A, const GridSpec& g)
{
    return (N.dequantize(N.symbol(A, g)) - A).norm() / A.norm();
}

inline double nh_round_trip(const NHResolution& res, const ModeMatrix& A, const std::vector<ModeMatrix>& blocks, int test_modes = 3)
{
    const ModeMatrix B = nh_dequantize(res, nh_symbol(res, A, blocks), blocks);
    return (crop(B, res.R, test_modes) - crop(A, res.R, test_modes)).norm() / crop(A, res.R, test_modes).norm();
}

/// (f * g) on the (j, alpha) nodes.
inline Eigen::MatrixXcd nh_star(const NHResolution& res, const Eigen::MatrixXcd& f, const Eigen::MatrixXcd& g,
                                const std::vector<ModeMatrix>& blocks)
{
    return nh_symbol(res, nh_dequantize(res, f, blocks) * nh_dequantize(res, g, blocks), blocks);
}

/// Every orbit node of the resolution with its weight dmu; for literal trikernel sums on small grids.
inline void nh_nodes(const NHKernel& k, const NHResolution& res, std::vector<ModeMatrix>& nodes, std::vector<double>& weights,
                     std::vector<NHOrbitPoint>& points)
{
    const auto blocks = nh_j_blocks(k, res);
    const double da = 2 * std::numbers::pi / res.n_alpha();
    for (int i = 0; i < res.n_j(); ++i) {
        const double w = res.taper(res.j(i)) * res.dj * da / (2 * std::numbers::pi);
        if (w == 0) continue;
        for (int m = 0; m < res.n_alpha(); ++m) {
            nodes.push_back(nh_rotate(blocks[i], res.alpha(m)));
            weights.push_back(w);
            points.push_back({res.j(i), res.alpha(m)});
        }
    }
}

} // namespace dq::sw
