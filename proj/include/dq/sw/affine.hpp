#pragma once

// Operators of the form (T psi)(x) = chi(x) psi(s x + d) with s = +-1. Both
// PUIRs and every SW kernel of the two examples are of this type, and so is
// any product of them, which lets covariance be checked pointwise on analytic
// test functions without discretizing the Hilbert space.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace dq::sw {

using cplx = std::complex<double>;

struct AffineOp {
    std::function<cplx(double)> chi = [](double) { return cplx(1); };
    int sign = 1;
    double shift = 0;

    template <class F>
    cplx apply(const F& psi, double x) const
    {
        return chi(x) * cplx(psi(sign * x + shift));
    }

    /// (*this)(other(psi))
    AffineOp operator*(const AffineOp& o) const
    {
        AffineOp r;
        auto c1 = chi, c2 = o.chi;
        const int s1 = sign;
        const double d1 = shift;
        r.chi = [=](double x) { return c1(x) * c2(s1 * x + d1); };
        r.sign = sign * o.sign;
        r.shift = o.sign * shift + o.shift;
        return r;
    }
};

/// Samples of psi(w) on a uniform grid; off-grid values by Whittaker-Shannon interpolation.
class LineState {
public:
    LineState(double w_min, double dw, std::vector<cplx> samples) : w_min_(w_min), dw_(dw), v_(std::move(samples))
    {
        if (!(dw > 0) || v_.size() < 2) throw std::invalid_argument("LineState needs a grid");
    }

    template <class F>
    static LineState sample(const F& f, double w_min, double w_max, int n)
    {
        const double dw = (w_max - w_min) / (n - 1);
        std::vector<cplx> v(n);
        for (int i = 0; i < n; ++i) v[i] = f(w_min + i * dw);
        return {w_min, dw, std::move(v)};
    }

    int size() const { return static_cast<int>(v_.size()); }
    double w(int i) const { return w_min_ + i * dw_; }
    double w_max() const { return w(size() - 1); }
    double step() const { return dw_; }
    const std::vector<cplx>& samples() const { return v_; }
    cplx operator[](int i) const { return v_[i]; }

    cplx operator()(double x) const
    {
        const double t = (x - w_min_) / dw_;
        const double r = std::round(t);
        if (std::abs(t - r) < 1e-12) {
            const int i = static_cast<int>(r);
            return i >= 0 && i < size() ? v_[i] : cplx(0);
        }
        cplx s = 0;
        const double sp = std::sin(std::numbers::pi * t) / std::numbers::pi;
        for (int i = 0; i < size(); ++i) s += v_[i] * ((i % 2 ? -sp : sp) / (t - i));
        return s;
    }

    double norm() const
    {
        double s = 0;
        for (const auto& c : v_) s += std::norm(c);
        return std::sqrt(s * dw_);
    }

    double max_abs() const
    {
        double m = 0;
        for (const auto& c : v_) m = std::max(m, std::abs(c));
        return m;
    }

    double boundary_ratio() const
    {
        const double m = max_abs();
        return m == 0 ? 0 : std::max(std::abs(v_.front()), std::abs(v_.back())) / m;
    }

    /// Smallest interval holding every sample above tol * max.
    std::pair<double, double> support(double tol = 1e-10) const
    {
        const double cut = tol * max_abs();
        int lo = 0, hi = size() - 1;
        while (lo < hi && std::abs(v_[lo]) <= cut) ++lo;
        while (hi > lo && std::abs(v_[hi]) <= cut) --hi;
        return {w(lo), w(hi)};
    }

private:
    double w_min_, dw_;
    std::vector<cplx> v_;
};

/// T psi on the grid of psi. Throws std::out_of_range if the image of the support leaves the grid.
inline LineState apply(const AffineOp& T, const LineState& psi)
{
    auto [s0, s1] = psi.support();
    // (T psi)(x) is nonzero only where sign*x + shift lies in [s0, s1]
    double x0 = T.sign * (s0 - T.shift), x1 = T.sign * (s1 - T.shift);
    if (x0 > x1) std::swap(x0, x1);
    const double slack = 0.5 * psi.step();
    if (x0 < psi.w(0) - slack || x1 > psi.w_max() + slack) throw std::out_of_range("LineState: support leaves the grid");
    std::vector<cplx> out(psi.size());
    for (int i = 0; i < psi.size(); ++i) out[i] = T.apply(psi, psi.w(i));
    return {psi.w(0), psi.step(), std::move(out)};
}

/// Distance from x to the nearest multiple of 2 pi.
inline double distance_to_2pi_z(double x)
{
    const double t = 2 * std::numbers::pi;
    return std::abs(x - t * std::round(x / t));
}

} // namespace dq::sw
