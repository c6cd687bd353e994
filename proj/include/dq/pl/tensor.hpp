#pragma once

// Square matrices over a coefficient field, with the tensor-leg maps on
// C^2 (x) C^2 and C^2 (x) C^2 (x) C^2. Basis order e_i (x) e_k -> 2i + k.

#include "dq/pl/field.hpp"

#include "json.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace dq::pl {

namespace detail {
template <class F>
bool zero_entry(const F& x)
{
    return is_zero(x);
}
} // namespace detail

template <class F>
class Mat {
public:
    Mat() = default;
    explicit Mat(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), F(0)) {}
    Mat(int n, std::vector<F> rows) : n_(n), a_(std::move(rows))
    {
        if (a_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) throw std::invalid_argument("matrix size mismatch");
    }
    static Mat identity(int n)
    {
        Mat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    int size() const { return n_; }
    F& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
    const F& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

    friend Mat operator+(const Mat& a, const Mat& b)
    {
        Mat m(a.n_);
        for (std::size_t k = 0; k < a.a_.size(); ++k) m.a_[k] = a.a_[k] + b.a_[k];
        return m;
    }
    friend Mat operator-(const Mat& a, const Mat& b)
    {
        Mat m(a.n_);
        for (std::size_t k = 0; k < a.a_.size(); ++k) m.a_[k] = a.a_[k] - b.a_[k];
        return m;
    }
    friend Mat operator*(const F& s, const Mat& b)
    {
        Mat m(b.n_);
        for (std::size_t k = 0; k < b.a_.size(); ++k) m.a_[k] = s * b.a_[k];
        return m;
    }
    friend Mat operator*(const Mat& a, const Mat& b)
    {
        if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
        Mat m(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int k = 0; k < a.n_; ++k) {
                if (detail::zero_entry(a(i, k))) continue;
                for (int j = 0; j < a.n_; ++j) m(i, j) = m(i, j) + a(i, k) * b(k, j);
            }
        return m;
    }
    friend bool operator==(const Mat& a, const Mat& b)
    {
        return a.n_ == b.n_ && (a - b).is_zero();
    }

    bool is_zero() const
    {
        for (const auto& x : a_)
            if (!detail::zero_entry(x)) return false;
        return true;
    }

    /// Gauss-Jordan inverse; throws std::domain_error for singular input.
    Mat inverse() const
    {
        Mat a = *this, b = identity(n_);
        for (int c = 0; c < n_; ++c) {
            int p = c;
            while (p < n_ && detail::zero_entry(a(p, c))) ++p;
            if (p == n_) throw std::domain_error("singular matrix");
            for (int j = 0; j < n_; ++j) {
                std::swap(a(c, j), a(p, j));
                std::swap(b(c, j), b(p, j));
            }
            const F inv = F(1) / a(c, c);
            for (int j = 0; j < n_; ++j) {
                a(c, j) = a(c, j) * inv;
                b(c, j) = b(c, j) * inv;
            }
            for (int i = 0; i < n_; ++i) {
                if (i == c || detail::zero_entry(a(i, c))) continue;
                const F f = a(i, c);
                for (int j = 0; j < n_; ++j) {
                    a(i, j) = a(i, j) - f * a(c, j);
                    b(i, j) = b(i, j) - f * b(c, j);
                }
            }
        }
        return b;
    }

    template <class G>
    Mat<G> map(const std::function<G(const F&)>& fn) const
    {
        std::vector<G> v;
        v.reserve(a_.size());
        for (const auto& x : a_) v.push_back(fn(x));
        return Mat<G>(n_, std::move(v));
    }

    /// First nonzero entry as "[i][j] = value", empty when the matrix vanishes.
    std::string witness() const
    {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (!detail::zero_entry((*this)(i, j))) return "[" + std::to_string(i) + "][" + std::to_string(j) + "] = " + field_string((*this)(i, j));
        return "";
    }
    /// Largest residual_size over the entries.
    double residual() const
    {
        double r = 0;
        for (const auto& x : a_) r = std::max(r, residual_size(x));
        return r;
    }

    nlohmann::json to_json() const
    {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < n_; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int j = 0; j < n_; ++j) row.push_back(field_string((*this)(i, j)));
            rows.push_back(row);
        }
        return rows;
    }

private:
    int n_ = 0;
    std::vector<F> a_;
};

template <class F>
Mat<F> kron(const Mat<F>& a, const Mat<F>& b)
{
    const int n = a.size(), m = b.size();
    Mat<F> k(n * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (is_zero(a(i, j))) continue;
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) k(i * m + r, j * m + s) = a(i, j) * b(r, s);
        }
    return k;
}

/// The flip e_i (x) e_k -> e_k (x) e_i on C^2 (x) C^2.
template <class F>
Mat<F> flip()
{
    Mat<F> p(4);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) p(2 * i + k, 2 * k + i) = F(1);
    return p;
}

/// sigma(X) = P X P.
template <class F>
Mat<F> sigma(const Mat<F>& x)
{
    const Mat<F> p = flip<F>();
    return p * x * p;
}

template <class F>
Mat<F> leg12(const Mat<F>& r)
{
    return kron(r, Mat<F>::identity(2));
}
template <class F>
Mat<F> leg23(const Mat<F>& r)
{
    return kron(Mat<F>::identity(2), r);
}
template <class F>
Mat<F> leg13(const Mat<F>& r)
{
    const Mat<F> p23 = kron(Mat<F>::identity(2), flip<F>());
    return p23 * leg12(r) * p23;
}

template <class F>
Mat<F> commutator(const Mat<F>& a, const Mat<F>& b)
{
    return a * b - b * a;
}

} // namespace dq::pl
