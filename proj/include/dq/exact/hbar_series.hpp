#pragma once

#include "dq/exact/phase_poly.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dq {

/// Truncated formal power series sum_{k<=N} f_k hbar^k with PhasePoly coefficients.
class HbarSeries {
public:
    HbarSeries(int n, int order) : n_(n), coeffs_(static_cast<std::size_t>(order) + 1, PhasePoly(n))
    {
        if (order < 0) throw std::invalid_argument("truncation order must be non-negative");
    }
    HbarSeries(const PhasePoly& f, int order) : HbarSeries(f.dimension(), order) { coeffs_[0] = f; }

    int dimension() const { return n_; }
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    const PhasePoly& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    PhasePoly& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const PhasePoly& c) { return c.is_zero(); });
    }
    /// Highest total q/p degree over all coefficients.
    int degree() const
    {
        int d = -1;
        for (const auto& c : coeffs_) d = std::max(d, c.degree());
        return d;
    }

    HbarSeries& operator+=(const HbarSeries& o)
    {
        check(o);
        for (int k = 0; k <= order(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    HbarSeries& operator-=(const HbarSeries& o)
    {
        check(o);
        for (int k = 0; k <= order(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    HbarSeries& operator*=(const Complex& s)
    {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }
    friend HbarSeries operator+(HbarSeries a, const HbarSeries& b) { return a += b; }
    friend HbarSeries operator-(HbarSeries a, const HbarSeries& b) { return a -= b; }
    friend HbarSeries operator*(HbarSeries a, const Complex& s) { return a *= s; }
    friend bool operator==(const HbarSeries& a, const HbarSeries& b)
    {
        return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const HbarSeries& a, const HbarSeries& b) { return !(a == b); }

    /// Multiplies by hbar^k, discarding orders above N.
    HbarSeries shifted(int k) const
    {
        HbarSeries out(n_, order());
        for (int j = 0; j + k <= order(); ++j)
            if (j + k >= 0) out.coeffs_[j + k] = coeffs_[j];
        return out;
    }

    HbarSeries conj() const
    {
        HbarSeries out(n_, order());
        for (int k = 0; k <= order(); ++k) out.coeffs_[k] = coeffs_[k].conj();
        return out;
    }

    void check(const HbarSeries& o) const
    {
        if (o.n_ != n_) throw std::invalid_argument("phase-space dimension mismatch");
        if (o.order() != order()) throw std::invalid_argument("truncation order mismatch");
    }

    /// Canonical text: `[n=1,N=2] (1+0i)*q1^1*p1^1 + (0-1/2i)*hbar^1`.
    std::string str() const
    {
        std::ostringstream os;
        os << "[n=" << n_ << ",N=" << order() << "]";
        bool first = true;
        for (int k = 0; k <= order(); ++k) {
            for (const auto& [e, c] : coeffs_[k].terms()) {
                os << (first ? " " : " + ") << term_string(n_, e, c);
                if (k > 0) os << "*hbar^" << k;
                first = false;
            }
        }
        if (first) os << " 0";
        return os.str();
    }

    static HbarSeries parse(const std::string& text);

private:
    int n_;
    std::vector<PhasePoly> coeffs_;
};

inline HbarSeries HbarSeries::parse(const std::string& text)
{
    int n = 0;
    int order = 0;
    auto close = text.find(']');
    if (text.empty() || text[0] != '[' || close == std::string::npos ||
        std::sscanf(text.c_str(), "[n=%d,N=%d]", &n, &order) != 2)
        throw std::invalid_argument("missing [n=..,N=..] header");
    HbarSeries out(n, order);
    std::string body = text.substr(close + 1);
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(' ');
        auto e = s.find_last_not_of(' ');
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    body = trim(body);
    if (body == "0") return out;
    std::size_t pos = 0;
    while (pos < body.size()) {
        auto next = body.find(" + ", pos);
        std::string term = trim(body.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
        pos = next == std::string::npos ? body.size() : next + 3;
        auto rp = term.find(')');
        if (rp == std::string::npos) throw std::invalid_argument("bad term: " + term);
        Complex c = parse_complex(term.substr(0, rp + 1));
        Exponents e(2 * n, 0);
        int hpow = 0;
        std::string rest = term.substr(rp + 1);
        std::size_t r = 0;
        while (r < rest.size()) {
            if (rest[r] != '*') throw std::invalid_argument("bad factor in: " + term);
            auto caret = rest.find('^', r);
            auto end = rest.find('*', r + 1);
            if (caret == std::string::npos || (end != std::string::npos && caret > end))
                throw std::invalid_argument("bad factor in: " + term);
            std::string var = rest.substr(r + 1, caret - r - 1);
            int power = std::stoi(rest.substr(caret + 1, end == std::string::npos ? std::string::npos : end - caret - 1));
            if (var == "hbar") {
                hpow = power;
            } else if ((var[0] == 'q' || var[0] == 'p') && var.size() > 1) {
                int idx = std::stoi(var.substr(1));
                if (idx < 1 || idx > n) throw std::invalid_argument("variable index out of range: " + var);
                e[(var[0] == 'q' ? 0 : n) + idx - 1] = power;
            } else {
                throw std::invalid_argument("unknown variable: " + var);
            }
            r = end == std::string::npos ? rest.size() : end;
        }
        if (hpow > order) throw std::invalid_argument("hbar power exceeds truncation order");
        out[hpow].add_term(e, c);
    }
    return out;
}

} // namespace dq
