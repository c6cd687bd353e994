#pragma once

// Coefficient fields for the SL(2) computations:
//   Rational                 exact numbers
//   RatFunc                  Q(s), s = q^{1/2}
//   QuadExt<RatFunc, Tag>    Q(s)[u], u^2 = Tag::square()
//   HSeries                  Q[[h]] truncated, q = e^h
//   double                   numeric h
// Every field provides is_zero, leading_negative, field_string and residual_size.

#include "dq/exact/rational.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dq::pl {

using dq::Rational;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return x == 0; }
inline bool leading_negative(const Rational& x) { return sgn(x) < 0; }
inline bool leading_negative(double x) { return x < 0; }
inline std::string field_string(const Rational& x) { return x.get_str(); }
inline std::string field_string(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}
/// Size of a residual entry: |x| for floating point, 0/1 (zero or not) for exact fields.
inline double residual_size(double x) { return std::abs(x); }
template <class F>
double residual_size(const F& x)
{
    return is_zero(x) ? 0.0 : 1.0;
}

namespace detail {

/// "c1*m1 - c2*m2 + ..." from (coefficient, monomial) pairs; an empty monomial is the unit.
inline std::string format_sum(const std::vector<std::pair<Rational, std::string>>& terms)
{
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [c, m] : terms) {
        const bool neg = sgn(c) < 0;
        if (first) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        first = false;
        const Rational a = abs(c);
        if (m.empty()) out += a.get_str();
        else if (a == 1) out += m;
        else out += a.get_str() + "*" + m;
    }
    return out;
}

/// s^e written as a power of q = s^2.
inline std::string q_power(long e)
{
    if (e == 0) return "";
    if (e == 2) return "q";
    if (e % 2 == 0) return "q^" + std::to_string(e / 2);
    return "q^(" + std::to_string(e) + "/2)";
}

} // namespace detail

/// Dense univariate polynomial over Q in the variable s.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(Rational c) : c_{std::move(c)} { trim(); }
    explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    static UPoly monomial(int k, Rational c = 1)
    {
        std::vector<Rational> v(static_cast<std::size_t>(k) + 1);
        v.back() = std::move(c);
        return UPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational& lead() const { return c_.back(); }
    Rational coeff(int k) const { return k >= 0 && k <= degree() ? c_[static_cast<std::size_t>(k)] : Rational(0); }
    const std::vector<Rational>& coeffs() const { return c_; }
    /// Lowest exponent with a nonzero coefficient.
    int valuation() const
    {
        for (int k = 0; k <= degree(); ++k)
            if (sgn(c_[static_cast<std::size_t>(k)]) != 0) return k;
        return -1;
    }
    bool is_monomial() const { return !is_zero() && valuation() == degree(); }

    friend UPoly operator+(const UPoly& a, const UPoly& b)
    {
        std::vector<Rational> v(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1));
        for (int k = 0; k < static_cast<int>(v.size()); ++k) v[static_cast<std::size_t>(k)] = a.coeff(k) + b.coeff(k);
        return UPoly(std::move(v));
    }
    friend UPoly operator-(const UPoly& a) { return a * UPoly(Rational(-1)); }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(v));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    /// Euclidean division a = q b + r.
    static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b)
    {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<Rational> r = a.c_, qv(static_cast<std::size_t>(std::max(a.degree() - b.degree() + 1, 0)));
        for (int k = a.degree() - b.degree(); k >= 0; --k) {
            const Rational f = r[static_cast<std::size_t>(k + b.degree())] / b.lead();
            qv[static_cast<std::size_t>(k)] = f;
            for (int j = 0; j <= b.degree(); ++j) r[static_cast<std::size_t>(k + j)] -= f * b.c_[static_cast<std::size_t>(j)];
        }
        return {UPoly(std::move(qv)), UPoly(std::move(r))};
    }
    UPoly monic() const { return is_zero() ? *this : *this * UPoly(Rational(1) / lead()); }
    static UPoly gcd(UPoly a, UPoly b)
    {
        while (!b.is_zero()) {
            UPoly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// Terms s^(k + shift) in descending order, written in q.
    std::vector<std::pair<Rational, std::string>> q_terms(long shift) const
    {
        std::vector<std::pair<Rational, std::string>> t;
        for (int k = degree(); k >= 0; --k)
            if (sgn(c_[static_cast<std::size_t>(k)]) != 0) t.emplace_back(c_[static_cast<std::size_t>(k)], detail::q_power(k + shift));
        return t;
    }

private:
    void trim()
    {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Reduced fraction num/den in Q(s) with monic denominator.
class RatFunc {
public:
    RatFunc() : num_(), den_(Rational(1)) {}
    RatFunc(long c) : RatFunc(Rational(c)) {} // NOLINT(google-explicit-constructor)
    RatFunc(Rational c) : num_(std::move(c)), den_(Rational(1)) {} // NOLINT(google-explicit-constructor)
    RatFunc(UPoly n, UPoly d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }
    /// The generator s = q^{1/2}.
    static RatFunc s() { return {UPoly::monomial(1), UPoly(Rational(1))}; }
    static RatFunc q() { return {UPoly::monomial(2), UPoly(Rational(1))}; }

    const UPoly& num() const { return num_; }
    const UPoly& den() const { return den_; }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) { return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_}; }
    friend RatFunc operator-(const RatFunc& a) { return {-a.num_, a.den_}; }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b)
    {
        if (b.num_.is_zero()) throw std::domain_error("rational function division by zero");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    /// Value at s = x.
    double eval(double x) const
    {
        auto ev = [x](const UPoly& p) {
            double v = 0;
            for (int k = p.degree(); k >= 0; --k) v = v * x + p.coeff(k).get_d();
            return v;
        };
        return ev(num_) / ev(den_);
    }

private:
    void reduce()
    {
        if (den_.is_zero()) throw std::domain_error("zero denominator");
        if (num_.is_zero()) {
            den_ = UPoly(Rational(1));
            return;
        }
        const UPoly g = UPoly::gcd(num_, den_);
        num_ = UPoly::divmod(num_, g).first;
        den_ = UPoly::divmod(den_, g).first;
        const Rational l = den_.lead();
        num_ = num_ * UPoly(Rational(1) / l);
        den_ = den_ * UPoly(Rational(1) / l);
    }
    UPoly num_, den_;
};

inline bool is_zero(const RatFunc& x) { return x.num().is_zero(); }
inline bool leading_negative(const RatFunc& x) { return !x.num().is_zero() && sgn(x.num().lead()) < 0; }
inline std::string field_string(const RatFunc& x)
{
    if (x.den().is_monomial() && x.den().lead() == 1) return detail::format_sum(x.num().q_terms(-x.den().degree()));
    return "(" + detail::format_sum(x.num().q_terms(0)) + ")/(" + detail::format_sum(x.den().q_terms(0)) + ")";
}

/// x + y u with u^2 = Tag::square(); arithmetic needs both operands over the same Tag.
template <class F, class Tag>
class QuadExt {
public:
    QuadExt() = default;
    QuadExt(long c) : x_(c), y_(0) {} // NOLINT(google-explicit-constructor)
    QuadExt(F x) : x_(std::move(x)), y_(0) {} // NOLINT(google-explicit-constructor)
    QuadExt(F x, F y) : x_(std::move(x)), y_(std::move(y)) {}
    static QuadExt u() { return {F(0), F(1)}; }

    const F& x() const { return x_; }
    const F& y() const { return y_; }
    /// The element as a member of F; throws when the u part is nonzero.
    F base() const
    {
        if (!is_zero(y_)) throw std::domain_error("element does not lie in the base field");
        return x_;
    }

    friend QuadExt operator+(const QuadExt& a, const QuadExt& b) { return {a.x_ + b.x_, a.y_ + b.y_}; }
    friend QuadExt operator-(const QuadExt& a) { return {-a.x_, -a.y_}; }
    friend QuadExt operator-(const QuadExt& a, const QuadExt& b) { return {a.x_ - b.x_, a.y_ - b.y_}; }
    friend QuadExt operator*(const QuadExt& a, const QuadExt& b)
    {
        return {a.x_ * b.x_ + a.y_ * b.y_ * Tag::square(), a.x_ * b.y_ + a.y_ * b.x_};
    }
    friend QuadExt operator/(const QuadExt& a, const QuadExt& b)
    {
        const F n = b.x_ * b.x_ - b.y_ * b.y_ * Tag::square();
        if (is_zero(n)) throw std::domain_error("division by zero in quadratic extension");
        return a * QuadExt(b.x_ / n, -b.y_ / n);
    }
    QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
    QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
    friend bool operator==(const QuadExt& a, const QuadExt& b) { return a.x_ == b.x_ && a.y_ == b.y_; }

private:
    F x_{}, y_{};
};

template <class F, class Tag>
bool is_zero(const QuadExt<F, Tag>& a)
{
    return is_zero(a.x()) && is_zero(a.y());
}
template <class F, class Tag>
bool leading_negative(const QuadExt<F, Tag>& a)
{
    return is_zero(a.x()) ? leading_negative(a.y()) : leading_negative(a.x());
}
template <class F, class Tag>
std::string field_string(const QuadExt<F, Tag>& a)
{
    if (is_zero(a.y())) return field_string(a.x());
    const std::string u = "(" + field_string(a.y()) + ")*" + Tag::name();
    return is_zero(a.x()) ? u : "(" + field_string(a.x()) + ") + " + u;
}

/// u = sqrt(2/(q + q^-1)) = sqrt(2 s^2/(s^4 + 1)).
struct HalfSechTag {
    static const RatFunc& square()
    {
        static const RatFunc d{UPoly::monomial(2, 2), UPoly::monomial(4) + UPoly(Rational(1))};
        return d;
    }
    static std::string name() { return "u"; }
};

using QField = QuadExt<RatFunc, HalfSechTag>;

/// Truncated power series in h; constants carry unbounded order.
class HSeries {
public:
    static constexpr int unbounded = INT_MAX;

    HSeries() : c_{Rational(0)} {}
    HSeries(long c) : c_{Rational(c)} {} // NOLINT(google-explicit-constructor)
    HSeries(Rational c) : c_{std::move(c)} {} // NOLINT(google-explicit-constructor)
    HSeries(std::vector<Rational> c, int order) : order_(order), c_(std::move(c))
    {
        if (order < 0) throw std::invalid_argument("negative truncation order");
        if (order != unbounded && static_cast<int>(c_.size()) > order + 1) c_.resize(static_cast<std::size_t>(order) + 1);
    }
    /// e^{a h} to the given order.
    static HSeries exp(int order, const Rational& a = 1)
    {
        std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
        Rational t = 1;
        for (int k = 0; k <= order; ++k) {
            c[static_cast<std::size_t>(k)] = t;
            t = t * a / (k + 1);
        }
        return {std::move(c), order};
    }
    static HSeries h(int order) { return {{Rational(0), Rational(1)}, order}; }

    int order() const { return order_; }
    Rational coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : Rational(0); }

    friend HSeries operator+(const HSeries& a, const HSeries& b)
    {
        const int o = std::min(a.order_, b.order_);
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (int k = 0; k < static_cast<int>(c.size()); ++k) c[static_cast<std::size_t>(k)] = a.coeff(k) + b.coeff(k);
        return {std::move(c), o};
    }
    friend HSeries operator-(const HSeries& a)
    {
        std::vector<Rational> c = a.c_;
        for (auto& x : c) x = -x;
        return {std::move(c), a.order_};
    }
    friend HSeries operator-(const HSeries& a, const HSeries& b) { return a + (-b); }
    friend HSeries operator*(const HSeries& a, const HSeries& b)
    {
        const int o = std::min(a.order_, b.order_);
        const long n = std::min<long>(static_cast<long>(a.c_.size() + b.c_.size()) - 1, static_cast<long>(o) + 1);
        std::vector<Rational> c(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size() && static_cast<long>(i + j) < n; ++j) c[i + j] += a.c_[i] * b.c_[j];
        return {std::move(c), o};
    }
    HSeries inverse() const
    {
        if (sgn(coeff(0)) == 0) throw std::domain_error("series with zero constant term is not invertible");
        if (c_.size() == 1) return HSeries(Rational(1) / c_[0]);
        if (order_ == unbounded) throw std::domain_error("inverse of an untruncated series");
        std::vector<Rational> b(static_cast<std::size_t>(order_) + 1);
        b[0] = Rational(1) / c_[0];
        for (int k = 1; k <= order_; ++k) {
            Rational s = 0;
            for (int j = 1; j <= k; ++j) s += coeff(j) * b[static_cast<std::size_t>(k - j)];
            b[static_cast<std::size_t>(k)] = -s / c_[0];
        }
        return {std::move(b), order_};
    }
    friend HSeries operator/(const HSeries& a, const HSeries& b) { return a * b.inverse(); }
    HSeries& operator+=(const HSeries& o) { return *this = *this + o; }
    HSeries& operator-=(const HSeries& o) { return *this = *this - o; }
    HSeries& operator*=(const HSeries& o) { return *this = *this * o; }
    friend bool operator==(const HSeries& a, const HSeries& b) { return is_zero(a - b); }

    /// (1 + x)^alpha for a series with constant term 1, via the binomial series.
    HSeries power(const Rational& alpha) const
    {
        if (coeff(0) != 1) throw std::domain_error("power needs constant term 1");
        if (order_ == unbounded) return *this;
        const HSeries x = *this - HSeries(1);
        HSeries sum(1), term(1);
        Rational binom = 1;
        for (int k = 1; k <= order_; ++k) {
            term = term * x;
            binom = binom * (alpha - (k - 1)) / k;
            sum += term * HSeries(binom);
        }
        return HSeries(sum.c_, order_);
    }

    friend bool is_zero(const HSeries& a)
    {
        return std::all_of(a.c_.begin(), a.c_.end(), [](const Rational& x) { return sgn(x) == 0; });
    }

private:
    int order_ = unbounded;
    std::vector<Rational> c_;
};

inline bool leading_negative(const HSeries& a)
{
    for (int k = 0;; ++k) {
        if (k > a.order() || k > 64) return false;
        if (sgn(a.coeff(k)) != 0) return sgn(a.coeff(k)) < 0;
    }
}
inline std::string field_string(const HSeries& a)
{
    std::vector<std::pair<Rational, std::string>> t;
    const int top = a.order() == HSeries::unbounded ? 0 : a.order();
    for (int k = 0; k <= top; ++k)
        if (sgn(a.coeff(k)) != 0) t.emplace_back(a.coeff(k), k == 0 ? "" : k == 1 ? "h" : "h^" + std::to_string(k));
    std::string s = detail::format_sum(t);
    if (a.order() != HSeries::unbounded) s += " + O(h^" + std::to_string(a.order() + 1) + ")";
    return s;
}

/// Coefficient string ready to multiply a monomial: "", "-", "3*", "(q - q^-1)*".
template <class F>
std::string coefficient_prefix(const F& c)
{
    const std::string s = field_string(c);
    if (s == "1") return "";
    if (s == "-1") return "-";
    const bool compound = s.find(" + ", 1) != std::string::npos || s.find(" - ", 1) != std::string::npos;
    return (compound ? "(" + s + ")" : s) + "*";
}

} // namespace dq::pl
