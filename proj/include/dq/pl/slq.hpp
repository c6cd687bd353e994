#pragma once

// Quantum layer: the twist F^ and R_q = sqrt(q) sigma(F^-1) e^{(sigma - I/2) h} F^,
// the Yang-Baxter and unitarity residuals, and the ordered-monomial normal form
// of Fun_q(SL(2)) with its RTT certificate and semiclassical limit.
//
// Three coefficient modes share the code:
//   exact    QField (rational functions of s = q^{1/2}, extended by u)
//   series   HSeries, q = e^h
//   numeric  double

#include "dq/pl/sl2.hpp"

#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace dq::pl {

/// Scalars entering F^ and R_q, all as members of F.
template <class F>
struct QParams {
    F q, q_inv, sqrt_q, u, u_inv, v;
    F cosh_half, sinh_half; // of h/2
    F cosh_h, sinh_h, exp_minus_half;
};

inline QParams<QField> exact_params()
{
    const RatFunc s = RatFunc::s(), si = RatFunc(1) / s, q = s * s, qi = si * si;
    const QField u = QField::u();
    const QField ui = QField(1) / u;
    return {q, qi, s, u, ui, QField(RatFunc(Rational(1, 2)) * (q - qi)) * u,
            RatFunc(Rational(1, 2)) * (s + si), RatFunc(Rational(1, 2)) * (s - si),
            RatFunc(Rational(1, 2)) * (q + qi), RatFunc(Rational(1, 2)) * (q - qi), si};
}

/// Series mode; order < 2 cannot resolve F^ beyond its linear term.
inline QParams<HSeries> series_params(int order = 4)
{
    if (order < 2) throw std::invalid_argument("series truncation order must be at least 2");
    const HSeries e = HSeries::exp(order), ei = HSeries::exp(order, -1);
    const HSeries eh = HSeries::exp(order, Rational(1, 2)), ehi = HSeries::exp(order, Rational(-1, 2));
    const HSeries half(Rational(1, 2));
    const HSeries ch = half * (e + ei), sh = half * (e - ei);
    const HSeries u = ch.power(Rational(-1, 2)), ui = ch.power(Rational(1, 2));
    return {e, ei, eh, u, ui, sh * u, half * (eh + ehi), half * (eh - ehi), ch, sh, ehi};
}

inline QParams<double> numeric_params(double h)
{
    const double ch = std::cosh(h), u = 1 / std::sqrt(ch);
    return {std::exp(h), std::exp(-h), std::exp(h / 2), u, 1 / u, std::sinh(h) * u,
            std::cosh(h / 2), std::sinh(h / 2), ch, std::sinh(h), std::exp(-h / 2)};
}

template <class F>
Mat<F> convert(const RMat& m)
{
    return m.map<F>([](const Rational& x) { return F(x); });
}
template <>
inline Mat<double> convert<double>(const RMat& m)
{
    return m.map<double>([](const Rational& x) { return x.get_d(); });
}

/// F^ = e^{-h sigma / 2} [[sqrt q,0,0,0],[0,1/u,0,0],[0,v,u,0],[0,0,0,sqrt q]].
template <class F>
Mat<F> build_fhat(const QParams<F>& P)
{
    Mat<F> M(4);
    M(0, 0) = P.sqrt_q;
    M(1, 1) = P.u_inv;
    M(2, 1) = P.v;
    M(2, 2) = P.u;
    M(3, 3) = P.sqrt_q;
    const Mat<F> E = P.cosh_half * Mat<F>::identity(4) - P.sinh_half * flip<F>();
    return E * M;
}

/// sqrt(q) sigma(F^-1) e^{(sigma - I/2) h} F^; throws std::domain_error for singular F^.
template <class F>
Mat<F> build_rq(const Mat<F>& fhat, const QParams<F>& P)
{
    const Mat<F> E = P.exp_minus_half * (P.cosh_h * Mat<F>::identity(4) + P.sinh_h * flip<F>());
    return P.sqrt_q * sigma(fhat.inverse()) * E * fhat;
}

/// [[q,0,0,0],[0,1,0,0],[0,q-q^-1,1,0],[0,0,0,q]].
template <class F>
Mat<F> explicit_rq(const F& q, const F& q_inv)
{
    Mat<F> R = Mat<F>::identity(4);
    R(0, 0) = q;
    R(3, 3) = q;
    R(2, 1) = q - q_inv;
    return R;
}

/// R12 R13 R23 - R23 R13 R12.
template <class F>
Mat<F> qybe_residual(const Mat<F>& R)
{
    const Mat<F> a = leg12(R), b = leg13(R), c = leg23(R);
    return a * b * c - c * b * a;
}

/// R R^sigma - I with R^sigma = sigma(R).
template <class F>
Mat<F> unitarity_residual(const Mat<F>& R)
{
    return R * sigma(R) - Mat<F>::identity(R.size());
}

/// Degree first, then lexicographic; the order of ordered monomials a^i b^j c^k d^l.
struct DegLex {
    bool operator()(const std::string& x, const std::string& y) const { return x.size() != y.size() ? x.size() < y.size() : x < y; }
};

/// Noncommutative polynomial in a, b, c, d: words with coefficients in F.
template <class F>
class QPoly {
public:
    QPoly() = default;
    static QPoly word(const std::string& w, F c = F(1))
    {
        QPoly p;
        p.add(w, c);
        return p;
    }

    const std::map<std::string, F, DegLex>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add(const std::string& w, const F& c)
    {
        auto it = t_.find(w);
        if (it == t_.end()) {
            if (!detail::zero_entry(c)) t_.emplace(w, c);
            return;
        }
        it->second = it->second + c;
        if (detail::zero_entry(it->second)) t_.erase(it);
    }

    friend QPoly operator+(QPoly a, const QPoly& b)
    {
        for (const auto& [w, c] : b.t_) a.add(w, c);
        return a;
    }
    friend QPoly operator-(QPoly a, const QPoly& b)
    {
        for (const auto& [w, c] : b.t_) a.add(w, F(0) - c);
        return a;
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b)
    {
        QPoly r;
        for (const auto& [w1, c1] : a.t_)
            for (const auto& [w2, c2] : b.t_) r.add(w1 + w2, c1 * c2);
        return r;
    }
    friend QPoly operator*(const F& s, const QPoly& a)
    {
        QPoly r;
        for (const auto& [w, c] : a.t_) r.add(w, s * c);
        return r;
    }
    friend bool operator==(const QPoly& a, const QPoly& b) { return (a - b).is_zero(); }

    /// "a*d - (q - q^-1)*b*c".
    std::string str() const
    {
        if (t_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [w, c] : t_) {
            std::string m;
            for (char x : w) m += std::string(m.empty() ? "" : "*") + x;
            const bool neg = leading_negative(c);
            const F a = neg ? F(0) - c : c;
            std::string p = coefficient_prefix(a);
            if (m.empty()) p = field_string(a);
            if (first) out += (neg ? "-" : "") + p + m;
            else out += (neg ? " - " : " + ") + p + m;
            first = false;
        }
        return out;
    }

private:
    std::map<std::string, F, DegLex> t_;
};

/// The six exchange relations of Fun_q(SL(2)), oriented towards ordered monomials:
///   ba -> q^-1 ab, ca -> q^-1 ac, cb -> bc, db -> q^-1 bd, dc -> q^-1 cd, da -> ad - (q - q^-1) bc.
/// cb other than 1 breaks confluence; kept for negative controls.
template <class F>
struct SLqRelations {
    F q, q_inv;
    F cb = F(1);

    /// Rewrite of the descending pair xy (x > y), as (word, coefficient) terms.
    std::vector<std::pair<std::string, F>> rule(char x, char y) const
    {
        const std::string up{y, x};
        if (x == 'c' && y == 'b') return {{up, cb}};
        if (x == 'd' && y == 'a') return {{"ad", F(1)}, {"bc", q_inv - q}};
        return {{up, q_inv}};
    }

    /// Apply the rule at position i of w (which must hold a descending pair).
    QPoly<F> rewrite_at(const std::string& w, std::size_t i, const F& c) const
    {
        QPoly<F> out;
        for (const auto& [r, k] : rule(w[i], w[i + 1])) out.add(w.substr(0, i) + r + w.substr(i + 2), c * k);
        return out;
    }
};

inline SLqRelations<QField> exact_relations()
{
    const RatFunc q = RatFunc::q();
    return {q, RatFunc(1) / q};
}
inline SLqRelations<RatFunc> ratfunc_relations()
{
    const RatFunc q = RatFunc::q();
    return {q, RatFunc(1) / q};
}
inline SLqRelations<HSeries> series_relations(int order = 4)
{
    return {HSeries::exp(order), HSeries::exp(order, -1)};
}

/// Ordered-monomial normal form: rewrite the leftmost descending pair until none is left.
template <class F>
QPoly<F> nc_normalize(const QPoly<F>& p, const SLqRelations<F>& rel)
{
    QPoly<F> out;
    std::vector<std::pair<std::string, F>> work(p.terms().begin(), p.terms().end());
    while (!work.empty()) {
        auto [w, c] = std::move(work.back());
        work.pop_back();
        std::size_t i = 0;
        while (i + 1 < w.size() && w[i] <= w[i + 1]) ++i;
        if (i + 1 >= w.size()) {
            out.add(w, c);
            continue;
        }
        const QPoly<F> next = rel.rewrite_at(w, i, c);
        for (const auto& [r, k] : next.terms()) work.emplace_back(r, k);
    }
    return out;
}

template <class F>
QPoly<F> nc_normalize(const std::string& w, const SLqRelations<F>& rel)
{
    return nc_normalize(QPoly<F>::word(w), rel);
}

/// Words of length <= max_len where some single rewrite step leads to a different normal form.
template <class F>
int confluence_failures(const SLqRelations<F>& rel, int max_len = 4)
{
    int fails = 0;
    std::vector<std::string> words{""};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::string> next;
        for (const auto& w : words)
            for (char x : std::string("abcd")) next.push_back(w + x);
        words = std::move(next);
        for (const auto& w : words) {
            const QPoly<F> ref = nc_normalize(w, rel);
            for (std::size_t i = 0; i + 1 < w.size(); ++i)
                if (w[i] > w[i + 1] && !(nc_normalize(rel.rewrite_at(w, i, F(1)), rel) == ref)) {
                    ++fails;
                    break;
                }
        }
    }
    return fails;
}

/// Normal forms of the 16 entries of R T1 T2 - T2 T1 R; row-major over (2i+k, 2j+l).
template <class F>
std::vector<QPoly<F>> rtt_residual(const Mat<F>& R, const SLqRelations<F>& rel)
{
    static const char T[2][2] = {{'a', 'b'}, {'c', 'd'}};
    std::vector<QPoly<F>> out;
    for (int I = 0; I < 4; ++I)
        for (int J = 0; J < 4; ++J) {
            QPoly<F> p;
            const int j = J / 2, l = J % 2;
            // (R T1 T2)_{IJ} = sum_K R_{IK} t_{ij} t_{kl}, K = (i, k)
            for (int K = 0; K < 4; ++K) {
                if (is_zero(R(I, K))) continue;
                const int i = K / 2, k = K % 2;
                p.add(std::string{T[i][j], T[k][l]}, R(I, K));
            }
            // (T2 T1 R)_{IJ} = sum_K t_{kl'} t_{ij'} R_{KJ}, I = (i, k), K = (j', l')
            const int i = I / 2, k = I % 2;
            for (int K = 0; K < 4; ++K) {
                if (is_zero(R(K, J))) continue;
                const int j2 = K / 2, l2 = K % 2;
                p.add(std::string{T[k][l2], T[i][j2]}, F(0) - R(K, J));
            }
            out.push_back(nc_normalize(p, rel));
        }
    return out;
}

/// D = ad - q bc.
template <class F>
QPoly<F> quantum_determinant(const SLqRelations<F>& rel)
{
    return QPoly<F>::word("ad") - QPoly<F>::word("bc", rel.q);
}

/// Normal forms of D x - x D for x = a, b, c, d.
template <class F>
std::vector<QPoly<F>> quantum_determinant_commutators(const SLqRelations<F>& rel)
{
    const QPoly<F> D = quantum_determinant(rel);
    std::vector<QPoly<F>> out;
    for (char x : std::string("abcd")) {
        const QPoly<F> X = QPoly<F>::word(std::string(1, x));
        out.push_back(nc_normalize(D * X - X * D, rel));
    }
    return out;
}

template <class F>
bool quantum_determinant_central(const SLqRelations<F>& rel)
{
    for (const auto& c : quantum_determinant_commutators(rel))
        if (!c.is_zero()) return false;
    return true;
}

/// Commutative image of the h^k coefficients of a series-valued polynomial.
inline SkPoly abelianize(const QPoly<HSeries>& p, int k)
{
    SkPoly out;
    for (const auto& [w, c] : p.terms()) {
        SkPoly::Exps e{};
        for (char x : w) ++e[static_cast<std::size_t>(x - 'a')];
        out += SkPoly::monomial(e, c.coeff(k));
    }
    return out;
}

struct SemiclassicalPair {
    char x, y;
    SkPoly from_star, bracket;
    bool equal() const { return from_star == bracket; }
};

/// h^1 coefficient of nc_normalize(xy) - nc_normalize(yx) against {x, y}, for every generator pair x < y.
inline std::vector<SemiclassicalPair> semiclassical_limit(int order = 4)
{
    if (order < 3) throw std::invalid_argument("semiclassical limit needs series order >= 3");
    const auto rel = series_relations(order);
    std::vector<SemiclassicalPair> out;
    for (int x = 0; x < 4; ++x)
        for (int y = x + 1; y < 4; ++y) {
            const std::string X(1, static_cast<char>('a' + x)), Y(1, static_cast<char>('a' + y));
            const QPoly<HSeries> c = nc_normalize(X + Y, rel) - nc_normalize(Y + X, rel);
            out.push_back({X[0], Y[0], abelianize(c, 1), sklyanin_bracket(SkPoly::gen(x), SkPoly::gen(y))});
        }
    return out;
}

/// One check record: residual counts nonzero entries in exact/series mode and is max |entry| in numeric mode.
struct PLCheck {
    std::string check_name;
    std::string mode;
    double residual = 0;
    std::string witness;

    nlohmann::json to_json() const
    {
        nlohmann::json j{{"check_name", check_name}, {"mode", mode}, {"residual", residual}};
        j["witness"] = witness.empty() ? nlohmann::json(nullptr) : nlohmann::json(witness);
        return j;
    }
};

/// Residual in the sense of PLCheck for an exact or series matrix.
template <class F>
PLCheck matrix_check(std::string name, std::string mode, const Mat<F>& m)
{
    double nonzero = 0;
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j)
            if (!is_zero(m(i, j))) nonzero += 1;
    return {std::move(name), std::move(mode), nonzero, m.witness()};
}
inline PLCheck matrix_check(std::string name, std::string mode, const Mat<double>& m)
{
    return {std::move(name), std::move(mode), m.residual(), m.residual() > 0 ? m.witness() : ""};
}

} // namespace dq::pl
