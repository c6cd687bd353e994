#pragma once

// The eval grammar:
//   star(f, g)  mbracket(f, g)  wigner(n)  symbol(op)  normalize(word)
// f, g are polynomials in q, p (with i, hbar not allowed inside); op is a
// noncommutative expression in Q, P; word is a product of a, b, c, d.

#include "dq/exact/moyal.hpp"
#include "dq/numeric/operator.hpp"
#include "dq/pl/slq.hpp"

#include <cctype>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dq::cli {

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(std::size_t p, const std::string& msg) : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

/// Recursive descent over + - * / ^ and parentheses; V supplies the ring operations.
template <class V>
class ExprParser {
public:
    using Lookup = std::function<std::optional<V>(const std::string&)>;
    using Scalar = std::function<V(const Complex&)>;

    ExprParser(std::string text, std::size_t offset, Lookup var, Scalar scalar)
        : s_(std::move(text)), off_(offset), var_(std::move(var)), scalar_(std::move(scalar))
    {
    }

    V parse()
    {
        V v = expr();
        skip();
        if (i_ < s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& m) const { throw ParseError(off_ + i_, m); }
    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    V expr()
    {
        V v = term();
        for (;;) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }
    V term()
    {
        V v = factor();
        for (;;) {
            if (eat('*')) v = v * factor();
            else if (eat('/')) {
                skip();
                const std::size_t at = i_;
                const Rational d = integer();
                if (sgn(d) == 0) {
                    i_ = at;
                    fail("division by zero");
                }
                v = v * scalar_(Complex(Rational(1) / d));
            } else return v;
        }
    }
    V factor()
    {
        V base = unary();
        if (!eat('^')) return base;
        skip();
        const Rational e = integer();
        if (e > 64) fail("exponent too large");
        V out = scalar_(Complex(1));
        for (long k = 0; k < e.get_num().get_si(); ++k) out = out * base;
        return out;
    }
    V unary()
    {
        if (eat('-')) return scalar_(Complex(-1)) * unary();
        if (eat('+')) return unary();
        return primary();
    }
    V primary()
    {
        skip();
        if (i_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[i_];
        if (c == '(') {
            ++i_;
            V v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return scalar_(Complex(integer()));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t at = i_;
            std::string name;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) name += s_[i_++];
            if (name == "i") return scalar_(Complex::i());
            if (auto v = var_(name)) return *v;
            i_ = at;
            fail("undefined symbol '" + name + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
    Rational integer()
    {
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected a number");
        std::string d;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) d += s_[i_++];
        return Rational(d);
    }

    std::string s_;
    std::size_t off_;
    std::size_t i_ = 0;
    Lookup var_;
    Scalar scalar_;
};

inline PhasePoly parse_phase_poly(const std::string& text, std::size_t offset = 0)
{
    ExprParser<PhasePoly> p(
        text, offset,
        [](const std::string& n) -> std::optional<PhasePoly> {
            if (n == "q") return PhasePoly::q(1);
            if (n == "p") return PhasePoly::p(1);
            return std::nullopt;
        },
        [](const Complex& c) { return PhasePoly::constant(1, c); });
    return p.parse();
}

inline numeric::OperatorMatrix parse_operator(const std::string& text, int M, double hbar, std::size_t offset = 0)
{
    const numeric::OperatorMatrix Q = numeric::position_matrix(M, hbar), P = numeric::momentum_matrix(M, hbar);
    ExprParser<numeric::OperatorMatrix> p(
        text, offset,
        [&](const std::string& n) -> std::optional<numeric::OperatorMatrix> {
            if (n == "Q") return Q;
            if (n == "P") return P;
            return std::nullopt;
        },
        [M](const Complex& c) -> numeric::OperatorMatrix {
            return numeric::cplx(c.re.get_d(), c.im.get_d()) * numeric::OperatorMatrix::Identity(M, M);
        });
    return p.parse();
}

/// A word in a, b, c, d; letters may be separated by '*' or spaces.
inline std::string parse_word(const std::string& text, std::size_t offset = 0)
{
    std::string w;
    for (std::size_t k = 0; k < text.size(); ++k) {
        const char c = text[k];
        if (c == '*' || std::isspace(static_cast<unsigned char>(c))) continue;
        if (c < 'a' || c > 'd') {
            if (std::isalpha(static_cast<unsigned char>(c))) throw ParseError(offset + k, "undefined symbol '" + std::string(1, c) + "'");
            throw ParseError(offset + k, "unexpected '" + std::string(1, c) + "'");
        }
        w += c;
    }
    if (w.empty()) throw ParseError(offset, "empty word");
    return w;
}

/// "(i/2)", "3", "(1/2 - i)"; sign handled by the caller through `negative`.
inline std::string complex_magnitude(const Complex& c, bool& negative)
{
    auto rat = [](const Rational& r) { return r.get_str(); };
    if (c.is_real()) {
        negative = sgn(c.re) < 0;
        const Rational a = abs(c.re);
        return a.get_den() == 1 ? rat(a) : "(" + rat(a) + ")";
    }
    if (c.is_imag()) {
        negative = sgn(c.im) < 0;
        const Rational a = abs(c.im);
        const std::string num = a.get_num() == 1 ? "i" : a.get_num().get_str() + "i";
        return a.get_den() == 1 ? num : "(" + num + "/" + a.get_den().get_str() + ")";
    }
    negative = false;
    return "(" + rat(c.re) + (sgn(c.im) < 0 ? " - " : " + ") + rat(abs(c.im)) + "i)";
}

/// Series in hbar with one degree of freedom, as "q*p - (i/2)*hbar".
inline std::string pretty(const HbarSeries& s)
{
    std::string out;
    for (int k = 0; k <= s.order(); ++k) {
        const auto& terms = s[k].terms();
        for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
            std::vector<std::string> f;
            auto pw = [](const std::string& x, int e) { return e == 1 ? x : x + "^" + std::to_string(e); };
            if (it->first[0] > 0) f.push_back(pw("q", it->first[0]));
            if (it->first[1] > 0) f.push_back(pw("p", it->first[1]));
            if (k > 0) f.push_back(pw("hbar", k));
            std::string m;
            for (const auto& x : f) m += (m.empty() ? "" : "*") + x;
            bool neg = false;
            std::string c = complex_magnitude(it->second, neg);
            std::string t = m.empty() ? c : c == "1" ? m : c + "*" + m;
            if (out.empty()) out = (neg ? "-" : "") + t;
            else out += (neg ? " - " : " + ") + t;
        }
    }
    return out.empty() ? "0" : out;
}

struct Call {
    std::string name;
    std::vector<std::pair<std::string, std::size_t>> args; ///< text and offset
};

/// name(arg, arg, ...) with commas split at parenthesis depth zero.
inline Call parse_call(const std::string& text)
{
    Call c;
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) c.name += text[i++];
    if (c.name.empty()) throw ParseError(start, "expected a function name");
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size() || text[i] != '(') throw ParseError(i, "expected '('");
    ++i;
    int depth = 0;
    std::size_t arg = i;
    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == '(') ++depth;
        else if (ch == ')' && depth > 0) --depth;
        else if ((ch == ',' || ch == ')') && depth == 0) {
            c.args.emplace_back(text.substr(arg, i - arg), arg);
            arg = i + 1;
            if (ch == ')') break;
        }
    }
    if (i >= text.size()) throw ParseError(text.size(), "expected ')'");
    for (std::size_t k = i + 1; k < text.size(); ++k)
        if (!std::isspace(static_cast<unsigned char>(text[k]))) throw ParseError(k, "trailing input");
    return c;
}

} // namespace dq::cli
