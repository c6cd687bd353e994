#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dq/exact/heisenberg.hpp"
#include "dq/exact/moyal.hpp"

#include <random>
#include <string>

using namespace dq;

namespace {

const Complex I = Complex::i();

PhasePoly q1() { return PhasePoly::q(1); }
PhasePoly p1() { return PhasePoly::p(1); }
PhasePoly one() { return PhasePoly::constant(1, Complex(1)); }
PhasePoly mono(int a, int b, Complex c = Complex(1)) { return PhasePoly::monomial(1, {a, b}, c); }

PhasePoly random_poly(std::mt19937& rng, int max_deg, bool real = false)
{
    std::uniform_int_distribution<int> deg(0, max_deg), num(-5, 5), den(1, 4);
    PhasePoly f(1);
    const int d = deg(rng);
    for (int a = 0; a <= d; ++a) {
        for (int b = 0; a + b <= d; ++b) {
            if (rng() % 3 == 0) continue;
            Complex c(make_rational(num(rng), den(rng)), real ? Rational(0) : make_rational(num(rng), den(rng)));
            f.add_term({a, b}, c);
        }
    }
    return f;
}

// brute force: expand every arrangement letter by letter, pushing each P to the right
HeisenbergPoly words_by_rewriting(const std::string& word)
{
    HeisenbergPoly acc = HeisenbergPoly::unit(1);
    for (char ch : word) acc = acc * (ch == 'Q' ? HeisenbergPoly::Q(1) : HeisenbergPoly::P(1));
    return acc;
}

// independent oracle for a product of letters: a string-rewriting loop on PQ -> QP - i hbar
std::map<std::pair<std::string, int>, Complex> rewrite_word(const std::string& w)
{
    std::map<std::pair<std::string, int>, Complex> todo{{{w, 0}, Complex(1)}}, done;
    while (!todo.empty()) {
        auto [key, c] = *todo.begin();
        todo.erase(todo.begin());
        auto pos = key.first.find("PQ");
        if (pos == std::string::npos) {
            done[key] += c;
            continue;
        }
        std::string swapped = key.first, dropped = key.first;
        swapped[pos] = 'Q';
        swapped[pos + 1] = 'P';
        dropped.erase(pos, 2);
        todo[{swapped, key.second}] += c;
        todo[{dropped, key.second + 1}] += c * Complex(Rational(0), Rational(-1));
    }
    return done;
}

HeisenbergPoly from_rewrites(const std::map<std::pair<std::string, int>, Complex>& m)
{
    HeisenbergPoly out(1);
    for (const auto& [key, c] : m) {
        int a = static_cast<int>(std::count(key.first.begin(), key.first.end(), 'Q'));
        int b = static_cast<int>(key.first.size()) - a;
        out.add_term({{a, b}, key.second}, c);
    }
    return out;
}

HeisenbergPoly symmetrize_by_rewriting(int m, int n)
{
    std::string w(m, 'Q');
    w += std::string(n, 'P');
    std::sort(w.begin(), w.end()); // "P..PQ..Q"
    HeisenbergPoly sum(1);
    int count = 0;
    do {
        sum += from_rewrites(rewrite_word(w));
        ++count;
    } while (std::next_permutation(w.begin(), w.end()));
    return sum * Complex(make_rational(1, count));
}

} // namespace

TEST_CASE("poisson bracket")
{
    CHECK(poisson_bracket(q1(), p1()) == one());
    PhasePoly f = mono(3, 1) + mono(0, 2, Complex(make_rational(2, 3)));
    CHECK(poisson_bracket(f, f).is_zero());
    CHECK(poisson_bracket(mono(2, 0), mono(0, 2)) == mono(1, 1, Complex(4)));
    CHECK_THROWS_AS(poisson_bracket(q1(), PhasePoly::q(2)), std::invalid_argument);

    std::mt19937 rng(7);
    for (int t = 0; t < 20; ++t) {
        PhasePoly a = random_poly(rng, 3), b = random_poly(rng, 3), c = random_poly(rng, 3);
        PhasePoly jac = poisson_bracket(a, poisson_bracket(b, c)) + poisson_bracket(b, poisson_bracket(c, a)) +
                        poisson_bracket(c, poisson_bracket(a, b));
        CHECK(jac.is_zero());
        CHECK(poisson_bracket(a, b * c) == poisson_bracket(a, b) * c + b * poisson_bracket(a, c));
    }
}

TEST_CASE("bidifferential powers")
{
    CHECK(bidiff_power(mono(2, 0), mono(0, 2), 2) == PhasePoly::constant(1, Complex(4)));
    CHECK(bidiff_power(q1(), p1(), 2).is_zero());
    std::mt19937 rng(3);
    PhasePoly f = random_poly(rng, 3), g = random_poly(rng, 3);
    CHECK(bidiff_power(f, g, 0) == f * g);
    CHECK(bidiff_power(f, g, 1) == poisson_bracket(f, g));
    CHECK_THROWS(bidiff_power(f, g, -1));

    // two degrees of freedom: P^2(q1 q2, p1 p2) = 2 (the two cross terms)
    PhasePoly a = PhasePoly::q(2, 1) * PhasePoly::q(2, 2);
    PhasePoly b = PhasePoly::p(2, 1) * PhasePoly::p(2, 2);
    CHECK(bidiff_power(a, b, 2) == PhasePoly::constant(2, Complex(2)));
}

TEST_CASE("star products of small monomials")
{
    HbarSeries qp = moyal_star(q1(), p1(), 2);
    CHECK(qp[0] == mono(1, 1));
    CHECK(qp[1] == PhasePoly::constant(1, Complex(Rational(0), make_rational(-1, 2))));
    CHECK(qp[2].is_zero());

    HbarSeries s = moyal_star(mono(2, 0), mono(0, 2), 3);
    CHECK(s[0] == mono(2, 2));
    CHECK(s[1] == mono(1, 1, Complex(Rational(0), Rational(-2))));
    CHECK(s[2] == PhasePoly::constant(1, Complex(make_rational(-1, 2))));
    CHECK(s[3].is_zero());

    std::mt19937 rng(11);
    PhasePoly f = random_poly(rng, 4);
    HbarSeries unit = moyal_star(one(), f, 4);
    CHECK(unit == HbarSeries(f, 4));
    CHECK(moyal_star(f, one(), 4) == HbarSeries(f, 4));

    HbarSeries comm = star_commutator(HbarSeries(q1(), 1), HbarSeries(p1(), 1));
    CHECK(comm[0].is_zero());
    CHECK(comm[1] == PhasePoly::constant(1, -I));

    CHECK_THROWS(moyal_star(HbarSeries(q1(), 1), HbarSeries(p1(), 2)));
}

TEST_CASE("deformation convention is the hbar one with h = -i hbar")
{
    HbarSeries s = moyal_star(mono(2, 0), mono(0, 2), 2, StarConvention::deformation);
    CHECK(s[1] == mono(1, 1, Complex(2)));
    CHECK(s[2] == PhasePoly::constant(1, Complex(make_rational(1, 2))));
}

TEST_CASE("moyal bracket")
{
    HbarSeries b = moyal_bracket(HbarSeries(q1(), 2), HbarSeries(p1(), 2));
    CHECK(b[0] == one());
    CHECK(b[1].is_zero());
    HbarSeries b2 = moyal_bracket(HbarSeries(mono(2, 0), 3), HbarSeries(mono(0, 2), 3));
    CHECK(b2[0] == mono(1, 1, Complex(4)));
    CHECK(b2[1].is_zero());
    CHECK(b2[2].is_zero());
    HbarSeries f(mono(3, 2) + mono(1, 0), 4);
    CHECK(moyal_bracket(f, f).is_zero());
}

TEST_CASE("associativity on random triples")
{
    std::mt19937 rng(2024);
    for (int t = 0; t < 200; ++t) {
        PhasePoly f = random_poly(rng, 6), g = random_poly(rng, 6), h = random_poly(rng, 6);
        const int N = std::max(0, f.degree()) + std::max(0, g.degree()) + std::max(0, h.degree());
        HbarSeries F(f, N), G(g, N), H(h, N);
        REQUIRE(moyal_star(moyal_star(F, G), H) == moyal_star(F, moyal_star(G, H)));
    }
}

TEST_CASE("semiclassical limit and parity of orders")
{
    std::mt19937 rng(5);
    for (int t = 0; t < 30; ++t) {
        PhasePoly f = random_poly(rng, 5), g = random_poly(rng, 5);
        HbarSeries c = star_commutator(HbarSeries(f, 2), HbarSeries(g, 2));
        CHECK(c[0].is_zero());
        CHECK(c[1] == poisson_bracket(f, g) * (-I));

        PhasePoly fr = random_poly(rng, 5, true), gr = random_poly(rng, 5, true);
        HbarSeries s = moyal_star(fr, gr, 10);
        for (int k = 0; k <= 10; ++k)
            for (const auto& [e, v] : s[k].terms()) CHECK((k % 2 == 0 ? v.is_real() : v.is_imag()));
    }
}

TEST_CASE("quadratic observables act as derivations")
{
    std::mt19937 rng(9);
    for (int t = 0; t < 20; ++t) {
        PhasePoly a = random_poly(rng, 2), f = random_poly(rng, 4), g = random_poly(rng, 4);
        const int N = 10;
        HbarSeries A(a, N), F(f, N), G(g, N);
        HbarSeries af = moyal_bracket(A, F);
        CHECK(af[0] == poisson_bracket(a, f));
        for (int k = 1; k < N; ++k) CHECK(af[k].is_zero());
        // the top order is lost to the division by hbar, compare below it
        HbarSeries lhs = moyal_bracket(A, moyal_star(F, G));
        HbarSeries rhs = moyal_star(moyal_bracket(A, F), G) + moyal_star(F, moyal_bracket(A, G));
        for (int k = 0; k < N; ++k) CHECK(lhs[k] == rhs[k]);
    }
}

TEST_CASE("symplectic equivariance")
{
    RationalMatrix id = {{1, 0}, {0, 1}};
    RationalMatrix rot = {{0, 1}, {-1, 0}};
    RationalMatrix shear = {{1, 1}, {0, 1}};
    CHECK(symplectic_equivariance_residual(q1(), p1(), id) == 0.0);
    CHECK(symplectic_equivariance_residual(q1(), p1(), rot) == 0.0);
    CHECK(symplectic_equivariance_residual(mono(3, 1), mono(1, 2), shear) == 0.0);
    RationalMatrix squeeze = {{2, 0}, {0, make_rational(1, 2)}};
    CHECK(symplectic_equivariance_residual(mono(2, 2), mono(1, 3), squeeze) == 0.0);
    RationalMatrix bad = {{2, 0}, {0, 1}};
    CHECK_THROWS_AS(symplectic_equivariance_residual(q1(), p1(), bad), std::invalid_argument);
}

TEST_CASE("weyl symmetrization")
{
    CHECK(weyl_symmetrize(q1()) == HeisenbergPoly::Q(1));
    HeisenbergPoly qp = HeisenbergPoly::Q(1) * HeisenbergPoly::P(1);
    qp.add_term({{0, 0}, 1}, Complex(Rational(0), make_rational(-1, 2)));
    CHECK(weyl_symmetrize(mono(1, 1)) == qp);

    HeisenbergPoly q2p = HeisenbergPoly::Q(1) * HeisenbergPoly::Q(1) * HeisenbergPoly::P(1);
    q2p.add_term({{1, 0}, 1}, -I);
    CHECK(weyl_symmetrize(mono(2, 1)) == q2p);

    CHECK(words_by_rewriting("PQ") == from_rewrites(rewrite_word("PQ")));
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n) CHECK(weyl_symmetrize_1d(m, n) == symmetrize_by_rewriting(m, n));

    // closed form: sum_k k! C(m,k) C(n,k) (-i hbar/2)^k Q^{m-k} P^{n-k}
    for (int m = 0; m <= 6; ++m) {
        for (int n = 0; n <= 6; ++n) {
            HeisenbergPoly ref(1);
            for (int k = 0; k <= std::min(m, n); ++k)
                ref.add_term({{m - k, n - k}, k},
                             Complex(factorial(k) * binomial(m, k) * binomial(n, k)) *
                                 pow(Complex(Rational(0), make_rational(-1, 2)), k));
            CHECK(weyl_symmetrize_1d(m, n) == ref);
        }
    }
}

TEST_CASE("weyl homomorphism on monomial pairs")
{
    CHECK(weyl_homomorphism_check(q1(), p1()));
    CHECK_FALSE(weyl_homomorphism_check(q1(), p1(), StarConvention::hbar));
    CHECK(weyl_homomorphism_check(q1(), p1(), StarConvention::hbar, true));
    CHECK(weyl_homomorphism_check(one(), mono(3, 2)));
    CHECK(weyl_homomorphism_check(mono(2, 0), mono(0, 2)));
    CHECK(weyl_homomorphism_check(PhasePoly::q(2, 1) * PhasePoly::p(2, 2), PhasePoly::p(2, 1) * PhasePoly::q(2, 2)));
}

TEST_CASE("serialization round trip")
{
    HbarSeries s = moyal_star(mono(2, 1, Complex(make_rational(3, 2))), mono(1, 3, Complex(Rational(1), Rational(-2))), 4);
    std::string text = s.str();
    CHECK(HbarSeries::parse(text) == s);
    CHECK(HbarSeries::parse(HbarSeries(1, 2).str()) == HbarSeries(1, 2));
    CHECK(moyal_star(q1(), p1(), 1).str() == "[n=1,N=1] (1+0i)*q1^1*p1^1 + (0-1/2i)*hbar^1");
    CHECK_THROWS(HbarSeries::parse("n=1 (1+0i)"));
    CHECK_THROWS(HbarSeries::parse("[n=1,N=1] (1+0i)*x1^1"));
}

TEST_CASE("weyl homomorphism for all monomial pairs up to total degree 8")
{
    std::vector<PhasePoly> monos;
    for (int d = 0; d <= 8; ++d)
        for (int a = 0; a <= d; ++a) monos.push_back(mono(a, d - a));
    int checked = 0;
    for (const auto& f : monos)
        for (const auto& g : monos)
            if (f.degree() + g.degree() <= 8) {
                REQUIRE(weyl_homomorphism_check(f, g));
                REQUIRE(weyl_homomorphism_check(f, g, StarConvention::hbar, true));
                ++checked;
            }
    CHECK(checked > 0);
}
