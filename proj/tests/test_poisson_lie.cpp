#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dq/pl/slq.hpp"

#include <random>

using namespace dq::pl;

namespace {

RMat rmat4(std::initializer_list<long> v)
{
    std::vector<Rational> e;
    for (long x : v) e.emplace_back(x);
    return RMat(4, std::move(e));
}

SkPoly random_sk(std::mt19937_64& rng, int terms, int degree)
{
    std::uniform_int_distribution<int> c(-3, 3), e(0, degree);
    SkPoly p;
    for (int t = 0; t < terms; ++t) p += SkPoly::monomial({e(rng), e(rng), e(rng), e(rng)}, Rational(c(rng)));
    return p;
}

int nonzero(const std::vector<QPoly<RatFunc>>& v)
{
    int n = 0;
    for (const auto& p : v) n += !p.is_zero();
    return n;
}

} // namespace

TEST_CASE("coefficient fields")
{
    const RatFunc s = RatFunc::s();
    const RatFunc r{UPoly::monomial(2) - UPoly(Rational(1)), UPoly::monomial(1) - UPoly(Rational(1))};
    CHECK(r == s + RatFunc(1));
    CHECK(field_string(s * s - RatFunc(1) / (s * s)) == "q - q^-1");
    CHECK(field_string(s) == "q^(1/2)");
    CHECK(field_string(RatFunc(1) / (s * s + RatFunc(1))) == "(1)/(q + 1)");

    const QField u = QField::u();
    const RatFunc q = RatFunc::q();
    CHECK((u * u).base() == RatFunc(2) / (q + RatFunc(1) / q));
    CHECK(u * (QField(1) / u) == QField(1));
    const QField z{q, RatFunc(3)};
    CHECK(z * (QField(1) / z) == QField(1));
    CHECK_THROWS_AS(u.base(), std::domain_error);

    const HSeries e = HSeries::exp(6), ei = HSeries::exp(6, -1);
    CHECK(e * ei == HSeries(1));
    CHECK(e.inverse() == ei);
    const HSeries c = Rational(1, 2) * (e + ei);
    CHECK(c.power(Rational(1, 2)) * c.power(Rational(1, 2)) == c);
    CHECK(c.power(Rational(-1, 2)) * c.power(Rational(1, 2)) == HSeries(1));
    CHECK(field_string(HSeries::exp(2)) == "1 + h + 1/2*h^2 + O(h^3)");
    CHECK_THROWS_AS(HSeries::h(3).inverse(), std::domain_error);
}

TEST_CASE("sl(2) brackets and the defining representation")
{
    CHECK(sl2_jacobi_failures() == 0);
    CHECK(bracket(Sl2Element::H(), Sl2Element::Xp()) == Rational(2) * Sl2Element::Xp());
    CHECK(bracket(Sl2Element::H(), Sl2Element::Xm()) == Rational(-2) * Sl2Element::Xm());
    CHECK(bracket(Sl2Element::Xp(), Sl2Element::Xm()) == Sl2Element::H());
    CHECK(representation_failures(rho) == 0);
    // the rotation matrix as image of H is inconsistent with [X+, X-] = H
    CHECK(representation_failures(rho_rotation_h) > 0);
    CHECK_FALSE(commutator(rho_rotation_h(Sl2Element::Xp()), rho_rotation_h(Sl2Element::Xm())) == rho_rotation_h(Sl2Element::H()));
}

TEST_CASE("classical r-matrix and the Schouten bracket")
{
    const RMat r = r_hat();
    CHECK(r == rmat4({0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0}));
    CHECK(sigma(r) + r == RMat(4));
    CHECK(sigma(sigma(r)) == r);
    CHECK(schouten_bracket_rep(RMat(4)).is_zero());

    const RMat S = schouten_bracket_rep(r);
    CHECK_FALSE(S.is_zero());
    for (const auto& a : ad3_residuals(S)) CHECK(a.is_zero());
    // a non-invariant tensor is detected
    CHECK_FALSE(ad3_residuals(leg12(r))[1].is_zero());

    CHECK_THROWS_AS(schouten_bracket_rep(RMat::identity(4)), std::invalid_argument);
    CHECK_THROWS_AS(schouten_bracket_rep(RMat::identity(2)), std::invalid_argument);

    CHECK(t_hat() == flip<Rational>() - Rational(1, 2) * RMat::identity(4));
    CHECK(t_identity_residual().is_zero());
    CHECK(sigma(t_hat()) == t_hat());

    // leg maps preserve entries and the flip is an involution on both legs
    CHECK(leg13(RMat::identity(4)) == RMat::identity(8));
    CHECK(flip<Rational>() * flip<Rational>() == RMat::identity(4));
}

TEST_CASE("sklyanin bracket")
{
    CHECK(sklyanin_table_mismatches(r_hat(), sklyanin_table()) == 0);
    // a wrong sign on r changes every nonzero entry
    CHECK(sklyanin_table_mismatches(Rational(-1) * r_hat(), sklyanin_table()) > 0);

    const SkPoly a = SkPoly::gen(0), b = SkPoly::gen(1), c = SkPoly::gen(2), d = SkPoly::gen(3);
    CHECK(sklyanin_bracket(a, d) == SkPoly(2) * b * c);
    CHECK(sklyanin_bracket(b, c).is_zero());
    CHECK(sklyanin_bracket(a, b) == a * b);
    CHECK(sklyanin_bracket(a, d).str() == "2*b*c");
    CHECK(sklyanin_jacobi_failures() == 0);
    for (const auto& x : {a, b, c, d}) CHECK(sklyanin_bracket(classical_determinant(), x).is_zero());

    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const SkPoly f = random_sk(rng, 3, 2), g = random_sk(rng, 3, 2), h = random_sk(rng, 2, 1);
        CHECK(sklyanin_bracket(f, g) + sklyanin_bracket(g, f) == SkPoly(0));
        CHECK(sklyanin_bracket(f, g * h) == sklyanin_bracket(f, g) * h + g * sklyanin_bracket(f, h));
        const SkPoly j = sklyanin_bracket(sklyanin_bracket(f, g), h) + sklyanin_bracket(sklyanin_bracket(g, h), f) + sklyanin_bracket(sklyanin_bracket(h, f), g);
        CHECK(j.is_zero());
    }
}

TEST_CASE("twist F and the quantum R-matrix")
{
    const auto P = exact_params();
    const auto F = build_fhat(P);
    const auto R = build_rq(F, P);
    CHECK(R == explicit_rq(P.q, P.q_inv));
    CHECK(R.to_json().dump() == R"([["q","0","0","0"],["0","1","0","0"],["0","q - q^-1","1","0"],["0","0","0","q"]])");

    // h = 0
    const auto P0 = numeric_params(0);
    CHECK(build_fhat(P0) == Mat<double>::identity(4));
    CHECK(build_rq(build_fhat(P0), P0) == Mat<double>::identity(4));
    for (double h : {0.1, 0.7, -1.3}) {
        const auto Pn = numeric_params(h);
        CHECK((build_rq(build_fhat(Pn), Pn) - explicit_rq(Pn.q, Pn.q_inv)).residual() < 1e-13);
    }

    // series: F = I - (h/2) r + O(h^2), R = I + h (I/2 + t - r) + O(h^2)
    const auto Ps = series_params(4);
    const auto Fs = build_fhat(Ps), Rs = build_rq(Fs, Ps);
    CHECK(Rs == explicit_rq(Ps.q, Ps.q_inv));
    auto coeff = [](const Mat<HSeries>& m, int k) { return m.map<Rational>([k](const HSeries& x) { return x.coeff(k); }); };
    CHECK(coeff(Fs, 0) == RMat::identity(4));
    CHECK(coeff(Fs, 1) == Rational(-1, 2) * r_hat());
    CHECK(coeff(Rs, 0) == RMat::identity(4));
    CHECK(coeff(Rs, 1) == rmat4({1, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 1}));
    CHECK(coeff(Rs, 1) == Rational(1, 2) * RMat::identity(4) + t_hat() - r_hat());
    CHECK(coeff(Rs, 3)(2, 1) == Rational(1, 3));
    CHECK_THROWS_AS(series_params(1), std::invalid_argument);

    Mat<double> singular = Mat<double>::identity(4);
    singular(2, 2) = 0;
    CHECK_THROWS_AS(build_rq(singular, P0), std::domain_error);
}

TEST_CASE("yang-baxter and unitarity")
{
    CHECK(qybe_residual(Mat<double>::identity(4)).residual() == 0);
    const auto P = exact_params();
    const auto R = build_rq(build_fhat(P), P);
    CHECK(qybe_residual(R).is_zero());
    const auto U = unitarity_residual(R);
    CHECK_FALSE(U.is_zero());
    CHECK(U.witness() == "[0][0] = q^2 - 1");

    const auto Pn = numeric_params(0.4);
    const auto Rn = build_rq(build_fhat(Pn), Pn);
    CHECK(qybe_residual(Rn).residual() < 1e-13);
    CHECK(unitarity_residual(Rn).residual() > 0.5);
    CHECK(unitarity_residual(Mat<double>::identity(4)).residual() == 0);

    const PLCheck c = matrix_check("unitarity", "exact", U);
    CHECK(c.residual > 0);
    CHECK(c.to_json()["witness"] == "[0][0] = q^2 - 1");
    CHECK(matrix_check("qybe", "exact", qybe_residual(R)).to_json()["witness"].is_null());
}

TEST_CASE("ordered normal form")
{
    const auto rel = ratfunc_relations();
    CHECK(nc_normalize(std::string("da"), rel).str() == "a*d - (q - q^-1)*b*c");
    CHECK(nc_normalize(std::string("ba"), rel).str() == "q^-1*a*b");
    CHECK(nc_normalize(std::string("cb"), rel).str() == "b*c");
    CHECK(nc_normalize(std::string("abcd"), rel).str() == "a*b*c*d");
    CHECK(confluence_failures(rel, 4) == 0);

    // normal forms contain only ordered words of the same length
    for (const std::string w : {"dcba", "dada", "cbdab"}) {
        const auto n = nc_normalize(w, rel);
        for (const auto& [m, c] : n.terms()) {
            CHECK(m.size() == w.size());
            CHECK(std::is_sorted(m.begin(), m.end()));
        }
    }

    // cb -> q bc is incompatible with the other five rules; the overlap dca shows it
    SLqRelations<RatFunc> bad = rel;
    bad.cb = rel.q;
    CHECK(confluence_failures(bad, 3) > 0);
    CHECK(confluence_failures(bad, 2) == 0);
}

TEST_CASE("RTT relations and the quantum determinant")
{
    const auto rel = ratfunc_relations();
    const auto R = explicit_rq(rel.q, rel.q_inv);
    CHECK(nonzero(rtt_residual(R, rel)) == 0);
    CHECK(rtt_residual(R, rel).size() == 16);
    CHECK(nonzero(rtt_residual(Mat<RatFunc>::identity(4), rel)) > 0);

    // commutative specialization q = 1
    const SLqRelations<Rational> one{Rational(1), Rational(1)};
    for (const auto& e : rtt_residual(Mat<Rational>::identity(4), one)) CHECK(e.is_zero());
    CHECK(quantum_determinant_central(one));

    CHECK(quantum_determinant_central(rel));
    CHECK(quantum_determinant(rel).str() == "a*d - q*b*c");
    // ad - bc is not central for generic q
    const QPoly<RatFunc> D0 = QPoly<RatFunc>::word("ad") - QPoly<RatFunc>::word("bc");
    const QPoly<RatFunc> A = QPoly<RatFunc>::word("a"), B = QPoly<RatFunc>::word("b");
    CHECK_FALSE(nc_normalize(D0 * A - A * D0, rel).is_zero());
    CHECK(nc_normalize(D0 * B - B * D0, rel).is_zero());

    // the same certificate in the extended field and in series mode
    const auto xr = exact_relations();
    const auto P = exact_params();
    for (const auto& e : rtt_residual(build_rq(build_fhat(P), P), xr)) CHECK(e.is_zero());
    const auto sr = series_relations(4);
    const auto Ps = series_params(4);
    for (const auto& e : rtt_residual(build_rq(build_fhat(Ps), Ps), sr)) CHECK(e.is_zero());
}

TEST_CASE("semiclassical limit")
{
    const auto pairs = semiclassical_limit(4);
    CHECK(pairs.size() == 6);
    for (const auto& p : pairs) {
        INFO(p.x << p.y);
        CHECK(p.equal());
    }
    CHECK(pairs[2].x == 'a');
    CHECK(pairs[2].y == 'd');
    CHECK(pairs[2].from_star.str() == "2*b*c");
    CHECK(pairs[3].from_star.is_zero());
    CHECK_THROWS_AS(semiclassical_limit(2), std::invalid_argument);

    // the h^0 part of every commutator vanishes
    const auto rel = series_relations(4);
    const auto c = nc_normalize(std::string("ad"), rel) - nc_normalize(std::string("da"), rel);
    CHECK(abelianize(c, 0).is_zero());
    CHECK(abelianize(c, 2).is_zero());
    CHECK(abelianize(c, 3) == SkPoly(Rational(1, 3)) * SkPoly::gen(1) * SkPoly::gen(2));
}
