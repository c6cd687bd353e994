#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "expr.hpp"
#include "suites.hpp"

using namespace dq;
using namespace dq::cli;

TEST_CASE("polynomial expressions")
{
    const PhasePoly q = PhasePoly::q(1), p = PhasePoly::p(1);
    CHECK(parse_phase_poly("q*p") == q * p);
    CHECK(parse_phase_poly("(q + p)^2") == q * q + q * p * Complex(2) + p * p);
    CHECK(parse_phase_poly("-q/2 + 3") == q * Complex(make_rational(-1, 2)) + PhasePoly::constant(1, Complex(3)));
    CHECK(parse_phase_poly("i*q") == q * Complex::i());
    CHECK(parse_phase_poly("q^0") == PhasePoly::constant(1, Complex(1)));

    auto pos = [](const std::string& s) -> std::size_t {
        try {
            parse_phase_poly(s);
        } catch (const ParseError& e) {
            return e.pos;
        }
        return std::string::npos;
    };
    CHECK(pos("q + x") == 4);
    CHECK(pos("q +") == 3);
    CHECK(pos("(q") == 2);
    CHECK(pos("q/0") == 2);
    CHECK(pos("q ) ") == 2);
    CHECK_THROWS_WITH_AS(parse_phase_poly("hbar"), "undefined symbol 'hbar' at position 0", ParseError);
}

TEST_CASE("calls and words")
{
    const Call c = parse_call(" star(q*(p + 1), p) ");
    CHECK(c.name == "star");
    REQUIRE(c.args.size() == 2);
    CHECK(c.args[0].first == "q*(p + 1)");
    CHECK(c.args[1].second == 16);
    CHECK_THROWS_AS(parse_call("star(q, p) x"), ParseError);
    CHECK_THROWS_AS(parse_call("star(q, p"), ParseError);
    CHECK_THROWS_AS(parse_call("(q)"), ParseError);

    CHECK(parse_word("d*a") == "da");
    CHECK(parse_word("a b c") == "abc");
    CHECK_THROWS_WITH_AS(parse_word("a*e", 10), "undefined symbol 'e' at position 12", ParseError);
    CHECK_THROWS_AS(parse_word(" "), ParseError);
}

TEST_CASE("series printing")
{
    const PhasePoly q = PhasePoly::q(1), p = PhasePoly::p(1);
    CHECK(pretty(moyal_star(q, p, 1)) == "q*p - (i/2)*hbar");
    CHECK(pretty(moyal_star(p, q, 1)) == "q*p + (i/2)*hbar");
    CHECK(pretty(HbarSeries(PhasePoly::constant(1, Complex(1)), 0)) == "1");
    CHECK(pretty(HbarSeries(PhasePoly(1), 2)) == "0");
    CHECK(pretty(HbarSeries(q * Complex(make_rational(-3, 4)), 0)) == "-(3/4)*q");
    CHECK(pretty(HbarSeries(q * Complex(Rational(1), Rational(-2)), 0)) == "(1 - 2i)*q");
}

TEST_CASE("operator expressions")
{
    const auto Q = numeric::position_matrix(8, 1.0), P = numeric::momentum_matrix(8, 1.0);
    CHECK((parse_operator("Q*P - P*Q", 8, 1.0) - (Q * P - P * Q)).norm() < 1e-14);
    CHECK((parse_operator("2*Q^2", 8, 1.0) - 2.0 * Q * Q).norm() < 1e-14);
    CHECK_THROWS_AS(parse_operator("Q*q", 8, 1.0), ParseError);
}

TEST_CASE("run configuration")
{
    RunConfig c;
    c.merge(nlohmann::json{{"suite", "sl2q"}, {"mode", "series"}, {"series_order", 5}});
    CHECK(c.suite == "sl2q");
    CHECK(c.series_order == 5);
    CHECK_NOTHROW(c.validate());
    CHECK_THROWS_AS(c.merge(nlohmann::json{{"hbar_", 1.0}}), UsageError);
    CHECK_THROWS_AS(c.merge(nlohmann::json{{"hbar", "one"}}), UsageError);
    CHECK_THROWS_AS(c.merge(nlohmann::json::array()), UsageError);
    c.mode = "symbolic";
    CHECK_THROWS_AS(c.validate(), UsageError);
    c.mode = "exact";
    c.format = "yaml";
    CHECK_THROWS_AS(c.validate(), UsageError);
}

TEST_CASE("check status")
{
    CheckRecord r{"s", "n", 0.5, 1.0, "", "", false, {}, {}};
    CHECK(r.status() == "pass");
    r.residual = 2;
    CHECK(r.status() == "fail");
    r.expected_fail = true;
    CHECK(r.status() == "xfail");
    CHECK(r.ok());
    r.residual = 0;
    CHECK(r.status() == "xpass");
    CHECK_FALSE(r.ok());
    CHECK(r.to_json()["witness"].is_null());

    RunConfig cfg;
    cfg.suite = "sl2q";
    const Report rep = run_suite(cfg);
    const auto j = rep.to_json();
    CHECK(j["schema"] == "dq-report/1");
    CHECK(j["ok"] == true);
    CHECK(j["summary"]["xfail"] == 4);
    CHECK(j["summary"]["fail"] == 0);
}
