#include "helpers.hpp"

#include <ramapi/mpcore.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace ramapi;
using testutil::hyp2f1_brute;
using testutil::require_close;
using testutil::tanh_sinh_integrate;
using testutil::tol10;

namespace {
const PrecisionContext ctx60(60);
}

TEST_CASE("agm basics")
{
    ScopedPrecision scope(ctx60.working());
    require_close(agm(BigReal(1), BigReal(1), ctx60), BigReal(1), tol10(-65));
    require_close(agm(BigReal(1), BigReal(0), ctx60), BigReal(0), tol10(-65));

    // oracle: six explicit AGM steps from (sqrt 2, 1), written out longhand
    BigReal a = sqrt(BigReal(2)), b(1);
    for (int i = 0; i < 6; ++i) {
        BigReal an = (a + b) / 2;
        b = sqrt(a * b);
        a = an;
    }
    require_close(agm(sqrt(BigReal(2)), BigReal(1), ctx60), a, tol10(-60));
    // frozen reference (independent run)
    require_close(agm(sqrt(BigReal(2)), BigReal(1), ctx60),
                  BigReal("1.1981402347355922074399224922803238782272126632156515582636749529"),
                  tol10(-60));
}

TEST_CASE("agm stays between its arguments")
{
    ScopedPrecision scope(ctx60.working());
    testutil::RandomReals rng(1234);
    for (int i = 0; i < 10; ++i) {
        BigReal x = rng.next(BigReal(1) / 10, BigReal(9) / 10);
        BigReal y = rng.next(BigReal(1), BigReal(3));
        BigReal m = agm(x, y, ctx60);
        REQUIRE(m >= std::min(x, y));
        REQUIRE(m <= std::max(x, y));
    }
}

TEST_CASE("pi by AGM matches the library constant")
{
    require_close(pi_agm(ctx60), pi_value(ctx60), tol10(-68));
    PrecisionContext big(300);
    require_close(pi_agm(big), pi_value(big), tol10(-305));
}

TEST_CASE("elliptic K")
{
    ScopedPrecision scope(ctx60.working());
    require_close(ellip_K(BigReal(0), ctx60), pi_value(ctx60) / 2, tol10(-68));

    // quadrature oracle for K(1/2): (1/2) * int_0^pi dt / sqrt(1 - sin^2(t)/2)
    BigReal m = BigReal(1) / 2;
    BigReal quad = tanh_sinh_integrate(
        [&](const BigReal& t) { return 1 / sqrt(1 - m * sin(t) * sin(t)); },
        BigReal(0), pi_value(ctx60) / 2, ctx60);
    require_close(ellip_K(m, ctx60), quad, tol10(-58));
    // Gamma closed form K(1/2) = Gamma(1/4)^2 / (4 sqrt(pi))
    BigReal g = gamma_fn(BigReal(1) / 4, ctx60);
    require_close(ellip_K(m, ctx60), g * g / (4 * sqrt(pi_value(ctx60))), tol10(-58));
    require_close(ellip_K(m, ctx60),
                  BigReal("1.8540746773013719184338503471952600462175988235217669055859280451"),
                  tol10(-60));

    REQUIRE_THROWS_AS(ellip_K(BigReal(1), ctx60), std::domain_error);
    REQUIRE_THROWS_AS(ellip_K(BigReal(-1) / 2, ctx60), std::domain_error);
}

TEST_CASE("K(0.9) agrees with (pi/2) 2F1(1/2,1/2;1;0.9) across all three paths")
{
    ScopedPrecision scope(ctx60.working());
    BigReal m = BigReal(9) / 10;
    BigReal viaK = ellip_K(m, ctx60);
    BigReal via2f1 = pi_value(ctx60) / 2 * gauss_2f1(Rational(1, 2), Rational(1, 2), Rational(1), m, ctx60);
    require_close(viaK, via2f1, tol10(-60));
    // brute-force direct series (1700 terms suffice at |w| = 0.9 for 60 digits)
    BigReal brute = pi_value(ctx60) / 2
                    * hyp2f1_brute(Rational(1, 2), Rational(1, 2), Rational(1), m, 1700, ctx60);
    require_close(viaK, brute, tol10(-58));
}

TEST_CASE("elliptic E")
{
    ScopedPrecision scope(ctx60.working());
    require_close(ellip_E(BigReal(0), ctx60), pi_value(ctx60) / 2, tol10(-68));
    require_close(ellip_E(BigReal(1), ctx60), BigReal(1), tol10(-68));

    BigReal m = BigReal(1) / 2;
    BigReal quad = tanh_sinh_integrate(
        [&](const BigReal& t) { return sqrt(1 - m * sin(t) * sin(t)); },
        BigReal(0), pi_value(ctx60) / 2, ctx60);
    require_close(ellip_E(m, ctx60), quad, tol10(-58));
    require_close(ellip_E(m, ctx60),
                  BigReal("1.3506438810476755025201747353387258413495223669243545453232537089"),
                  tol10(-60));
    REQUIRE_THROWS_AS(ellip_E(BigReal(2), ctx60), std::domain_error);
}

TEST_CASE("Legendre relation on random parameters")
{
    ScopedPrecision scope(ctx60.working());
    testutil::RandomReals rng(99);
    BigReal half_pi = pi_value(ctx60) / 2;
    for (int i = 0; i < 20; ++i) {
        BigReal m = rng.next(BigReal(1) / 1000, BigReal(999) / 1000);
        EllipticPair em = ellip_pair(m, ctx60);
        EllipticPair ec = ellip_pair(1 - m, ctx60);
        BigReal resid = em.E * ec.K + ec.E * em.K - em.K * ec.K - half_pi;
        require_close(resid, BigReal(0), tol10(-57));
    }
}

TEST_CASE("gauss_2f1 basics")
{
    ScopedPrecision scope(ctx60.working());
    require_close(gauss_2f1(Rational(1, 3), Rational(2, 3), Rational(1), BigReal(0), ctx60),
                  BigReal(1), tol10(-69));

    // 2F1(1/2,1/2;1;m) = 2 K(m)/pi at m = 0.3
    BigReal m = BigReal(3) / 10;
    require_close(gauss_2f1(Rational(1, 2), Rational(1, 2), Rational(1), m, ctx60),
                  2 * ellip_K(m, ctx60) / pi_value(ctx60), tol10(-60));

    // brute-force 200-term oracle at w = 1/2, 50 digits
    PrecisionContext ctx50(50);
    BigReal direct = hyp2f1_brute(Rational(1, 3), Rational(2, 3), Rational(1), BigReal(1) / 2, 200, ctx50);
    require_close(gauss_2f1(Rational(1, 3), Rational(2, 3), Rational(1), BigReal(1) / 2, ctx50),
                  direct, tol10(-50));

    REQUIRE_THROWS_AS(gauss_2f1(Rational(1, 3), Rational(2, 3), Rational(1), BigReal(2), ctx60),
                      std::domain_error);
    REQUIRE_THROWS_AS(gauss_2f1(Rational(1, 2), Rational(1, 2), Rational(0), BigReal(1) / 2, ctx60),
                      std::domain_error);
    // w = 1 with c = a+b signals the logarithmic divergence as +inf
    REQUIRE((boost::multiprecision::isinf)(
        gauss_2f1(Rational(1, 6), Rational(5, 6), Rational(1), BigReal(1), ctx60)));
}

TEST_CASE("connection and direct series agree on the overlap band")
{
    ScopedPrecision scope(ctx60.working());
    for (int i = 0; i <= 4; ++i) {
        BigReal w = BigReal(4) / 10 + BigReal(i) / 20; // 0.40 .. 0.60
        for (auto [an, ad, bn, bd] : {std::array<long, 4>{1, 3, 2, 3},
                                      std::array<long, 4>{1, 6, 5, 6},
                                      std::array<long, 4>{1, 2, 1, 2}}) {
            Rational a(an, ad), b(bn, bd);
            BigReal direct = detail::hyp2f1_direct_path(a, b, Rational(1), w, ctx60);
            BigReal conn = detail::hyp2f1_connection_path(a, b, w, ctx60);
            require_close(direct, conn, tol10(-55));
        }
    }
}

TEST_CASE("legendre_P")
{
    ScopedPrecision scope(ctx60.working());
    require_close(legendre_P(Rational(-1, 3), BigReal(1), ctx60), BigReal(1), tol10(-69));

    BigReal w = BigReal(1) / 5;
    require_close(legendre_P(Rational(-1, 3), 1 - 2 * w, ctx60),
                  gauss_2f1(Rational(1, 3), Rational(2, 3), Rational(1), w, ctx60), tol10(-60));
    w = BigReal(1) / 10;
    require_close(legendre_P(Rational(-1, 6), 1 - 2 * w, ctx60),
                  gauss_2f1(Rational(1, 6), Rational(5, 6), Rational(1), w, ctx60), tol10(-60));
    REQUIRE_THROWS_AS(legendre_P(Rational(-1, 3), BigReal(-2), ctx60), std::domain_error);
}

TEST_CASE("gamma function")
{
    ScopedPrecision scope(ctx60.working());
    require_close(gamma_fn(BigReal(1), ctx60), BigReal(1), tol10(-69));
    require_close(gamma_fn(BigReal(1) / 2, ctx60), sqrt(pi_value(ctx60)), tol10(-68));

    BigReal g14 = gamma_fn(BigReal(1) / 4, ctx60);
    require_close(g14,
                  BigReal("3.6256099082219083119306851558676720029951676828800654674333779996"),
                  tol10(-59));
    // AGM relation: Gamma(1/4)^2 = 2 sqrt(2) pi^(3/2) / agm(1, sqrt 2)
    BigReal p = pi_value(ctx60);
    BigReal rel = 2 * sqrt(BigReal(2)) * p * sqrt(p) / agm(BigReal(1), sqrt(BigReal(2)), ctx60);
    require_close(g14 * g14, rel, tol10(-57));

    REQUIRE_THROWS_AS(gamma_fn(BigReal(0), ctx60), std::domain_error);
    REQUIRE_THROWS_AS(gamma_fn(BigReal(-3), ctx60), std::domain_error);
}

TEST_CASE("2F1(1/4,7/4;1;w) closed form by E and K")
{
    ScopedPrecision scope(ctx60.working());
    require_close(hyp2f1_quarter_seven(BigReal(0), ctx60), BigReal(1), tol10(-69));
    PrecisionContext ctx45(45);
    for (auto wnum : {1, 5}) {
        BigReal w = BigReal(wnum) / 10;
        BigReal closed = hyp2f1_quarter_seven(w, ctx45);
        BigReal series = detail::hyp2f1_direct_path(Rational(1, 4), Rational(7, 4), Rational(1), w, ctx45);
        require_close(closed, series, tol10(-40));
    }
    REQUIRE_THROWS_AS(hyp2f1_quarter_seven(BigReal(1), ctx60), std::domain_error);
}

TEST_CASE("precision doubling leaves values unchanged")
{
    PrecisionContext twice(2 * ctx60.digits());
    ScopedPrecision scope(twice.working());
    struct Case {
        const char* name;
        std::function<BigReal(const PrecisionContext&)> run;
    };
    const Case cases[] = {
        {"agm", [](const PrecisionContext& c) { return agm(sqrt(BigReal(3)), BigReal(1), c); }},
        {"K", [](const PrecisionContext& c) { return ellip_K(BigReal(7) / 10, c); }},
        {"E", [](const PrecisionContext& c) { return ellip_E(BigReal(7) / 10, c); }},
        {"2F1 direct", [](const PrecisionContext& c) {
             return gauss_2f1(Rational(1, 3), Rational(2, 3), Rational(1), BigReal(3) / 10, c);
         }},
        {"2F1 connection", [](const PrecisionContext& c) {
             return gauss_2f1(Rational(1, 6), Rational(5, 6), Rational(1), BigReal(4) / 5, c);
         }},
        {"legendre", [](const PrecisionContext& c) { return legendre_P(Rational(-1, 6), BigReal(1) / 3, c); }},
        {"gamma", [](const PrecisionContext& c) { return gamma_fn(BigReal(1) / 3, c); }},
        {"quarter-seven", [](const PrecisionContext& c) { return hyp2f1_quarter_seven(BigReal(1) / 3, c); }},
        {"pi", [](const PrecisionContext& c) { return pi_agm(c); }},
        {"pair.E", [](const PrecisionContext& c) { return ellip_pair(BigReal(1) / 5, c).E; }},
    };
    for (const auto& c : cases) {
        INFO(c.name);
        require_close(c.run(ctx60), c.run(twice), tol10(-(ctx60.digits() - 2)));
    }
}
