#include "doctest.h"
#include "oracles.hpp"

#include "mhaar/step_calculus.hpp"

using namespace mhaar;

TEST_SUITE("step")
{
    TEST_CASE("right continuity and support")
    {
        StepFunction f({Rational(0), Rational(1, 2), Rational(1)}, {Rational(1), Rational(3)});
        CHECK(f(Rational(1, 2)) == 3);
        CHECK(f.left_limit(Rational(1, 2)) == 1);
        CHECK(f(Rational(1)) == 0);
        CHECK(f(Rational(-1, 4)) == 0);
        CHECK_THROWS_AS(StepFunction({Rational(0), Rational(0)}, {Rational(1)}), InvalidArgument);
        CHECK_THROWS_AS(StepFunction({Rational(0), Rational(1)}, {}), InvalidArgument);
    }

    TEST_CASE("canonical form and equality")
    {
        StepFunction f({Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)}, {Rational(0), Rational(2), Rational(2)});
        auto c = f.canonical();
        CHECK(c.pieces() == 1);
        CHECK(c.support_lo() == Rational(1, 4));
        CHECK(f == StepFunction::constant(Rational(2), Rational(1, 4), Rational(1)));
        CHECK((f - f).is_zero());
    }

    TEST_CASE("integrals and averages agree with a piecewise oracle")
    {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 30; ++trial) {
            int m = 2 + trial % 3;
            auto f = oracle::random_grid_function(rng, m, 3);
            Rational a(trial % 5, 7), b(3 + trial % 4, 5);
            if (!(a < b)) continue;
            CHECK(average(f, Segment::closed(a, b)) == oracle::average(f, a, b));
            CHECK(f.depth(m) <= 3);
        }
    }

    TEST_CASE("weighted integrals")
    {
        auto f = StepFunction::indicator(Rational(0), Rational(1, 2)).scaled(Rational(3));
        auto w = Weight::power(Rational(0), 2);
        // int_0^{1/2} 9 x^2 dx = 3/8
        auto q = weighted_integral(f, w, 2, Segment::line());
        REQUIRE(q.is_exact());
        CHECK(q.rational() == Rational(3, 8));
        // q = 0 on a zero piece gives the weight mass; q < 0 on a zero piece diverges.
        StepFunction g({Rational(0), Rational(1, 2), Rational(1)}, {Rational(0), Rational(1)});
        CHECK(weighted_integral(g, Weight::unit(), 0, Segment::closed(0, 1)).rational() == 1);
        CHECK(weighted_integral(g, Weight::unit(), -1, Segment::closed(0, 1)).is_divergent());
        CHECK_THROWS_AS(lp_norm(f, 0.5, w, Segment::line()), InvalidArgument);
        auto n = lp_norm(to_real(f), 1.5, Weight::unit(), Segment::line());
        CHECK(n.value() == doctest::Approx(std::pow(std::pow(3.0, 1.5) / 2, 1 / 1.5)));
    }

    TEST_CASE("dilations keep the symbolic factor")
    {
        auto f = StepFunction::indicator(Rational(0), Rational(1));
        auto d = dilate(f, 2, 1);
        CHECK(d.half_power == 1);
        CHECK(d.factor() == doctest::Approx(std::sqrt(2.0)));
        CHECK(d.base.support_hi() == Rational(1, 2));
        auto ip = inner_product(d, d);
        REQUIRE(ip.is_exact());
        CHECK(ip.rational() == 1);
        auto e = dilate(f, 2, 2);
        CHECK(inner_product(e, e).rational() == 1);
        CHECK(inner_product(d, e).value() == doctest::Approx(std::sqrt(2.0) / 2));
    }

    TEST_CASE("restriction")
    {
        StepFunction f({Rational(-1), Rational(0), Rational(2)}, {Rational(5), Rational(7)});
        auto r = restrict_to(f, Segment::closed(Rational(-1, 2), 1));
        CHECK(r.support_lo() == Rational(-1, 2));
        CHECK(r.support_hi() == 1);
        CHECK(r(Rational(-1, 4)) == 5);
        CHECK(r(Rational(1, 2)) == 7);
    }
}
