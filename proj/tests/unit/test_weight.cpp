#include "doctest.h"
#include "oracles.hpp"

#include "mhaar/weight.hpp"

#include <cmath>

using namespace mhaar;

TEST_SUITE("weight")
{
    TEST_CASE("spec parsing round trips")
    {
        auto w = Weight::parse("power:c=0/1:r=1/2");
        CHECK(w.kind() == Weight::Kind::Power);
        CHECK(w.total_exponent() == doctest::Approx(0.5));
        CHECK(Weight::parse(w.spec()).spec() == w.spec());
        auto v = Weight::parse("powers:c=0/1:r=2;c=1/1:r=2");
        CHECK(v.factors().size() == 2);
        CHECK(v(0.5) == doctest::Approx(1.0 / 16));
        CHECK_THROWS_AS(Weight::parse("power:c=0:r"), InvalidArgument);
        CHECK_THROWS_AS(Weight::parse("gauss"), InvalidArgument);
        CHECK_THROWS_AS(Weight::parse("step:x.json"), InvalidArgument);
        CHECK_THROWS_AS(Domain::parse("1/1,0/1"), InvalidArgument);
        CHECK(Domain::parse("pos").segment().hi_inf);
    }

    TEST_CASE("power integrals: exact, real and divergent")
    {
        CHECK(power_integral(2, Rational(0), Rational(1), false).rational() == Rational(1, 3));
        CHECK(power_integral(-1, Rational(0), Rational(1), false).is_divergent());
        CHECK(power_integral(-2, Rational(1), Rational(0), true).rational() == 1);
        CHECK(power_integral(-1, Rational(1), Rational(0), true).is_divergent());
        CHECK(power_integral(0.5, Rational(0), Rational(1), false).value() == doctest::Approx(2.0 / 3));
        auto w = Weight::power(Rational(1, 2), 2);
        // int_0^1 (x - 1/2)^2 = 1/12
        CHECK(w.integral(Segment::closed(0, 1)).rational() == Rational(1, 12));
    }

    TEST_CASE("integrals against quadrature")
    {
        struct Case {
            const char* spec;
            Rational a, b;
        } cases[] = {
            {"power:c=0/1:r=1/2", Rational(0), Rational(1)},
            {"power:c=1/3:r=-1/2", Rational(0), Rational(1)},
            {"powers:c=0/1:r=1/3;c=1/1:r=2/3", Rational(1, 4), Rational(2)},
            {"power:c=-1/1:r=3/2", Rational(-1), Rational(3, 2)},
        };
        for (const auto& c : cases) {
            auto w = Weight::parse(c.spec);
            std::vector<oracle::Factor> fs;
            for (const auto& f : w.factors()) fs.push_back({f.c.get_d(), f.r});
            double ref = oracle::power_product_integral(fs, c.a.get_d(), c.b.get_d());
            CAPTURE(std::string(c.spec));
            CHECK(w.integral(Segment::closed(c.a, c.b)).value() == doctest::Approx(ref).epsilon(1e-7));
        }
    }

    TEST_CASE("step weights, dilation and reflection")
    {
        StepFunction base({Rational(0), Rational(1, 2), Rational(1)}, {Rational(1), Rational(3)});
        auto w = Weight::step(base);
        CHECK(w.integral(Segment::closed(0, 1)).rational() == 2);
        CHECK(w.integral(Segment::right_ray(0)).rational() == 2);
        CHECK(w.pow(2).integral(Segment::closed(0, 1)).rational() == 5);
        CHECK(w.pow(-1).integral(Segment::closed(0, 1)).rational() == Rational(2, 3));
        CHECK(w.pow(-1).integral(Segment::closed(0, 2)).is_divergent());
        CHECK(w.ess_inf(Segment::closed(0, 1)).rational() == 1);
        auto d = Weight::power(Rational(0), 2).dilate(2, 1);
        CHECK(d(0.25) == doctest::Approx(0.25));
        auto r = Weight::power(Rational(1), 1).reflect();
        CHECK(r(-1.0) == doctest::Approx(0.0));
        CHECK(r(1.0) == doctest::Approx(2.0));
        CHECK_THROWS_AS(Weight::step(StepFunction::constant(Rational(-1), Rational(0), Rational(1))), InvalidArgument);
    }
}
