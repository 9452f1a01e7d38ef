#include "doctest.h"

#include "mhaar/errors.hpp"
#include "mhaar/quantity.hpp"

using namespace mhaar;

TEST_SUITE("rational")
{
    TEST_CASE("strict a/b parsing")
    {
        CHECK(parse_rational("3/4") == Rational(3, 4));
        CHECK(parse_rational("-6/8") == Rational(-3, 4));
        CHECK(to_string(parse_rational("2/1")) == "2/1");
        CHECK_THROWS_AS(parse_rational("3"), InvalidArgument);
        CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
        CHECK_THROWS_AS(parse_rational("a/b"), InvalidArgument);
        CHECK_THROWS_AS(parse_rational("0.5/1"), InvalidArgument);
    }

    TEST_CASE("m-adic helpers")
    {
        CHECK(m_power(3, -2) == Rational(1, 9));
        CHECK(m_power(2, 3) == Rational(8));
        CHECK(is_madic(Rational(5, 8), 2));
        CHECK_FALSE(is_madic(Rational(1, 3), 2));
        CHECK(is_madic(Rational(1, 6), 6));
        CHECK(madic_depth(Rational(5, 8), 2) == 3);
        CHECK(madic_depth(Rational(7), 3) == 0);
        CHECK_THROWS_AS(madic_depth(Rational(1, 3), 2), InvalidArgument);
        CHECK(floor(Rational(-1, 2)) == -1);
        CHECK(ceil(Rational(-1, 2)) == 0);
        Rational r;
        CHECK(exact_sqrt(Rational(9, 4), r));
        CHECK(r == Rational(3, 2));
        CHECK_FALSE(exact_sqrt(Rational(2), r));
        CHECK(rpow(Rational(2, 3), -2) == Rational(9, 4));
    }

    TEST_CASE("quantity arithmetic keeps exactness and divergence")
    {
        Quantity a(Rational(1, 3)), b(Rational(2, 3));
        CHECK((a + b).is_exact());
        CHECK((a + b).rational() == 1);
        CHECK((a * b).rational() == Rational(2, 9));
        Quantity d = Quantity::divergent();
        CHECK((d + a).is_divergent());
        CHECK((a / d).is_zero());
        CHECK((a / Quantity(Rational(0))).is_divergent());
        CHECK((Quantity(Rational(0)) * d).is_divergent()); // read as "not finite" by the checkers
        CHECK(Quantity(Rational(4)).pow(2).rational() == 16);
        CHECK(Quantity(Rational(4)).pow(-1).rational() == Rational(1, 4));
        CHECK(Quantity(Rational(4)).pow(0.5).kind() == Quantity::Kind::Real);
        CHECK(Quantity(Rational(4)).pow(0.5).value() == doctest::Approx(2.0));
        CHECK(d.pow(0).rational() == 1);
        CHECK(d.pow(-1).is_zero());
        CHECK(Quantity(Rational(0)).pow(-1).is_divergent());
        CHECK(compare(d, Quantity::real(1e300)) > 0);
        CHECK(compare(Quantity(Rational(1, 2)), Quantity::real(0.5)) == 0);
        CHECK(d.to_string() == "Divergent");
    }
}
