#include "doctest.h"
#include "oracles.hpp"

#include "mhaar/conditions.hpp"

#include <cmath>

using namespace mhaar;

namespace {

// |D|^{-p} w(D) (int_D w^{-1/(p-1)})^{p-1} by quadrature.
double mp_oracle(const Weight& w, double p, double a, double b)
{
    std::vector<oracle::Factor> fs;
    for (const auto& f : w.factors()) fs.push_back({f.c.get_d(), f.r});
    double mass = oracle::power_product_integral(fs, a, b);
    double dual = oracle::power_product_integral(fs, a, b, -1 / (p - 1));
    return mass * std::pow(dual, p - 1) / std::pow(b - a, p);
}

} // namespace

TEST_SUITE("conditions")
{
    TEST_CASE("single-cell constants")
    {
        auto sq = Weight::parse("power:c=0/1:r=1/2");
        // (2/3) * 2 = 4/3 on every cell touching 0
        CHECK(mp_constant(sq, 2, Segment::closed(0, 1)).value() == doctest::Approx(4.0 / 3));
        CHECK(mp_constant(sq, 2, Segment::closed(0, Rational(1, 64))).value() == doctest::Approx(4.0 / 3));
        CHECK(mp_constant(sq, 2, Segment::closed(Rational(1, 4), Rational(1, 2))).value() ==
              doctest::Approx(mp_oracle(sq, 2, 0.25, 0.5)).epsilon(1e-8));
        auto w = Weight::power(Rational(1, 3), 0.7);
        CHECK(mp_constant(w, 3, Segment::closed(0, 1)).value() == doctest::Approx(mp_oracle(w, 3, 0, 1)).epsilon(1e-6));
        CHECK(mp_constant(Weight::power(Rational(0), 2), 2, Segment::closed(0, 1)).is_divergent());
        CHECK(mp_constant(Weight::power(Rational(0), 2), 2, Segment::closed(1, 2)).rational() == Rational(7, 6));
        CHECK(mp_constant(Weight::unit(), 1, Segment::closed(0, 1)).rational() == 1);
    }

    TEST_CASE("x^{1/2} is an M_2 weight with a flat constant")
    {
        auto r = check_mp(Weight::parse("power:c=0/1:r=1/2"), 2, 2, Domain::parse("unit"), 10);
        CHECK(r.verdict == Verdict::Holds);
        CHECK(r.sup.value() == doctest::Approx(4.0 / 3).epsilon(1e-12));
        CHECK(r.trend == "flat");
        CHECK(r.proof);
    }

    TEST_CASE("x^2 fails M_2 but the point-excluded and pointed conditions hold")
    {
        auto w = Weight::parse("power:c=0/1:r=2");
        auto r = check_mp(w, 2, 2, Domain::parse("unit"), 6);
        CHECK(r.verdict == Verdict::Fails);
        CHECK(r.sup.is_divergent());
        CHECK(r.proof);
        auto ex = check_mp(w, 2, 2, Domain::parse("unit"), 6, TaggedPoint::parse("0/1:r"));
        CHECK(ex.verdict == Verdict::Holds);
        // w(D_j) = m^{-3j}/3, int_{m^{-j}}^inf x^{-2} = m^j: the constant is exactly 1/3 for every j
        auto y = check_mp_y(w, 2, 2, TaggedPoint::parse("0/1:r"), Domain::parse("pos"), 1, 12);
        CHECK(y.verdict == Verdict::Holds);
        for (const auto& lc : y.per_depth) CHECK(lc.value.value() == doctest::Approx(1.0 / 3).epsilon(1e-12));
        // on [0,1] the constant is (1 - 2^{-j}) / 3
        for (long j = 1; j <= 6; ++j) {
            auto q = mp_y_constant(w, 2, 2, TaggedPoint::parse("0/1:r"), Segment::closed(0, 1), j);
            CHECK(q.value() == doctest::Approx((1 - std::pow(2.0, -j)) / 3).epsilon(1e-12));
        }
    }

    TEST_CASE("x^1 fails both conditions at p = 2")
    {
        auto w = Weight::parse("power:c=0/1:r=1");
        auto r = check_mp(w, 2, 2, Domain::parse("unit"), 8);
        CHECK(r.verdict == Verdict::Fails);
        CHECK(r.sup.is_divergent());
        // away from the zero the weight is harmless
        auto ex = check_mp(w, 2, 2, Domain::parse("unit"), 8, TaggedPoint::parse("0/1:r"));
        CHECK(ex.verdict == Verdict::Holds);
        auto y = check_mp_y(w, 2, 2, TaggedPoint::parse("0/1:r"), Domain::parse("unit"), 1, 10);
        CHECK(y.verdict == Verdict::Fails);
    }

    TEST_CASE("region cells")
    {
        CHECK(region_cells(Domain::parse("unit"), 3, 2, 0).size() == 9);
        CHECK(region_cells(Domain::parse("0/1,1/2"), 2, 2, 0).size() == 2);
        auto pos = region_cells(Domain::parse("pos"), 2, 0, 3);
        CHECK(pos.size() == 8);
        CHECK(pos.front().left() == 0);
    }

    TEST_CASE("conjugate weight identity")
    {
        auto r = conjugate_weight_check(Weight::parse("power:c=0/1:r=1/2"), 3, 2, Domain::parse("unit"), 5);
        CHECK(r.pass);
        CHECK(r.max_identity_error < 1e-9);
    }

    TEST_CASE("dilation transfer is exact for integer exponents")
    {
        auto r = dilation_transfer_check(Weight::parse("power:c=0/1:r=2"), 2, 2, 3, 3, TaggedPoint::parse("0/1:r"));
        CHECK(r.pass);
        auto s = dilation_transfer_check(Weight::parse("power:c=-1/1:r=2"), 2, 3, 2, 2);
        CHECK(s.pass);
        CHECK(s.exact);
    }

    TEST_CASE("ring ratios for x^2")
    {
        auto r = ring_ratio_check(Weight::parse("power:c=0/1:r=2"), 2, 2, TaggedPoint::parse("0/1:r"),
                                  Domain::parse("unit"), 8);
        REQUIRE(r.precondition_ok);
        CHECK(r.pass);
        for (std::size_t i = 0; i < r.ratios.size(); ++i) {
            long j = static_cast<long>(i) + 1;
            REQUIRE(r.ratios[i].is_exact());
            CHECK(r.ratios[i].rational() == Rational((1L << (j + 1)) - 1, (1L << j) - 1));
        }
    }

    TEST_CASE("M_infinity fit")
    {
        auto unit = check_minfty(Weight::unit(), 2, Domain::parse("unit"), 3);
        CHECK(unit.delta == doctest::Approx(1.0));
        CHECK(unit.c_at_delta_one == doctest::Approx(1.0));
        auto x2 = check_minfty(Weight::parse("power:c=0/1:r=2"), 2, Domain::parse("unit"), 3);
        CHECK(x2.delta > 0);
        CHECK(x2.delta < 1);
    }

    TEST_CASE("tail masses")
    {
        auto t = tail_mass_check(Weight::parse("power:c=0/1:r=2"), 2, 2, 8);
        CHECK(t.ratios_bounded);
        CHECK(t.masses_unbounded);
        for (const auto& q : t.ratios) CHECK(q.value() == doctest::Approx(8.0 / 7));
    }

    TEST_CASE("singular points")
    {
        auto s = singularity_classifier(Weight::parse("power:c=0/1:r=2"), 2, 2, Domain::parse("unit"));
        CHECK(s.complete);
        CHECK(s.minimal);
        REQUIRE(s.unique);
        CHECK(s.unique->value() == 0);
        CHECK(s.unique->side() == Side::Right);
        auto two = singularity_classifier(Weight::parse("powers:c=0/1:r=2;c=1/1:r=2"), 2, 2, Domain::parse("unit"));
        CHECK(two.points.size() == 2);
        CHECK_FALSE(two.minimal);
        auto none = singularity_classifier(Weight::unit(), 2, 2, Domain::parse("unit"));
        CHECK(none.points.empty());
        StepFunction holey({Rational(0), Rational(1, 2), Rational(1)}, {Rational(0), Rational(1)});
        CHECK(singularity_classifier(Weight::step(holey), 2, 2, Domain::parse("unit")).degenerate);
    }
}
