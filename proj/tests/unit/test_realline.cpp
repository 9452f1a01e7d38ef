#include "doctest.h"

#include "mhaar/realline.hpp"

#include <cmath>

using namespace mhaar;

TEST_SUITE("realline")
{
    TEST_CASE("closed-form transform matches the piecewise transform")
    {
        for (int m : {2, 3, 4}) {
            auto sys = HaarSystem::canonical(m);
            for (int nu = 1; nu < m; ++nu) {
                CHECK(std::abs(fourier_transform(sys, nu, 0.0)) < 1e-12);
                for (double xi : {-3.3, -0.5, 0.25, 1.0, 2.7, 9.1}) {
                    auto a = fourier_transform(sys, nu, xi);
                    auto b = fourier_transform(sys.generator(nu), xi);
                    CHECK(std::abs(a - b) < 1e-12);
                }
                // scaling law against a direct transform of the dilated translate
                WaveletIndex idx{nu, 2, -3};
                auto g = sys.generator(nu);
                std::vector<Rational> bp;
                for (const auto& x : g.breakpoints()) bp.push_back((x + idx.j) / Rational(m * m));
                RealStep h(bp, g.values());
                double amp = m; // m^{k/2} with k = 2
                auto direct = amp * fourier_transform(h, 1.7);
                CHECK(std::abs(fourier_transform(sys, idx, 1.7) - direct) < 1e-12);
            }
        }
        // classical Haar at xi = 1: (1 - e^{-i pi})^2 / (2 pi i)
        auto h = fourier_transform(HaarSystem::canonical(2), 1, 1.0);
        CHECK(std::abs(h) == doctest::Approx(2 / M_PI));
    }

    TEST_CASE("scale-sum inequality")
    {
        for (int m : {2, 3}) {
            auto rep = scale_sum_inequality(HaarSystem::canonical(m), make_grid(0.01, 10, 200), 20);
            CHECK(rep.pass);
            CHECK(rep.monotone);
            CHECK(rep.max_sum <= 1 + 1e-9);
            CHECK(rep.max_sum > 0.5);
            CHECK(rep.origin_max < 1e-12);
        }
    }

    TEST_CASE("translates of the unit indicator are orthonormal")
    {
        RealStep chi({Rational(0), Rational(1)}, {1.0});
        for (double t : {0.0, 0.1, 0.37, -0.5}) {
            auto r = translates_orthonormality(chi, t, 400);
            CHECK(std::fabs(r.sum - 1) <= r.tail_bound + 1e-12);
            CHECK(r.pass);
        }
    }

    TEST_CASE("annihilator dimensions")
    {
        for (int m : {2, 3})
            for (long N : {1, 2}) {
                auto two = annihilator_basis(HaarSystem::canonical(m), N, 2, true);
                auto one = annihilator_basis(HaarSystem::canonical(m), N, 2, false);
                CHECK(two.dimension == 2);
                CHECK(one.dimension == 1);
                CHECK(two.indicator_error < 1e-9);
                if (m == 2) {
                    REQUIRE(two.exact_dimension);
                    CHECK(*two.exact_dimension == 2);
                }
                auto sc = annihilator_basis(HaarSystem::canonical(m), N, 2, true, true);
                CHECK(sc.dimension == 0);
            }
    }

    TEST_CASE("dual coefficients")
    {
        auto sys = HaarSystem::canonical(2);
        auto f = StepFunction::indicator(Rational(0), Rational(3, 4));
        WaveletIndex idx{1, 0, 0};
        auto plain = dual_wavelet_coefficient(f, sys, TaggedPoint::plus_infinity(), idx);
        // int_0^{1/2} 1 - int_{1/2}^{3/4} 1
        CHECK(*plain.reduced == Rational(1, 4));
        auto at0 = dual_wavelet_coefficient(f, sys, TaggedPoint::parse("0/1:r"), idx);
        CHECK(*at0.reduced == Rational(1, 4) - Rational(3, 4));
        CHECK(at0.h_at_y == doctest::Approx(1.0));
    }

    TEST_CASE("verdicts")
    {
        auto unit = ucb_verdict(Weight::unit(), 2, 2, 6);
        CHECK(unit.unconditional == Verdict::Holds);
        REQUIRE(unit.y1);
        REQUIRE(unit.y2);
        CHECK(unit.y1->kind() != TaggedPoint::Kind::Finite);
        auto sq = ucb_verdict(Weight::parse("power:c=0/1:r=2"), 2, 2, 6);
        CHECK(sq.unconditional == Verdict::Holds);
        REQUIRE(sq.y1);
        CHECK(sq.y1->to_string() == "0/1:r");
        REQUIRE(sq.y2);
        CHECK(sq.y2->to_string() == "0/1:l");
        auto lin = ucb_verdict(Weight::parse("power:c=0/1:r=1"), 2, 2, 6);
        CHECK(lin.unconditional == Verdict::Fails);
    }
}
