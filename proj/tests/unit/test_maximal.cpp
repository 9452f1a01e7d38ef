#include "doctest.h"
#include "oracles.hpp"

#include "mhaar/maximal.hpp"
#include "mhaar/stats.hpp"

using namespace mhaar;

namespace {

// sup over the m-adic cells containing x with levels lo..hi of the average of |f|.
Rational maximal_oracle(const StepFunction& f, int m, const Rational& x, long lo, long hi)
{
    auto af = f.abs();
    Rational best = 0;
    for (long k = lo; k <= hi; ++k) {
        auto c = MAdicInterval::containing(x, k, m);
        if (c.left() < 0 && c.right() > 0) continue;
        Rational a = oracle::average(af, c.left(), c.right());
        if (a > best) best = a;
    }
    return best;
}

} // namespace

TEST_SUITE("maximal")
{
    TEST_CASE("indicator of the unit interval")
    {
        auto M = maximal_function(StepFunction::indicator(Rational(0), Rational(1)), 2);
        CHECK(M.value(Rational(1, 2)).rational() == 1);
        CHECK(M.value(Rational(3, 2)).rational() == Rational(1, 2));
        CHECK(M.value(Rational(5)).rational() == Rational(1, 8));
        CHECK(M.value(Rational(-1, 2)).rational() == 0);
        // {M > 1/4} = [0, 2)
        CHECK(level_set_weight(M, Rational(1, 4)).rational() == 2);
        CHECK(level_set_weight(M, Rational(1, 5)).rational() == 4);
        // 1 + sum_k 2^{k-1} 4^{-k} = 3/2
        CHECK(maximal_lp_integral(M, 2, Weight::unit()).rational() == Rational(3, 2));
    }

    TEST_CASE("agrees with a brute-force cell search")
    {
        std::mt19937_64 rng(23);
        for (int t = 0; t < 12; ++t) {
            int m = 2 + t % 2;
            RandomStepOptions opt;
            opt.m = m;
            opt.max_depth = 3;
            opt.lo = Rational(-1);
            opt.hi = Rational(m);
            auto f = random_step_function(rng, opt);
            auto M = maximal_function(f, m);
            for (int i = -40; i < 60; ++i) {
                Rational x(i, 16 + 1);
                CAPTURE(i);
                CHECK(M.value(x).rational() == maximal_oracle(f, m, x, -8, 8));
            }
        }
    }

    TEST_CASE("unit-only lattice")
    {
        StepFunction f({Rational(0), Rational(1, 4), Rational(1)}, {Rational(4), Rational(0)});
        auto M = maximal_function(f, 2, true);
        CHECK(M.value(Rational(3, 4)).rational() == 1);
        CHECK(M.value(Rational(3, 8)).rational() == 2);
        CHECK(M.value(Rational(2)).rational() == 0);
    }

    TEST_CASE("weak (1,1) and strong L^p bounds")
    {
        std::mt19937_64 rng(29);
        for (int t = 0; t < 10; ++t) {
            RandomStepOptions opt;
            opt.max_depth = 3;
            auto f = random_step_function(rng, opt);
            if (f.is_zero()) continue;
            StepFunction wb({Rational(-4), Rational(0), Rational(1, 2), Rational(4)},
                            {Rational(1), Rational(3), Rational(1, 2)});
            auto rep = weak11_verify(f, Weight::step(wb), 2, {Rational(1, 8), Rational(1, 2), Rational(2)});
            CHECK(rep.pass);
            auto s = strong_lp_verify(f, Weight::unit(), 2, 2);
            CHECK(s.pass);
            CHECK(s.ratio.value() <= 8);
        }
    }

    TEST_CASE("weighted equivalence detects x^2 at p = 2")
    {
        auto bad = weighted_lp_equivalence(Weight::parse("power:c=0/1:r=2"), 2, 2, 20, 3, 6);
        CHECK_FALSE(bad.mp_holds);
        CHECK(bad.unbounded_certified);
        CHECK(bad.consistent);
        auto good = weighted_lp_equivalence(Weight::parse("power:c=0/1:r=1/2"), 2, 2, 20, 3, 6);
        CHECK(good.mp_holds);
        CHECK_FALSE(good.unbounded_certified);
        CHECK(good.consistent);
    }
}
