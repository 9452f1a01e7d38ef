#include "doctest.h"
#include "oracles.hpp"

#include "mhaar/unconditional.hpp"

#include <cmath>

using namespace mhaar;

TEST_SUITE("unconditional")
{
    TEST_CASE("sign sequences")
    {
        auto a = SignSequence::rademacher(42, 100);
        auto b = SignSequence::rademacher(42, 100);
        int plus = 0;
        for (long l = 0; l < 100; ++l) {
            CHECK(a[l] == b[l]);
            CHECK((a[l] == 1 || a[l] == -1));
            plus += a[l] == 1;
        }
        CHECK(plus > 20);
        CHECK(plus < 80);
        CHECK(a[1000] == 1);
        SignSequence s({1, -1});
        s.set(5, -1);
        CHECK(s[5] == -1);
        CHECK(s[3] == 1);
        CHECK_THROWS_AS(s.set(2, 0), InvalidArgument);
    }

    TEST_CASE("sign flips preserve the L2 norm exactly for m = 2")
    {
        auto sys = HaarSystem::canonical(2);
        std::mt19937_64 rng(37);
        for (int t = 0; t < 20; ++t) {
            auto f = oracle::random_grid_function(rng, 2, 3);
            auto e = analyze<Rational>(f, sys, full_cutoff(f, 2));
            auto eps = SignSequence::rademacher(static_cast<std::uint64_t>(t), e.cutoff + 1);
            auto g = sign_flip(e, sys, eps);
            auto sq = [](const Rational& v) { return Rational(v * v); };
            CHECK(g.map(sq).integrate() == f.map(sq).integrate());
            CHECK(sign_flip(e, sys, SignSequence()) == f);
            // Parseval through the square function
            CHECK(square_function_squared(e, sys).integrate() == f.map(sq).integrate());
        }
    }

    TEST_CASE("complementary selections add up to f")
    {
        auto sys = HaarSystem::canonical(2);
        std::mt19937_64 rng(41);
        auto f = oracle::random_grid_function(rng, 2, 3);
        auto e = analyze<Rational>(f, sys, full_cutoff(f, 2));
        SelectionSet odd, even;
        for (long l = 0; l <= e.cutoff; ++l) (l % 2 ? odd : even).indices.insert(l);
        CHECK(selective_sum(e, sys, odd) + selective_sum(e, sys, even) == f);
        CHECK(selective_sum(e, sys, SelectionSet::all(e.cutoff)) == f);
        SelectionSet bad;
        bad.indices.insert(e.cutoff + 1);
        CHECK_THROWS_AS(selective_sum(e, sys, bad), InvalidArgument);
    }

    TEST_CASE("lambda grid")
    {
        auto g = lambda_grid(0.01, 10, 20);
        REQUIRE(g.size() == 20);
        for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i - 1] < g[i]);
        CHECK(g.front().get_d() == doctest::Approx(0.01).epsilon(1e-5));
        CHECK(g.back().get_d() == doctest::Approx(10).epsilon(1e-5));
    }

    TEST_CASE("weak (1,1) bound for sign flips")
    {
        std::mt19937_64 rng(43);
        for (int m : {2, 3}) {
            auto sys = HaarSystem::canonical(m);
            auto f = oracle::random_grid_function(rng, m, 3);
            auto rep = weak11_signflip_verify(f, sys, 30, lambda_grid(0.05, 20, 10), 7);
            CHECK(rep.pass);
            CHECK(rep.violations == 0);
            CHECK(rep.exact == (m == 2));
            if (m == 2) CHECK(rep.isometry_exact);
        }
    }

    TEST_CASE("harness is reproducible and bounded for the unit weight")
    {
        auto sys = HaarSystem::canonical(2);
        auto a = signflip_ratios(Weight::unit(), 2, sys, std::nullopt, 10, 3, 99, true);
        auto b = signflip_ratios(Weight::unit(), 2, sys, std::nullopt, 10, 3, 99, true);
        CHECK(a.signflip == b.signflip);
        for (double r : a.signflip) CHECK(r == doctest::Approx(1.0));
        for (double r : a.square) CHECK(r == doctest::Approx(1.0));
        auto rep = norm_equivalence_experiment(Weight::unit(), 2, sys, 10, {2, 3, 4}, 5);
        CHECK(rep.verdict == "bounded");
    }

    TEST_CASE("pointed experiment checks its hypotheses first")
    {
        auto sys = HaarSystem::canonical(2);
        auto rep = pointed_unconditional_experiment(Weight::parse("power:c=0/1:r=1"), 2, sys,
                                                    TaggedPoint::parse("0/1:r"), 5, {2, 3}, 1);
        CHECK_FALSE(rep.hypotheses_met);
        CHECK(rep.verdict == "skipped");
        CHECK_FALSE(rep.reason.empty());
    }

    TEST_CASE("sampled pointed ratios stay below the exact depth-restricted constant")
    {
        // max over sign patterns of the top generalized eigenvalue of (E G E, G), G the Gram matrix of the
        // Haar wavelets in L^2(x^2) on [0,1]; computed offline by exhaustive search and frozen here
        const double exact[] = {0, 1.0, 1.5291486203133142, 1.7993565222602244, 2.0032192235005466};
        auto sys = HaarSystem::canonical(2);
        auto w = Weight::parse("power:c=0/1:r=2");
        for (long d = 1; d <= 4; ++d) {
            auto r = signflip_ratios(w, 2, sys, TaggedPoint::parse("0/1:r"), 200, d, 17, false);
            CAPTURE(d);
            CHECK(r.sup_signflip <= exact[d] + 1e-9);
            CHECK(r.sup_signflip >= 1.0 - 1e-9);
        }
    }

    TEST_CASE("bootstrap slope")
    {
        std::vector<double> x{1, 2, 3, 4, 5}, y{2, 4, 6, 8, 10};
        CHECK(least_squares_slope(x, y) == doctest::Approx(2.0));
        auto s = bootstrap_slope(x, y, 200, 1);
        CHECK_FALSE(s.flat);
        CHECK(s.lo <= 2.0 + 1e-12);
        CHECK(s.hi >= 2.0 - 1e-12);
        CHECK(derive_seed(5, 1) != derive_seed(5, 2));
        CHECK(derive_seed(5, 1) == derive_seed(5, 1));
    }
}
