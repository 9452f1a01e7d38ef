#include "doctest.h"
#include "oracles.hpp"

#include "mhaar/cz.hpp"
#include "mhaar/errors.hpp"

using namespace mhaar;

TEST_SUITE("cz")
{
    TEST_CASE("boundary case: eta equals m lambda")
    {
        auto f = StepFunction::indicator(Rational(0), Rational(1, 8)).scaled(Rational(8));
        auto r = cz_decompose(f, Rational(2), 2);
        REQUIRE(r.cells.size() == 1);
        CHECK(r.cells[0] == MAdicInterval(2, 2, 0));
        CHECK(r.eta[0] == 4);
        CHECK(r.omega_measure == Rational(1, 4));
        CHECK(r.g == StepFunction::indicator(Rational(0), Rational(1, 4)).scaled(Rational(4)));
        CHECK(cz_verify(r).pass);
    }

    TEST_CASE("preconditions")
    {
        auto f = StepFunction::indicator(Rational(0), Rational(1));
        CHECK_THROWS_AS(cz_decompose(f, Rational(1), 2), PreconditionError);
        CHECK_THROWS_AS(cz_decompose(StepFunction::indicator(Rational(0), Rational(2)), Rational(5), 2), InvalidArgument);
    }

    TEST_CASE("zero function selects nothing")
    {
        auto r = cz_decompose(StepFunction(), Rational(1), 3);
        CHECK(r.cells.empty());
        CHECK(cz_verify(r).pass);
    }

    TEST_CASE("random decompositions against an independent selection")
    {
        std::mt19937_64 rng(31);
        for (int t = 0; t < 40; ++t) {
            int m = 2 + t % 2;
            auto f = oracle::random_grid_function(rng, m, 3);
            Rational l1 = oracle::average(f.abs(), 0, 1);
            Rational lambda = l1 + Rational(1 + t % 4, 3);
            auto r = cz_decompose(f, lambda, m);
            CHECK(cz_verify(r).pass);
            CHECK(r.f - r.g - r.b == StepFunction());
            // stopping-time oracle: a cell is selected iff its average exceeds lambda and no ancestor's does
            auto af = f.abs();
            std::vector<MAdicInterval> expect;
            std::vector<MAdicInterval> frontier{MAdicInterval(m, 0, 0)};
            while (!frontier.empty()) {
                auto c = frontier.back();
                frontier.pop_back();
                if (oracle::average(af, c.left(), c.right()) > lambda) {
                    expect.push_back(c);
                    continue;
                }
                if (c.level < 4)
                    for (const auto& k : c.children()) frontier.push_back(k);
            }
            std::sort(expect.begin(), expect.end(), [](const auto& a, const auto& b) { return a.left() < b.left(); });
            CHECK(expect == r.cells);
        }
    }
}
