#include "doctest.h"
#include "oracles.hpp"

#include "mhaar/expansion.hpp"

#include <cmath>

using namespace mhaar;

namespace {

// r_l = sum_s h^(nu)(s) * integral of f over the s-th subcell of the support.
Rational reduced_oracle(const StepFunction& f, const HaarSystem& sys, const CoeffIndex& c, int m)
{
    Rational len = m_power(m, -(c.k + 1));
    Rational acc = 0;
    for (int s = 0; s < m; ++s) {
        Rational a = Rational(c.cell() * m + s) * len;
        acc += sys.exact_value(c.nu, s) * oracle::average(f, a, a + len) * len;
    }
    return acc;
}

} // namespace

TEST_SUITE("expansion")
{
    TEST_CASE("index bookkeeping")
    {
        CHECK(block_start(3, 2) == 7);
        CHECK(block_start(2, 3) == 4);
        CHECK(mu(3, 3) == 26);
        auto c = decode(1, 2);
        CHECK(c.k == 0);
        CHECK(c.j == 1);
        c = decode(4, 2);
        CHECK(c.k == 2);
        CHECK(c.j == 1);
        c = decode(4, 3); // n = 1, nu = 2
        CHECK(c.nu == 2);
        CHECK(c.k == 1);
        CHECK(c.j == 1);
        for (int m = 2; m <= 5; ++m)
            for (long l = 1; l < 400; ++l) {
                auto d = decode(l, m);
                CHECK(encode(d.nu, d.k, d.j, m) == l);
                CHECK(d.nu >= 1);
                CHECK(d.nu < m);
            }
        CHECK(special_n(2, 3, 3) == 14);
        auto s = special_index(14, 3);
        REQUIRE(s);
        CHECK(s->k == 2);
        CHECK(s->j == 3);
        CHECK_FALSE(special_index(15, 3));
        CHECK(special_index(0, 3)->j == 0);
    }

    TEST_CASE("coefficients match a direct subcell oracle")
    {
        auto sys = HaarSystem::canonical(2);
        std::mt19937_64 rng(11);
        for (int t = 0; t < 20; ++t) {
            auto f = oracle::random_grid_function(rng, 2, 4);
            auto e = analyze<Rational>(f, sys, mu(4, 2));
            REQUIRE(e.reduced.size() == static_cast<std::size_t>(mu(4, 2) + 1));
            CHECK(e.reduced[0] == oracle::average(f, 0, 1));
            for (long l = 1; l <= e.cutoff; ++l)
                CHECK(e.reduced[static_cast<std::size_t>(l)] == reduced_oracle(f, sys, decode(l, 2), 2));
            CHECK(reconstruct(e, sys) == f);
        }
    }

    TEST_CASE("float and exact paths agree for m = 3")
    {
        auto sys = HaarSystem::canonical(3);
        std::mt19937_64 rng(5);
        auto f = oracle::random_grid_function(rng, 3, 2);
        auto e = analyze<double>(f, sys, mu(2, 3));
        auto back = reconstruct(e, sys);
        for (std::size_t i = 0; i < 9; ++i) {
            Rational x(static_cast<long>(i), 9);
            CHECK(back(x) == doctest::Approx(f(x).get_d()).epsilon(1e-12));
        }
    }

    TEST_CASE("kernel and coefficient paths give the same partial sums")
    {
        std::mt19937_64 rng(3);
        for (int m : {2, 3}) {
            auto sys = HaarSystem::canonical(m);
            auto f = oracle::random_grid_function(rng, m, 3);
            for (long n = 0; n <= mu(3, m); ++n) {
                if (!special_index(n, m)) continue;
                auto a = partial_sum_kernel_n(f, m, n);
                auto b = partial_sum_coefficients<double>(f, sys, n);
                CAPTURE(m);
                CAPTURE(n);
                for (const auto& x : a.breakpoints())
                    CHECK(b(x) == doctest::Approx(a(x).get_d()).epsilon(1e-10));
            }
        }
    }

    TEST_CASE("kernel blocks tile the unit interval")
    {
        for (int m : {2, 3, 5})
            for (long k = 0; k <= 2; ++k)
                for (std::int64_t j = 1; j <= to_int64(ipow(m, static_cast<unsigned long>(k))); ++j) {
                    Rational total = 0;
                    for (const auto& c : kernel(k, j, m)) {
                        total += c.cell.length();
                        CHECK(c.value == 1 / c.cell.length());
                    }
                    CHECK(total == 1);
                }
    }

    TEST_CASE("pointed partial sums")
    {
        auto sys = HaarSystem::canonical(2);
        std::mt19937_64 rng(19);
        auto y = TaggedPoint::parse("1/4:r");
        for (int t = 0; t < 5; ++t) {
            auto f = oracle::random_grid_function(rng, 2, 3);
            for (long k = 0; k <= 2; ++k)
                for (std::int64_t j = 1; j <= (1 << k); ++j) {
                    long n = special_n(k, j, 2);
                    CHECK(pointed_partial_sum_formula(f, 2, y, k, j) ==
                          pointed_partial_sum_coefficients<Rational>(f, sys, y, n));
                }
        }
        // c_l = a_l - h_l(y) * integral of f
        auto f = StepFunction::indicator(Rational(0), Rational(1, 2));
        auto e = pointed_coefficients<Rational>(f, sys, y, 3);
        auto a = analyze<Rational>(f, sys, 3);
        CHECK(e.reduced[1] == a.reduced[1] - Rational(1, 2));
        CHECK(e.reduced[2] == a.reduced[2] + Rational(1, 2));
        CHECK(e.reduced[3] == a.reduced[3]);
    }

    TEST_CASE("completeness residual equals the constant projection")
    {
        for (int m : {2, 3})
            for (long l = 1; l <= 4; ++l)
                for (double p : {1.5, 2.0, 3.0}) {
                    auto r = completeness_residual(m, l, p, HaarSystem::canonical(m));
                    double expected = std::pow(m, -0.5 - l) * std::pow(m, l / p);
                    CHECK(r.projection == doctest::Approx(expected).epsilon(1e-10));
                    CHECK(r.closed_form == doctest::Approx(expected));
                }
        CHECK_THROWS_AS(completeness_residual(2, 1, 1.0, HaarSystem::canonical(2)), InvalidArgument);
    }

    TEST_CASE("block operator norm for the unit weight is one")
    {
        std::vector<Segment> cells{Segment::closed(0, Rational(1, 2)), Segment::closed(Rational(1, 2), 1)};
        auto b = block_operator_norm(cells, std::nullopt, Weight::unit(), 2);
        CHECK(b.norm.value() == doctest::Approx(1.0));
        auto s = block_operator_norm(cells, std::size_t(0), Weight::unit(), 2);
        CHECK(s.norm.value() == doctest::Approx(1.0));
    }
}
