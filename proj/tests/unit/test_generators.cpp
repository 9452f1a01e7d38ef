#include "doctest.h"

#include "mhaar/errors.hpp"
#include "mhaar/generators.hpp"

#include <cmath>

using namespace mhaar;

TEST_SUITE("generators")
{
    TEST_CASE("canonical systems are orthonormal with the constant first row")
    {
        for (int m = 2; m <= 7; ++m) {
            auto sys = HaarSystem::canonical(m);
            auto v = validate_generator_matrix(sys.matrix());
            CAPTURE(m);
            CHECK(v.ok);
            CHECK(v.orthogonality_error < 1e-13);
            CHECK(moment_check(sys).pass);
            // each wavelet integrates to zero and has unit L2 norm
            for (int nu = 1; nu < m; ++nu) {
                double s = 0, q = 0;
                for (int c = 0; c < m; ++c) {
                    s += sys.value(nu, c) / m;
                    q += sys.value(nu, c) * sys.value(nu, c) / m;
                }
                CHECK(std::fabs(s) < 1e-13);
                CHECK(q == doctest::Approx(1.0));
            }
        }
    }

    TEST_CASE("m = 2 is the classical Haar function")
    {
        auto sys = HaarSystem::canonical(2);
        REQUIRE(sys.exact());
        CHECK(sys.exact_value(1, 0) == 1);
        CHECK(sys.exact_value(1, 1) == -1);
        CHECK(evaluate_wavelet(sys, 1, 2, 1, Rational(5, 16)) == doctest::Approx(2.0));
        CHECK(evaluate_wavelet(sys, 1, 2, 1, Rational(3, 8)) == doctest::Approx(-2.0));
        CHECK(evaluate_wavelet(sys, 1, 2, 1, Rational(1, 2)) == 0);
        CHECK(reduced_wavelet_at(sys, 1, 1, 0, TaggedPoint::parse("1/2:l")) == -1);
        CHECK(reduced_wavelet_at(sys, 1, 1, 0, TaggedPoint::parse("1/2:r")) == 0);
        CHECK(reduced_wavelet_at(sys, 1, 0, 0, TaggedPoint::parse("1/3")) == 1);
    }

    TEST_CASE("user matrices are validated")
    {
        Eigen::MatrixXd A(2, 2);
        A << 1, 1, 1, -1;
        CHECK_THROWS_AS(HaarSystem::from_matrix(A), InvalidArgument);
        A /= std::sqrt(2.0);
        auto sys = HaarSystem::from_matrix(A);
        CHECK(sys.value(1, 1) == doctest::Approx(-1.0));
        // a rotated basis of the zero-mean subspace for m = 3
        double c = std::cos(0.3), s = std::sin(0.3);
        Eigen::MatrixXd B = HaarSystem::canonical(3).matrix();
        Eigen::MatrixXd R = B;
        R.row(1) = c * B.row(1) + s * B.row(2);
        R.row(2) = -s * B.row(1) + c * B.row(2);
        CHECK(validate_generator_matrix(R).ok);
        Eigen::MatrixXd bad = R;
        bad.row(0) = R.row(1);
        bad.row(1) = R.row(0);
        CHECK_FALSE(validate_generator_matrix(bad).ok);
    }

    TEST_CASE("the two-scale kernel does not depend on the generator choice")
    {
        for (int m = 2; m <= 4; ++m) {
            auto rep = kernel_invariance_check(HaarSystem::canonical(m), 16);
            CHECK(rep.pass);
            CHECK(rep.max_discrepancy < 1e-12);
        }
        auto exact = kernel_invariance_check(HaarSystem::canonical(2), 8);
        CHECK(exact.exact);
        CHECK(exact.max_discrepancy == 0);
        // any orthogonal matrix works, not only those with a constant first row
        Eigen::MatrixXd Q(3, 3);
        double a = 0.7;
        Q << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
        CHECK(kernel_invariance_check(Q, 9).pass);
    }
}
