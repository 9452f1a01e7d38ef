#pragma once

#include "mhaar/lattice.hpp"
#include "mhaar/step.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace mhaar {

struct MatrixValidation {
    double orthogonality_error = 0; // max |A A^T - I|
    double first_row_error = 0;     // max |A_0s - m^{-1/2}|
    bool ok = false;
};

MatrixValidation validate_generator_matrix(const Eigen::MatrixXd& A, double tol = 1e-12);

// Orthonormal basis {h^(nu)} of V(m) with h^(0) = phi; h^(nu) = sqrt(m) A_{nu,s} on [s/m, (s+1)/m).
class HaarSystem {
public:
    // Gram-Schmidt on (s^q)_{s<m}, done exactly; m = 2 is oriented as classical Haar (1, -1).
    static HaarSystem canonical(int m);
    // Validated user matrix (rows are generators).
    static HaarSystem from_matrix(const Eigen::MatrixXd& A, double tol = 1e-12);

    int m() const { return m_; }
    const Eigen::MatrixXd& matrix() const { return A_; }
    double value(int nu, int s) const { return h_(nu, s); }

    // Rational generator values are available (always for canonical m = 2).
    bool exact() const { return exact_.has_value(); }
    const Rational& exact_value(int nu, int s) const;

    template <class V> V hval(int nu, int s) const;

    RealStep generator(int nu) const;
    StepFunction generator_exact(int nu) const;

private:
    int m_ = 2;
    Eigen::MatrixXd A_;
    Eigen::MatrixXd h_;
    std::optional<std::vector<std::vector<Rational>>> exact_;
};

template <> inline double HaarSystem::hval<double>(int nu, int s) const { return value(nu, s); }
template <> inline Rational HaarSystem::hval<Rational>(int nu, int s) const { return exact_value(nu, s); }

// m^{k/2} h^(nu)(m^k x - j), right-continuous, 0 off [j/m^k, (j+1)/m^k).
double evaluate_wavelet(const HaarSystem& sys, int nu, long k, std::int64_t j, const Rational& x);

// h^(nu)(m^k y - j) without the m^{k/2} factor, at a tagged point; exact systems only.
Rational reduced_wavelet_at(const HaarSystem& sys, int nu, long k, std::int64_t j, const TaggedPoint& y);
double reduced_wavelet_at_real(const HaarSystem& sys, int nu, long k, std::int64_t j, const TaggedPoint& y);

struct MomentReport {
    std::vector<double> row_sums; // sum_s A_{nu,s}, nu >= 1
    double max_abs = 0;
    bool pass = false;
};

MomentReport moment_check(const HaarSystem& sys, double tol = 1e-12);

struct KernelInvarianceReport {
    int grid = 0;
    double max_discrepancy = 0;
    bool exact = false; // computed in rationals
    bool pass = false;
};

// sum_nu h^(nu)(x) h^(nu)(t) against sum_s phi_{1,s}(x) phi_{1,s}(t) on a grid x grid sample.
KernelInvarianceReport kernel_invariance_check(const HaarSystem& sys, int grid, double tol = 1e-10);
// Same identity for any orthogonal matrix (rows need not start with the constant).
KernelInvarianceReport kernel_invariance_check(const Eigen::MatrixXd& A, int grid, double tol = 1e-10);

} // namespace mhaar
