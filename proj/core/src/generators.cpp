#include "mhaar/generators.hpp"

#include "mhaar/errors.hpp"

#include <cmath>

namespace mhaar {

MatrixValidation validate_generator_matrix(const Eigen::MatrixXd& A, double tol)
{
    MatrixValidation v;
    if (A.rows() != A.cols() || A.rows() < 2) return v;
    const auto m = A.rows();
    Eigen::MatrixXd G = A * A.transpose() - Eigen::MatrixXd::Identity(m, m);
    v.orthogonality_error = G.cwiseAbs().maxCoeff();
    double c = 1.0 / std::sqrt(static_cast<double>(m));
    for (Eigen::Index s = 0; s < m; ++s) v.first_row_error = std::max(v.first_row_error, std::fabs(A(0, s) - c));
    v.ok = v.orthogonality_error <= tol && v.first_row_error <= tol;
    return v;
}

HaarSystem HaarSystem::canonical(int m)
{
    if (m < 2) throw InvalidArgument("m must be >= 2");
    std::vector<std::vector<Rational>> v(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(m)));
    std::vector<Rational> norm2(static_cast<std::size_t>(m));
    for (int q = 0; q < m; ++q) {
        auto& vq = v[static_cast<std::size_t>(q)];
        for (int s = 0; s < m; ++s) vq[static_cast<std::size_t>(s)] = rpow(Rational(s), q);
        for (int p = 0; p < q; ++p) {
            const auto& vp = v[static_cast<std::size_t>(p)];
            Rational ip = 0;
            for (int s = 0; s < m; ++s) ip += vq[static_cast<std::size_t>(s)] * vp[static_cast<std::size_t>(s)];
            Rational coef = ip / norm2[static_cast<std::size_t>(p)];
            for (int s = 0; s < m; ++s) vq[static_cast<std::size_t>(s)] -= coef * vp[static_cast<std::size_t>(s)];
        }
        Rational n2 = 0;
        for (const auto& x : vq) n2 += x * x;
        norm2[static_cast<std::size_t>(q)] = n2;
    }

    HaarSystem sys;
    sys.m_ = m;
    sys.h_.resize(m, m);
    sys.A_.resize(m, m);
    std::vector<std::vector<Rational>> ex(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(m)));
    bool all_exact = true;
    for (int q = 0; q < m; ++q) {
        double sign = (m == 2 && q == 1) ? -1.0 : 1.0;
        for (int s = 0; s < m; ++s) {
            const Rational& x = v[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            // h^2 = m x^2 / |v|^2 is rational; h itself is rational only for perfect squares.
            Rational h2 = Rational(m) * x * x / norm2[static_cast<std::size_t>(q)];
            double h = std::sqrt(h2.get_d()) * (x < 0 ? -1.0 : 1.0) * sign;
            sys.h_(q, s) = h;
            sys.A_(q, s) = h / std::sqrt(static_cast<double>(m));
            Rational r;
            if (exact_sqrt(h2, r)) {
                if (x < 0) r = -r;
                if (sign < 0) r = -r;
                ex[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] = r;
            } else {
                all_exact = false;
            }
        }
    }
    if (all_exact) sys.exact_ = std::move(ex);
    return sys;
}

HaarSystem HaarSystem::from_matrix(const Eigen::MatrixXd& A, double tol)
{
    if (A.rows() != A.cols() || A.rows() < 2) throw InvalidArgument("generator matrix must be square with m >= 2");
    auto val = validate_generator_matrix(A, tol);
    if (val.orthogonality_error > tol) throw InvalidArgument("generator matrix is not orthogonal");
    if (val.first_row_error > tol) throw InvalidArgument("generator matrix first row is not constant m^{-1/2}");
    HaarSystem sys;
    sys.m_ = static_cast<int>(A.rows());
    sys.A_ = A;
    sys.h_ = A * std::sqrt(static_cast<double>(sys.m_));
    if (sys.m_ == 2) {
        std::vector<std::vector<Rational>> ex(2, std::vector<Rational>(2));
        bool ok = true;
        for (int q = 0; q < 2; ++q)
            for (int s = 0; s < 2; ++s) {
                double r = std::round(sys.h_(q, s));
                if (std::fabs(sys.h_(q, s) - r) > tol) ok = false;
                ex[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] = Rational(static_cast<long>(r));
            }
        if (ok) sys.exact_ = std::move(ex);
    }
    return sys;
}

const Rational& HaarSystem::exact_value(int nu, int s) const
{
    if (!exact_) throw InvalidArgument("generator values are irrational for m = " + std::to_string(m_));
    return (*exact_)[static_cast<std::size_t>(nu)][static_cast<std::size_t>(s)];
}

RealStep HaarSystem::generator(int nu) const
{
    std::vector<double> vals;
    for (int s = 0; s < m_; ++s) vals.push_back(h_(nu, s));
    return RealStep::from_grid(m_, 1, 0, vals);
}

StepFunction HaarSystem::generator_exact(int nu) const
{
    std::vector<Rational> vals;
    for (int s = 0; s < m_; ++s) vals.push_back(exact_value(nu, s));
    return StepFunction::from_grid(m_, 1, 0, vals);
}

namespace {

// Index s of the sub-cell of cell (k, j) holding the level-(k+1) cell `sub`, or -1.
int subcell_index(const MAdicInterval& sub, long k, std::int64_t j, int m)
{
    std::int64_t lo = j * m;
    if (sub.level != k + 1 || sub.index < lo || sub.index >= lo + m) return -1;
    return static_cast<int>(sub.index - lo);
}

} // namespace

double evaluate_wavelet(const HaarSystem& sys, int nu, long k, std::int64_t j, const Rational& x)
{
    if (nu < 0 || nu >= sys.m()) throw InvalidArgument("generator index out of range");
    auto cell = MAdicInterval::containing(x, k + 1, sys.m());
    int s = subcell_index(cell, k, j, sys.m());
    if (s < 0) return 0.0;
    return std::pow(static_cast<double>(sys.m()), 0.5 * static_cast<double>(k)) * sys.value(nu, s);
}

Rational reduced_wavelet_at(const HaarSystem& sys, int nu, long k, std::int64_t j, const TaggedPoint& y)
{
    if (!y.is_finite()) return Rational(0);
    int s = subcell_index(chain_cell(y, k + 1, sys.m()), k, j, sys.m());
    return s < 0 ? Rational(0) : sys.exact_value(nu, s);
}

double reduced_wavelet_at_real(const HaarSystem& sys, int nu, long k, std::int64_t j, const TaggedPoint& y)
{
    if (!y.is_finite()) return 0.0;
    int s = subcell_index(chain_cell(y, k + 1, sys.m()), k, j, sys.m());
    return s < 0 ? 0.0 : sys.value(nu, s);
}

MomentReport moment_check(const HaarSystem& sys, double tol)
{
    MomentReport r;
    for (int nu = 1; nu < sys.m(); ++nu) {
        double sum = sys.matrix().row(nu).sum();
        r.row_sums.push_back(sum);
        r.max_abs = std::max(r.max_abs, std::fabs(sum));
    }
    r.pass = r.max_abs <= tol;
    return r;
}

KernelInvarianceReport kernel_invariance_check(const Eigen::MatrixXd& A, int grid, double tol)
{
    KernelInvarianceReport r;
    r.grid = grid;
    const int m = static_cast<int>(A.rows());
    const double sm = static_cast<double>(m);
    for (int a = 0; a < grid; ++a) {
        int sx = static_cast<int>((2 * a + 1) * m / (2 * grid));
        for (int b = 0; b < grid; ++b) {
            int st = static_cast<int>((2 * b + 1) * m / (2 * grid));
            double k = 0;
            for (int nu = 0; nu < m; ++nu) k += sm * A(nu, sx) * A(nu, st);
            double phi = sx == st ? sm : 0.0;
            r.max_discrepancy = std::max(r.max_discrepancy, std::fabs(k - phi));
        }
    }
    r.pass = r.max_discrepancy <= tol;
    return r;
}

KernelInvarianceReport kernel_invariance_check(const HaarSystem& sys, int grid, double tol)
{
    if (!sys.exact()) return kernel_invariance_check(sys.matrix(), grid, tol);
    KernelInvarianceReport r;
    r.grid = grid;
    r.exact = true;
    const int m = sys.m();
    Rational worst = 0;
    for (int a = 0; a < grid; ++a) {
        int sx = static_cast<int>((2 * a + 1) * m / (2 * grid));
        for (int b = 0; b < grid; ++b) {
            int st = static_cast<int>((2 * b + 1) * m / (2 * grid));
            Rational k = 0;
            for (int nu = 0; nu < m; ++nu) k += sys.exact_value(nu, sx) * sys.exact_value(nu, st);
            Rational phi = sx == st ? Rational(m) : Rational(0);
            Rational d = abs(k - phi);
            if (d > worst) worst = d;
        }
    }
    r.max_discrepancy = worst.get_d();
    r.pass = worst == 0;
    return r;
}

} // namespace mhaar
