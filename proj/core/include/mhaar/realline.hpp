#pragma once

#include "mhaar/conditions.hpp"
#include "mhaar/generators.hpp"
#include "mhaar/unconditional.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace mhaar {

struct WaveletIndex {
    int nu = 1;
    long k = 0;
    std::int64_t j = 0;
    bool positive() const { return j >= 0; }
};

// Fourier transform f^(xi) = integral f(x) e^{-2 pi i x xi} dx.
std::complex<double> fourier_transform(const HaarSystem& sys, int nu, double xi);
// Transform of m^{k/2} h^(nu)(m^k x - j) through the scaling law.
std::complex<double> fourier_transform(const HaarSystem& sys, const WaveletIndex& idx, double xi);
// Direct transform of a step function, piece by piece.
std::complex<double> fourier_transform(const RealStep& f, double xi);

std::vector<double> make_grid(double lo, double hi, int n, bool logarithmic = false);

struct ScaleSumReport {
    int m = 2;
    long K = 0;
    std::size_t points = 0;
    double max_sum = 0;
    double argmax = 0;
    bool monotone = true; // partial sums nondecreasing in K at every point
    bool pass = false;    // max_sum <= 1 + tol
    double origin_max = 0; // max_nu |h^(nu)^(0)|
};

ScaleSumReport scale_sum_inequality(const HaarSystem& sys, const std::vector<double>& xs, long K, double tol = 1e-9);

struct TranslatesReport {
    double t = 0;
    long J = 0;
    double sum = 0;
    double tail_bound = 0; // TV^2 / (4 pi^2) * 2 / (J - 1)
    bool pass = false;
};

// Truncated sum_{|j| <= J} |f^(t + j)|^2 for a step function f on [0, 1] (|t| <= 1/2 assumed by the bound).
TranslatesReport translates_orthonormality(const RealStep& f, double t, long J);

struct AnnihilatorReport {
    int m = 2;
    long N = 1, depth = 2;
    bool two_sided = true;
    bool with_scaling = false;
    std::size_t unknowns = 0, constraints = 0;
    long dimension = 0;
    std::optional<long> exact_dimension; // rational elimination (exact systems)
    std::vector<std::vector<double>> basis; // projections of the normalized half-domain indicators
    double indicator_error = 0;              // max distance of a normalized indicator from the null space
    double smallest_kept_singular = 0;
    double largest_null_singular = 0;
};

// Step functions u on the level-`depth` cells of [-m^N, m^N] (or [0, m^N]) orthogonal to every wavelet
// of levels -N..depth-1 supported there; optionally also to the coarsest scaling functions.
AnnihilatorReport annihilator_basis(const HaarSystem& sys, long N, long depth, bool two_sided, bool with_scaling = false,
                                    double threshold = 1e-9);

struct CMReport {
    std::string half; // "pos", "neg"
    SingularityReport classifier;
    std::optional<TaggedPoint> y;
};

CMReport cm_classifier(const Weight& w, double p, int m, bool positive);

struct DualCoefficient {
    double value = 0;
    std::optional<Rational> reduced; // value = m^{k/2} * reduced (exact systems)
    double h_at_y = 0;                // h_{k,j,m}(y)
};

// c = integral f (h_{k,j,m} - h_{k,j,m}(y) chi_{R+}); y = +infinity gives the plain coefficient.
DualCoefficient dual_wavelet_coefficient(const StepFunction& f, const HaarSystem& sys, const TaggedPoint& y,
                                         const WaveletIndex& idx);

struct HalfVerdict {
    std::string half;
    CMReport cm;
    std::optional<WeightReport> mp;   // M_p on the half (minus y when finite)
    std::optional<WeightReport> mp_y; // M_p^y for finite y
    std::vector<WeightReport> singular_point_checks; // evidence when y is not unique
    Verdict unconditional = Verdict::Inconclusive;
    bool exact = false;
    std::string evidence;
};

struct BasisVerdict {
    std::string weight;
    double p = 2;
    int m = 2;
    long depth = 0;
    bool complete = false;
    bool minimal = false;
    Verdict schauder = Verdict::Inconclusive;
    Verdict unconditional = Verdict::Inconclusive;
    std::optional<TaggedPoint> y1, y2;
    HalfVerdict pos, neg;
    bool exact = false;
    bool statement_level = true; // the two-sided verdict is the conjunction of the half-line verdicts
    std::string evidence;
};

HalfVerdict half_verdict(const Weight& w, double p, int m, bool positive, long depth);
BasisVerdict ucb_verdict(const Weight& w, double p, int m, long depth);

struct HalflineRow {
    long N = 0;
    Quantity tail_factor; // m^{-N} (int_{m^N}^inf psi)^{1/p'} (int_0^{m^N} w)^{1/p}
    DepthRatios ratios;
};

struct HalflineReport {
    std::string weight;
    double p = 2;
    int m = 2;
    bool hypotheses_met = false;
    std::string reason;
    std::optional<TaggedPoint> y;
    std::string branch; // "pointed" or "infinity"
    long depth = 0;
    int trials = 0;
    std::vector<HalflineRow> rows;
    SlopeInterval trend;
    std::string verdict;
};

// Sign-flip harness on H+(m) reduced to [0,1] by x -> m^N x, N in Ns.
HalflineReport halfline_experiment(const Weight& w, double p, const HaarSystem& sys, int trials, long depth,
                                   const std::vector<long>& Ns, std::uint64_t seed);

} // namespace mhaar
