#pragma once

#include "mhaar/conditions.hpp"
#include "mhaar/expansion.hpp"
#include "mhaar/stats.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mhaar {

// eps_l in {+1, -1}; +1 beyond the explicit range.
class SignSequence {
public:
    SignSequence() = default;
    explicit SignSequence(std::vector<int> signs);
    static SignSequence rademacher(std::uint64_t seed, long length);

    int operator[](long l) const;
    void set(long l, int eps);
    long explicit_length() const { return static_cast<long>(eps_.size()); }
    std::optional<std::uint64_t> seed;

    template <class V> std::vector<V> multipliers(long cutoff) const
    {
        std::vector<V> out;
        for (long l = 0; l <= cutoff; ++l) out.push_back(V((*this)[l]));
        return out;
    }

private:
    std::vector<int> eps_;
};

struct SelectionSet {
    std::set<long> indices;

    static SelectionSet all(long cutoff);
    bool contains(long l) const { return indices.count(l) != 0; }
    template <class V> std::vector<V> multipliers(long cutoff) const
    {
        std::vector<V> out;
        for (long l = 0; l <= cutoff; ++l) out.push_back(V(contains(l) ? 1 : 0));
        return out;
    }
};

template <class V> Step<V> sign_flip(const Expansion<V>& e, const HaarSystem& sys, const SignSequence& eps)
{
    return synthesize(e, sys, eps.multipliers<V>(e.cutoff));
}

template <class V> Step<V> selective_sum(const Expansion<V>& e, const HaarSystem& sys, const SelectionSet& omega)
{
    for (long l : omega.indices)
        if (l < 0 || l > e.cutoff) throw InvalidArgument("selection index " + std::to_string(l) + " outside the expansion");
    return synthesize(e, sys, omega.multipliers<V>(e.cutoff));
}

// sum_l (a_l h_l)^2 as a step function; exact for exact systems.
template <class V> Step<V> square_function_squared(const Expansion<V>& e, const HaarSystem& sys);
RealStep square_function(const Expansion<double>& e, const HaarSystem& sys);
RealStep square_function(const Expansion<Rational>& e, const HaarSystem& sys);

// Full expansion of a function of depth d: cutoff mu_d = m^d - 1.
long full_cutoff(const StepFunction& f, int m);

// log-spaced grid of n rationals between lo and hi (binary-exact conversions).
std::vector<Rational> lambda_grid(double lo, double hi, int n);

struct SignFlipWeakRow {
    Rational lambda;
    double max_measure = 0; // over trials
    Rational bound;          // (m+1) ||f||_1 / lambda
    int violations = 0;
};

struct SignFlipWeakReport {
    int m = 2;
    int trials = 0;
    bool exact = false;
    Rational l1;
    std::vector<SignFlipWeakRow> rows;
    int violations = 0;
    double max_ratio = 0; // measure / bound
    double max_isometry_error = 0;
    bool isometry_exact = false; // m = 2: every ||I_eps f||_2 = ||f||_2 exactly
    bool pass = true;
};

// Trials of random eps; level sets of |I_eps f| measured exactly (m = 2) or with the
// threshold lowered by 1e-12 relative (counts borderline pieces as exceeding).
SignFlipWeakReport weak11_signflip_verify(const StepFunction& f, const HaarSystem& sys, int trials,
                                          const std::vector<Rational>& lambdas, std::uint64_t seed);

struct DepthRatios {
    long depth = 0;
    std::vector<double> signflip; // ||I_eps f|| / ||f|| per trial
    std::vector<double> square;   // ||G f|| / ||f|| per trial
    double sup_signflip = 0;
    double sup_square = 0;
    double min_square = 0;
};

// One depth of the random (f, eps) harness: ||I_eps f|| / ||f|| in L^p(w) on [0,1]. With a point y the
// pointed coefficients are used and the denominator is the norm of their synthesis.
DepthRatios signflip_ratios(const Weight& w, double p, const HaarSystem& sys, const std::optional<TaggedPoint>& y,
                            int trials, long depth, std::uint64_t seed, bool with_square);

struct NormEquivalenceReport {
    std::string weight;
    double p = 2;
    int m = 2;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<DepthRatios> depths;
    SlopeInterval trend;          // slope of log sup ratio against depth
    WeightReport mp;              // check_mp on [0,1]
    std::vector<double> witness_ratios; // ||S_{0} f_k|| / ||f_k|| for the truncated family, k = 1..
    bool witness_growing = false;
    std::string verdict; // "bounded", "growing", "witness-unbounded"
};

NormEquivalenceReport norm_equivalence_experiment(const Weight& w, double p, const HaarSystem& sys, int trials,
                                                  const std::vector<long>& depths, std::uint64_t seed);

struct PointedExperimentReport {
    std::string weight;
    double p = 2;
    int m = 2;
    TaggedPoint y;
    int trials = 0;
    std::uint64_t seed = 0;
    bool hypotheses_met = false;
    std::string reason;
    WeightReport mp_off_point;
    WeightReport mp_y;
    std::vector<DepthRatios> depths;
    SlopeInterval trend;
    std::string verdict; // "bounded", "growing", "skipped"
};

PointedExperimentReport pointed_unconditional_experiment(const Weight& w, double p, const HaarSystem& sys,
                                                         const TaggedPoint& y, int trials,
                                                         const std::vector<long>& depths, std::uint64_t seed);

// Slope (with bootstrap interval) of log(sup of ratios) against depth, resampling trials within depths.
SlopeInterval sup_trend(const std::vector<DepthRatios>& depths, bool square, int resamples, std::uint64_t seed);

} // namespace mhaar
