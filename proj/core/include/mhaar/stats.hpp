#pragma once

#include "mhaar/step.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace mhaar {

// Deterministic per-index seeds derived from one master seed.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct SlopeInterval {
    double slope = 0, lo = 0, hi = 0;
    bool flat = false; // interval contains 0
};

// Least-squares slope of y on x with a percentile bootstrap interval over (x, y) pairs.
SlopeInterval bootstrap_slope(const std::vector<double>& x, const std::vector<double>& y, int resamples,
                              std::uint64_t seed, double level = 0.95);
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

struct RandomStepOptions {
    int m = 2;
    long max_depth = 4;
    Rational lo = Rational(0), hi = Rational(1);
    long max_numerator = 8; // values are n/d with |n| <= max_numerator, d in 1..4
    bool nonnegative = false;
};

// Random step function on [lo, hi] (m-adic endpoints) that is constant on level-d cells, d <= max_depth.
StepFunction random_step_function(std::mt19937_64& rng, const RandomStepOptions& opt);

} // namespace mhaar
