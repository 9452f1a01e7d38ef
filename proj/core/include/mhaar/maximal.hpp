#pragma once

#include "mhaar/quantity.hpp"
#include "mhaar/step.hpp"
#include "mhaar/weight.hpp"

#include <optional>
#include <vector>

namespace mhaar {

// M f (or the weighted M_w f) as an exact step function on [-m^L, m^L] together
// with the closed-form tails beyond it: on [m^{k-1}, m^k), k > L, the value is
// (mass of the right half) / w([0, m^k]); symmetrically on the left.
// With `unit_only` the lattice is restricted to the subcells of [0, 1] and there are no tails.
struct MaximalFunction {
    int m = 2;
    Weight weight = Weight::unit();
    bool unit_only = false;
    long L = 0;
    bool exact = true;
    StepFunction body;  // valid when exact
    RealStep body_real; // always valid
    std::vector<Rational> piece_bp;
    std::vector<Quantity> piece_val;
    Quantity pos_mass, neg_mass; // integral of |f| w over each half

    Quantity value(const Rational& x) const;
    Quantity tail_value(long k, bool positive) const;
};

MaximalFunction maximal_function(const StepFunction& f, int m, bool unit_only = false);
MaximalFunction weighted_maximal(const StepFunction& f, const Weight& w, int m, bool unit_only = false);

// w-measure of {M f > lambda}, tails included.
Quantity level_set_weight(const MaximalFunction& M, const Rational& lambda);
// Integral of (M f)^p w, tails included (geometric closed form for the unit weight).
Quantity maximal_lp_integral(const MaximalFunction& M, double p, const Weight& w);

struct Weak11Row {
    Rational lambda;
    Quantity lhs, rhs;
    bool pass = false;
};
struct Weak11Report {
    std::vector<Weak11Row> rows;
    bool pass = true;
};
Weak11Report weak11_verify(const StepFunction& f, const Weight& w, int m, const std::vector<Rational>& lambdas);

struct StrongLpReport {
    double p = 2;
    Quantity lhs, rhs, ratio;
    double constant = 0; // 2^p p/(p-1)
    bool pass = false;
};
StrongLpReport strong_lp_verify(const StepFunction& f, const Weight& w, int m, double p);

struct EquivalenceReport {
    double p = 2;
    int trials = 0;
    Quantity max_ratio;               // sup over random f of int (Mf)^p w / int |f|^p w on [0,1]
    Quantity extremal_lower_bound;    // sup of mp_constant over cells of [0,1] up to depth
    std::optional<Segment> extremal_witness;
    std::vector<Quantity> truncated_lower_bounds; // f = w^{-1/(p-1)} on [m^{-j}, 1], j = 1..depth
    bool mp_holds = false;
    bool unbounded_certified = false;
    bool consistent = false;
};
EquivalenceReport weighted_lp_equivalence(const Weight& w, double p, int m, int trials, std::uint64_t seed, long depth = 8);

} // namespace mhaar
