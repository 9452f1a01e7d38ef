#pragma once

#include "mhaar/quantity.hpp"
#include "mhaar/step.hpp"
#include "mhaar/weight.hpp"

namespace mhaar {

Rational integrate(const StepFunction& f, const Segment& region);

// Integral of |f|^q w over region. Pieces where f = 0 contribute 0 (q > 0),
// the weight mass (q = 0), or Divergent (q < 0).
Quantity weighted_integral(const StepFunction& f, const Weight& w, double q, const Segment& region);
Quantity weighted_integral(const RealStep& f, const Weight& w, double q, const Segment& region);

// (integral of |f|^p w)^{1/p}; p < 1 is rejected.
Quantity lp_norm(const StepFunction& f, double p, const Weight& w, const Segment& region);
Quantity lp_norm(const RealStep& f, double p, const Weight& w, const Segment& region);

Rational average(const StepFunction& f, const Segment& region);

// m^{half_power / 2} * base, kept symbolic when the factor is irrational.
struct ScaledStep {
    int m = 2;
    long half_power = 0;
    StepFunction base;

    double factor() const;
    RealStep to_real() const;
};

// D_N f(x) = m^{N/2} f(m^N x).
ScaledStep dilate(const StepFunction& f, int m, long N);

// Inner product of two scaled steps, exact when the combined factor is rational.
Quantity inner_product(const ScaledStep& a, const ScaledStep& b);

} // namespace mhaar
