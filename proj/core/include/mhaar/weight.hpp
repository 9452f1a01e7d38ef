#pragma once

#include "mhaar/lattice.hpp"
#include "mhaar/quantity.hpp"
#include "mhaar/step.hpp"

#include <functional>
#include <string>
#include <vector>

namespace mhaar {

struct PowerFactor {
    Rational c;
    double r;
};

// Nonnegative weight: coefficient * (1 | prod |x - c_i|^{r_i} | base(x)^power).
// Step weights vanish outside the support of their base step function.
class Weight {
public:
    enum class Kind { Unit, Power, Step };

    static Weight unit();
    static Weight power(const Rational& c, double r);
    static Weight powers(std::vector<PowerFactor> factors);
    static Weight step(StepFunction base);

    // "unit" | "power:c=<rat>:r=<real>" | "powers:c=..:r=..;c=..:r=.." | "step:<path>".
    // The loader resolves step paths into step functions.
    static Weight parse(const std::string& spec,
                        const std::function<StepFunction(const std::string&)>& step_loader = {});

    Kind kind() const { return kind_; }
    const std::vector<PowerFactor>& factors() const { return factors_; }
    const StepFunction& base() const { return base_; }
    double step_power() const { return step_power_; }
    const Quantity& coefficient() const { return coef_; }
    double total_exponent() const;

    Weight pow(double s) const;        // w^s
    Weight dilate(int m, long N) const; // x -> w(m^N x)
    Weight reflect() const;            // x -> w(-x)

    double operator()(double x) const;
    Quantity at(const Rational& x) const;

    // Integral over a segment: exact when possible, Divergent when infinite.
    Quantity integral(const Segment& region) const;

    // Essential infimum over a segment (used by the p = 1 conditions).
    Quantity ess_inf(const Segment& region) const;

    // Exact rational integrals on rational segments (Unit, Step with integer power,
    // Power with integer exponents).
    bool exact_integrals() const;

    std::string spec() const;
    std::string describe() const;

private:
    Kind kind_ = Kind::Unit;
    std::vector<PowerFactor> factors_;
    StepFunction base_;
    double step_power_ = 1.0;
    Quantity coef_ = Quantity(Rational(1));
};

// Integral of t^r over [u, v] with 0 <= u <= v (v may be +infinity).
Quantity power_integral(double r, const Rational& u, const Rational& v, bool v_infinite);

struct Domain {
    enum class Kind { UnitInterval, HalfLinePos, HalfLineNeg, RealLine, Interval };
    Kind kind = Kind::UnitInterval;
    Rational a, b;

    static Domain parse(const std::string& text); // unit | pos | neg | real | a/b,c/d
    Segment segment() const;
    std::string to_string() const;
};

} // namespace mhaar
