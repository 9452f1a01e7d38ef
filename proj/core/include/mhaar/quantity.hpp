#pragma once

#include "mhaar/rational.hpp"

#include <string>

namespace mhaar {

// A nonnegative-or-signed scalar that is either an exact rational, a double,
// or the Divergent marker (+infinity with a name).
class Quantity {
public:
    enum class Kind { Exact, Real, Divergent };

    Quantity() : kind_(Kind::Exact), q_(0) {}
    Quantity(const Rational& q) : kind_(Kind::Exact), q_(q) {} // NOLINT
    static Quantity exact(const Rational& q) { return Quantity(q); }
    static Quantity real(double d);
    static Quantity divergent();

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ == Kind::Exact; }
    bool is_divergent() const { return kind_ == Kind::Divergent; }
    bool is_finite() const { return kind_ != Kind::Divergent; }

    const Rational& rational() const;
    double value() const; // +inf for Divergent

    bool is_zero() const;

    friend Quantity operator+(const Quantity& a, const Quantity& b);
    friend Quantity operator-(const Quantity& a, const Quantity& b);
    friend Quantity operator*(const Quantity& a, const Quantity& b);
    friend Quantity operator/(const Quantity& a, const Quantity& b);
    Quantity& operator+=(const Quantity& b) { return *this = *this + b; }
    Quantity& operator*=(const Quantity& b) { return *this = *this * b; }

    // this^e; exact for integer e. Divergent^e is Divergent for e > 0, 1 for e = 0, 0 for e < 0.
    Quantity pow(double e) const;

    std::string to_string() const;

private:
    Kind kind_;
    Rational q_;
    double d_ = 0.0;
};

// Total order with Divergent as +infinity; returns -1, 0, 1.
int compare(const Quantity& a, const Quantity& b);
inline bool operator<(const Quantity& a, const Quantity& b) { return compare(a, b) < 0; }
inline bool operator<=(const Quantity& a, const Quantity& b) { return compare(a, b) <= 0; }
Quantity max(const Quantity& a, const Quantity& b);

bool is_integer_exponent(double e);

} // namespace mhaar
