#include "mhaar/quantity.hpp"

#include "mhaar/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace mhaar {

Quantity Quantity::real(double d)
{
    Quantity q;
    if (std::isinf(d) && d > 0) return divergent();
    q.kind_ = Kind::Real;
    q.d_ = d;
    return q;
}

Quantity Quantity::divergent()
{
    Quantity q;
    q.kind_ = Kind::Divergent;
    return q;
}

const Rational& Quantity::rational() const
{
    if (kind_ != Kind::Exact) throw InvalidArgument("quantity is not exact");
    return q_;
}

double Quantity::value() const
{
    switch (kind_) {
    case Kind::Exact: return q_.get_d();
    case Kind::Real: return d_;
    case Kind::Divergent: return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

bool Quantity::is_zero() const
{
    if (kind_ == Kind::Exact) return q_ == 0;
    if (kind_ == Kind::Real) return d_ == 0.0;
    return false;
}

Quantity operator+(const Quantity& a, const Quantity& b)
{
    if (a.is_divergent() || b.is_divergent()) return Quantity::divergent();
    if (a.is_exact() && b.is_exact()) return Quantity(Rational(a.q_ + b.q_));
    return Quantity::real(a.value() + b.value());
}

Quantity operator-(const Quantity& a, const Quantity& b)
{
    if (a.is_divergent() || b.is_divergent()) return Quantity::divergent();
    if (a.is_exact() && b.is_exact()) return Quantity(Rational(a.q_ - b.q_));
    return Quantity::real(a.value() - b.value());
}

// 0 * Divergent stays Divergent: the checkers read it as "condition not finite".
Quantity operator*(const Quantity& a, const Quantity& b)
{
    if (a.is_divergent() || b.is_divergent()) return Quantity::divergent();
    if (a.is_exact() && b.is_exact()) return Quantity(Rational(a.q_ * b.q_));
    return Quantity::real(a.value() * b.value());
}

Quantity operator/(const Quantity& a, const Quantity& b)
{
    if (a.is_divergent()) return Quantity::divergent();
    if (b.is_divergent()) return Quantity(Rational(0));
    if (b.is_zero()) return Quantity::divergent();
    if (a.is_exact() && b.is_exact()) return Quantity(Rational(a.q_ / b.q_));
    return Quantity::real(a.value() / b.value());
}

bool is_integer_exponent(double e)
{
    return std::isfinite(e) && std::fabs(e) < 1024 && e == std::round(e);
}

Quantity Quantity::pow(double e) const
{
    if (is_divergent()) {
        if (e > 0) return divergent();
        if (e == 0) return Quantity(Rational(1));
        return Quantity(Rational(0));
    }
    if (e == 0) return Quantity(Rational(1));
    if (is_zero()) {
        if (e > 0) return Quantity(Rational(0));
        return divergent();
    }
    if (is_exact() && is_integer_exponent(e)) return Quantity(rpow(q_, static_cast<long>(e)));
    return real(std::pow(value(), e));
}

std::string Quantity::to_string() const
{
    switch (kind_) {
    case Kind::Exact: return mhaar::to_string(q_);
    case Kind::Real: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", d_);
        return buf;
    }
    case Kind::Divergent: return "Divergent";
    }
    return {};
}

int compare(const Quantity& a, const Quantity& b)
{
    if (a.is_divergent()) return b.is_divergent() ? 0 : 1;
    if (b.is_divergent()) return -1;
    if (a.is_exact() && b.is_exact()) return cmp(a.rational(), b.rational()) < 0 ? -1 : (a.rational() == b.rational() ? 0 : 1);
    double x = a.value(), y = b.value();
    return x < y ? -1 : (x > y ? 1 : 0);
}

Quantity max(const Quantity& a, const Quantity& b) { return compare(a, b) >= 0 ? a : b; }

} // namespace mhaar
