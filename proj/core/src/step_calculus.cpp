#include "mhaar/step_calculus.hpp"

#include <cmath>

namespace mhaar {

namespace {

template <class V> Quantity piece_power(const V& v, double q);
template <> Quantity piece_power<Rational>(const Rational& v, double q) { return Quantity(Rational(abs(v))).pow(q); }
template <> Quantity piece_power<double>(const double& v, double q)
{
    if (v == 0.0) return Quantity(Rational(0)).pow(q);
    return Quantity::real(std::pow(std::fabs(v), q));
}

template <class V> Quantity weighted_integral_impl(const Step<V>& f, const Weight& w, double q, const Segment& region)
{
    Quantity total(Rational(0));
    const auto& bp = f.breakpoints();
    const auto& vs = f.values();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (q > 0 && vs[i] == V(0)) continue;
        auto piece = intersect(Segment::closed(bp[i], bp[i + 1]), region);
        if (!piece || *piece->length() == 0) continue;
        total += piece_power(vs[i], q) * w.integral(*piece);
    }
    if (q <= 0) {
        // f vanishes outside its support: those parts of the region behave like zero pieces.
        auto add_gap = [&](const std::optional<Segment>& s) {
            if (!s) return;
            auto len = s->length();
            if (len && *len == 0) return;
            total += Quantity(Rational(0)).pow(q) * w.integral(*s);
        };
        if (bp.empty()) {
            add_gap(region);
        } else {
            add_gap(intersect(region, Segment::left_ray(bp.front())));
            add_gap(intersect(region, Segment::right_ray(bp.back())));
        }
    }
    return total;
}

template <class V> Quantity lp_norm_impl(const Step<V>& f, double p, const Weight& w, const Segment& region)
{
    if (!(p >= 1.0)) throw InvalidArgument("lp_norm requires p >= 1");
    return weighted_integral_impl(f, w, p, region).pow(1.0 / p);
}

} // namespace

Rational integrate(const StepFunction& f, const Segment& region) { return f.integrate(region); }

Quantity weighted_integral(const StepFunction& f, const Weight& w, double q, const Segment& region)
{
    return weighted_integral_impl(f, w, q, region);
}

Quantity weighted_integral(const RealStep& f, const Weight& w, double q, const Segment& region)
{
    return weighted_integral_impl(f, w, q, region);
}

Quantity lp_norm(const StepFunction& f, double p, const Weight& w, const Segment& region)
{
    return lp_norm_impl(f, p, w, region);
}

Quantity lp_norm(const RealStep& f, double p, const Weight& w, const Segment& region)
{
    return lp_norm_impl(f, p, w, region);
}

Rational average(const StepFunction& f, const Segment& region) { return f.average(region); }

double ScaledStep::factor() const { return std::pow(static_cast<double>(m), 0.5 * static_cast<double>(half_power)); }

RealStep ScaledStep::to_real() const
{
    double c = factor();
    return base.map([c](const Rational& v) { return v.get_d() * c; });
}

ScaledStep dilate(const StepFunction& f, int m, long N)
{
    ScaledStep out;
    out.m = m;
    Rational scale = m_power(m, -N);
    std::vector<Rational> b;
    b.reserve(f.breakpoints().size());
    for (const auto& x : f.breakpoints()) b.push_back(x * scale);
    StepFunction base(std::move(b), f.values());
    // Fold m^{N/2} into the values whenever it is rational.
    Rational half;
    if (N % 2 == 0) {
        out.base = base.scaled(m_power(m, N / 2));
    } else if (exact_sqrt(Rational(m), half)) {
        out.base = base.scaled(m_power(m, (N - 1) / 2) * half);
    } else {
        out.base = std::move(base);
        out.half_power = N;
    }
    return out;
}

Quantity inner_product(const ScaledStep& a, const ScaledStep& b)
{
    StepFunction prod = StepFunction::combine(a.base, b.base, [](const Rational& x, const Rational& y) { return Rational(x * y); });
    Rational ip = prod.integrate();
    long hp = a.half_power + b.half_power;
    if (hp % 2 == 0) return Quantity(Rational(ip * m_power(a.m, hp / 2)));
    return Quantity::real(ip.get_d() * std::pow(static_cast<double>(a.m), 0.5 * static_cast<double>(hp)));
}

} // namespace mhaar
