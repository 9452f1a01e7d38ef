#include "mhaar/weight.hpp"

#include "mhaar/errors.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

namespace mhaar {

namespace {

std::string fmt_real(double r)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", r);
    return buf;
}

double parse_real(const std::string& s)
{
    if (s.find('/') != std::string::npos) return parse_rational(s).get_d();
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InvalidArgument("malformed real '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw InvalidArgument("malformed real '" + s + "'");
    return v;
}

// Weight specs accept plain integers for centres ("c=0") as well as a/b.
Rational parse_center(const std::string& s)
{
    if (s.find('/') == std::string::npos) return parse_rational(s + "/1");
    return parse_rational(s);
}

PowerFactor parse_factor(const std::string& body)
{
    // c=<rat>:r=<real>
    auto colon = body.find(':');
    if (colon == std::string::npos || body.compare(0, 2, "c=") != 0 || body.compare(colon + 1, 2, "r=") != 0)
        throw InvalidArgument("malformed power factor '" + body + "': expected c=<rat>:r=<real>");
    return {parse_center(body.substr(2, colon - 2)), parse_real(body.substr(colon + 3))};
}

std::vector<PowerFactor> merge_factors(std::vector<PowerFactor> fs)
{
    std::map<Rational, double> by_center;
    for (const auto& f : fs) by_center[f.c] += f.r;
    std::vector<PowerFactor> out;
    for (const auto& [c, r] : by_center)
        if (r != 0.0) out.push_back({c, r});
    return out;
}

double qd(const Rational& q) { return q.get_d(); }

// |x - c|^r products evaluated in double.
double power_product(const std::vector<PowerFactor>& fs, double x)
{
    double v = 1.0;
    for (const auto& f : fs) v *= std::pow(std::fabs(x - qd(f.c)), f.r);
    return v;
}

Quantity single_power_integral(const PowerFactor& f, const Segment& seg)
{
    Quantity total(Rational(0));
    // Left of c: t = c - x ranges over [c - min(hi, c), c - lo].
    if (seg.lo_inf || seg.lo < f.c) {
        Rational top = seg.hi_inf ? f.c : (seg.hi < f.c ? seg.hi : f.c);
        Rational u = f.c - top;
        bool v_inf = seg.lo_inf;
        Rational v = v_inf ? Rational(0) : Rational(f.c - seg.lo);
        if (v_inf || u < v) total += power_integral(f.r, u, v, v_inf);
    }
    // Right of c: t = x - c over [max(lo, c) - c, hi - c].
    if (seg.hi_inf || seg.hi > f.c) {
        Rational bottom = seg.lo_inf ? f.c : (seg.lo > f.c ? seg.lo : f.c);
        Rational u = bottom - f.c;
        bool v_inf = seg.hi_inf;
        Rational v = v_inf ? Rational(0) : Rational(seg.hi - f.c);
        if (v_inf || u < v) total += power_integral(f.r, u, v, v_inf);
    }
    return total;
}

Quantity multi_power_integral(const std::vector<PowerFactor>& fs, const Segment& seg)
{
    double R = 0;
    for (const auto& f : fs) R += f.r;
    if (!seg.bounded() && R >= -1.0) return Quantity::divergent();
    for (const auto& f : fs)
        if (f.r <= -1.0 && seg.contains(f.c)) return Quantity::divergent();

    std::vector<Rational> cuts;
    for (const auto& f : fs)
        if ((seg.lo_inf || seg.lo < f.c) && (seg.hi_inf || f.c < seg.hi)) cuts.push_back(f.c);
    std::sort(cuts.begin(), cuts.end());

    auto integrand = [&](double x) { return power_product(fs, x); };
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    double total = 0.0;

    std::vector<Rational> pts;
    if (!seg.lo_inf) pts.push_back(seg.lo);
    pts.insert(pts.end(), cuts.begin(), cuts.end());
    if (!seg.hi_inf) pts.push_back(seg.hi);

    if (seg.lo_inf) {
        double b = qd(pts.front());
        total += es.integrate([&](double t) { return integrand(b - t); }, 0.0, std::numeric_limits<double>::infinity());
    }
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double a = qd(pts[i]), b = qd(pts[i + 1]);
        // Integrate in a local variable so endpoint singularities sit at the quadrature ends.
        double h = b - a;
        total += h * ts.integrate([&](double s) { return integrand(a + h * s); }, 0.0, 1.0);
    }
    if (seg.hi_inf) {
        double a = qd(pts.back());
        total += es.integrate([&](double t) { return integrand(a + t); }, 0.0, std::numeric_limits<double>::infinity());
    }
    return Quantity::real(total);
}

} // namespace

Quantity power_integral(double r, const Rational& u, const Rational& v, bool v_infinite)
{
    if (u == 0 && r <= -1.0) return Quantity::divergent();
    if (v_infinite && r >= -1.0) return Quantity::divergent();
    if (!v_infinite && v <= u) return Quantity(Rational(0));
    if (r == -1.0) return Quantity::real(std::log1p(Rational((v - u) / u).get_d()));
    double a = r + 1.0;
    if (is_integer_exponent(r)) {
        long ai = static_cast<long>(a);
        Rational top = v_infinite ? Rational(0) : rpow(v, ai);
        Rational bottom = u == 0 ? Rational(0) : rpow(u, ai);
        return Quantity(Rational((top - bottom) / ai));
    }
    if (v_infinite) return Quantity::real(-std::pow(u.get_d(), a) / a);
    if (u == 0) return Quantity::real(std::pow(v.get_d(), a) / a);
    // v^a - u^a = u^a expm1(a log1p((v-u)/u)), with the ratio formed exactly.
    double ratio = Rational((v - u) / u).get_d();
    return Quantity::real(std::pow(u.get_d(), a) * std::expm1(a * std::log1p(ratio)) / a);
}

Weight Weight::unit() { return Weight(); }

Weight Weight::power(const Rational& c, double r) { return powers({{c, r}}); }

Weight Weight::powers(std::vector<PowerFactor> factors)
{
    for (const auto& f : factors)
        if (!std::isfinite(f.r)) throw InvalidArgument("power exponent must be finite");
    Weight w;
    w.factors_ = merge_factors(std::move(factors));
    w.kind_ = w.factors_.empty() ? Kind::Unit : Kind::Power;
    return w;
}

Weight Weight::step(StepFunction base)
{
    for (const auto& v : base.values())
        if (v < 0) throw InvalidArgument("step weight values must be nonnegative");
    Weight w;
    w.kind_ = Kind::Step;
    w.base_ = std::move(base);
    return w;
}

Weight Weight::parse(const std::string& spec, const std::function<StepFunction(const std::string&)>& step_loader)
{
    if (spec == "unit") return unit();
    if (spec.rfind("power:", 0) == 0) return powers({parse_factor(spec.substr(6))});
    if (spec.rfind("powers:", 0) == 0) {
        std::vector<PowerFactor> fs;
        std::stringstream ss(spec.substr(7));
        std::string part;
        while (std::getline(ss, part, ';')) fs.push_back(parse_factor(part));
        if (fs.empty()) throw InvalidArgument("empty powers weight spec");
        return powers(std::move(fs));
    }
    if (spec.rfind("step:", 0) == 0) {
        if (!step_loader) throw InvalidArgument("step weights need a loader");
        return step(step_loader(spec.substr(5)));
    }
    throw InvalidArgument("unknown weight spec '" + spec + "'");
}

double Weight::total_exponent() const
{
    double R = 0;
    for (const auto& f : factors_) R += f.r;
    return R;
}

Weight Weight::pow(double s) const
{
    Weight w = *this;
    w.coef_ = coef_.pow(s);
    switch (kind_) {
    case Kind::Unit: break;
    case Kind::Power:
        for (auto& f : w.factors_) f.r *= s;
        if (s == 0) {
            w.factors_.clear();
            w.kind_ = Kind::Unit;
        }
        break;
    case Kind::Step: w.step_power_ *= s; break;
    }
    return w;
}

Weight Weight::dilate(int m, long N) const
{
    Weight w = *this;
    Rational scale = m_power(m, N);
    switch (kind_) {
    case Kind::Unit: break;
    case Kind::Power:
        // |m^N x - c|^r = m^{N r} |x - c m^{-N}|^r
        for (auto& f : w.factors_) {
            w.coef_ *= Quantity(scale).pow(f.r);
            f.c /= scale;
        }
        break;
    case Kind::Step: {
        std::vector<Rational> b;
        for (const auto& x : base_.breakpoints()) b.push_back(x / scale);
        w.base_ = StepFunction(std::move(b), base_.values());
        break;
    }
    }
    return w;
}

Weight Weight::reflect() const
{
    Weight w = *this;
    switch (kind_) {
    case Kind::Unit: break;
    case Kind::Power:
        for (auto& f : w.factors_) f.c = -f.c;
        w.factors_ = merge_factors(w.factors_);
        break;
    case Kind::Step: {
        const auto& bp = base_.breakpoints();
        const auto& vs = base_.values();
        std::vector<Rational> b;
        std::vector<Rational> v;
        for (auto it = bp.rbegin(); it != bp.rend(); ++it) b.push_back(-*it);
        for (auto it = vs.rbegin(); it != vs.rend(); ++it) v.push_back(*it);
        w.base_ = StepFunction(std::move(b), std::move(v));
        break;
    }
    }
    return w;
}

double Weight::operator()(double x) const
{
    double c = coef_.value();
    switch (kind_) {
    case Kind::Unit: return c;
    case Kind::Power: return c * power_product(factors_, x);
    case Kind::Step: {
        // Locate the piece by bisection on the double images of the breakpoints.
        const auto& bp = base_.breakpoints();
        if (bp.empty() || x < qd(bp.front()) || x >= qd(bp.back())) return step_power_ > 0 ? 0.0 : (step_power_ == 0 ? c : std::numeric_limits<double>::infinity());
        std::size_t lo = 0, hi = bp.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (qd(bp[mid]) <= x) lo = mid;
            else hi = mid;
        }
        double v = qd(base_.values()[lo]);
        return c * std::pow(v, step_power_);
    }
    }
    return 0.0;
}

Quantity Weight::at(const Rational& x) const
{
    switch (kind_) {
    case Kind::Unit: return coef_;
    case Kind::Power: {
        Quantity v = coef_;
        for (const auto& f : factors_) v *= Quantity(Rational(abs(x - f.c))).pow(f.r);
        return v;
    }
    case Kind::Step: return coef_ * Quantity(base_(x)).pow(step_power_);
    }
    return Quantity();
}

Quantity Weight::integral(const Segment& region) const
{
    if (region.empty()) return Quantity(Rational(0));
    switch (kind_) {
    case Kind::Unit: {
        auto len = region.length();
        if (!len) return Quantity::divergent();
        return coef_ * Quantity(*len);
    }
    case Kind::Power:
        if (factors_.size() == 1) return coef_ * single_power_integral(factors_.front(), region);
        return coef_ * multi_power_integral(factors_, region);
    case Kind::Step: {
        Quantity total(Rational(0));
        const auto& bp = base_.breakpoints();
        const auto& vs = base_.values();
        for (std::size_t i = 0; i < vs.size(); ++i) {
            auto piece = intersect(Segment::closed(bp[i], bp[i + 1]), region);
            if (!piece) continue;
            total += Quantity(vs[i]).pow(step_power_) * Quantity(*piece->length());
        }
        // Outside the base support the weight is 0, so w^s is 0, 1 or infinite there.
        Quantity outside(Rational(0));
        auto outside_part = [&](const std::optional<Segment>& s) {
            if (!s) return;
            auto len = s->length();
            if (len && *len == 0) return;
            outside += Quantity(Rational(0)).pow(step_power_) * (len ? Quantity(*len) : Quantity::divergent());
        };
        if (bp.empty()) {
            outside_part(region);
        } else {
            outside_part(intersect(region, Segment::left_ray(bp.front())));
            outside_part(intersect(region, Segment::right_ray(bp.back())));
        }
        if (step_power_ > 0) outside = Quantity(Rational(0));
        return coef_ * (total + outside);
    }
    }
    return Quantity();
}

Quantity Weight::ess_inf(const Segment& region) const
{
    switch (kind_) {
    case Kind::Unit: return coef_;
    case Kind::Power: {
        if (factors_.size() == 1) {
            const auto& f = factors_.front();
            if (f.r > 0) {
                if (region.contains(f.c)) return Quantity(Rational(0));
                Rational t = (!region.hi_inf && region.hi < f.c) ? Rational(f.c - region.hi) : Rational(region.lo - f.c);
                return coef_ * Quantity(t).pow(f.r);
            }
            if (!region.bounded()) return Quantity(Rational(0));
            Rational t1 = abs(region.lo - f.c), t2 = abs(region.hi - f.c);
            return coef_ * Quantity(t1 > t2 ? t1 : t2).pow(f.r);
        }
        for (const auto& f : factors_)
            if (f.r > 0 && region.contains(f.c)) return Quantity(Rational(0));
        if (!region.bounded()) return total_exponent() < 0 ? Quantity(Rational(0)) : Quantity::real(0.0);
        double a = qd(region.lo), b = qd(region.hi), best = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 2000; ++i) best = std::min(best, power_product(factors_, a + (b - a) * i / 2000.0));
        return coef_ * Quantity::real(best);
    }
    case Kind::Step: {
        Quantity best = Quantity::divergent();
        const auto& bp = base_.breakpoints();
        bool covered_lo = !region.lo_inf && !bp.empty() && bp.front() <= region.lo;
        bool covered_hi = !region.hi_inf && !bp.empty() && region.hi <= bp.back();
        if (!covered_lo || !covered_hi) best = Quantity(Rational(0)).pow(step_power_);
        for (std::size_t i = 0; i < base_.values().size(); ++i) {
            auto piece = intersect(Segment::closed(bp[i], bp[i + 1]), region);
            if (!piece) continue;
            Quantity v = Quantity(base_.values()[i]).pow(step_power_);
            if (compare(v, best) < 0) best = v;
        }
        return coef_ * best;
    }
    }
    return Quantity();
}

bool Weight::exact_integrals() const
{
    if (!coef_.is_exact()) return false;
    switch (kind_) {
    case Kind::Unit: return true;
    case Kind::Power:
        return factors_.size() == 1 && is_integer_exponent(factors_.front().r) && factors_.front().r != -1.0;
    case Kind::Step: return is_integer_exponent(step_power_);
    }
    return false;
}

std::string Weight::spec() const
{
    std::string coef = (coef_.is_exact() && coef_.rational() == 1) ? "" : "coef=" + coef_.to_string() + ";";
    switch (kind_) {
    case Kind::Unit: return coef.empty() ? "unit" : "unit;" + coef;
    case Kind::Power: {
        std::string s = factors_.size() == 1 ? "power:" : "powers:";
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i) s += ";";
            s += "c=" + to_string(factors_[i].c) + ":r=" + fmt_real(factors_[i].r);
        }
        return coef.empty() ? s : s + ";" + coef;
    }
    case Kind::Step: return "step:<inline>" + std::string(step_power_ == 1.0 ? "" : "^" + fmt_real(step_power_));
    }
    return {};
}

std::string Weight::describe() const { return spec(); }

Domain Domain::parse(const std::string& text)
{
    Domain d;
    if (text == "unit") d.kind = Kind::UnitInterval;
    else if (text == "pos") d.kind = Kind::HalfLinePos;
    else if (text == "neg") d.kind = Kind::HalfLineNeg;
    else if (text == "real") d.kind = Kind::RealLine;
    else {
        auto comma = text.find(',');
        if (comma == std::string::npos)
            throw InvalidArgument("unknown region '" + text + "': expected unit|pos|neg|real|a/b,c/d");
        d.kind = Kind::Interval;
        d.a = parse_rational(text.substr(0, comma));
        d.b = parse_rational(text.substr(comma + 1));
        if (!(d.a < d.b)) throw InvalidArgument("region endpoints must satisfy a < b");
    }
    return d;
}

Segment Domain::segment() const
{
    switch (kind) {
    case Kind::UnitInterval: return Segment::closed(0, 1);
    case Kind::HalfLinePos: return Segment::right_ray(0);
    case Kind::HalfLineNeg: return Segment::left_ray(0);
    case Kind::RealLine: return Segment::line();
    case Kind::Interval: return Segment::closed(a, b);
    }
    return Segment::line();
}

std::string Domain::to_string() const
{
    switch (kind) {
    case Kind::UnitInterval: return "unit";
    case Kind::HalfLinePos: return "pos";
    case Kind::HalfLineNeg: return "neg";
    case Kind::RealLine: return "real";
    case Kind::Interval: return mhaar::to_string(a) + "," + mhaar::to_string(b);
    }
    return {};
}

} // namespace mhaar
