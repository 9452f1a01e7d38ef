#pragma once

#include "mhaar/errors.hpp"
#include "mhaar/lattice.hpp"
#include "mhaar/rational.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace mhaar {

// Scalar helpers shared by exact (Rational) and floating (double) step functions.
inline double as_double(const Rational& q) { return q.get_d(); }
inline double as_double(double d) { return d; }
inline Rational abs_value(const Rational& q) { return abs(q); }
inline double abs_value(double d) { return std::fabs(d); }

template <class V> V from_rational(const Rational& q);
template <> inline Rational from_rational<Rational>(const Rational& q) { return q; }
template <> inline double from_rational<double>(const Rational& q) { return q.get_d(); }

// Piecewise-constant function: value vals[i] on [bp[i], bp[i+1]), zero outside
// [bp.front(), bp.back()). Right-continuous everywhere.
template <class V> class Step {
public:
    Step() = default;
    Step(std::vector<Rational> breakpoints, std::vector<V> values)
        : bp_(std::move(breakpoints)), vals_(std::move(values))
    {
        if (bp_.empty() && vals_.empty()) return;
        if (bp_.size() != vals_.size() + 1)
            throw InvalidArgument("step function needs one more breakpoint than values");
        for (std::size_t i = 1; i < bp_.size(); ++i)
            if (!(bp_[i - 1] < bp_[i])) throw InvalidArgument("breakpoints must be strictly increasing");
    }

    static Step constant(const V& c, const Rational& a, const Rational& b) { return Step({a, b}, {c}); }
    static Step indicator(const Rational& a, const Rational& b) { return Step({a, b}, {V(1)}); }

    const std::vector<Rational>& breakpoints() const { return bp_; }
    const std::vector<V>& values() const { return vals_; }
    std::size_t pieces() const { return vals_.size(); }
    bool is_zero() const
    {
        return std::all_of(vals_.begin(), vals_.end(), [](const V& v) { return v == V(0); });
    }

    Rational support_lo() const { return bp_.empty() ? Rational(0) : bp_.front(); }
    Rational support_hi() const { return bp_.empty() ? Rational(0) : bp_.back(); }

    V operator()(const Rational& x) const
    {
        if (bp_.empty() || x < bp_.front() || !(x < bp_.back())) return V(0);
        auto it = std::upper_bound(bp_.begin(), bp_.end(), x);
        return vals_[static_cast<std::size_t>(it - bp_.begin()) - 1];
    }

    // Left limit at x.
    V left_limit(const Rational& x) const
    {
        if (bp_.empty() || !(bp_.front() < x) || x > bp_.back()) return V(0);
        auto it = std::lower_bound(bp_.begin(), bp_.end(), x);
        return vals_[static_cast<std::size_t>(it - bp_.begin()) - 1];
    }

    // Merge equal neighbours and trim zero end pieces.
    Step canonical() const
    {
        std::vector<Rational> b;
        std::vector<V> v;
        for (std::size_t i = 0; i < vals_.size(); ++i) {
            if (!v.empty() && v.back() == vals_[i]) {
                b.back() = bp_[i + 1];
                continue;
            }
            if (b.empty()) b.push_back(bp_[i]);
            v.push_back(vals_[i]);
            b.push_back(bp_[i + 1]);
        }
        std::size_t lo = 0, hi = v.size();
        while (lo < hi && v[lo] == V(0)) ++lo;
        while (hi > lo && v[hi - 1] == V(0)) --hi;
        if (lo == hi) return Step();
        return Step(std::vector<Rational>(b.begin() + static_cast<long>(lo), b.begin() + static_cast<long>(hi) + 1),
                    std::vector<V>(v.begin() + static_cast<long>(lo), v.begin() + static_cast<long>(hi)));
    }

    template <class F> auto map(F fn) const -> Step<decltype(fn(std::declval<V>()))>
    {
        using W = decltype(fn(std::declval<V>()));
        std::vector<W> out;
        out.reserve(vals_.size());
        for (const auto& v : vals_) out.push_back(fn(v));
        return Step<W>(bp_, std::move(out));
    }

    Step abs() const
    {
        return map([](const V& v) { return V(abs_value(v)); });
    }

    Step scaled(const V& c) const
    {
        return map([&](const V& v) { return V(v * c); });
    }

    // Union breakpoint grid; fn(a, b) applied pointwise on each elementary piece.
    template <class F> static Step combine(const Step& f, const Step& g, F fn)
    {
        std::vector<Rational> grid;
        grid.reserve(f.bp_.size() + g.bp_.size());
        std::merge(f.bp_.begin(), f.bp_.end(), g.bp_.begin(), g.bp_.end(), std::back_inserter(grid));
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        if (grid.size() < 2) return Step();
        std::vector<V> vals;
        vals.reserve(grid.size() - 1);
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) vals.push_back(fn(f(grid[i]), g(grid[i])));
        return Step(std::move(grid), std::move(vals));
    }

    friend Step operator+(const Step& f, const Step& g)
    {
        return combine(f, g, [](const V& a, const V& b) { return V(a + b); });
    }
    friend Step operator-(const Step& f, const Step& g)
    {
        return combine(f, g, [](const V& a, const V& b) { return V(a - b); });
    }

    // Same function (after canonicalisation).
    friend bool operator==(const Step& f, const Step& g)
    {
        Step a = f.canonical(), b = g.canonical();
        return a.bp_ == b.bp_ && a.vals_ == b.vals_;
    }

    // Exact integral over a segment.
    V integrate(const Segment& region) const
    {
        V total(0);
        for (std::size_t i = 0; i < vals_.size(); ++i) {
            auto piece = intersect(Segment::closed(bp_[i], bp_[i + 1]), region);
            if (!piece || vals_[i] == V(0)) continue;
            total += vals_[i] * from_rational<V>(*piece->length());
        }
        return total;
    }
    V integrate() const { return integrate(Segment::line()); }

    V average(const Segment& region) const
    {
        auto len = region.length();
        if (!len) throw InvalidArgument("average over an unbounded region");
        if (*len == 0) throw InvalidArgument("average over a null region");
        return integrate(region) / from_rational<V>(*len);
    }

    // Lebesgue measure of {x : pred(f(x))} among the support pieces.
    template <class P> Rational measure_where(P pred) const
    {
        Rational total(0);
        for (std::size_t i = 0; i < vals_.size(); ++i)
            if (pred(vals_[i])) total += bp_[i + 1] - bp_[i];
        return total;
    }

    // Smallest k with every breakpoint in m^{-k} Z; throws for non-m-adic breakpoints.
    long depth(int m) const
    {
        long d = 0;
        for (const auto& b : bp_) d = std::max(d, madic_depth(b, m));
        return d;
    }

    // Values on the level-`level` cells covering [a, b) (a, b on the grid).
    std::vector<V> sample_cells(int m, long level, const Rational& a, const Rational& b) const
    {
        Rational h = m_power(m, -level);
        std::vector<V> out;
        for (Rational x = a; x < b; x += h) out.push_back((*this)(x));
        return out;
    }

    // Grid step function with values vals on consecutive level-`level` cells from `first`.
    static Step from_grid(int m, long level, std::int64_t first, const std::vector<V>& vals)
    {
        if (vals.empty()) return Step();
        Rational h = m_power(m, -level);
        std::vector<Rational> b;
        b.reserve(vals.size() + 1);
        Rational x = Rational(Integer(static_cast<long>(first))) * h;
        for (std::size_t i = 0; i <= vals.size(); ++i) {
            b.push_back(x);
            x += h;
        }
        return Step(std::move(b), vals).canonical();
    }

private:
    std::vector<Rational> bp_;
    std::vector<V> vals_;
};

using StepFunction = Step<Rational>;
using RealStep = Step<double>;

inline RealStep to_real(const StepFunction& f)
{
    return f.map([](const Rational& q) { return q.get_d(); });
}

// Restriction of f to a segment.
template <class V> Step<V> restrict_to(const Step<V>& f, const Segment& region)
{
    std::vector<Rational> b;
    std::vector<V> v;
    const auto& bp = f.breakpoints();
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        auto piece = intersect(Segment::closed(bp[i], bp[i + 1]), region);
        if (!piece) continue;
        if (!b.empty() && b.back() != piece->lo) {
            b.push_back(piece->lo);
            v.push_back(V(0));
        }
        if (b.empty()) b.push_back(piece->lo);
        b.push_back(piece->hi);
        v.push_back(f.values()[i]);
    }
    return Step<V>(std::move(b), std::move(v)).canonical();
}

} // namespace mhaar
