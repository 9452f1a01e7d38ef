#pragma once

#include "mhaar/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mhaar {

// [index / m^level, (index + 1) / m^level]; level may be negative.
struct MAdicInterval {
    int m = 2;
    long level = 0;
    std::int64_t index = 0;

    MAdicInterval() = default;
    MAdicInterval(int m_, long level_, std::int64_t index_);

    Rational left() const;
    Rational right() const;
    Rational length() const { return m_power(m, -level); }

    std::vector<MAdicInterval> children() const;
    MAdicInterval parent() const;

    // Level-`lvl` cell containing x under the right-continuous convention.
    static MAdicInterval containing(const Rational& x, long lvl, int m);

    bool contains_closed(const Rational& x) const { return left() <= x && x <= right(); }
    bool contains_interior(const Rational& x) const { return left() < x && x < right(); }

    std::string to_string() const;

    friend bool operator==(const MAdicInterval&, const MAdicInterval&) = default;
};

enum class Relation { Disjoint, Subset, Superset, Equal };

// Throws InvalidArgument for mismatched m.
Relation relation(const MAdicInterval& a, const MAdicInterval& b);
std::string to_string(Relation r);

enum class Side { None, Left, Right };

// A rational point, possibly split into a one-sided copy (xi_l / xi_r), or +-infinity.
class TaggedPoint {
public:
    enum class Kind { Finite, PlusInfinity, MinusInfinity };

    static TaggedPoint finite(const Rational& x, Side side = Side::None);
    static TaggedPoint plus_infinity();
    static TaggedPoint minus_infinity();

    // "a/b", "a/b:l", "a/b:r", "+inf", "-inf".
    static TaggedPoint parse(const std::string& text);

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    const Rational& value() const { return value_; }
    Side side() const { return side_; }

    // Throws InvalidArgument when the value is m-adic and untagged.
    void validate(int m) const;

    std::string to_string() const;

    friend bool operator==(const TaggedPoint&, const TaggedPoint&) = default;

private:
    Kind kind_ = Kind::Finite;
    Rational value_;
    Side side_ = Side::None;
};

// A closed interval or half-line with rational finite endpoints; Lebesgue sets only,
// so open/closed distinctions are irrelevant.
struct Segment {
    Rational lo, hi;
    bool lo_inf = false; // lo = -infinity
    bool hi_inf = false; // hi = +infinity

    static Segment closed(const Rational& a, const Rational& b) { return {a, b, false, false}; }
    static Segment from(const MAdicInterval& c) { return {c.left(), c.right(), false, false}; }
    static Segment right_ray(const Rational& a) { return {a, Rational(0), false, true}; }
    static Segment left_ray(const Rational& b) { return {Rational(0), b, true, false}; }
    static Segment line() { return {Rational(0), Rational(0), true, true}; }

    bool bounded() const { return !lo_inf && !hi_inf; }
    bool empty() const { return bounded() && hi <= lo; }
    std::optional<Rational> length() const;
    bool contains(const Rational& x) const;
    std::string to_string() const;
};

std::optional<Segment> intersect(const Segment& a, const Segment& b);

// Tag-aware membership: Right-tagged y lies in [a, b) style cells, Left-tagged in (a, b],
// untagged y in the interior.
bool tagged_in(const TaggedPoint& y, const Rational& a, const Rational& b);
bool tagged_in(const TaggedPoint& y, const MAdicInterval& c);

// Level-j chain cell Delta_j(y) for finite y.
MAdicInterval chain_cell(const TaggedPoint& y, long j, int m);

// Delta_j(y) as a region; for +infinity: [m^j, +inf), for -infinity: (-inf, -m^j], j >= 0.
Segment chain_interval(const TaggedPoint& y, long j, int m);

struct IntervalChain {
    TaggedPoint point;
    int m;
    long first, last;
    std::vector<Segment> entries; // entries[i] = Delta_{first + i}(point)
};

IntervalChain build_chain(const TaggedPoint& y, long first, long last, int m);

} // namespace mhaar
