#include "mhaar/lattice.hpp"

#include "mhaar/errors.hpp"

namespace mhaar {

MAdicInterval::MAdicInterval(int m_, long level_, std::int64_t index_) : m(m_), level(level_), index(index_)
{
    if (m < 2) throw InvalidArgument("m must be >= 2");
}

Rational MAdicInterval::left() const { return Rational(Integer(static_cast<long>(index))) * m_power(m, -level); }
Rational MAdicInterval::right() const { return Rational(Integer(static_cast<long>(index + 1))) * m_power(m, -level); }

std::vector<MAdicInterval> MAdicInterval::children() const
{
    std::vector<MAdicInterval> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int s = 0; s < m; ++s) out.emplace_back(m, level + 1, index * m + s);
    return out;
}

MAdicInterval MAdicInterval::parent() const
{
    std::int64_t q = index / m;
    if (index % m != 0 && index < 0) --q;
    return {m, level - 1, q};
}

MAdicInterval MAdicInterval::containing(const Rational& x, long lvl, int m)
{
    Rational t = x * m_power(m, lvl);
    return {m, lvl, to_int64(floor(t))};
}

std::string MAdicInterval::to_string() const
{
    return "[" + mhaar::to_string(left()) + "," + mhaar::to_string(right()) + "]";
}

Relation relation(const MAdicInterval& a, const MAdicInterval& b)
{
    if (a.m != b.m) throw InvalidArgument("relation: intervals have different m");
    if (a.level == b.level) return a.index == b.index ? Relation::Equal : Relation::Disjoint;
    const MAdicInterval& fine = a.level > b.level ? a : b;
    const MAdicInterval& coarse = a.level > b.level ? b : a;
    MAdicInterval up = MAdicInterval::containing(fine.left(), coarse.level, fine.m);
    if (up.index != coarse.index) return Relation::Disjoint;
    return a.level > b.level ? Relation::Subset : Relation::Superset;
}

std::string to_string(Relation r)
{
    switch (r) {
    case Relation::Disjoint: return "disjoint";
    case Relation::Subset: return "subset";
    case Relation::Superset: return "superset";
    case Relation::Equal: return "equal";
    }
    return {};
}

TaggedPoint TaggedPoint::finite(const Rational& x, Side side)
{
    TaggedPoint p;
    p.kind_ = Kind::Finite;
    p.value_ = x;
    p.side_ = side;
    return p;
}

TaggedPoint TaggedPoint::plus_infinity()
{
    TaggedPoint p;
    p.kind_ = Kind::PlusInfinity;
    return p;
}

TaggedPoint TaggedPoint::minus_infinity()
{
    TaggedPoint p;
    p.kind_ = Kind::MinusInfinity;
    return p;
}

TaggedPoint TaggedPoint::parse(const std::string& text)
{
    if (text == "+inf" || text == "inf") return plus_infinity();
    if (text == "-inf") return minus_infinity();
    auto colon = text.find(':');
    if (colon == std::string::npos) return finite(parse_rational(text));
    std::string tag = text.substr(colon + 1);
    Side side;
    if (tag == "l") side = Side::Left;
    else if (tag == "r") side = Side::Right;
    else throw InvalidArgument("malformed point tag '" + tag + "': expected l or r");
    return finite(parse_rational(text.substr(0, colon)), side);
}

void TaggedPoint::validate(int m) const
{
    if (kind_ == Kind::Finite && side_ == Side::None && is_madic(value_, m))
        throw InvalidArgument("point " + mhaar::to_string(value_) + " is " + std::to_string(m) +
                              "-adic and needs a side tag (:l or :r)");
}

std::string TaggedPoint::to_string() const
{
    switch (kind_) {
    case Kind::PlusInfinity: return "+inf";
    case Kind::MinusInfinity: return "-inf";
    case Kind::Finite: break;
    }
    std::string s = mhaar::to_string(value_);
    if (side_ == Side::Left) s += ":l";
    if (side_ == Side::Right) s += ":r";
    return s;
}

std::optional<Rational> Segment::length() const
{
    if (!bounded()) return std::nullopt;
    return hi > lo ? Rational(hi - lo) : Rational(0);
}

bool Segment::contains(const Rational& x) const
{
    return (lo_inf || lo <= x) && (hi_inf || x <= hi);
}

std::string Segment::to_string() const
{
    std::string a = lo_inf ? "-inf" : mhaar::to_string(lo);
    std::string b = hi_inf ? "+inf" : mhaar::to_string(hi);
    return "[" + a + "," + b + "]";
}

std::optional<Segment> intersect(const Segment& a, const Segment& b)
{
    Segment r;
    r.lo_inf = a.lo_inf && b.lo_inf;
    r.hi_inf = a.hi_inf && b.hi_inf;
    if (!r.lo_inf) r.lo = a.lo_inf ? b.lo : (b.lo_inf ? a.lo : (a.lo > b.lo ? a.lo : b.lo));
    if (!r.hi_inf) r.hi = a.hi_inf ? b.hi : (b.hi_inf ? a.hi : (a.hi < b.hi ? a.hi : b.hi));
    if (!r.lo_inf && !r.hi_inf && r.hi <= r.lo) return std::nullopt;
    return r;
}

bool tagged_in(const TaggedPoint& y, const Rational& a, const Rational& b)
{
    if (!y.is_finite()) return false;
    const Rational& v = y.value();
    switch (y.side()) {
    case Side::Right: return a <= v && v < b;
    case Side::Left: return a < v && v <= b;
    case Side::None: return a < v && v < b;
    }
    return false;
}

bool tagged_in(const TaggedPoint& y, const MAdicInterval& c) { return tagged_in(y, c.left(), c.right()); }

MAdicInterval chain_cell(const TaggedPoint& y, long j, int m)
{
    if (!y.is_finite()) throw InvalidArgument("chain_cell needs a finite point");
    y.validate(m);
    Rational t = y.value() * m_power(m, j);
    Integer idx = floor(t);
    if (y.side() == Side::Left && t == Rational(idx)) idx -= 1;
    return {m, j, to_int64(idx)};
}

Segment chain_interval(const TaggedPoint& y, long j, int m)
{
    if (y.is_finite()) return Segment::from(chain_cell(y, j, m));
    if (j < 0) throw InvalidArgument("chains at infinity are defined for j >= 0 only");
    Rational mj = m_power(m, j);
    if (y.kind() == TaggedPoint::Kind::PlusInfinity) return Segment::right_ray(mj);
    return Segment::left_ray(-mj);
}

IntervalChain build_chain(const TaggedPoint& y, long first, long last, int m)
{
    IntervalChain c{y, m, first, last, {}};
    for (long j = first; j <= last; ++j) c.entries.push_back(chain_interval(y, j, m));
    return c;
}

} // namespace mhaar
