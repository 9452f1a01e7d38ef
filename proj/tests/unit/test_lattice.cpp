#include "doctest.h"

#include "mhaar/errors.hpp"
#include "mhaar/lattice.hpp"

using namespace mhaar;

TEST_SUITE("lattice")
{
    TEST_CASE("cells, children and parents")
    {
        MAdicInterval c(3, 2, 4);
        CHECK(c.left() == Rational(4, 9));
        CHECK(c.right() == Rational(5, 9));
        auto kids = c.children();
        REQUIRE(kids.size() == 3);
        CHECK(kids[0].left() == c.left());
        CHECK(kids[2].right() == c.right());
        for (const auto& k : kids) CHECK(k.parent() == c);
        MAdicInterval neg(2, -1, -1);
        CHECK(neg.left() == -2);
        CHECK(neg.right() == 0);
        CHECK(MAdicInterval(2, 1, -1).parent() == MAdicInterval(2, 0, -1));
        CHECK(MAdicInterval::containing(Rational(1, 2), 1, 2).index == 1);
        CHECK(MAdicInterval::containing(Rational(-1, 3), 0, 2).index == -1);
    }

    TEST_CASE("relations")
    {
        CHECK(relation(MAdicInterval(2, 2, 1), MAdicInterval(2, 1, 0)) == Relation::Subset);
        CHECK(relation(MAdicInterval(2, 1, 0), MAdicInterval(2, 2, 1)) == Relation::Superset);
        CHECK(relation(MAdicInterval(2, 1, 0), MAdicInterval(2, 1, 1)) == Relation::Disjoint);
        CHECK(relation(MAdicInterval(2, 1, 0), MAdicInterval(2, 1, 0)) == Relation::Equal);
        CHECK_THROWS_AS(relation(MAdicInterval(2, 1, 0), MAdicInterval(3, 1, 0)), InvalidArgument);
    }

    TEST_CASE("tagged points pick one side of a split point")
    {
        auto r = TaggedPoint::parse("1/2:r");
        auto l = TaggedPoint::parse("1/2:l");
        CHECK(chain_cell(r, 1, 2).index == 1);
        CHECK(chain_cell(l, 1, 2).index == 0);
        CHECK(tagged_in(r, Rational(1, 2), Rational(1)));
        CHECK_FALSE(tagged_in(r, Rational(0), Rational(1, 2)));
        CHECK(tagged_in(l, Rational(0), Rational(1, 2)));
        CHECK_THROWS_AS(TaggedPoint::parse("1/2").validate(2), InvalidArgument);
        CHECK_NOTHROW(TaggedPoint::parse("1/3").validate(2));
        CHECK_THROWS_AS(TaggedPoint::parse("0.5"), InvalidArgument);
        CHECK(TaggedPoint::parse("+inf").kind() == TaggedPoint::Kind::PlusInfinity);
    }

    TEST_CASE("chains are nested and shrink to the point")
    {
        auto y = TaggedPoint::parse("0/1:r");
        auto chain = build_chain(y, -3, 5, 2);
        for (std::size_t i = 1; i < chain.entries.size(); ++i) {
            CHECK(chain.entries[i - 1].lo <= chain.entries[i].lo);
            CHECK(chain.entries[i].hi <= chain.entries[i - 1].hi);
            CHECK(chain.entries[i].lo == 0);
        }
        CHECK(*chain.entries.back().length() == Rational(1, 32));
        auto inf = chain_interval(TaggedPoint::plus_infinity(), 3, 2);
        CHECK(inf.hi_inf);
        CHECK(inf.lo == 8);
        CHECK_THROWS_AS(chain_interval(TaggedPoint::plus_infinity(), -1, 2), InvalidArgument);
    }

    TEST_CASE("segments")
    {
        auto s = intersect(Segment::closed(0, 2), Segment::right_ray(1));
        REQUIRE(s);
        CHECK(s->lo == 1);
        CHECK(s->hi == 2);
        CHECK_FALSE(intersect(Segment::closed(0, 1), Segment::closed(2, 3)));
        CHECK_FALSE(Segment::line().length());
    }
}
