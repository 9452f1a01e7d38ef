#include "mhaar/cz.hpp"

#include "mhaar/errors.hpp"
#include "mhaar/quantity.hpp"

#include <algorithm>

namespace mhaar {

namespace {

bool breaks_inside(const StepFunction& f, const Rational& a, const Rational& b)
{
    const auto& fb = f.breakpoints();
    auto it = std::upper_bound(fb.begin(), fb.end(), a);
    return it != fb.end() && *it < b;
}

void select(const StepFunction& absf, const MAdicInterval& cell, const Rational& lambda, CZResult& out)
{
    for (const auto& child : cell.children()) {
        Segment s = Segment::from(child);
        Rational eta = absf.integrate(s) / child.length();
        if (eta > lambda) {
            out.cells.push_back(child);
            out.eta.push_back(eta);
            continue;
        }
        // Once |f| is constant on a cell every descendant has the same average.
        if (breaks_inside(absf, s.lo, s.hi)) select(absf, child, lambda, out);
    }
}

std::string seg_text(const Rational& a, const Rational& b)
{
    return "[" + to_string(a) + ", " + to_string(b) + "]";
}

} // namespace

CZResult cz_decompose(const StepFunction& f0, const Rational& lambda, int m)
{
    if (m < 2) throw InvalidArgument("m must be at least 2");
    if (lambda <= 0) throw InvalidArgument("lambda must be positive");
    StepFunction f = f0.canonical();
    if (f.support_lo() < 0 || f.support_hi() > 1) throw InvalidArgument("CZ decomposition is defined for functions on [0,1]");
    f.depth(m);
    StepFunction absf = f.abs();
    Rational l1 = absf.integrate();
    if (l1 >= lambda)
        throw PreconditionError("CZ decomposition needs integral of |f| < lambda (got " + to_string(l1) + " >= " +
                                to_string(lambda) + ")");
    CZResult r;
    r.m = m;
    r.lambda = lambda;
    r.f = f;
    select(absf, MAdicInterval(m, 0, 0), lambda, r);
    // g: f off the cells, the signed average of f on each cell.
    std::vector<Rational> grid = f.breakpoints();
    for (const auto& c : r.cells) {
        grid.push_back(c.left());
        grid.push_back(c.right());
        r.omega_measure += c.length();
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::vector<Rational> vals;
    std::vector<Rational> avg;
    for (const auto& c : r.cells) avg.push_back(f.average(Segment::from(c)));
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const Rational& x = grid[i];
        auto it = std::upper_bound(r.cells.begin(), r.cells.end(), x,
                                   [](const Rational& v, const MAdicInterval& c) { return v < c.left(); });
        Rational v = f(x);
        if (it != r.cells.begin()) {
            auto k = static_cast<std::size_t>(it - r.cells.begin()) - 1;
            if (x < r.cells[k].right()) v = avg[k];
        }
        vals.push_back(v);
    }
    r.g = grid.size() >= 2 ? StepFunction(grid, vals).canonical() : StepFunction();
    r.b = (f - r.g).canonical();
    return r;
}

CZReport cz_verify(const CZResult& r, const std::vector<double>& ps)
{
    CZReport rep;
    auto add = [&](CZProperty p) {
        rep.pass = rep.pass && p.pass;
        rep.properties.push_back(std::move(p));
    };
    Rational mlam = r.lambda * r.m;
    StepFunction absf = r.f.abs();
    Rational l1 = absf.integrate();

    CZProperty decomposition{"f=g+b", (r.g + r.b) == r.f, ""};
    if (!decomposition.pass) decomposition.witness = "g + b differs from f";
    add(decomposition);

    CZProperty disjoint{"disjoint", true, ""};
    for (std::size_t i = 1; i < r.cells.size(); ++i)
        if (r.cells[i].left() < r.cells[i - 1].right()) {
            disjoint.pass = false;
            disjoint.witness = r.cells[i - 1].to_string() + " overlaps " + r.cells[i].to_string();
        }
    add(disjoint);

    CZProperty maximal{"maximality", true, ""};
    CZProperty cz1{"cz1", true, ""};
    for (const auto& c : r.cells) {
        Rational eta = absf.average(Segment::from(c));
        if (!(r.lambda < eta && eta <= mlam)) {
            cz1.pass = false;
            cz1.witness = c.to_string() + " has average " + to_string(eta);
        }
        if (c.level >= 1) {
            Rational pe = absf.average(Segment::from(c.parent()));
            if (pe > r.lambda) {
                maximal.pass = false;
                maximal.witness = c.parent().to_string() + " has average " + to_string(pe);
            }
        }
    }
    add(cz1);

    Rational total(0);
    for (const auto& c : r.cells) total += c.length();
    // strict once a cell is selected; with no cells and f = 0 both sides vanish
    CZProperty cz2{"cz2", r.cells.empty() ? total <= l1 / r.lambda : total < l1 / r.lambda, ""};
    if (!cz2.pass) cz2.witness = "total length " + to_string(total) + " vs " + to_string(l1 / r.lambda);
    add(cz2);

    auto in_cells = [&](const Rational& a, const Rational& b) {
        for (const auto& c : r.cells)
            if (c.left() <= a && b <= c.right()) return true;
        return false;
    };
    // Elementary pieces of the common refinement of f, g and the cells.
    std::vector<Rational> grid = r.f.breakpoints();
    grid.insert(grid.end(), r.g.breakpoints().begin(), r.g.breakpoints().end());
    for (const auto& c : r.cells) {
        grid.push_back(c.left());
        grid.push_back(c.right());
    }
    grid.push_back(0);
    grid.push_back(1);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    CZProperty cz3{"cz3", true, ""};
    CZProperty cz4{"cz4", true, ""};
    CZProperty cz5{"cz5", true, ""};
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const Rational &a = grid[i], &b = grid[i + 1];
        bool inside = in_cells(a, b);
        if (!inside && abs(r.f(a)) > r.lambda) {
            cz4.pass = false;
            cz4.witness = seg_text(a, b) + " has |f| = " + to_string(abs(r.f(a)));
        }
        if (abs(r.g(a)) > mlam) {
            cz5.pass = false;
            cz5.witness = seg_text(a, b) + " has |g| = " + to_string(abs(r.g(a)));
        }
        if (!inside && r.g(a) != r.f(a)) {
            cz3.pass = false;
            cz3.witness = seg_text(a, b) + " outside the cells has g != f";
        }
    }
    for (const auto& c : r.cells) {
        Segment s = Segment::from(c);
        Rational target = r.f.average(s);
        for (std::size_t i = 0; i + 1 < grid.size(); ++i)
            if (s.lo <= grid[i] && grid[i + 1] <= s.hi && r.g(grid[i]) != target) {
                cz3.pass = false;
                cz3.witness = c.to_string() + " has g != average of f";
            }
    }
    add(cz3);
    add(cz4);
    add(cz5);

    for (double p : ps) {
        CZProperty cz6{"cz6(p=" + Quantity::real(p).to_string() + ")", true, ""};
        Quantity lhs(Rational(0));
        const auto& gb = r.g.breakpoints();
        for (std::size_t i = 0; i < r.g.values().size(); ++i)
            lhs += Quantity(Rational(abs(r.g.values()[i]))).pow(p) * Quantity(Rational(gb[i + 1] - gb[i]));
        Quantity rhs = Quantity(mlam).pow(p - 1.0) * Quantity(l1);
        if (lhs.is_exact() && rhs.is_exact())
            cz6.pass = lhs.rational() <= rhs.rational();
        else
            cz6.pass = lhs.value() <= rhs.value() * (1 + 1e-12);
        if (!cz6.pass) cz6.witness = lhs.to_string() + " > " + rhs.to_string();
        add(cz6);
    }

    CZProperty cz7{"cz7", true, ""};
    for (const auto& c : r.cells) {
        Rational ib = r.b.integrate(Segment::from(c));
        if (ib != 0) {
            cz7.pass = false;
            cz7.witness = c.to_string() + " has integral of b = " + to_string(ib);
        }
    }
    add(cz7);
    add(maximal);
    return rep;
}

} // namespace mhaar
