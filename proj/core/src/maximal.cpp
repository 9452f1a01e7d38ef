#include "mhaar/maximal.hpp"

#include "mhaar/conditions.hpp"
#include "mhaar/errors.hpp"
#include "mhaar/stats.hpp"
#include "mhaar/step_calculus.hpp"

#include <algorithm>
#include <cmath>

namespace mhaar {

namespace {

// Integral of |f| w over a segment.
Quantity abs_mass(const StepFunction& f, const Weight& w, const Segment& s)
{
    if (w.kind() == Weight::Kind::Unit) return Quantity(f.abs().integrate(s));
    Quantity total(Rational(0));
    const auto& bp = f.breakpoints();
    const auto& vs = f.values();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i] == 0) continue;
        auto piece = intersect(Segment::closed(bp[i], bp[i + 1]), s);
        if (!piece || *piece->length() == 0) continue;
        total += Quantity(Rational(abs(vs[i]))) * w.integral(*piece);
    }
    return total;
}

// Integral of |f|^p w.
Quantity abs_power_mass(const StepFunction& f, const Weight& w, double p)
{
    Quantity total(Rational(0));
    const auto& bp = f.breakpoints();
    const auto& vs = f.values();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i] == 0) continue;
        total += Quantity(Rational(abs(vs[i]))).pow(p) * w.integral(Segment::closed(bp[i], bp[i + 1]));
    }
    return total;
}

struct Builder {
    const StepFunction& f;
    const Weight& w;
    int m;
    std::vector<Rational> bp;
    std::vector<Quantity> vals;

    bool breaks_inside(const Rational& a, const Rational& b) const
    {
        const auto& fb = f.breakpoints();
        auto it = std::upper_bound(fb.begin(), fb.end(), a);
        return it != fb.end() && *it < b;
    }

    void emit(const Rational& a, const Rational& b, const Quantity& v)
    {
        if (!vals.empty() && bp.back() == a && compare(vals.back(), v) == 0 && vals.back().kind() == v.kind()) {
            bp.back() = b;
            return;
        }
        if (bp.empty() || bp.back() != a) {
            if (!bp.empty()) {
                bp.push_back(a);
                vals.push_back(Quantity(Rational(0)));
            } else {
                bp.push_back(a);
            }
        }
        bp.push_back(b);
        vals.push_back(v);
    }

    // Top-down: the best average over the cells containing a point is the running max along
    // its chain, and the chain stops changing once |f| is constant on the cell.
    void visit(const MAdicInterval& cell, const Quantity& best)
    {
        Segment s = Segment::from(cell);
        Quantity wm = w.integral(s);
        if (wm.is_divergent()) throw PreconditionError("weight is not locally integrable on " + cell.to_string());
        Quantity cur = best;
        if (!wm.is_zero()) cur = max(best, abs_mass(f, w, s) / wm);
        if (wm.is_zero() || !breaks_inside(s.lo, s.hi)) {
            emit(s.lo, s.hi, cur);
            return;
        }
        for (const auto& child : cell.children()) visit(child, cur);
    }
};

MaximalFunction build(const StepFunction& f0, const Weight& w, int m, bool unit_only)
{
    if (m < 2) throw InvalidArgument("m must be at least 2");
    StepFunction f = f0.canonical();
    f.depth(m); // rejects non-m-adic breakpoints
    MaximalFunction M;
    M.m = m;
    M.weight = w;
    M.unit_only = unit_only;
    Builder b{f, w, m, {}, {}};
    if (unit_only) {
        if (f.support_lo() < 0 || f.support_hi() > 1) throw InvalidArgument("function must live on [0,1]");
        M.L = 0;
        M.pos_mass = abs_mass(f, w, Segment::closed(0, 1));
        b.visit(MAdicInterval(m, 0, 0), Quantity(Rational(0)));
    } else {
        Rational reach = std::max(abs(f.support_lo()), abs(f.support_hi()));
        long L = 0;
        while (m_power(m, L) < reach) ++L;
        M.L = L;
        M.neg_mass = abs_mass(f, w, Segment::left_ray(0));
        M.pos_mass = abs_mass(f, w, Segment::right_ray(0));
        if (!M.neg_mass.is_zero()) b.visit(MAdicInterval(m, -L, -1), Quantity(Rational(0)));
        if (!M.pos_mass.is_zero()) b.visit(MAdicInterval(m, -L, 0), Quantity(Rational(0)));
    }
    M.piece_bp = b.bp;
    M.piece_val = b.vals;
    M.exact = std::all_of(b.vals.begin(), b.vals.end(), [](const Quantity& q) { return q.is_exact(); });
    std::vector<double> rv;
    for (const auto& q : b.vals) rv.push_back(q.value());
    M.body_real = RealStep(b.bp, rv).canonical();
    if (M.exact) {
        std::vector<Rational> ev;
        for (const auto& q : b.vals) ev.push_back(q.rational());
        M.body = StepFunction(b.bp, ev).canonical();
    }
    return M;
}

} // namespace

Quantity MaximalFunction::tail_value(long k, bool positive) const
{
    Rational edge = m_power(m, k);
    Quantity mass = positive ? pos_mass : neg_mass;
    if (mass.is_zero()) return Quantity(Rational(0));
    Quantity wm = weight.integral(positive ? Segment::closed(0, edge) : Segment::closed(-edge, 0));
    return mass / wm;
}

Quantity MaximalFunction::value(const Rational& x) const
{
    if (!piece_bp.empty() && piece_bp.front() <= x && x < piece_bp.back()) {
        auto it = std::upper_bound(piece_bp.begin(), piece_bp.end(), x);
        return piece_val[static_cast<std::size_t>(it - piece_bp.begin()) - 1];
    }
    Rational ax = abs(x);
    Rational edge = m_power(m, L);
    if (unit_only || ax < edge) return Quantity(Rational(0));
    long k = L + 1;
    while (m_power(m, k) <= ax) ++k;
    return tail_value(k, x >= 0);
}

MaximalFunction maximal_function(const StepFunction& f, int m, bool unit_only)
{
    return build(f, Weight::unit(), m, unit_only);
}

MaximalFunction weighted_maximal(const StepFunction& f, const Weight& w, int m, bool unit_only)
{
    return build(f, w, m, unit_only);
}

Quantity level_set_weight(const MaximalFunction& M, const Rational& lambda)
{
    Quantity lam(lambda);
    Quantity total(Rational(0));
    for (std::size_t i = 0; i < M.piece_val.size(); ++i)
        if (compare(M.piece_val[i], lam) > 0)
            total += M.weight.integral(Segment::closed(M.piece_bp[i], M.piece_bp[i + 1]));
    if (M.unit_only) return total;
    for (bool positive : {true, false}) {
        if ((positive ? M.pos_mass : M.neg_mass).is_zero()) continue;
        long k = M.L + 1;
        const long cap = M.L + 400;
        while (k <= cap && compare(M.tail_value(k, positive), lam) > 0) ++k;
        // cells [m^{L}, m^{k-1}] are in the level set
        Rational a = m_power(M.m, M.L), b = m_power(M.m, k - 1);
        if (k > cap) {
            Segment ray = positive ? Segment::right_ray(a) : Segment::left_ray(-a);
            total += M.weight.integral(ray);
            continue;
        }
        if (b > a) total += M.weight.integral(positive ? Segment::closed(a, b) : Segment::closed(-b, -a));
    }
    return total;
}

Quantity maximal_lp_integral(const MaximalFunction& M, double p, const Weight& w)
{
    Quantity total(Rational(0));
    for (std::size_t i = 0; i < M.piece_val.size(); ++i) {
        if (M.piece_val[i].is_zero()) continue;
        total += M.piece_val[i].pow(p) * w.integral(Segment::closed(M.piece_bp[i], M.piece_bp[i + 1]));
    }
    if (M.unit_only) return total;
    bool unit = M.weight.kind() == Weight::Kind::Unit && w.kind() == Weight::Kind::Unit;
    for (bool positive : {true, false}) {
        Quantity mass = positive ? M.pos_mass : M.neg_mass;
        if (mass.is_zero()) continue;
        if (unit) {
            if (!(p > 1.0)) return Quantity::divergent();
            // sum_{k>L} (mass m^{-k})^p (m^k - m^{k-1}) = mass^p (1 - 1/m) m^{(L+1)(1-p)} / (1 - m^{1-p})
            Quantity mq(Rational(M.m));
            Quantity geo = Quantity(m_power(M.m, M.L + 1)).pow(1.0 - p) / (Quantity(Rational(1)) - mq.pow(1.0 - p));
            total += mass.pow(p) * Quantity(Rational(M.m - 1, M.m)) * geo;
            continue;
        }
        double sum = 0, first = -1, last = 0;
        for (long k = M.L + 1; k <= M.L + 4000; ++k) {
            Rational a = m_power(M.m, k - 1), b = m_power(M.m, k);
            Quantity ring = w.integral(positive ? Segment::closed(a, b) : Segment::closed(-b, -a));
            Quantity term = M.tail_value(k, positive).pow(p) * ring;
            if (term.is_divergent()) return Quantity::divergent();
            last = term.value();
            if (first < 0) first = last;
            sum += last;
            if (k - M.L == 200 && last > first) return Quantity::divergent();
            if (k - M.L > 8 && last <= 1e-17 * sum) break;
        }
        total += Quantity::real(sum);
    }
    return total;
}

Weak11Report weak11_verify(const StepFunction& f, const Weight& w, int m, const std::vector<Rational>& lambdas)
{
    Weak11Report rep;
    MaximalFunction M = weighted_maximal(f, w, m);
    Quantity mass = M.pos_mass + M.neg_mass;
    for (const auto& lam : lambdas) {
        if (lam <= 0) throw InvalidArgument("lambda must be positive");
        Weak11Row row;
        row.lambda = lam;
        row.lhs = level_set_weight(M, lam);
        row.rhs = mass / Quantity(lam);
        if (row.lhs.is_exact() && row.rhs.is_exact())
            row.pass = row.lhs.rational() <= row.rhs.rational();
        else
            row.pass = row.lhs.value() <= row.rhs.value() * (1 + 1e-12);
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

StrongLpReport strong_lp_verify(const StepFunction& f, const Weight& w, int m, double p)
{
    if (!(p > 1.0)) throw InvalidArgument("strong L^p bound needs p > 1");
    StrongLpReport rep;
    rep.p = p;
    rep.constant = std::pow(2.0, p) * p / (p - 1.0);
    MaximalFunction M = weighted_maximal(f, w, m);
    rep.lhs = maximal_lp_integral(M, p, w);
    Quantity base = abs_power_mass(f, w, p);
    Quantity C = Quantity::real(rep.constant);
    if (is_integer_exponent(p)) {
        long pi = std::lround(p);
        C = Quantity(Rational(ipow(2, static_cast<unsigned long>(pi)) * pi, pi - 1));
    }
    rep.rhs = C * base;
    if (base.is_zero()) {
        rep.ratio = Quantity(Rational(0));
        rep.pass = rep.lhs.is_zero();
        return rep;
    }
    rep.ratio = rep.lhs / base;
    if (rep.ratio.is_exact() && C.is_exact())
        rep.pass = rep.ratio.rational() <= C.rational();
    else
        rep.pass = rep.ratio.value() <= rep.constant * (1 + 1e-12);
    return rep;
}

EquivalenceReport weighted_lp_equivalence(const Weight& w, double p, int m, int trials, std::uint64_t seed, long depth)
{
    if (!(p > 1.0)) throw InvalidArgument("weighted L^p equivalence needs p > 1");
    EquivalenceReport rep;
    rep.p = p;
    rep.trials = trials;
    std::mt19937_64 rng(seed);
    RandomStepOptions opt;
    opt.m = m;
    for (int t = 0; t < trials; ++t) {
        StepFunction f = random_step_function(rng, opt);
        Quantity den = abs_power_mass(f, w, p);
        if (den.is_zero() || den.is_divergent()) continue;
        MaximalFunction M = maximal_function(f, m, true);
        Quantity ratio = maximal_lp_integral(M, p, w) / den;
        rep.max_ratio = max(rep.max_ratio, ratio);
    }
    Weight psi = w.pow(-1.0 / (p - 1.0));
    for (long level = 0; level <= depth; ++level) {
        for (const auto& cell : region_cells(Domain{}, m, level, 0)) {
            Segment s = Segment::from(cell);
            Quantity c = mp_constant(w, p, s);
            if (!rep.extremal_witness || compare(c, rep.extremal_lower_bound) > 0) {
                rep.extremal_lower_bound = c;
                rep.extremal_witness = s;
            }
        }
    }
    Quantity whole = w.integral(Segment::closed(0, 1));
    for (long j = 1; j <= depth; ++j)
        rep.truncated_lower_bounds.push_back(whole * psi.integral(Segment::closed(m_power(m, -j), 1)).pow(p - 1.0));
    rep.mp_holds = check_mp(w, p, m, Domain{}, depth).verdict == Verdict::Holds;
    // Unbounded when the increments of the truncated family do not decay.
    const auto& lb = rep.truncated_lower_bounds;
    bool growing = false;
    if (lb.size() >= 3) {
        double first_step = lb[1].value() - lb[0].value();
        double last_step = lb.back().value() - lb[lb.size() - 2].value();
        growing = first_step > 0 && last_step >= 0.5 * first_step;
    }
    rep.unbounded_certified = rep.extremal_lower_bound.is_divergent() || growing;
    rep.consistent = rep.mp_holds ? (rep.max_ratio.is_finite() && !rep.unbounded_certified) : rep.unbounded_certified;
    return rep;
}

} // namespace mhaar
