#include "mhaar/conditions.hpp"

#include "mhaar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace mhaar {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return {};
}

Quantity mp_constant(const Weight& w, double p, const Segment& cell)
{
    auto len = cell.length();
    if (!len || *len == 0) throw InvalidArgument("mp_constant needs a bounded cell of positive length");
    Quantity L(*len);
    Quantity mass = w.integral(cell);
    if (p == 1.0) return mass / L / w.ess_inf(cell);
    if (!(p > 1.0)) throw InvalidArgument("M_p conditions need p >= 1");
    Quantity dual = w.pow(-1.0 / (p - 1.0)).integral(cell);
    return mass * dual.pow(p - 1.0) / L.pow(p);
}

std::vector<MAdicInterval> region_cells(const Domain& region, int m, long level, long window)
{
    std::vector<MAdicInterval> out;
    std::int64_t span = to_int64(ipow(m, static_cast<unsigned long>(std::max(0L, window))));
    auto push_range = [&](std::int64_t a, std::int64_t b) {
        for (std::int64_t i = a; i < b; ++i) out.emplace_back(m, level, i);
    };
    switch (region.kind) {
    case Domain::Kind::UnitInterval:
        if (level >= 0) push_range(0, to_int64(ipow(m, static_cast<unsigned long>(level))));
        break;
    case Domain::Kind::Interval: {
        Rational scale = m_power(m, level);
        Integer a = ceil(region.a * scale), b = floor(region.b * scale);
        if (a < b) push_range(to_int64(a), std::min(to_int64(b), to_int64(a) + 4 * span));
        break;
    }
    case Domain::Kind::HalfLinePos: push_range(0, span); break;
    case Domain::Kind::HalfLineNeg: push_range(-span, 0); break;
    case Domain::Kind::RealLine: push_range(-span, span); break;
    }
    return out;
}

namespace {

struct TrendResult {
    std::string label;
    double slope = 0;
};

TrendResult classify_trend(const std::vector<double>& s, int m)
{
    TrendResult t;
    if (s.size() < 2) {
        t.label = "flat";
        return t;
    }
    std::size_t half = s.size() / 2;
    double first = *std::max_element(s.begin(), s.begin() + static_cast<long>(half));
    double second = *std::max_element(s.begin() + static_cast<long>(half), s.end());
    // Least-squares slope of log s over the deeper half.
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = half; i < s.size(); ++i) {
        if (!(s[i] > 0)) continue;
        double x = static_cast<double>(i), y = std::log(s[i]);
        n += 1;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    if (n >= 2 && n * sxx - sx * sx > 0) t.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (t.slope > 0.05 * std::log(static_cast<double>(m))) {
        t.label = "growing";
    } else if (second <= first * (1 + 1e-9)) {
        bool decreasing = s.back() < s.front() * (1 - 1e-6);
        t.label = decreasing ? "decreasing" : "flat";
    } else {
        double first_step = std::fabs(s[1] - s[0]);
        double last_step = std::fabs(s.back() - s[s.size() - 2]);
        t.label = last_step <= 0.5 * first_step ? "converging" : "mixed";
    }
    return t;
}

bool bounded_trend(const std::string& label)
{
    return label == "flat" || label == "decreasing" || label == "converging";
}

// Tag-aware "does some remaining cell touch c".
bool touches(const Rational& c, const Segment& region, const std::optional<TaggedPoint>& excluded)
{
    if (!region.contains(c)) return !region.bounded();
    if (!excluded || !excluded->is_finite() || excluded->value() != c) return true;
    switch (excluded->side()) {
    case Side::Right: return region.lo_inf || region.lo < c;
    case Side::Left: return region.hi_inf || region.hi > c;
    case Side::None: return false;
    }
    return true;
}

void finish_verdict(WeightReport& r, std::optional<bool> analytic, const std::string& analytic_fail_text)
{
    std::vector<double> series;
    for (const auto& lc : r.per_depth) series.push_back(lc.value.value());
    bool any_divergent = r.sup.is_divergent();
    if (!any_divergent) {
        auto t = classify_trend(series, r.m);
        r.trend = t.label;
    } else {
        r.trend = "divergent";
    }
    if (any_divergent) {
        r.verdict = Verdict::Fails;
        r.proof = true;
        r.evidence = "divergent integral on " + (r.witness ? r.witness->to_string() : std::string("a tested cell"));
        return;
    }
    if (analytic) {
        r.proof = true;
        if (*analytic) {
            r.verdict = Verdict::Holds;
            r.evidence = "exponent analysis; constants verified to depth " + std::to_string(r.depth_limit);
        } else {
            r.verdict = Verdict::Fails;
            r.evidence = analytic_fail_text;
        }
        return;
    }
    if (bounded_trend(r.trend)) {
        r.verdict = Verdict::Holds;
        r.evidence = "verified to depth " + std::to_string(r.depth_limit) + " (" + r.trend + " trend)";
    } else {
        r.verdict = Verdict::Inconclusive;
        r.evidence = r.trend + " trend up to depth " + std::to_string(r.depth_limit);
    }
}

std::vector<Segment> complement_in(const Segment& region, const Segment& cell)
{
    std::vector<Segment> parts;
    if (auto l = intersect(region, Segment::left_ray(cell.lo)); l && !(l->bounded() && *l->length() == 0)) parts.push_back(*l);
    if (auto r = intersect(region, Segment::right_ray(cell.hi)); r && !(r->bounded() && *r->length() == 0)) parts.push_back(*r);
    return parts;
}

} // namespace

std::optional<bool> analytic_mp(const Weight& w, double p, const Segment& region, const std::optional<TaggedPoint>& excluded)
{
    auto in_range = [p](double r) { return p == 1.0 ? (r > -1.0 && r <= 0.0) : (r > -1.0 && r < p - 1.0); };
    switch (w.kind()) {
    case Weight::Kind::Unit: return true;
    case Weight::Kind::Step: return std::nullopt;
    case Weight::Kind::Power: break;
    }
    const auto& fs = w.factors();
    if (fs.size() == 1) {
        if (!touches(fs[0].c, region, excluded)) return true;
        return in_range(fs[0].r);
    }
    if (!region.bounded()) return std::nullopt;
    for (const auto& f : fs)
        if (touches(f.c, region, excluded) && !in_range(f.r)) return false;
    return true;
}

std::optional<bool> analytic_mp_y(const Weight& w, double p, const TaggedPoint& y, const Segment& region)
{
    if (!y.is_finite() || !(p > 1.0)) return std::nullopt;
    switch (w.kind()) {
    case Weight::Kind::Unit: return false;
    case Weight::Kind::Step: return std::nullopt;
    case Weight::Kind::Power: break;
    }
    const auto& fs = w.factors();
    if (fs.size() > 1 && !region.bounded()) return std::nullopt;
    bool at_y = false;
    for (const auto& f : fs) {
        if (f.c == y.value()) {
            if (!(f.r > p - 1.0)) return false;
            at_y = true;
        } else if (region.contains(f.c) && !(f.r < p - 1.0)) {
            return false;
        }
    }
    if (!at_y) return false;
    if (!region.bounded() && !(w.total_exponent() > p - 1.0)) return false;
    return true;
}

WeightReport check_mp(const Weight& w, double p, int m, const Domain& region, long depth,
                      const std::optional<TaggedPoint>& excluded)
{
    if (depth < 1) throw InvalidArgument("check_mp needs depth >= 1");
    if (excluded) excluded->validate(m);
    WeightReport r;
    r.condition = p == 1.0 ? "M_1" : "M_p";
    r.p = p;
    r.m = m;
    r.region = region.to_string();
    r.weight = w.spec();
    r.point = excluded;
    r.depth_limit = depth;
    r.sup = Quantity(Rational(0));
    Segment seg = region.segment();
    bool bounded = seg.bounded();
    long lo_level = bounded ? 0 : -depth;
    if (region.kind == Domain::Kind::Interval) {
        // coarsest level whose cells fit inside [a, b]
        lo_level = 0;
        while (m_power(m, -lo_level) > region.b - region.a) ++lo_level;
        while (lo_level > -depth && m_power(m, -(lo_level - 1)) <= region.b - region.a) --lo_level;
    }
    for (long level = lo_level; level <= depth; ++level) {
        LevelConstant lc;
        lc.level = level;
        lc.value = Quantity(Rational(0));
        for (const auto& cell : region_cells(region, m, level, depth)) {
            if (excluded && excluded->is_finite() && tagged_in(*excluded, cell)) continue;
            Segment s = Segment::from(cell);
            Quantity c = mp_constant(w, p, s);
            ++r.cells_checked;
            if (!lc.witness || compare(c, lc.value) > 0) {
                lc.value = c;
                lc.witness = s;
            }
        }
        if (!lc.witness) continue;
        if (compare(lc.value, r.sup) > 0 || !r.witness) {
            r.sup = lc.value;
            r.witness = lc.witness;
        }
        r.per_depth.push_back(lc);
    }
    finish_verdict(r, analytic_mp(w, p, seg, excluded), "growth of the constants (exponent analysis)");
    return r;
}

Quantity mp_y_constant(const Weight& w, double p, int m, const TaggedPoint& y, const Segment& region, long j)
{
    Segment cell = chain_interval(y, j, m);
    Quantity dual(Rational(0));
    Weight psi = w.pow(-1.0 / (p - 1.0));
    for (const auto& part : complement_in(region, cell)) dual += psi.integral(part);
    return w.integral(cell) * dual.pow(p - 1.0) / Quantity(*cell.length()).pow(p);
}

WeightReport check_mp_y(const Weight& w, double p, int m, const TaggedPoint& y, const Domain& region, long j_min,
                        long j_max)
{
    if (!(p > 1.0)) throw InvalidArgument("M_p^y needs p > 1");
    if (!y.is_finite()) throw InvalidArgument("M_p^y is defined for finite points; use M_p on the half-line for infinity");
    y.validate(m);
    WeightReport r;
    r.condition = "M_p^y";
    r.p = p;
    r.m = m;
    r.region = region.to_string();
    r.weight = w.spec();
    r.point = y;
    r.depth_limit = j_max;
    r.sup = Quantity(Rational(0));
    Segment seg = region.segment();
    for (long j = j_min; j <= j_max; ++j) {
        LevelConstant lc;
        lc.level = j;
        lc.witness = chain_interval(y, j, m);
        lc.value = mp_y_constant(w, p, m, y, seg, j);
        ++r.cells_checked;
        if (compare(lc.value, r.sup) > 0 || !r.witness) {
            r.sup = lc.value;
            r.witness = lc.witness;
        }
        r.per_depth.push_back(lc);
    }
    finish_verdict(r, analytic_mp_y(w, p, y, seg), "growth of the pointed constants (exponent analysis)");
    return r;
}

MinftyReport check_minfty(const Weight& w, int m, const Domain& region, long depth, std::uint64_t seed, int random_subsets)
{
    MinftyReport rep;
    rep.depth = depth;
    rep.delta = std::numeric_limits<double>::infinity();
    rep.delta_aligned_left = rep.delta;
    rep.delta_aligned_right = rep.delta;
    std::mt19937_64 rng(seed);
    std::vector<MinftySample> samples;
    Segment seg = region.segment();
    long lo_level = seg.bounded() ? 0 : -depth;
    for (long level = lo_level; level <= depth; ++level) {
        for (const auto& cell : region_cells(region, m, level, std::min(depth, 3L))) {
            double total = w.integral(Segment::from(cell)).value();
            if (!(total > 0) || !std::isfinite(total)) continue;
            for (long s = 1; s <= 2; ++s) {
                auto sub_count = static_cast<std::size_t>(to_int64(ipow(m, static_cast<unsigned long>(s))));
                std::vector<double> masses(sub_count);
                for (std::size_t i = 0; i < sub_count; ++i) {
                    MAdicInterval sub(m, level + s, cell.index * static_cast<std::int64_t>(sub_count) + static_cast<std::int64_t>(i));
                    masses[i] = w.integral(Segment::from(sub)).value();
                }
                auto record = [&](const std::vector<bool>& pick, const std::string& family) {
                    double mass = 0;
                    std::size_t count = 0;
                    for (std::size_t i = 0; i < sub_count; ++i)
                        if (pick[i]) {
                            mass += masses[i];
                            ++count;
                        }
                    if (count == 0 || count == sub_count) return;
                    MinftySample smp{Segment::from(cell), family, mass / total,
                                     static_cast<double>(count) / static_cast<double>(sub_count)};
                    samples.push_back(smp);
                };
                for (std::size_t t = 1; t < sub_count; ++t) {
                    std::vector<bool> left(sub_count, false), right(sub_count, false);
                    for (std::size_t i = 0; i < t; ++i) {
                        left[i] = true;
                        right[sub_count - 1 - i] = true;
                    }
                    record(left, "aligned_left");
                    record(right, "aligned_right");
                }
                std::bernoulli_distribution coin(0.5);
                for (int q = 0; q < random_subsets; ++q) {
                    std::vector<bool> pick(sub_count);
                    for (std::size_t i = 0; i < sub_count; ++i) pick[i] = coin(rng);
                    record(pick, "random");
                }
            }
        }
    }
    rep.samples = samples.size();
    for (const auto& smp : samples) {
        double d = smp.mass_ratio <= 0 ? std::numeric_limits<double>::infinity()
                                       : std::log(smp.mass_ratio) / std::log(smp.length_ratio);
        if (d < rep.delta) {
            rep.delta = d;
            rep.worst = smp;
        }
        if (smp.subset == "aligned_left") rep.delta_aligned_left = std::min(rep.delta_aligned_left, d);
        if (smp.subset == "aligned_right") rep.delta_aligned_right = std::min(rep.delta_aligned_right, d);
        rep.c_at_delta_one = std::max(rep.c_at_delta_one, smp.mass_ratio / smp.length_ratio);
    }
    rep.delta = std::max(rep.delta, 0.0);
    for (int i = 1; i <= 10; ++i) {
        double delta = 0.1 * i;
        double c = 0;
        for (const auto& smp : samples) c = std::max(c, smp.mass_ratio / std::pow(smp.length_ratio, delta));
        rep.curve.emplace_back(delta, c);
    }
    return rep;
}

ConjugateReport conjugate_weight_check(const Weight& w, double p, int m, const Domain& region, long depth)
{
    if (!(p > 1.0)) throw InvalidArgument("conjugate weight needs p > 1");
    ConjugateReport rep;
    double pp = p / (p - 1.0);
    Weight psi = w.pow(-1.0 / (p - 1.0));
    rep.original = check_mp(w, p, m, region, depth);
    rep.conjugate = check_mp(psi, pp, m, region, depth);
    Segment seg = region.segment();
    long lo_level = seg.bounded() ? 0 : -depth;
    for (long level = lo_level; level <= depth; ++level) {
        for (const auto& cell : region_cells(region, m, level, std::min(depth, 4L))) {
            Segment s = Segment::from(cell);
            Quantity a = mp_constant(psi, pp, s);
            Quantity b = mp_constant(w, p, s).pow(1.0 / (p - 1.0));
            if (a.is_divergent() || b.is_divergent()) {
                if (a.is_divergent() != b.is_divergent()) rep.max_identity_error = std::numeric_limits<double>::infinity();
                continue;
            }
            double err = std::fabs(a.value() - b.value()) / std::max(1.0, std::fabs(b.value()));
            rep.max_identity_error = std::max(rep.max_identity_error, err);
        }
    }
    bool consistent = rep.original.verdict != Verdict::Holds || rep.conjugate.verdict == Verdict::Holds;
    rep.pass = consistent && rep.max_identity_error <= 1e-9;
    return rep;
}

double ring_q(double c_p, double p, int m)
{
    double mm = static_cast<double>(m);
    return 1.0 + std::pow(c_p, -1.0 / (p - 1.0)) * std::pow((mm - 1.0) / mm, p / (p - 1.0));
}

RingRatioReport ring_ratio_check(const Weight& w, double p, int m, const TaggedPoint& y, const Domain& region, long J,
                                 std::optional<double> c_p)
{
    RingRatioReport rep;
    WeightReport pre = check_mp_y(w, p, m, y, region, 1, J);
    if (pre.verdict != Verdict::Holds) {
        rep.reason = "precondition violated: M_p^y " + to_string(pre.verdict) + " (" + pre.evidence + ")";
        return rep;
    }
    rep.precondition_ok = true;
    rep.c_p = c_p ? *c_p : pre.sup.value();
    rep.q_p = ring_q(rep.c_p, p, m);
    Segment seg = region.segment();
    Weight psi = w.pow(-1.0 / (p - 1.0));
    auto comp = [&](long j) {
        Quantity total(Rational(0));
        for (const auto& part : complement_in(seg, chain_interval(y, j, m))) total += psi.integral(part);
        return total;
    };
    rep.pass = true;
    Quantity prev = comp(1);
    for (long j = 1; j <= J; ++j) {
        Quantity next = comp(j + 1);
        Quantity ratio = next / prev;
        rep.ratios.push_back(ratio);
        if (j == 1 || compare(ratio, rep.min_ratio) < 0) rep.min_ratio = ratio;
        if (ratio.value() < rep.q_p * (1 - 1e-12)) rep.pass = false;
        prev = next;
    }
    return rep;
}

DilationReport dilation_transfer_check(const Weight& w, double p, int m, long N, long level,
                                       const std::optional<TaggedPoint>& y)
{
    DilationReport rep;
    rep.N = N;
    rep.level = level;
    Weight wN = w.dilate(m, N);
    Rational scale = m_power(m, N);
    auto compare_pair = [&](const Quantity& a, const Quantity& b) {
        ++rep.compared;
        if (a.is_divergent() || b.is_divergent()) {
            if (a.is_divergent() != b.is_divergent()) rep.max_relative_error = std::numeric_limits<double>::infinity();
            return;
        }
        if (!(a.is_exact() && b.is_exact() && a.rational() == b.rational())) rep.exact = false;
        double err = std::fabs(a.value() - b.value()) / std::max(1e-300, std::fabs(b.value()));
        if (a.value() == b.value()) err = 0;
        rep.max_relative_error = std::max(rep.max_relative_error, err);
    };
    if (!y) {
        for (const auto& cell : region_cells(Domain{}, m, level, 0)) {
            Segment e = Segment::from(cell);
            Segment big = Segment::closed(e.lo * scale, e.hi * scale);
            compare_pair(mp_constant(wN, p, e), mp_constant(w, p, big));
        }
    } else {
        TaggedPoint yN = TaggedPoint::finite(y->value() / scale, y->side());
        Segment unit = Segment::closed(0, 1);
        Segment big = Segment::closed(0, scale);
        for (long j = std::max(1L, N + 1); j <= level; ++j)
            compare_pair(mp_y_constant(wN, p, m, yN, unit, j), mp_y_constant(w, p, m, *y, big, j - N));
    }
    rep.pass = rep.max_relative_error <= 1e-10;
    return rep;
}

TailReport tail_mass_check(const Weight& w, double /*p*/, int m, long J)
{
    TailReport rep;
    Quantity far = w.integral(Segment::right_ray(1));
    if (far.is_finite()) {
        rep.integrable_at_infinity = true;
        rep.skipped = true;
        rep.reason = "weight is integrable at infinity, so it cannot satisfy M_p on the half-line";
        return rep;
    }
    rep.max_ratio = Quantity(Rational(0));
    for (long j = 0; j <= J; ++j) {
        Quantity big = w.integral(Segment::closed(0, m_power(m, j + 1)));
        Quantity ring = w.integral(Segment::closed(m_power(m, j), m_power(m, j + 1)));
        Quantity ratio = big / ring;
        rep.ratios.push_back(ratio);
        rep.masses.push_back(w.integral(Segment::closed(0, m_power(m, j))));
        rep.max_ratio = max(rep.max_ratio, ratio);
    }
    rep.ratios_bounded = rep.max_ratio.is_finite();
    // Each step multiplies the mass by at least 1 + 1/C, so the masses grow geometrically.
    rep.masses_unbounded = rep.ratios_bounded;
    double growth = rep.ratios_bounded ? 1.0 + 1.0 / rep.max_ratio.value() : 1.0;
    for (std::size_t i = 1; i < rep.masses.size(); ++i)
        if (rep.masses[i].value() < rep.masses[i - 1].value() * growth * (1 - 1e-12)) rep.masses_unbounded = false;
    rep.pass = rep.ratios_bounded && rep.masses_unbounded;
    return rep;
}

namespace {

struct Candidate {
    TaggedPoint y;
    bool singular = false;
    std::string reason;
};

} // namespace

SingularityReport singularity_classifier(const Weight& w, double p, int m, const Domain& region)
{
    if (!(p >= 1.0)) throw InvalidArgument("singularity classifier needs p >= 1");
    SingularityReport rep;
    Segment seg = region.segment();
    auto local_singular = [p](double r) { return p == 1.0 ? r > 0.0 : r >= p - 1.0; };
    auto infinity_singular = [p](double R) { return p == 1.0 ? R < 0.0 : R <= p - 1.0; };
    std::vector<Candidate> cands;
    auto add_point = [&](const Rational& c, bool singular, const std::string& why) {
        if (!seg.contains(c)) return;
        bool left_side = seg.lo_inf || seg.lo < c;
        bool right_side = seg.hi_inf || seg.hi > c;
        if (is_madic(c, m)) {
            if (left_side) cands.push_back({TaggedPoint::finite(c, Side::Left), singular, why});
            if (right_side) cands.push_back({TaggedPoint::finite(c, Side::Right), singular, why});
        } else {
            cands.push_back({TaggedPoint::finite(c), singular, why});
        }
    };
    double R = 0;
    switch (w.kind()) {
    case Weight::Kind::Unit: break;
    case Weight::Kind::Power:
        R = w.total_exponent();
        for (const auto& f : w.factors()) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "local exponent %.17g", f.r);
            add_point(f.c, local_singular(f.r), buf);
        }
        break;
    case Weight::Kind::Step: {
        // Zero pieces (and everything outside the base support) make 1/w infinite on a set of positive measure.
        const auto& bp = w.base().breakpoints();
        const auto& vs = w.base().values();
        bool zero_inside = false;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (vs[i] != 0) continue;
            auto piece = intersect(Segment::closed(bp[i], bp[i + 1]), seg);
            if (!piece) continue;
            zero_inside = true;
            add_point(bp[i], true, "weight vanishes on an adjacent piece");
            add_point(bp[i + 1], true, "weight vanishes on an adjacent piece");
        }
        bool outside = bp.empty() || !seg.bounded() || seg.lo < bp.front() || seg.hi > bp.back();
        if (outside && !bp.empty()) {
            if (seg.lo_inf || seg.lo < bp.front()) add_point(bp.front(), true, "weight vanishes outside its support");
            if (seg.hi_inf || seg.hi > bp.back()) add_point(bp.back(), true, "weight vanishes outside its support");
        }
        rep.degenerate = zero_inside || outside;
        R = -std::numeric_limits<double>::infinity();
        break;
    }
    }
    if (seg.hi_inf)
        cands.push_back({TaggedPoint::plus_infinity(), w.kind() == Weight::Kind::Step ? true : infinity_singular(R),
                         "behaviour at infinity"});
    if (seg.lo_inf)
        cands.push_back({TaggedPoint::minus_infinity(), w.kind() == Weight::Kind::Step ? true : infinity_singular(R),
                         "behaviour at infinity"});
    // A tagged side is only singular if the one-sided neighbourhood is: keep matching entries.
    std::vector<SingularPoint> singular;
    for (const auto& c : cands)
        if (c.singular) singular.push_back({c.y, true, false, c.reason});
    for (auto& s : singular) {
        s.minimality = !rep.degenerate && singular.size() == 1;
    }
    rep.points = singular;
    rep.complete = !singular.empty();
    rep.minimal = !rep.degenerate && singular.size() <= 1;
    if (singular.size() == 1) rep.unique = singular.front().y;
    if (rep.degenerate) rep.note = "weight vanishes on a set of positive measure";
    else if (singular.empty()) rep.note = "1/w lies in L^{1/(p-1)} of the whole region: no singular point";
    else if (singular.size() > 1) rep.note = "more than one singular point: minimality fails";
    else rep.note = "unique singular point";
    return rep;
}

} // namespace mhaar
