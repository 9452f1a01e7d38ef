#include "mhaar/unconditional.hpp"

#include "mhaar/errors.hpp"
#include "mhaar/step_calculus.hpp"

#include <algorithm>
#include <cmath>

namespace mhaar {

namespace {

std::int64_t ipow64(int m, long k) { return to_int64(ipow(m, static_cast<unsigned long>(k))); }

// Values n/64, n uniform in [-64, 64], on the level-d grid of [0, 1].
StepFunction experiment_function(std::mt19937_64& rng, int m, long d)
{
    std::uniform_int_distribution<long> num(-64, 64);
    std::vector<Rational> vals;
    for (std::int64_t i = 0; i < ipow64(m, d); ++i) vals.push_back(Rational(num(rng), 64));
    for (auto& v : vals) v.canonicalize();
    return StepFunction::from_grid(m, d, 0, vals);
}

double norm_value(const RealStep& f, double p, const Weight& w)
{
    return lp_norm(f, p, w, Segment::closed(0, 1)).value();
}

void summarize(DepthRatios& d)
{
    if (!d.signflip.empty()) d.sup_signflip = *std::max_element(d.signflip.begin(), d.signflip.end());
    if (!d.square.empty()) {
        d.sup_square = *std::max_element(d.square.begin(), d.square.end());
        d.min_square = *std::min_element(d.square.begin(), d.square.end());
    }
}

} // namespace

SignSequence::SignSequence(std::vector<int> signs) : eps_(std::move(signs))
{
    for (int e : eps_)
        if (e != 1 && e != -1) throw InvalidArgument("signs must be +1 or -1");
}

SignSequence SignSequence::rademacher(std::uint64_t seed, long length)
{
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<int> eps;
    for (long l = 0; l < length; ++l) eps.push_back(coin(rng) ? 1 : -1);
    SignSequence s(std::move(eps));
    s.seed = seed;
    return s;
}

int SignSequence::operator[](long l) const
{
    if (l >= 0 && l < static_cast<long>(eps_.size())) return eps_[static_cast<std::size_t>(l)];
    return 1;
}

void SignSequence::set(long l, int eps)
{
    if (l < 0) throw InvalidArgument("sign index must be >= 0");
    if (eps != 1 && eps != -1) throw InvalidArgument("signs must be +1 or -1");
    if (l >= static_cast<long>(eps_.size())) eps_.resize(static_cast<std::size_t>(l) + 1, 1);
    eps_[static_cast<std::size_t>(l)] = eps;
}

SelectionSet SelectionSet::all(long cutoff)
{
    SelectionSet s;
    for (long l = 0; l <= cutoff; ++l) s.indices.insert(l);
    return s;
}

template <class V> Step<V> square_function_squared(const Expansion<V>& e, const HaarSystem& sys)
{
    const int m = sys.m();
    long K = decode(e.cutoff, m).k;
    long N = e.cutoff == 0 ? 0 : K + 1;
    std::int64_t count = ipow64(m, N);
    std::vector<V> vals(static_cast<std::size_t>(count), V(e.reduced[0] * e.reduced[0]));
    for (long l = 1; l <= e.cutoff; ++l) {
        V r = e.reduced[static_cast<std::size_t>(l)];
        if (r == V(0)) continue;
        CoeffIndex c = decode(l, m);
        V scale = from_rational<V>(m_power(m, c.k)) * r;
        std::int64_t width = ipow64(m, N - c.k - 1);
        for (int s = 0; s < m; ++s) {
            V add = scale * sys.hval<V>(c.nu, s);
            add = add * add;
            std::int64_t start = (c.cell() * m + s) * width;
            for (std::int64_t t = 0; t < width; ++t) vals[static_cast<std::size_t>(start + t)] += add;
        }
    }
    return Step<V>::from_grid(m, N, 0, vals);
}

template Step<Rational> square_function_squared<Rational>(const Expansion<Rational>&, const HaarSystem&);
template Step<double> square_function_squared<double>(const Expansion<double>&, const HaarSystem&);

RealStep square_function(const Expansion<double>& e, const HaarSystem& sys)
{
    return square_function_squared(e, sys).map([](double v) { return std::sqrt(std::max(0.0, v)); });
}

RealStep square_function(const Expansion<Rational>& e, const HaarSystem& sys)
{
    return square_function_squared(e, sys).map([](const Rational& v) { return std::sqrt(v.get_d()); });
}

long full_cutoff(const StepFunction& f, int m)
{
    return mu(f.depth(m), m);
}

std::vector<Rational> lambda_grid(double lo, double hi, int n)
{
    if (!(lo > 0) || !(hi > lo) || n < 1) throw InvalidArgument("lambda grid needs 0 < lo < hi and n >= 1");
    std::vector<Rational> out;
    for (int i = 0; i < n; ++i) {
        double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        double v = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
        // round to a short dyadic rational so exact comparisons stay cheap
        out.push_back(Rational(std::round(v * 1048576.0)) / 1048576);
    }
    return out;
}

DepthRatios signflip_ratios(const Weight& w, double p, const HaarSystem& sys, const std::optional<TaggedPoint>& y,
                            int trials, long depth, std::uint64_t seed, bool with_square)
{
    const int m = sys.m();
    DepthRatios dr;
    dr.depth = depth;
    for (int t = 0; t < trials; ++t) {
        std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(depth) * 1000003ULL + static_cast<std::uint64_t>(t));
        std::mt19937_64 rng(s);
        StepFunction f = experiment_function(rng, m, depth);
        Expansion<double> e = y ? pointed_coefficients<double>(f, sys, *y, mu(depth, m), w.spec())
                                : analyze<double>(f, sys, mu(depth, m));
        // pointed expansions are compared with their own synthesis, plain ones with f itself
        double base = y ? norm_value(synthesize(e, sys), p, w) : norm_value(to_real(f), p, w);
        if (!(base > 0) || !std::isfinite(base)) continue;
        SignSequence eps = SignSequence::rademacher(splitmix64(s), e.cutoff + 1);
        dr.signflip.push_back(norm_value(sign_flip(e, sys, eps), p, w) / base);
        if (with_square) dr.square.push_back(norm_value(square_function(e, sys), p, w) / base);
    }
    summarize(dr);
    return dr;
}

SignFlipWeakReport weak11_signflip_verify(const StepFunction& f, const HaarSystem& sys, int trials,
                                          const std::vector<Rational>& lambdas, std::uint64_t seed)
{
    SignFlipWeakReport rep;
    const int m = sys.m();
    rep.m = m;
    rep.trials = trials;
    rep.exact = sys.exact();
    rep.l1 = f.abs().integrate();
    long cutoff = full_cutoff(f, m);
    for (const auto& lam : lambdas) {
        if (lam <= 0) throw InvalidArgument("lambda must be positive");
        rep.rows.push_back({lam, 0.0, Rational(m + 1) * rep.l1 / lam, 0});
    }
    rep.isometry_exact = rep.exact;
    if (rep.exact) {
        Expansion<Rational> e = analyze<Rational>(f, sys, cutoff);
        Rational f2 = (f.map([](const Rational& v) { return Rational(v * v); })).integrate();
        for (int t = 0; t < trials; ++t) {
            SignSequence eps = SignSequence::rademacher(derive_seed(seed, static_cast<std::uint64_t>(t)), cutoff + 1);
            StepFunction g = sign_flip(e, sys, eps);
            Rational g2 = g.map([](const Rational& v) { return Rational(v * v); }).integrate();
            if (g2 != f2) rep.isometry_exact = false;
            rep.max_isometry_error = std::max(rep.max_isometry_error, std::fabs(g2.get_d() - f2.get_d()));
            for (auto& row : rep.rows) {
                Rational meas = g.measure_where([&](const Rational& v) { return abs(v) > row.lambda; });
                row.max_measure = std::max(row.max_measure, meas.get_d());
                if (meas > row.bound) ++row.violations;
                if (row.bound > 0) rep.max_ratio = std::max(rep.max_ratio, Rational(meas / row.bound).get_d());
            }
        }
    } else {
        Expansion<double> e = analyze<double>(f, sys, cutoff);
        double f2 = to_real(f).map([](double v) { return v * v; }).integrate();
        for (int t = 0; t < trials; ++t) {
            SignSequence eps = SignSequence::rademacher(derive_seed(seed, static_cast<std::uint64_t>(t)), cutoff + 1);
            RealStep g = sign_flip(e, sys, eps);
            double g2 = g.map([](double v) { return v * v; }).integrate();
            rep.max_isometry_error = std::max(rep.max_isometry_error, std::fabs(g2 - f2) / std::max(1.0, f2));
            for (auto& row : rep.rows) {
                double lam = row.lambda.get_d() * (1 - 1e-12);
                double meas = g.measure_where([&](double v) { return std::fabs(v) > lam; }).get_d();
                double bound = row.bound.get_d();
                row.max_measure = std::max(row.max_measure, meas);
                if (meas > bound) ++row.violations;
                if (bound > 0) rep.max_ratio = std::max(rep.max_ratio, meas / bound);
            }
        }
    }
    for (const auto& row : rep.rows) rep.violations += row.violations;
    rep.pass = rep.violations == 0;
    return rep;
}

SlopeInterval sup_trend(const std::vector<DepthRatios>& depths, bool square, int resamples, std::uint64_t seed)
{
    std::vector<double> x, y;
    for (const auto& d : depths) {
        const auto& r = square ? d.square : d.signflip;
        if (r.empty()) continue;
        x.push_back(static_cast<double>(d.depth));
        y.push_back(std::log(*std::max_element(r.begin(), r.end())));
    }
    SlopeInterval out;
    if (x.size() < 2) {
        out.flat = true;
        return out;
    }
    out.slope = least_squares_slope(x, y);
    std::mt19937_64 rng(seed);
    std::vector<double> slopes;
    std::vector<double> by(x.size());
    for (int b = 0; b < resamples; ++b) {
        std::size_t at = 0;
        for (const auto& d : depths) {
            const auto& r = square ? d.square : d.signflip;
            if (r.empty()) continue;
            std::uniform_int_distribution<std::size_t> pick(0, r.size() - 1);
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < r.size(); ++i) best = std::max(best, r[pick(rng)]);
            by[at++] = std::log(best);
        }
        slopes.push_back(least_squares_slope(x, by));
    }
    std::sort(slopes.begin(), slopes.end());
    auto q = [&](double a) { return slopes[static_cast<std::size_t>(std::floor(a * static_cast<double>(slopes.size() - 1)))]; };
    out.lo = std::min(q(0.025), out.slope);
    out.hi = std::max(q(0.975), out.slope);
    out.flat = out.lo <= 1e-12 && out.hi >= -1e-12;
    return out;
}

NormEquivalenceReport norm_equivalence_experiment(const Weight& w, double p, const HaarSystem& sys, int trials,
                                                  const std::vector<long>& depths, std::uint64_t seed)
{
    if (!(p > 1.0)) throw InvalidArgument("norm equivalence needs p > 1");
    NormEquivalenceReport rep;
    const int m = sys.m();
    rep.weight = w.spec();
    rep.p = p;
    rep.m = m;
    rep.trials = trials;
    rep.seed = seed;
    long max_depth = depths.empty() ? 1 : *std::max_element(depths.begin(), depths.end());
    for (long d : depths) rep.depths.push_back(signflip_ratios(w, p, sys, std::nullopt, trials, d, seed, true));
    rep.trend = sup_trend(rep.depths, false, 200, derive_seed(seed, 0xb00751ULL));
    rep.mp = check_mp(w, p, m, Domain{}, std::max(max_depth, 8L));
    // Truncated extremal family: f_k = average of w^{-1/(p-1)} on each ring [m^{-i-1}, m^{-i}], i < k,
    // tested against the projection onto the constants.
    Weight psi = w.pow(-1.0 / (p - 1.0));
    double wmass = w.integral(Segment::closed(0, 1)).value();
    for (long k = 1; k <= max_depth + 4 && std::isfinite(wmass); ++k) {
        std::vector<Rational> bp;
        std::vector<double> vals;
        bool finite = true;
        for (long i = k - 1; i >= 0; --i) {
            Rational a = m_power(m, -(i + 1)), b = m_power(m, -i);
            Quantity mass = psi.integral(Segment::closed(a, b));
            if (mass.is_divergent()) finite = false;
            if (bp.empty()) bp.push_back(a);
            bp.push_back(b);
            vals.push_back(mass.value() / Rational(b - a).get_d());
        }
        if (!finite) break;
        RealStep fk(bp, vals);
        double num = std::fabs(fk.integrate()) * std::pow(wmass, 1.0 / p);
        double den = norm_value(fk, p, w);
        rep.witness_ratios.push_back(num / den);
    }
    const auto& wr = rep.witness_ratios;
    if (wr.size() >= 3) {
        double prev = wr[wr.size() - 2] - wr[wr.size() - 3];
        double last = wr.back() - wr[wr.size() - 2];
        rep.witness_growing = last > 0 && prev > 0 && last >= 0.8 * prev;
    }
    if (rep.mp.verdict != Verdict::Holds && rep.witness_growing) rep.verdict = "witness-unbounded";
    else rep.verdict = rep.trend.lo > 0 ? "growing" : "bounded";
    return rep;
}

PointedExperimentReport pointed_unconditional_experiment(const Weight& w, double p, const HaarSystem& sys,
                                                         const TaggedPoint& y, int trials,
                                                         const std::vector<long>& depths, std::uint64_t seed)
{
    if (!(p > 1.0)) throw InvalidArgument("pointed experiment needs p > 1");
    PointedExperimentReport rep;
    const int m = sys.m();
    y.validate(m);
    if (!y.is_finite()) throw InvalidArgument("pointed experiment needs a finite point in [0,1]");
    rep.weight = w.spec();
    rep.p = p;
    rep.m = m;
    rep.y = y;
    rep.trials = trials;
    rep.seed = seed;
    long max_depth = depths.empty() ? 1 : *std::max_element(depths.begin(), depths.end());
    rep.mp_off_point = check_mp(w, p, m, Domain{}, std::max(max_depth, 8L), y);
    rep.mp_y = check_mp_y(w, p, m, y, Domain{}, 1, 12);
    rep.hypotheses_met = rep.mp_off_point.verdict == Verdict::Holds && rep.mp_y.verdict == Verdict::Holds;
    if (!rep.hypotheses_met) {
        rep.verdict = "skipped";
        rep.reason = "hypotheses not met: M_p off the point " + to_string(rep.mp_off_point.verdict) + ", M_p^y " +
                     to_string(rep.mp_y.verdict);
        return rep;
    }
    for (long d : depths) rep.depths.push_back(signflip_ratios(w, p, sys, y, trials, d, seed, false));
    rep.trend = sup_trend(rep.depths, false, 200, derive_seed(seed, 0xb00751ULL));
    rep.verdict = rep.trend.lo > 0 ? "growing" : "bounded";
    return rep;
}

} // namespace mhaar
