#include "mhaar/stats.hpp"

#include "mhaar/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mhaar {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
    std::uint64_t s = master ^ (index * 0xd1b54a32d192ed03ULL);
    splitmix64(s);
    return splitmix64(s);
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("slope needs at least two paired samples");
    double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxx > 0 ? sxy / sxx : 0.0;
}

SlopeInterval bootstrap_slope(const std::vector<double>& x, const std::vector<double>& y, int resamples,
                              std::uint64_t seed, double level)
{
    SlopeInterval out;
    out.slope = least_squares_slope(x, y);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
    std::vector<double> slopes;
    slopes.reserve(static_cast<std::size_t>(resamples));
    std::vector<double> bx(x.size()), by(y.size());
    for (int r = 0; r < resamples; ++r) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::size_t k = pick(rng);
            bx[i] = x[k];
            by[i] = y[k];
        }
        slopes.push_back(least_squares_slope(bx, by));
    }
    std::sort(slopes.begin(), slopes.end());
    double alpha = (1.0 - level) / 2.0;
    auto at = [&](double q) {
        auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(slopes.size() - 1)));
        return slopes[std::min(idx, slopes.size() - 1)];
    };
    out.lo = std::min(at(alpha), out.slope);
    out.hi = std::max(at(1.0 - alpha), out.slope);
    // Resampling a perfectly flat series gives a degenerate [0, 0] interval.
    out.flat = out.lo <= 1e-12 && out.hi >= -1e-12;
    return out;
}

StepFunction random_step_function(std::mt19937_64& rng, const RandomStepOptions& opt)
{
    std::uniform_int_distribution<long> depth_dist(0, opt.max_depth);
    long d = std::max({depth_dist(rng), madic_depth(opt.lo, opt.m), madic_depth(opt.hi, opt.m)});
    Rational h = m_power(opt.m, -d);
    Rational cells_q = (opt.hi - opt.lo) / h;
    if (cells_q.get_den() != 1) throw InvalidArgument("random step endpoints must lie on the level grid");
    long cells = cells_q.get_num().get_si();
    std::uniform_int_distribution<long> num(opt.nonnegative ? 0 : -opt.max_numerator, opt.max_numerator);
    std::uniform_int_distribution<long> den(1, 4);
    std::vector<Rational> bp;
    std::vector<Rational> vals;
    for (long i = 0; i <= cells; ++i) bp.push_back(opt.lo + h * i);
    for (long i = 0; i < cells; ++i) {
        Rational v(num(rng), den(rng));
        v.canonicalize();
        vals.push_back(v);
    }
    return StepFunction(std::move(bp), std::move(vals)).canonical();
}

} // namespace mhaar
