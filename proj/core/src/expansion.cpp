#include "mhaar/expansion.hpp"

#include "mhaar/errors.hpp"

#include <cmath>

namespace mhaar {

namespace {

std::int64_t ipow64(int m, long k) { return to_int64(ipow(m, static_cast<unsigned long>(k))); }

template <class V> V reduced_at(const HaarSystem& sys, int nu, long k, std::int64_t j, const TaggedPoint& y);
template <> Rational reduced_at<Rational>(const HaarSystem& sys, int nu, long k, std::int64_t j, const TaggedPoint& y)
{
    return reduced_wavelet_at(sys, nu, k, j, y);
}
template <> double reduced_at<double>(const HaarSystem& sys, int nu, long k, std::int64_t j, const TaggedPoint& y)
{
    return reduced_wavelet_at_real(sys, nu, k, j, y);
}

void require_unit_support(const StepFunction& f)
{
    if (f.pieces() == 0) return;
    if (f.support_lo() < 0 || f.support_hi() > 1)
        throw InvalidArgument("function must be supported in [0,1] for the interval system");
}

// Integrals of f over [x_i, x_{i+1}] for a sorted grid x.
std::vector<Rational> grid_integrals(const StepFunction& f, const std::vector<Rational>& x)
{
    std::vector<Rational> out(x.size() > 0 ? x.size() - 1 : 0, Rational(0));
    const auto& bp = f.breakpoints();
    const auto& vs = f.values();
    std::size_t p = 0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const Rational& a = x[i];
        const Rational& b = x[i + 1];
        while (p < vs.size() && bp[p + 1] <= a) ++p;
        Rational acc = 0;
        for (std::size_t q = p; q < vs.size() && bp[q] < b; ++q) {
            const Rational& lo = bp[q] > a ? bp[q] : a;
            const Rational& hi = bp[q + 1] < b ? bp[q + 1] : b;
            if (lo < hi && vs[q] != 0) acc += vs[q] * (hi - lo);
        }
        out[i] = acc;
    }
    return out;
}

} // namespace

long block_start(long k, int m) { return (ipow64(m, k) - 1) / (m - 1); }
long mu(long k, int m) { return ipow64(m, k) - 1; }

CoeffIndex decode(long l, int m)
{
    if (m < 2) throw InvalidArgument("m must be >= 2");
    if (l < 0) throw InvalidArgument("coefficient index must be >= 0");
    CoeffIndex c;
    c.l = l;
    if (l == 0) return c;
    c.n = (l - 1) / (m - 1);
    c.nu = static_cast<int>(l - c.n * (m - 1));
    long k = 0;
    while (block_start(k + 1, m) <= c.n) ++k;
    c.k = k;
    c.j = c.n - block_start(k, m) + 1;
    return c;
}

long encode(int nu, long k, std::int64_t j, int m)
{
    if (nu < 1 || nu > m - 1) throw InvalidArgument("nu out of range 1..m-1");
    if (k < 0) throw InvalidArgument("level must be >= 0 on [0,1]");
    if (j < 1 || j > ipow64(m, k)) throw InvalidArgument("j out of range 1..m^k");
    long n = block_start(k, m) + j - 1;
    return nu + n * (m - 1);
}

std::optional<SpecialIndex> special_index(long n, int m)
{
    if (n < 0) return std::nullopt;
    if (n == 0) return SpecialIndex{0, 0};
    if (n % (m - 1) != 0) return std::nullopt;
    long k = 0;
    while (mu(k + 1, m) < n) ++k;
    return SpecialIndex{k, (n - mu(k, m)) / (m - 1)};
}

long special_n(long k, std::int64_t j, int m) { return mu(k, m) + j * (m - 1); }

template <class V> double Expansion<V>::coefficient(long l) const
{
    long k = decode(l, m).k;
    return as_double(reduced.at(static_cast<std::size_t>(l))) * std::pow(static_cast<double>(m), 0.5 * static_cast<double>(k));
}

std::vector<Rational> cell_integrals(const StepFunction& f, int m, long level)
{
    std::int64_t count = ipow64(m, level);
    Rational h = m_power(m, -level);
    std::vector<Rational> x;
    x.reserve(static_cast<std::size_t>(count) + 1);
    for (std::int64_t i = 0; i <= count; ++i) x.push_back(Rational(Integer(static_cast<long>(i))) * h);
    return grid_integrals(f, x);
}

namespace {

// Cell integrals for levels 0..L, coarse levels summed from the finest.
std::vector<std::vector<Rational>> integral_pyramid(const StepFunction& f, int m, long L)
{
    std::vector<std::vector<Rational>> I(static_cast<std::size_t>(L) + 1);
    I[static_cast<std::size_t>(L)] = cell_integrals(f, m, L);
    for (long lv = L - 1; lv >= 0; --lv) {
        const auto& fine = I[static_cast<std::size_t>(lv) + 1];
        auto& coarse = I[static_cast<std::size_t>(lv)];
        coarse.assign(fine.size() / static_cast<std::size_t>(m), Rational(0));
        for (std::size_t i = 0; i < fine.size(); ++i) coarse[i / static_cast<std::size_t>(m)] += fine[i];
    }
    return I;
}

} // namespace

template <class V> Expansion<V> analyze(const StepFunction& f, const HaarSystem& sys, long cutoff)
{
    require_unit_support(f);
    if (cutoff < 0) throw InvalidArgument("cutoff must be >= 0");
    const int m = sys.m();
    Expansion<V> e;
    e.m = m;
    e.cutoff = cutoff;
    e.reduced.assign(static_cast<std::size_t>(cutoff) + 1, V(0));
    long K = decode(cutoff, m).k;
    auto I = integral_pyramid(f, m, cutoff == 0 ? 0 : K + 1);
    e.reduced[0] = from_rational<V>(I[0][0]);
    for (long l = 1; l <= cutoff; ++l) {
        CoeffIndex c = decode(l, m);
        const auto& fine = I[static_cast<std::size_t>(c.k) + 1];
        V r(0);
        for (int s = 0; s < m; ++s)
            r += sys.hval<V>(c.nu, s) * from_rational<V>(fine[static_cast<std::size_t>(c.cell() * m + s)]);
        e.reduced[static_cast<std::size_t>(l)] = r;
    }
    return e;
}

template <class V>
Expansion<V> pointed_coefficients(const StepFunction& f, const HaarSystem& sys, const TaggedPoint& y, long cutoff,
                                  const std::string& weight_spec)
{
    y.validate(sys.m());
    Expansion<V> e = analyze<V>(f, sys, cutoff);
    V mass = e.reduced[0];
    e.reduced[0] = V(0);
    for (long l = 1; l <= cutoff; ++l) {
        CoeffIndex c = decode(l, sys.m());
        e.reduced[static_cast<std::size_t>(l)] -= reduced_at<V>(sys, c.nu, c.k, c.cell(), y) * mass;
    }
    e.pointed = true;
    e.point = y;
    e.weight_spec = weight_spec;
    return e;
}

template <class V> Step<V> synthesize(const Expansion<V>& e, const HaarSystem& sys, const std::vector<V>& mult)
{
    const int m = sys.m();
    auto factor = [&](long l) { return mult.empty() ? V(1) : mult.at(static_cast<std::size_t>(l)); };
    long K = decode(e.cutoff, m).k;
    long N = e.cutoff == 0 ? 0 : K + 1;
    std::int64_t count = ipow64(m, N);
    std::vector<V> vals(static_cast<std::size_t>(count), V(e.reduced[0] * factor(0)));
    for (long l = 1; l <= e.cutoff; ++l) {
        V r = e.reduced[static_cast<std::size_t>(l)] * factor(l);
        if (r == V(0)) continue;
        CoeffIndex c = decode(l, m);
        V scale = from_rational<V>(m_power(m, c.k)) * r;
        std::int64_t width = ipow64(m, N - c.k - 1);
        for (int s = 0; s < m; ++s) {
            V add = scale * sys.hval<V>(c.nu, s);
            std::int64_t start = (c.cell() * m + s) * width;
            for (std::int64_t t = 0; t < width; ++t) vals[static_cast<std::size_t>(start + t)] += add;
        }
    }
    return Step<V>::from_grid(m, N, 0, vals);
}

std::vector<KernelCell> kernel(long k, std::int64_t j, int m)
{
    if (k < 0) throw InvalidArgument("kernel level must be >= 0");
    std::int64_t mk = ipow64(m, k);
    if (j < 1 || j > mk) throw InvalidArgument("kernel position j out of range 1..m^k");
    std::vector<KernelCell> out;
    for (std::int64_t s = 0; s < j * m; ++s) {
        MAdicInterval c(m, k + 1, s);
        out.push_back({c, 1 / c.length()});
    }
    for (std::int64_t s = j; s < mk; ++s) {
        MAdicInterval c(m, k, s);
        out.push_back({c, 1 / c.length()});
    }
    return out;
}

std::vector<KernelCell> kernel_for_n(long n, int m)
{
    auto sp = special_index(n, m);
    if (!sp) throw InvalidArgument("n = " + std::to_string(n) + " is not of the form mu_k + j(m-1)");
    if (sp->j == 0) return {{MAdicInterval(m, 0, 0), Rational(1)}};
    return kernel(sp->k, sp->j, m);
}

namespace {

StepFunction averages_on(const StepFunction& f, const std::vector<KernelCell>& cells)
{
    // cells are contiguous and ordered left to right
    std::vector<Rational> b{cells.front().cell.left()};
    for (const auto& c : cells) b.push_back(c.cell.right());
    std::vector<Rational> v = grid_integrals(f, b);
    for (std::size_t i = 0; i < cells.size(); ++i) v[i] *= cells[i].value;
    return StepFunction(std::move(b), std::move(v)).canonical();
}

} // namespace

StepFunction partial_sum_kernel(const StepFunction& f, int m, long k, std::int64_t j)
{
    require_unit_support(f);
    return averages_on(f, kernel(k, j, m));
}

StepFunction partial_sum_kernel_n(const StepFunction& f, int m, long n)
{
    require_unit_support(f);
    return averages_on(f, kernel_for_n(n, m));
}

template <class V> Step<V> partial_sum_coefficients(const StepFunction& f, const HaarSystem& sys, long n)
{
    return synthesize(analyze<V>(f, sys, n), sys);
}

template <class V> Step<V> partial_sum(const StepFunction& f, const HaarSystem& sys, long n)
{
    if (special_index(n, sys.m())) {
        return partial_sum_kernel_n(f, sys.m(), n).map([](const Rational& q) { return from_rational<V>(q); });
    }
    return partial_sum_coefficients<V>(f, sys, n);
}

StepFunction pointed_partial_sum_formula(const StepFunction& f, int m, const TaggedPoint& y, long k, std::int64_t j)
{
    require_unit_support(f);
    y.validate(m);
    auto cells = kernel(k, j, m);
    Rational total = f.integrate(Segment::closed(0, 1));
    std::vector<Rational> b{cells.front().cell.left()};
    std::vector<Rational> v;
    for (const auto& c : cells) {
        Rational inside = f.integrate(Segment::from(c.cell));
        b.push_back(c.cell.right());
        if (tagged_in(y, c.cell)) v.push_back(-(total - inside) * c.value);
        else v.push_back(inside * c.value);
    }
    return StepFunction(std::move(b), std::move(v)).canonical();
}

template <class V>
Step<V> pointed_partial_sum_coefficients(const StepFunction& f, const HaarSystem& sys, const TaggedPoint& y, long n)
{
    return synthesize(pointed_coefficients<V>(f, sys, y, n), sys);
}

CompletenessResidual completeness_residual(int m, long l, double p, const HaarSystem& sys, int j)
{
    if (!(p > 1.0)) throw InvalidArgument("completeness residual needs p > 1");
    if (l < 1) throw InvalidArgument("completeness residual needs l >= 1");
    if (j < 0 || j >= m) throw InvalidArgument("phi_{1,j,m} needs 0 <= j < m");
    if (sys.m() != m) throw InvalidArgument("system rank does not match m");
    const double sm = std::sqrt(static_cast<double>(m));
    const std::int64_t cells = ipow64(m, l + 1); // level-1 cells of [0, m^l]
    const double width = 1.0 / m;
    std::vector<double> f(static_cast<std::size_t>(cells), 0.0);
    f[static_cast<std::size_t>(j)] = sm;
    std::vector<double> res = f;
    // Wavelets h_{k,i} with support in [0, m^l]: levels -l..0. Finer levels see phi_{1,j,m} as constant.
    for (long k = -l; k <= 0; ++k) {
        std::int64_t per_sub = ipow64(m, -k); // level-1 cells per level-(k+1) sub-cell
        std::int64_t count = ipow64(m, l + k);
        double amp = std::pow(static_cast<double>(m), 0.5 * static_cast<double>(k));
        for (std::int64_t i = 0; i < count; ++i) {
            for (int nu = 1; nu < m; ++nu) {
                double ip = 0;
                for (int s = 0; s < m; ++s) {
                    double hv = amp * sys.value(nu, s);
                    std::int64_t start = (i * m + s) * per_sub;
                    for (std::int64_t t = 0; t < per_sub; ++t) ip += f[static_cast<std::size_t>(start + t)] * hv * width;
                }
                for (int s = 0; s < m; ++s) {
                    double hv = amp * sys.value(nu, s);
                    std::int64_t start = (i * m + s) * per_sub;
                    for (std::int64_t t = 0; t < per_sub; ++t) res[static_cast<std::size_t>(start + t)] -= ip * hv;
                }
            }
        }
    }
    double acc = 0;
    for (double r : res) acc += std::pow(std::fabs(r), p) * width;
    CompletenessResidual out;
    out.m = m;
    out.l = l;
    out.p = p;
    double e = static_cast<double>(l) * (1.0 / p - 1.0);
    out.stated = std::pow(static_cast<double>(m), 0.5 + e);
    out.closed_form = std::pow(static_cast<double>(m), -0.5 + e);
    out.projection = std::pow(acc, 1.0 / p);
    out.projection_vs_closed_form = std::fabs(out.projection - out.closed_form);
    out.projection_vs_stated = std::fabs(out.projection - out.stated);
    return out;
}

BlockNorm block_operator_norm(const std::vector<Segment>& cells, std::optional<std::size_t> special, const Weight& w,
                              double p)
{
    if (!(p >= 1.0)) throw InvalidArgument("block norm needs p >= 1");
    BlockNorm out;
    out.norm = Quantity(Rational(0));
    Weight psi = p > 1.0 ? w.pow(-1.0 / (p - 1.0)) : w;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Segment& G = cells[i];
        Quantity inv_len = Quantity(Rational(1 / *G.length()));
        Quantity value;
        if (p == 1.0) {
            value = inv_len * w.integral(G) / w.ess_inf(G);
        } else {
            Quantity dual;
            if (special && *special == i) {
                dual = Quantity(Rational(0));
                if (G.lo > 0) dual += psi.integral(Segment::closed(0, G.lo));
                if (G.hi < 1) dual += psi.integral(Segment::closed(G.hi, 1));
            } else {
                dual = psi.integral(G);
            }
            value = inv_len * w.integral(G).pow(1.0 / p) * dual.pow(1.0 - 1.0 / p);
        }
        out.per_cell.push_back(value);
        if (compare(value, out.norm) > 0) {
            out.norm = value;
            out.argmax = i;
        }
    }
    return out;
}

template struct Expansion<Rational>;
template struct Expansion<double>;
template Expansion<Rational> analyze<Rational>(const StepFunction&, const HaarSystem&, long);
template Expansion<double> analyze<double>(const StepFunction&, const HaarSystem&, long);
template Expansion<Rational> pointed_coefficients<Rational>(const StepFunction&, const HaarSystem&, const TaggedPoint&,
                                                            long, const std::string&);
template Expansion<double> pointed_coefficients<double>(const StepFunction&, const HaarSystem&, const TaggedPoint&, long,
                                                        const std::string&);
template Step<Rational> synthesize<Rational>(const Expansion<Rational>&, const HaarSystem&, const std::vector<Rational>&);
template Step<double> synthesize<double>(const Expansion<double>&, const HaarSystem&, const std::vector<double>&);
template Step<Rational> partial_sum_coefficients<Rational>(const StepFunction&, const HaarSystem&, long);
template Step<double> partial_sum_coefficients<double>(const StepFunction&, const HaarSystem&, long);
template Step<Rational> partial_sum<Rational>(const StepFunction&, const HaarSystem&, long);
template Step<double> partial_sum<double>(const StepFunction&, const HaarSystem&, long);
template Step<Rational> pointed_partial_sum_coefficients<Rational>(const StepFunction&, const HaarSystem&,
                                                                   const TaggedPoint&, long);
template Step<double> pointed_partial_sum_coefficients<double>(const StepFunction&, const HaarSystem&, const TaggedPoint&,
                                                               long);

} // namespace mhaar
