#include "mhaar/realline.hpp"

#include "mhaar/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace mhaar {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sinc(double x) { return std::fabs(x) < 1e-300 ? 1.0 : std::sin(x) / x; }

// Transform of the indicator of [a, b].
std::complex<double> interval_transform(double a, double b, double xi)
{
    double len = b - a;
    return len * std::polar(1.0, -kPi * (a + b) * xi) * sinc(kPi * len * xi);
}

std::int64_t ipow64(int m, long k) { return to_int64(ipow(m, static_cast<unsigned long>(k))); }

// Rank of a rational matrix by fraction-exact Gaussian elimination.
long rational_rank(std::vector<std::vector<Rational>> rows, std::size_t cols)
{
    long rank = 0;
    std::size_t r0 = 0;
    for (std::size_t c = 0; c < cols && r0 < rows.size(); ++c) {
        std::size_t piv = r0;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r0]);
        for (std::size_t r = r0 + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            Rational factor = rows[r][c] / rows[r0][c];
            for (std::size_t q = c; q < cols; ++q) rows[r][q] -= factor * rows[r0][q];
        }
        ++r0;
        ++rank;
    }
    return rank;
}

} // namespace

std::complex<double> fourier_transform(const HaarSystem& sys, int nu, double xi)
{
    const int m = sys.m();
    if (nu < 0 || nu >= m) throw InvalidArgument("generator index out of range");
    std::complex<double> acc(0.0, 0.0);
    for (int s = 0; s < m; ++s) acc += sys.value(nu, s) * std::polar(1.0, -kPi * (2 * s + 1) * xi / m);
    return acc * (sinc(kPi * xi / m) / m);
}

std::complex<double> fourier_transform(const HaarSystem& sys, const WaveletIndex& idx, double xi)
{
    double scale = std::pow(static_cast<double>(sys.m()), -static_cast<double>(idx.k));
    return std::sqrt(scale) * fourier_transform(sys, idx.nu, scale * xi) *
           std::polar(1.0, -2.0 * kPi * static_cast<double>(idx.j) * scale * xi);
}

std::complex<double> fourier_transform(const RealStep& f, double xi)
{
    std::complex<double> acc(0.0, 0.0);
    const auto& bp = f.breakpoints();
    for (std::size_t i = 0; i < f.values().size(); ++i)
        if (f.values()[i] != 0.0) acc += f.values()[i] * interval_transform(bp[i].get_d(), bp[i + 1].get_d(), xi);
    return acc;
}

std::vector<double> make_grid(double lo, double hi, int n, bool logarithmic)
{
    if (n < 1 || !(hi >= lo)) throw InvalidArgument("grid needs n >= 1 and lo <= hi");
    if (logarithmic && !(lo > 0)) throw InvalidArgument("logarithmic grid needs lo > 0");
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) {
        double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        xs.push_back(logarithmic ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo));
    }
    return xs;
}

ScaleSumReport scale_sum_inequality(const HaarSystem& sys, const std::vector<double>& xs, long K, double tol)
{
    if (K < 0) throw InvalidArgument("K must be >= 0");
    ScaleSumReport rep;
    const int m = sys.m();
    rep.m = m;
    rep.K = K;
    rep.points = xs.size();
    for (int nu = 1; nu < m; ++nu) rep.origin_max = std::max(rep.origin_max, std::abs(fourier_transform(sys, nu, 0.0)));
    for (double x : xs) {
        double sum = 0, prev = 0;
        for (long k = 0; k <= K; ++k) {
            double xi = x * std::pow(static_cast<double>(m), -static_cast<double>(k));
            for (int nu = 1; nu < m; ++nu) sum += std::norm(fourier_transform(sys, nu, xi));
            if (sum < prev) rep.monotone = false;
            prev = sum;
        }
        if (sum > rep.max_sum) {
            rep.max_sum = sum;
            rep.argmax = x;
        }
    }
    rep.pass = rep.max_sum <= 1.0 + tol && rep.monotone;
    return rep;
}

TranslatesReport translates_orthonormality(const RealStep& f, double t, long J)
{
    if (J < 2) throw InvalidArgument("J must be at least 2");
    TranslatesReport rep;
    rep.t = t;
    rep.J = J;
    const auto& v = f.values();
    double tv = 0;
    for (std::size_t i = 0; i < v.size(); ++i) tv += std::fabs(v[i] - (i == 0 ? 0.0 : v[i - 1]));
    if (!v.empty()) tv += std::fabs(v.back());
    for (long j = -J; j <= J; ++j) rep.sum += std::norm(fourier_transform(f, t + static_cast<double>(j)));
    rep.tail_bound = tv * tv / (4 * kPi * kPi) * 2.0 / static_cast<double>(J - 1);
    rep.pass = rep.sum >= 1.0 - rep.tail_bound && rep.sum <= 1.0 + 1e-9;
    return rep;
}

AnnihilatorReport annihilator_basis(const HaarSystem& sys, long N, long depth, bool two_sided, bool with_scaling,
                                    double threshold)
{
    if (N < 1 || depth < 1) throw InvalidArgument("annihilator needs N >= 1 and depth >= 1");
    const int m = sys.m();
    AnnihilatorReport rep;
    rep.m = m;
    rep.N = N;
    rep.depth = depth;
    rep.two_sided = two_sided;
    rep.with_scaling = with_scaling;
    const std::int64_t half = ipow64(m, N + depth); // level-depth cells per half
    const std::int64_t first = two_sided ? -half : 0;
    const auto n = static_cast<std::size_t>(two_sided ? 2 * half : half);
    rep.unknowns = n;

    struct Row {
        std::int64_t start; // first level-depth cell of the support
        int nu;
        long k;
    };
    std::vector<Row> rows;
    for (long k = -N; k < depth; ++k) {
        std::int64_t per = ipow64(m, N + k);
        for (std::int64_t j = two_sided ? -per : 0; j < per; ++j)
            for (int nu = 1; nu < m; ++nu) rows.push_back({j * ipow64(m, depth - k), nu, k});
    }
    if (with_scaling)
        for (std::int64_t j = two_sided ? -1 : 0; j < 1; ++j) rows.push_back({j * half, 0, -N});
    rep.constraints = rows.size();

    // Entries are h^(nu)(s) on the s-th sub-cell; the m^{k/2} and cell-length factors only rescale rows.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::int64_t width = ipow64(m, depth - rows[r].k - 1);
        for (int s = 0; s < m; ++s)
            for (std::int64_t t = 0; t < width; ++t)
                A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(rows[r].start + s * width + t - first)) =
                    sys.value(rows[r].nu, s);
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() > 0 ? sv(0) : 0.0;
    long rank = 0;
    rep.smallest_kept_singular = smax;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > threshold * std::max(1.0, smax)) {
            ++rank;
            rep.smallest_kept_singular = sv(i);
        } else {
            rep.largest_null_singular = std::max(rep.largest_null_singular, sv(i));
        }
    }
    rep.dimension = static_cast<long>(n) - rank;
    Eigen::MatrixXd Z = svd.matrixV().rightCols(rep.dimension);

    if (sys.exact()) {
        std::vector<std::vector<Rational>> q(rows.size(), std::vector<Rational>(n, Rational(0)));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            std::int64_t width = ipow64(m, depth - rows[r].k - 1);
            for (int s = 0; s < m; ++s)
                for (std::int64_t t = 0; t < width; ++t)
                    q[r][static_cast<std::size_t>(rows[r].start + s * width + t - first)] = sys.exact_value(rows[r].nu, s);
        }
        rep.exact_dimension = static_cast<long>(n) - rational_rank(std::move(q), n);
    }

    std::vector<Eigen::VectorXd> indicators;
    if (two_sided) {
        Eigen::VectorXd neg = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        Eigen::VectorXd pos = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        neg.head(static_cast<Eigen::Index>(half)).setOnes();
        pos.tail(static_cast<Eigen::Index>(half)).setOnes();
        indicators = {neg.normalized(), pos.normalized()};
    } else {
        indicators = {Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n)).normalized()};
    }
    for (const auto& chi : indicators) {
        Eigen::VectorXd proj = Z * (Z.transpose() * chi);
        rep.indicator_error = std::max(rep.indicator_error, (chi - proj).norm());
        rep.basis.emplace_back(proj.data(), proj.data() + proj.size());
    }
    return rep;
}

CMReport cm_classifier(const Weight& w, double p, int m, bool positive)
{
    CMReport rep;
    rep.half = positive ? "pos" : "neg";
    Domain d;
    d.kind = positive ? Domain::Kind::HalfLinePos : Domain::Kind::HalfLineNeg;
    rep.classifier = singularity_classifier(w, p, m, d);
    if (rep.classifier.complete && rep.classifier.minimal && rep.classifier.unique) rep.y = rep.classifier.unique;
    return rep;
}

DualCoefficient dual_wavelet_coefficient(const StepFunction& f, const HaarSystem& sys, const TaggedPoint& y,
                                         const WaveletIndex& idx)
{
    const int m = sys.m();
    if (idx.nu < 1 || idx.nu >= m) throw InvalidArgument("wavelet index nu must be in 1..m-1");
    if (y.is_finite()) y.validate(m);
    DualCoefficient out;
    double scale = std::pow(static_cast<double>(m), static_cast<double>(idx.k) / 2.0);
    Rational mass_pos = f.integrate(Segment::right_ray(0));
    std::vector<Rational> pieces;
    for (int s = 0; s < m; ++s)
        pieces.push_back(f.integrate(Segment::from(MAdicInterval(m, idx.k + 1, idx.j * m + s))));
    if (sys.exact()) {
        Rational r(0);
        for (int s = 0; s < m; ++s) r += sys.exact_value(idx.nu, s) * pieces[static_cast<std::size_t>(s)];
        Rational hy = reduced_wavelet_at(sys, idx.nu, idx.k, idx.j, y);
        r -= hy * mass_pos;
        out.reduced = r;
        out.value = scale * r.get_d();
        out.h_at_y = scale * hy.get_d();
    } else {
        double r = 0;
        for (int s = 0; s < m; ++s) r += sys.value(idx.nu, s) * pieces[static_cast<std::size_t>(s)].get_d();
        double hy = reduced_wavelet_at_real(sys, idx.nu, idx.k, idx.j, y);
        r -= hy * mass_pos.get_d();
        out.value = scale * r;
        out.h_at_y = scale * hy;
    }
    return out;
}

HalfVerdict half_verdict(const Weight& w, double p, int m, bool positive, long depth)
{
    if (!(p > 1.0)) throw InvalidArgument("basis verdicts need p > 1");
    HalfVerdict hv;
    hv.half = positive ? "pos" : "neg";
    hv.cm = cm_classifier(w, p, m, positive);
    Domain d;
    d.kind = positive ? Domain::Kind::HalfLinePos : Domain::Kind::HalfLineNeg;
    const auto& cls = hv.cm.classifier;
    if (!hv.cm.y) {
        hv.unconditional = Verdict::Fails;
        hv.exact = w.kind() != Weight::Kind::Step;
        hv.mp = check_mp(w, p, m, d, depth);
        for (const auto& pt : cls.points)
            if (pt.y.is_finite()) hv.singular_point_checks.push_back(check_mp_y(w, p, m, pt.y, d, -depth, depth));
        hv.evidence = !cls.complete ? "system is not complete: no singular point"
                                    : "system is not minimal: " + cls.note;
        return hv;
    }
    const TaggedPoint& y = *hv.cm.y;
    if (!y.is_finite()) {
        hv.mp = check_mp(w, p, m, d, depth);
        hv.unconditional = hv.mp->verdict;
        hv.exact = hv.mp->proof;
        hv.evidence = "y = " + y.to_string() + ": M_p on the half-line " + to_string(hv.mp->verdict) + " (" +
                      hv.mp->evidence + ")";
        return hv;
    }
    hv.mp = check_mp(w, p, m, d, depth, y);
    hv.mp_y = check_mp_y(w, p, m, y, d, -depth, depth);
    Verdict a = hv.mp->verdict, b = hv.mp_y->verdict;
    if (a == Verdict::Fails || b == Verdict::Fails) hv.unconditional = Verdict::Fails;
    else if (a == Verdict::Holds && b == Verdict::Holds) hv.unconditional = Verdict::Holds;
    else hv.unconditional = Verdict::Inconclusive;
    hv.exact = hv.mp->proof && hv.mp_y->proof;
    hv.evidence = "y = " + y.to_string() + ": M_p off y " + to_string(a) + ", M_p^y " + to_string(b);
    return hv;
}

BasisVerdict ucb_verdict(const Weight& w, double p, int m, long depth)
{
    BasisVerdict v;
    v.weight = w.spec();
    v.p = p;
    v.m = m;
    v.depth = depth;
    v.pos = half_verdict(w, p, m, true, depth);
    v.neg = half_verdict(w, p, m, false, depth);
    v.complete = v.pos.cm.classifier.complete && v.neg.cm.classifier.complete;
    v.minimal = v.pos.cm.classifier.minimal && v.neg.cm.classifier.minimal && v.pos.cm.y && v.neg.cm.y;
    v.y1 = v.pos.cm.y;
    v.y2 = v.neg.cm.y;
    Verdict a = v.pos.unconditional, b = v.neg.unconditional;
    if (a == Verdict::Fails || b == Verdict::Fails) v.unconditional = Verdict::Fails;
    else if (a == Verdict::Holds && b == Verdict::Holds) v.unconditional = Verdict::Holds;
    else v.unconditional = Verdict::Inconclusive;
    v.schauder = v.unconditional;
    v.exact = v.pos.exact && v.neg.exact;
    v.evidence = "R+: " + v.pos.evidence + "; R-: " + v.neg.evidence;
    return v;
}

HalflineReport halfline_experiment(const Weight& w, double p, const HaarSystem& sys, int trials, long depth,
                                   const std::vector<long>& Ns, std::uint64_t seed)
{
    HalflineReport rep;
    const int m = sys.m();
    rep.weight = w.spec();
    rep.p = p;
    rep.m = m;
    rep.depth = depth;
    rep.trials = trials;
    HalfVerdict hv = half_verdict(w, p, m, true, 8);
    if (hv.unconditional != Verdict::Holds) {
        rep.verdict = "skipped";
        rep.reason = "hypotheses not met: " + hv.evidence;
        return rep;
    }
    rep.hypotheses_met = true;
    rep.y = hv.cm.y;
    rep.branch = rep.y->is_finite() ? "pointed" : "infinity";
    Weight psi = w.pow(-1.0 / (p - 1.0));
    double pp = p / (p - 1.0);
    for (long N : Ns) {
        HalflineRow row;
        row.N = N;
        Rational big = m_power(m, N);
        row.tail_factor = Quantity(Rational(1) / big) * psi.integral(Segment::right_ray(big)).pow(1.0 / pp) *
                          w.integral(Segment::closed(0, big)).pow(1.0 / p);
        Weight wN = w.dilate(m, N);
        std::optional<TaggedPoint> yN;
        if (rep.y->is_finite()) yN = TaggedPoint::finite(rep.y->value() / big, rep.y->side());
        row.ratios = signflip_ratios(wN, p, sys, yN, trials, depth, derive_seed(seed, static_cast<std::uint64_t>(N)), false);
        row.ratios.depth = N;
        rep.rows.push_back(std::move(row));
    }
    std::vector<DepthRatios> series;
    for (const auto& r : rep.rows) series.push_back(r.ratios);
    rep.trend = sup_trend(series, false, 200, derive_seed(seed, 0x4a1fULL));
    rep.verdict = rep.trend.lo > 0 ? "growing" : "bounded";
    return rep;
}

} // namespace mhaar
