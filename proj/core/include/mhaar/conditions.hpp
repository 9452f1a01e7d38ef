#pragma once

#include "mhaar/lattice.hpp"
#include "mhaar/quantity.hpp"
#include "mhaar/weight.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mhaar {

enum class Verdict { Holds, Fails, Inconclusive };
std::string to_string(Verdict v);

struct LevelConstant {
    long level = 0;
    Quantity value;
    std::optional<Segment> witness;
};

struct WeightReport {
    std::string condition;
    double p = 2;
    int m = 2;
    std::string region;
    std::string weight;
    std::optional<TaggedPoint> point; // excluded point (M_p) or chain point (M_p^y)
    std::vector<LevelConstant> per_depth;
    Quantity sup;
    std::optional<Segment> witness;
    Verdict verdict = Verdict::Inconclusive;
    std::string trend;    // flat | growing | decreasing | mixed
    std::string evidence; // how the verdict was reached
    bool proof = false;   // verdict follows from exponent analysis or a divergent integral
    long depth_limit = 0;
    std::size_t cells_checked = 0;
};

// |D|^{-p} w(D) (int_D w^{-1/(p-1)})^{p-1}; p = 1: ||w^{-1}||_inf(D) w(D) / |D|.
Quantity mp_constant(const Weight& w, double p, const Segment& cell);

// Lattice cells of `region` at one level: all cells for bounded regions, |index| <= m^window otherwise.
std::vector<MAdicInterval> region_cells(const Domain& region, int m, long level, long window);

// sup of mp_constant over lattice cells up to depth D; cells containing `excluded`
// (tag-aware) are dropped.
WeightReport check_mp(const Weight& w, double p, int m, const Domain& region, long depth,
                      const std::optional<TaggedPoint>& excluded = std::nullopt);

// Pointed constants w(D_j(y)) (int_{region \ D_j(y)} w^{-1/(p-1)})^{p-1} / |D_j(y)|^p, j_min <= j <= j_max.
WeightReport check_mp_y(const Weight& w, double p, int m, const TaggedPoint& y, const Domain& region, long j_min,
                        long j_max);
Quantity mp_y_constant(const Weight& w, double p, int m, const TaggedPoint& y, const Segment& region, long j);

struct MinftySample {
    Segment cell;
    std::string subset;
    double mass_ratio = 0;   // w(E) / w(D)
    double length_ratio = 0; // |E| / |D|
};

struct MinftyReport {
    double delta = 0;              // largest delta with C = 1 over all samples
    double delta_aligned_left = 0; // same, prefix subsets only
    double delta_aligned_right = 0;
    double c_at_delta_one = 0;     // max mass_ratio / length_ratio
    std::vector<std::pair<double, double>> curve; // (delta, fitted C)
    MinftySample worst;
    std::size_t samples = 0;
    long depth = 0;
};

MinftyReport check_minfty(const Weight& w, int m, const Domain& region, long depth, std::uint64_t seed = 1,
                          int random_subsets = 8);

struct ConjugateReport {
    WeightReport original;
    WeightReport conjugate;
    double max_identity_error = 0; // relative |C_{p'}(psi) - C_p(w)^{1/(p-1)}|
    bool pass = false;
};

ConjugateReport conjugate_weight_check(const Weight& w, double p, int m, const Domain& region, long depth);

struct RingRatioReport {
    bool precondition_ok = false;
    std::string reason;
    double c_p = 0;
    double q_p = 0;
    std::vector<Quantity> ratios; // ratio at j = 1..J
    Quantity min_ratio;
    bool pass = false;
};

double ring_q(double c_p, double p, int m);

RingRatioReport ring_ratio_check(const Weight& w, double p, int m, const TaggedPoint& y, const Domain& region, long J,
                                 std::optional<double> c_p = std::nullopt);

struct DilationReport {
    long N = 0;
    long level = 0;
    double max_relative_error = 0;
    bool exact = true; // every compared pair was exact and equal
    std::size_t compared = 0;
    bool pass = false;
};

// mp_constant(w(m^N .), E) against mp_constant(w, m^N E) over level-`level` cells of [0,1];
// with y, the pointed constants on [0,1] against those of w on [0, m^N].
DilationReport dilation_transfer_check(const Weight& w, double p, int m, long N, long level,
                                       const std::optional<TaggedPoint>& y = std::nullopt);

struct TailReport {
    bool integrable_at_infinity = false;
    bool skipped = false;
    std::string reason;
    std::vector<Quantity> ratios; // w([0,m^{j+1}]) / w([m^j, m^{j+1}])
    std::vector<Quantity> masses; // w([0, m^j])
    Quantity max_ratio;
    bool ratios_bounded = false;
    bool masses_unbounded = false;
    bool pass = false;
};

TailReport tail_mass_check(const Weight& w, double p, int m, long J);

struct SingularPoint {
    TaggedPoint y;
    bool completeness = false; // 1/w not in L^{1/(p-1)}(D_j(y)) for all j
    bool minimality = false;   // 1/w in L^{1/(p-1)}(region \ D_j(y)) for all j
    std::string reason;
};

struct SingularityReport {
    std::vector<SingularPoint> points; // points satisfying the completeness condition
    bool complete = false;
    bool minimal = false;
    bool degenerate = false; // weight vanishes on a set of positive measure
    std::optional<TaggedPoint> unique;
    std::string note;
};

SingularityReport singularity_classifier(const Weight& w, double p, int m, const Domain& region);

// Exponent analysis for Unit / power weights; nullopt when it does not apply.
std::optional<bool> analytic_mp(const Weight& w, double p, const Segment& region,
                                const std::optional<TaggedPoint>& excluded);
std::optional<bool> analytic_mp_y(const Weight& w, double p, const TaggedPoint& y, const Segment& region);

} // namespace mhaar
