#pragma once

#include "mhaar/generators.hpp"
#include "mhaar/quantity.hpp"
#include "mhaar/step.hpp"
#include "mhaar/weight.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mhaar {

// l = nu + n (m - 1), n = m_k + j - 1 with m_k = 1 + m + ... + m^{k-1}, 1 <= j <= m^k.
// The wavelet h_l is h^(nu)_{k, j-1, m}, supported on [(j-1)/m^k, j/m^k].
struct CoeffIndex {
    long l = 0;
    int nu = 0;
    long k = 0;
    std::int64_t j = 1; // 1-based position within level k
    long n = 0;

    std::int64_t cell() const { return j - 1; }
};

long block_start(long k, int m); // m_k
long mu(long k, int m);          // mu_k = m^k - 1
CoeffIndex decode(long l, int m);
long encode(int nu, long k, std::int64_t j, int m);

// n = mu_k + j (m - 1) with 1 <= j <= m^k; n = 0 is the single cell [0, 1].
struct SpecialIndex {
    long k = 0;
    std::int64_t j = 0; // 0 only for n = 0
};
std::optional<SpecialIndex> special_index(long n, int m);
long special_n(long k, std::int64_t j, int m);

// Coefficients stored in reduced form r_l with a_l = m^{k/2} r_l, so a_l h_l = m^k r_l h^(nu)(...)
// is rational whenever the generator values are.
template <class V> struct Expansion {
    int m = 2;
    long cutoff = 0; // largest index l present
    std::vector<V> reduced;
    bool pointed = false;
    std::optional<TaggedPoint> point;
    std::string weight_spec;

    double coefficient(long l) const;
};

// Exact integrals of f over every level-`level` cell of [0, 1].
std::vector<Rational> cell_integrals(const StepFunction& f, int m, long level);

template <class V> Expansion<V> analyze(const StepFunction& f, const HaarSystem& sys, long cutoff);

// c_l = integral of f (h_l - h_l(y)), 1 <= l <= cutoff (slot 0 is 0).
template <class V>
Expansion<V> pointed_coefficients(const StepFunction& f, const HaarSystem& sys, const TaggedPoint& y, long cutoff,
                                  const std::string& weight_spec = {});

// sum_l mult(l) a_l h_l; mult defaults to 1.
template <class V> Step<V> synthesize(const Expansion<V>& e, const HaarSystem& sys, const std::vector<V>& mult = {});

template <class V> Step<V> reconstruct(const Expansion<V>& e, const HaarSystem& sys) { return synthesize(e, sys); }

struct KernelCell {
    MAdicInterval cell;
    Rational value; // 1 / |G|
};

// Diagonal blocks of K_kj: level-(k+1) cells 0..jm-1 followed by level-k cells j..m^k-1.
std::vector<KernelCell> kernel(long k, std::int64_t j, int m);
std::vector<KernelCell> kernel_for_n(long n, int m);

// Theta_n at a special index via cellwise averages (exact for every m).
StepFunction partial_sum_kernel(const StepFunction& f, int m, long k, std::int64_t j);
StepFunction partial_sum_kernel_n(const StepFunction& f, int m, long n);

// Theta_n by summing a_l h_l for l <= n.
template <class V> Step<V> partial_sum_coefficients(const StepFunction& f, const HaarSystem& sys, long n);

// Theta_n: kernel path at special indices, coefficient path otherwise.
template <class V> Step<V> partial_sum(const StepFunction& f, const HaarSystem& sys, long n);

// Pointed partial sum by the closed formula: averages off Delta_kj(y), minus the complementary
// average (scaled by 1/|Delta_kj(y)|) on Delta_kj(y).
StepFunction pointed_partial_sum_formula(const StepFunction& f, int m, const TaggedPoint& y, long k, std::int64_t j);

// Same quantity through sum_{l=1}^{n} c_l h_l.
template <class V>
Step<V> pointed_partial_sum_coefficients(const StepFunction& f, const HaarSystem& sys, const TaggedPoint& y, long n);

struct CompletenessResidual {
    int m = 2;
    long l = 1;
    double p = 2;
    double stated = 0;     // m^{1/2 + l(1/p - 1)}
    double closed_form = 0; // m^{-1/2 + l(1/p - 1)}, the norm of a_0 g_0
    double projection = 0; // L^p norm of the explicit projection residual
    double projection_vs_closed_form = 0;
    double projection_vs_stated = 0;
};

// Residual of phi_{1,j,m} after projecting onto the wavelets supported in [0, m^l].
CompletenessResidual completeness_residual(int m, long l, double p, const HaarSystem& sys, int j = 0);

struct BlockNorm {
    Quantity norm;
    std::size_t argmax = 0;
    std::vector<Quantity> per_cell;
};

// max_G |G|^{-1} w(G)^{1/p} (int_G w^{-1/(p-1)})^{1/p'}; the special cell (if any) uses the
// complement [0,1] \ G in the last factor. p = 1 uses |G|^{-1} w(G) ||w^{-1}||_{L^inf(G)}.
BlockNorm block_operator_norm(const std::vector<Segment>& cells, std::optional<std::size_t> special, const Weight& w,
                              double p);

} // namespace mhaar
