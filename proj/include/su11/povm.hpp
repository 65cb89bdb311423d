#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "su11/coherent.hpp"
#include "su11/parallel.hpp"
#include "su11/types.hpp"

namespace su11 {

// Outcome convention: the disk POVM of a* is reported in the label zeta (the
// eigenvalue of a), with effect (lambda-1)|zeta*><zeta*| mu(dzeta). The half-plane
// POVM of A* is parametrized by eta in the upper half-plane with effect
// (lambda-1)|eta><eta| nu(deta); the corresponding outcome value is conj(eta).
class DiskDensity {
public:
    DiskDensity(double lambda, const State& psi);
    double lambda() const { return lambda_; }
    const State& psi() const { return psi_; }
    // coefficients g_n psi_n of h(z) = sum g_n psi_n z^n
    const Vec& poly() const { return poly_; }

    double operator()(cplx zeta) const;
    std::vector<double> eval(const std::vector<cplx>& zetas, Exec exec = Exec::parallel) const;

private:
    double lambda_;
    State psi_;
    Vec poly_;
};

class HalfPlaneDensity {
public:
    HalfPlaneDensity(double lambda, const State& psi);
    double lambda() const { return disk_.lambda(); }
    const DiskDensity& disk() const { return disk_; }

    // density w.r.t. d^2 eta
    double operator()(cplx eta) const;
    std::vector<double> eval(const std::vector<cplx>& etas, Exec exec = Exec::parallel) const;

private:
    DiskDensity disk_;
};

double disk_density(double lambda, const State& psi, cplx zeta);
double halfplane_density(double lambda, const State& psi, cplx eta);

struct QuadSpec {
    int radial = 800;
    int angular = 128;
    double r_max = 0.9999;
};

struct Moments {
    cplx mean;
    double second;
    double mass;
    double cutoff_bound;  // analytic mass lost beyond r_max
};

// disk POVM of a*: integrates zeta and |zeta|^2
Moments mean_and_second_moment(const DiskDensity& d, const QuadSpec& q, Exec exec = Exec::parallel);
// half-plane POVM of A*: integrates conj(eta) and |eta|^2 via the Cayley pullback
Moments mean_and_second_moment(const HalfPlaneDensity& d, const QuadSpec& q,
                               Exec exec = Exec::parallel);

struct SampleBatch {
    std::vector<cplx> outcomes;
    std::uint64_t seed;
    double acceptance_rate;
    double bound;        // envelope constant used for rejection
    int bound_violations;
};

SampleBatch sample(const DiskDensity& d, long n, std::uint64_t seed, double r_max = 0.9999,
                   Exec exec = Exec::parallel);

// analytic CDF of t = |zeta|^2 under the radial proposal, truncated at r_max^2
double radial_cdf(double lambda, double t, double t_max);
double ks_statistic(std::vector<double> samples, double lambda, double t_max);
double ks_critical(long n, double alpha);

// min eigenvalue of interior_block(S^dag S - S S^dag, margin)
double hyponormality_gap(const Op& S, int margin);

struct FinitePOVM {
    std::vector<Mat> effects;
    int dim() const { return effects.empty() ? 0 : static_cast<int>(effects[0].rows()); }
    // throws DomainError on a non-PSD effect or sum defect
    void validate(double tol) const;
};

struct NaimarkDilation {
    Mat V;  // (D K) x D isometry
    FinitePOVM projective;
};

NaimarkDilation naimark_dilate(const FinitePOVM& M, double tol = 1e-12);
Mat psd_sqrt(const Mat& X);

enum class SubnormalOp { a_star, A_star };

struct ConsistencyRow {
    int index;
    cplx mean, mean_exact;
    double second, second_exact;
    double mean_defect, second_defect;
    double cutoff_bound;
};

// For A* the exact second moment is finite only for lambda > 2 (reported as inf otherwise)
std::vector<ConsistencyRow> eigenvector_povm_consistency(double lambda, const std::vector<State>& psis,
                                                         const QuadSpec& q,
                                                         SubnormalOp op = SubnormalOp::a_star);

}  // namespace su11
