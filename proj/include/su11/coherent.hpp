#pragma once

#include <vector>

#include "su11/parallel.hpp"
#include "su11/types.hpp"

namespace su11 {

struct DiskPoint {
    cplx zeta;
    explicit DiskPoint(cplx z);
};

struct HalfPlanePoint {
    cplx eta;
    explicit HalfPlanePoint(cplx e);
};

DiskPoint to_disk(const HalfPlanePoint& p);        // (eta - i)/(eta + i)
HalfPlanePoint to_halfplane(const DiskPoint& p);   // i(1 + zeta)/(1 - zeta)

// |mu|^2 - |nu|^2 = 1
struct SU11Element {
    cplx mu, nu;
    SU11Element(cplx m, cplx n, double tol = 1e-12);
    static SU11Element identity() { return {1.0, 0.0}; }
    static SU11Element boost(double t, double phase = 0.0);
    static SU11Element rotation(double theta);  // mu = e^{-i theta}
};

// (g2 g1) as 2x2 matrices [[mu, nu], [nu*, mu*]]
SU11Element compose(const SU11Element& g2, const SU11Element& g1);
DiskPoint mobius_act(const SU11Element& g, const DiskPoint& z);

// ln sqrt(Gamma(lambda+n) / (n! Gamma(lambda)))
double log_g(double lambda, int n);
double coherent_tail_bound(double lambda, double r, int D);

State coherent_state(double lambda, const DiskPoint& z, int D, const Tolerances& tol = {});
State halfplane_state(double lambda, const HalfPlanePoint& p, int D, const Tolerances& tol = {});

// xi with U(xi)|0> proportional to |zeta>
cplx xi_of_zeta(cplx zeta);

Op displacement_unitary(cplx xi, double lambda, int D, const Tolerances& tol = {});
// U(xi) exp(i theta L0) for the factorization of g
Op group_unitary(const SU11Element& g, double lambda, int D, const Tolerances& tol = {});

double eigen_residual(const Op& X, const State& v, cplx ev, int margin = 1);

struct RoiResult {
    Op M;
    RVec diag_defect;    // |1 - M_nn|
    RVec cutoff_defect;  // analytic loss from |zeta| > r_max
    RVec corrected;      // |M_nn - (1 - cutoff_n)|
    double offdiag_max;
};

RoiResult resolution_of_identity(double lambda, int D, int radial_nodes, int angular_nodes,
                                 double r_max, Exec exec = Exec::parallel);

// regularized upper incomplete beta Q(n+1, lambda-1; t) = cutoff defect of |n> at t = r_max^2
double roi_cutoff(double lambda, int n, double t);

}  // namespace su11
