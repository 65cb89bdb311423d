#pragma once

#include "su11/coherent.hpp"
#include "su11/repkit.hpp"
#include "su11/types.hpp"

namespace su11 {

struct BosonSpace {
    int dim;
    Op a, ad, Q, P, nb;
};

BosonSpace boson_space(int D_b);

enum class Parity { even, odd };

// D_b x D_b/2 isometry |n>_N -> (-1)^n |2n (+1)>
Mat sector_embedding(int D_b, Parity p);

struct SectorLadder {
    Ladder L;       // restricted, in the |n>_N basis of the sector
    double lambda;  // 1/2 (even) or 3/2 (odd)
};

SectorLadder su11_from_boson(const BosonSpace& B, Parity p = Parity::even);

struct SectorA {
    Op a;                   // -(a_b^dag)^{-1} a_b on the sector
    double solve_residual;  // relative least-squares residual
};

SectorA sector_annihilator(const BosonSpace& B);

struct SqueezeParams {
    cplx mu, nu;
    SqueezeParams(cplx m, cplx n, double tol = 1e-12);
    cplx zeta() const { return nu / mu; }
    cplx xi() const;  // (1/2) e^{i arg(nu/mu)} ln((|mu|+|nu|)/(|mu|-|nu|))
};

// squeeze parameters with |mu|^2 - |nu|^2 = 1 from the xi parameter
SqueezeParams from_xi(cplx xi);

State squeezed_vacuum(const SqueezeParams& p, int D_b, const Tolerances& tol = {});
// ||(mu a_b + nu a_b^dag) v||
double b_residual(const SqueezeParams& p, const BosonSpace& B, const State& v);

struct CharacteristicReport {
    cplx eig_QinvP;        // i(mu+nu)/(mu-nu)
    double res_QinvP;      // ||Q^{-1} P v - eig v||
    cplx eig_adinv_a;      // nu/mu
    double res_adinv_a;    // ||-(a^dag)^{-1} a v - eig v||
    double solve_res_Q;    // least-squares residuals
    double solve_res_ad;
    double cond_Q;
};

CharacteristicReport characteristic_equations_check(const SqueezeParams& p, int D_b,
                                                    const Tolerances& tol = {});

struct Reduction {
    int n;
    double k, lambda;
    bool subnormal;
};

Reduction multiparticle_reduction(int n_particles);

// |<zeta1|zeta2>|^{2n} for the n-fold product of lambda = 1/2 coherent states
double product_overlap_sq(int n, cplx z1, cplx z2, int D);

}  // namespace su11
