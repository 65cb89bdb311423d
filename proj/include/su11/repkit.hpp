#pragma once

#include "su11/types.hpp"

namespace su11 {

struct LowestWeight {
    double lambda;
    explicit LowestWeight(double l);
    operator double() const { return lambda; }
};

struct Ladder {
    Op L0, Lplus, Lminus;
};

struct ETriplet {
    Op E0, Eplus, Eminus;
};

struct APair {
    Op a, a_star;
};

struct CasimirResult {
    Op C;                   // L0^2 - 2 L0 + 4 L+ L-
    Op C_e;                 // E0^2 + 2(E+ E- + E- E+)
    double form_deviation;  // max |C - C_e| on interior_block(., 2)
};

struct CayleyResult {
    Op A;
    double cond_a_minus_I;
    double form_deviation;  // max |A - Y| where E+ Y = (E0 - lambda)/2, least squares
    double solve_residual;  // relative residual of that least-squares system
};

Ladder build_ladder(double lambda, int D);
ETriplet build_e_triplet(double lambda, int D);
CasimirResult casimir(double lambda, int D);
APair build_a_pair(double lambda, int D);
Op number_op(double lambda, int D);
CayleyResult cayley_A(double lambda, int D, const Tolerances& tol = {});

// F^dag (A A^dag - A^dag A) F - (lambda-1) I_m with F the first m columns of E+;
// returns max-abs residual relative to max(1, |F^dag A A^dag F|)
double cayley_commutator_residual(double lambda, int D, int m);

Op interior_block(const Op& X, int margin);
Mat interior_block(const Mat& X, int margin);

// rectangular E+ (rows 0..D, cols 0..D-1) of the D+1 truncation
Mat eplus_rect(double lambda, int D);

}  // namespace su11
