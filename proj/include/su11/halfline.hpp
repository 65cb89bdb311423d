#pragma once

#include <memory>

#include <Eigen/Sparse>

#include "su11/coherent.hpp"
#include "su11/types.hpp"

namespace su11 {

using SpMat = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

struct AffineParams {
    double k;
    explicit AffineParams(double kk);
    double lambda() const { return 2.0 * k + 1.0; }
};

enum class GridScheme { uniform, log };

struct Grid {
    RVec x, w;
    GridScheme scheme;
    double h;  // spacing in x (uniform) or in s = ln x (log)

    int size() const { return static_cast<int>(x.size()); }

    // x_i = exp(s_i), s uniform on [ln xmin, ln xmax], trapezoid weights in s
    // plus the slab [0, xmin] lumped onto the first node unless lump_origin is off
    static std::shared_ptr<const Grid> log_grid(double xmin = 1e-6, double xmax = 60.0, int G = 2048,
                                                bool lump_origin = true);
    // x_i = i h, i = 1..G, h = xmax/G; trapezoid with the implicit node at 0
    static std::shared_ptr<const Grid> uniform_grid(double xmax = 60.0, int G = 2048);

    // max relative error of sum w x^{2k} e^{-x} against Gamma(2k+1)
    double moment_error(double k) const;
};

using GridPtr = std::shared_ptr<const Grid>;

struct GridFunction {
    GridPtr grid;
    Vec values;
    double norm() const;
};

cplx overlap(const GridFunction& f, const GridFunction& g);

double sonine(int n, double l, double x);
double sonine_sum(int n, double l, double x);

GridFunction basis_fn(int n, const AffineParams& k, const GridPtr& grid, double tol = 1e-3);
GridFunction affine_coherent(const HalfPlanePoint& eta, const AffineParams& k, const GridPtr& grid,
                             double tol = 1e-3);

// closed form of <n|eta> on the half-line, including the phase relative to the
// abstract coherent-state coefficient: e^{-i lambda arg(1 - i eta)} c_n(zeta(eta))
cplx affine_fock_overlap(int n, const AffineParams& k, const HalfPlanePoint& eta);

struct GridOps {
    GridPtr grid;
    double k;
    SpMat D1;  // d/dx
    SpMat Q, Qinv, P;
    SpMat E0, Eplus, Eminus;
    SpMat L0, Lplus, Lminus;
    SpMat A, A_star;
};

// 4th-order differences (in s for log grids), one-sided closure at both ends
GridOps grid_operators(const AffineParams& k, const GridPtr& grid);

GridFunction apply(const SpMat& X, const GridFunction& f);

// <b_m | X b_n> over the first M basis functions
Mat galerkin(const SpMat& X, const std::vector<GridFunction>& basis);

// W^{-1} X^H W with W = diag(weights)
SpMat weighted_adjoint(const SpMat& X, const Grid& g);

}  // namespace su11
