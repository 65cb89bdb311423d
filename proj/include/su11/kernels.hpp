#pragma once

#include <cstdint>
#include <vector>

#include "su11/parallel.hpp"
#include "su11/types.hpp"

namespace su11 {

using CoeffTable = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// M_mn = sum_j V_mj conj(V_nj); parallel path sums each entry in node order
Mat gram(const CoeffTable& V, Exec exec);

// h(z) = sum_n coef_n z^n at every point (Horner)
std::vector<cplx> eval_poly(const Vec& coef, const std::vector<cplx>& z, Exec exec);

// sum_j w_j f_j with a fixed pairwise tree, independent of thread count
double fixed_sum(const std::vector<double>& v);
cplx fixed_sum(const std::vector<cplx>& v);

// y = A x for a dense operator, row-parallel
Vec matvec(const Mat& A, const Vec& x, Exec exec);

}  // namespace su11
