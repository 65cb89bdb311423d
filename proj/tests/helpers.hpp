#pragma once

#include <algorithm>
#include <random>

#include "su11/types.hpp"

namespace th {

using su11::Mat;
using su11::cplx;

// max-abs residual over the magnitude of the largest operand entering it
inline double rel(const Mat& residual, std::initializer_list<double> scales)
{
    double s = 1.0;
    for (double v : scales)
        s = std::max(s, v);
    return su11::max_abs(residual) / s;
}

inline Mat random_unitary(int D, std::mt19937_64& rng)
{
    std::normal_distribution<double> N01;
    Mat G(D, D);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j)
            G(i, j) = cplx(N01(rng), N01(rng));
    Eigen::HouseholderQR<Mat> qr(G);
    Mat Q = qr.householderQ();
    Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < D; ++i)
        Q.col(i) *= std::polar(1.0, std::arg(R(i, i)));
    return Q;
}

inline su11::Vec random_vec(int D, std::mt19937_64& rng)
{
    std::normal_distribution<double> N01;
    su11::Vec v(D);
    for (int i = 0; i < D; ++i)
        v(i) = cplx(N01(rng), N01(rng));
    return v.normalized();
}

}  // namespace th
