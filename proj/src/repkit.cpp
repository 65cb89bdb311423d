#include "su11/repkit.hpp"

#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace su11 {

LowestWeight::LowestWeight(double l) : lambda(l)
{
    if (!(l > 0) || !std::isfinite(l))
        throw DomainError("lowest weight lambda must be > 0");
}

static void check_args(double lambda, int D)
{
    LowestWeight{lambda};
    if (D < 2)
        throw DomainError("truncation dimension D must be >= 2");
}

Ladder build_ladder(double lambda, int D)
{
    check_args(lambda, D);
    Mat L0 = Mat::Zero(D, D), Lp = Mat::Zero(D, D), Lm = Mat::Zero(D, D);
    for (int n = 0; n < D; ++n)
        L0(n, n) = lambda + 2.0 * n;
    for (int n = 0; n + 1 < D; ++n) {
        const double v = std::sqrt((n + 1.0) * (lambda + n));
        Lp(n + 1, n) = v;
        Lm(n, n + 1) = -v;
    }
    return {Op(L0, Basis::su11_number), Op(Lp, Basis::su11_number), Op(Lm, Basis::su11_number)};
}

ETriplet build_e_triplet(double lambda, int D)
{
    auto [L0, Lp, Lm] = build_ladder(lambda, D);
    const cplx h = 0.5 * I_unit;
    return {Lp + Lm, h * (L0 - Lp + Lm), -h * (L0 + Lp - Lm)};
}

CasimirResult casimir(double lambda, int D)
{
    auto [L0, Lp, Lm] = build_ladder(lambda, D);
    auto [E0, Ep, Em] = build_e_triplet(lambda, D);
    Op C = L0 * L0 - 2.0 * L0 + 4.0 * (Lp * Lm);
    Op Ce = E0 * E0 + 2.0 * (Ep * Em + Em * Ep);
    double dev = 0.0;
    if (D > 4)
        dev = max_abs(interior_block(C - Ce, 2).mat());
    return {C, Ce, dev};
}

APair build_a_pair(double lambda, int D)
{
    check_args(lambda, D);
    Mat a = Mat::Zero(D, D);
    // a|0> = 0, also at lambda = 1 where the formula reads 0/0
    for (int n = 1; n < D; ++n)
        a(n - 1, n) = std::sqrt(n / (n + lambda - 1.0));
    Op A(a, Basis::su11_number);
    return {A, A.adjoint()};
}

Op number_op(double lambda, int D)
{
    check_args(lambda, D);
    Mat N = Mat::Zero(D, D);
    for (int n = 0; n < D; ++n)
        N(n, n) = n;
    return {N, Basis::su11_number};
}

Mat eplus_rect(double lambda, int D)
{
    auto t = build_e_triplet(lambda, D + 1);
    return t.Eplus.mat().leftCols(D);
}

CayleyResult cayley_A(double lambda, int D, const Tolerances& tol)
{
    auto [a, as] = build_a_pair(lambda, D);
    const Mat Id = Mat::Identity(D, D);
    const Mat amI = a.mat() - Id;
    // a - I is upper triangular with unit-modulus diagonal
    Mat inv = amI.triangularView<Eigen::Upper>().solve(Id);
    Mat A = -I_unit * (a.mat() + Id) * inv;

    Eigen::BDCSVD<Mat> svd(amI);
    const auto& s = svd.singularValues();
    const double cond = s(0) / s(s.size() - 1);

    // E+ A = (E0 - lambda)/2 holds exactly on the (D+1) x D block since A is upper triangular
    auto t = build_e_triplet(lambda, D + 1);
    Mat F = t.Eplus.mat().leftCols(D);
    Mat rhs = 0.5 * (t.E0.mat() - lambda * Mat::Identity(D + 1, D + 1)).leftCols(D);
    Mat Y = F.householderQr().solve(rhs);
    const double scale = std::max(1.0, max_abs(rhs));
    const double res = max_abs(F * Y - rhs) / scale;
    const double dev = max_abs(A - Y);

    if (res > tol.algebraic)
        throw TruncationError("least-squares residual for E+ A = (E0 - lambda)/2 exceeds tolerance");
    return {Op(A, Basis::su11_number), cond, dev, res};
}

double cayley_commutator_residual(double lambda, int D, int m)
{
    if (m < 1 || D <= m + 1)
        throw DomainError("need D > m + 1");
    auto cr = cayley_A(lambda, D);
    const Mat& A = cr.A.mat();
    Mat F = eplus_rect(lambda, D).topRows(D).leftCols(m);
    Mat AF = A.adjoint() * F;
    Mat BF = A * F;
    Mat P1 = AF.adjoint() * AF;  // F^dag A A^dag F
    Mat P2 = BF.adjoint() * BF;  // F^dag A^dag A F
    Mat R = P1 - P2 - (lambda - 1.0) * Mat::Identity(m, m);
    return max_abs(R) / std::max(1.0, std::max(max_abs(P1), max_abs(P2)));
}

Mat interior_block(const Mat& X, int margin)
{
    const int D = static_cast<int>(X.rows());
    if (margin < 0 || 2 * margin >= D)
        throw DomainError("interior margin must satisfy 0 <= margin < dim/2");
    return X.topLeftCorner(D - margin, D - margin);
}

Op interior_block(const Op& X, int margin)
{
    return {interior_block(X.mat(), margin), X.basis()};
}

}  // namespace su11
