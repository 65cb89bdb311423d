#include "su11/squeezed.hpp"

#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace su11 {

BosonSpace boson_space(int D_b)
{
    if (D_b < 4 || D_b % 2)
        throw DomainError("boson dimension must be even and >= 4");
    Mat a = Mat::Zero(D_b, D_b), nb = Mat::Zero(D_b, D_b);
    for (int n = 1; n < D_b; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    for (int n = 0; n < D_b; ++n)
        nb(n, n) = n;
    const double s = std::sqrt(0.5);
    Mat ad = a.adjoint();
    Mat Q = s * (a + ad);
    Mat P = I_unit * s * (ad - a);
    const Basis b = Basis::boson_number;
    return {D_b, Op(a, b), Op(ad, b), Op(Q, b), Op(P, b), Op(nb, b)};
}

Mat sector_embedding(int D_b, Parity p)
{
    if (D_b % 2)
        throw DomainError("boson dimension must be even");
    const int h = D_b / 2;
    const int off = p == Parity::even ? 0 : 1;
    Mat J = Mat::Zero(D_b, h);
    for (int n = 0; n < h; ++n)
        J(2 * n + off, n) = n % 2 ? -1.0 : 1.0;
    return J;
}

SectorLadder su11_from_boson(const BosonSpace& B, Parity p)
{
    Mat J = sector_embedding(B.dim, p);
    const Mat& a = B.a.mat();
    const Mat& ad = B.ad.mat();
    Mat L0 = B.nb.mat() + 0.5 * Mat::Identity(B.dim, B.dim);
    Mat Lp = -0.5 * ad * ad;
    Mat Lm = 0.5 * a * a;
    auto r = [&](const Mat& X) { return Op(J.adjoint() * X * J, Basis::su11_number); };
    return {{r(L0), r(Lp), r(Lm)}, p == Parity::even ? 0.5 : 1.5};
}

SectorA sector_annihilator(const BosonSpace& B)
{
    // a_b^dag maps the even sector injectively into the odd one; solve
    // (a_b^dag J_e) X = a_b J_e in the odd coordinates
    Mat Je = sector_embedding(B.dim, Parity::even);
    Mat Jo = sector_embedding(B.dim, Parity::odd);
    Mat lhs = Jo.adjoint() * B.ad.mat() * Je;
    Mat rhs = Jo.adjoint() * B.a.mat() * Je;
    Mat X = lhs.householderQr().solve(rhs);
    const double res = max_abs(lhs * X - rhs) / std::max(1.0, max_abs(rhs));
    return {Op(-X, Basis::su11_number), res};
}

SqueezeParams::SqueezeParams(cplx m, cplx n, double tol) : mu(m), nu(n)
{
    if (std::abs(std::norm(m) - std::norm(n) - 1.0) > tol * std::max(1.0, std::norm(m)))
        throw DomainError("squeeze parameters need |mu|^2 - |nu|^2 = 1");
}

cplx SqueezeParams::xi() const
{
    const double am = std::abs(mu), an = std::abs(nu);
    if (an == 0.0)
        return 0.0;
    return std::polar(0.5 * std::log((am + an) / (am - an)), std::arg(nu / mu));
}

SqueezeParams from_xi(cplx xi)
{
    const double r = std::abs(xi);
    return {std::cosh(r), std::polar(std::sinh(r), std::arg(xi))};
}

State squeezed_vacuum(const SqueezeParams& p, int D_b, const Tolerances& tol)
{
    if (D_b < 4 || D_b % 2)
        throw DomainError("boson dimension must be even and >= 4");
    State c = coherent_state(0.5, DiskPoint(p.zeta()), D_b / 2, tol);
    Mat J = sector_embedding(D_b, Parity::even);
    return {J * c.coeffs(), Basis::boson_number};
}

double b_residual(const SqueezeParams& p, const BosonSpace& B, const State& v)
{
    Op b = p.mu * B.a + p.nu * B.ad;
    return apply(b, v).norm();
}

CharacteristicReport characteristic_equations_check(const SqueezeParams& p, int D_b,
                                                    const Tolerances& tol)
{
    BosonSpace B = boson_space(D_b);
    State v = squeezed_vacuum(p, D_b, tol);
    Mat Je = sector_embedding(D_b, Parity::even);
    Mat Jo = sector_embedding(D_b, Parity::odd);
    Vec ve = Je.adjoint() * v.coeffs();

    CharacteristicReport r{};
    // Q^{-1} P on the even sector: P v is odd, Q maps even -> odd
    Mat Qeo = Jo.adjoint() * B.Q.mat() * Je;
    Vec Pv = Jo.adjoint() * (B.P.mat() * v.coeffs());
    Vec y = Qeo.householderQr().solve(Pv);
    r.solve_res_Q = (Qeo * y - Pv).norm() / std::max(1.0, Pv.norm());
    Eigen::BDCSVD<Mat> svd(Qeo);
    r.cond_Q = svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
    r.eig_QinvP = I_unit * (p.mu + p.nu) / (p.mu - p.nu);
    r.res_QinvP = (y - r.eig_QinvP * ve).norm();

    Mat ade = Jo.adjoint() * B.ad.mat() * Je;
    Vec av = Jo.adjoint() * (B.a.mat() * v.coeffs());
    Vec z = ade.householderQr().solve(av);
    r.solve_res_ad = (ade * z - av).norm() / std::max(1.0, av.norm());
    r.eig_adinv_a = p.nu / p.mu;
    r.res_adinv_a = (-z - r.eig_adinv_a * ve).norm();
    return r;
}

Reduction multiparticle_reduction(int n)
{
    if (n < 1)
        throw DomainError("particle number must be >= 1");
    const double k = n / 4.0 - 0.5;
    const double lambda = 2.0 * k + 1.0;
    return {n, k, lambda, lambda >= 1.0};
}

double product_overlap_sq(int n, cplx z1, cplx z2, int D)
{
    State a = coherent_state(0.5, DiskPoint(z1), D);
    State b = coherent_state(0.5, DiskPoint(z2), D);
    return std::pow(std::norm(inner(a, b)), n);
}

}  // namespace su11
