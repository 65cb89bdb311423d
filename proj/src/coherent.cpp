#include "su11/coherent.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "su11/expm.hpp"
#include "su11/kernels.hpp"
#include "su11/quadrature.hpp"
#include "su11/repkit.hpp"

namespace su11 {

DiskPoint::DiskPoint(cplx z) : zeta(z)
{
    if (!(std::abs(z) < 1.0))
        throw DomainError("disk point must satisfy |zeta| < 1");
}

HalfPlanePoint::HalfPlanePoint(cplx e) : eta(e)
{
    if (!(e.imag() > 0.0))
        throw DomainError("half-plane point must satisfy Im eta > 0");
}

DiskPoint to_disk(const HalfPlanePoint& p) { return DiskPoint((p.eta - I_unit) / (p.eta + I_unit)); }

HalfPlanePoint to_halfplane(const DiskPoint& p)
{
    return HalfPlanePoint(I_unit * (1.0 + p.zeta) / (1.0 - p.zeta));
}

SU11Element::SU11Element(cplx m, cplx n, double tol) : mu(m), nu(n)
{
    if (std::abs(std::norm(m) - std::norm(n) - 1.0) > tol * std::max(1.0, std::norm(m)))
        throw DomainError("SU(1,1) element needs |mu|^2 - |nu|^2 = 1");
}

SU11Element SU11Element::boost(double t, double phase)
{
    return {std::cosh(t), std::polar(std::sinh(t), phase)};
}

SU11Element SU11Element::rotation(double theta) { return {std::polar(1.0, -theta), 0.0}; }

SU11Element compose(const SU11Element& g2, const SU11Element& g1)
{
    const cplx mu = g2.mu * g1.mu + std::conj(g2.nu) * g1.nu;
    const cplx nu = std::conj(g2.mu) * g1.nu + g2.nu * g1.mu;
    return {mu, nu, 1e-9};
}

DiskPoint mobius_act(const SU11Element& g, const DiskPoint& z)
{
    return DiskPoint((std::conj(g.mu) * z.zeta + g.nu) / (std::conj(g.nu) * z.zeta + g.mu));
}

double log_g(double lambda, int n)
{
    return 0.5 * (std::lgamma(lambda + n) - std::lgamma(n + 1.0) - std::lgamma(lambda));
}

double coherent_tail_bound(double lambda, double r, int D)
{
    if (r == 0.0)
        return 0.0;
    return std::exp(D * std::log(r) + log_g(lambda, D));
}

State coherent_state(double lambda, const DiskPoint& z, int D, const Tolerances& tol)
{
    LowestWeight{lambda};
    if (D < 2)
        throw DomainError("D must be >= 2");
    const double r = std::abs(z.zeta);
    if (coherent_tail_bound(lambda, r, D) >= tol.quadrature)
        throw TruncationError("coherent state tail bound exceeds quadrature_tol at this D");
    Vec c(D);
    const double lpre = 0.5 * lambda * std::log1p(-r * r);
    const double phase = std::arg(z.zeta);
    for (int n = 0; n < D; ++n) {
        if (r == 0.0) {
            c(n) = n == 0 ? std::exp(lpre) : 0.0;
            continue;
        }
        c(n) = std::polar(std::exp(lpre + log_g(lambda, n) + n * std::log(r)), n * phase);
    }
    return {c, Basis::su11_number};
}

State halfplane_state(double lambda, const HalfPlanePoint& p, int D, const Tolerances& tol)
{
    return coherent_state(lambda, to_disk(p), D, tol);
}

cplx xi_of_zeta(cplx zeta)
{
    const double r = std::abs(zeta);
    if (r == 0.0)
        return 0.0;
    return std::polar(std::atanh(r), std::arg(zeta));
}

Op displacement_unitary(cplx xi, double lambda, int D, const Tolerances& tol)
{
    auto L = build_ladder(lambda, D);
    if (coherent_tail_bound(lambda, std::tanh(std::abs(xi)), D) >= tol.quadrature)
        throw TruncationError("displacement tail bound exceeds quadrature_tol at this D");
    // xi L+ - xi* L+^dag with L+^dag = -L-
    Mat X = xi * L.Lplus.mat() + std::conj(xi) * L.Lminus.mat();
    return {expm(X), Basis::su11_number};
}

Op group_unitary(const SU11Element& g, double lambda, int D, const Tolerances& tol)
{
    const double theta = -std::arg(g.mu);
    const double r = std::acosh(std::max(1.0, std::abs(g.mu)));
    const cplx xi = std::abs(g.nu) == 0.0 ? cplx(0.0) : std::polar(r, std::arg(g.nu) - std::arg(g.mu));
    Op U = displacement_unitary(xi, lambda, D, tol);
    Mat R = Mat::Zero(D, D);
    for (int n = 0; n < D; ++n)
        R(n, n) = std::polar(1.0, theta * (lambda + 2.0 * n));
    return U * Op(R, Basis::su11_number);
}

double eigen_residual(const Op& X, const State& v, cplx ev, int margin)
{
    State w = apply(X, v);
    const int keep = v.dim() - margin;
    if (keep < 1)
        throw DomainError("margin too large");
    return (w.coeffs().head(keep) - ev * v.coeffs().head(keep)).norm();
}

double roi_cutoff(double lambda, int n, double t)
{
    return boost::math::ibetac(n + 1.0, lambda - 1.0, t);
}

RoiResult resolution_of_identity(double lambda, int D, int radial_nodes, int angular_nodes,
                                 double r_max, Exec exec)
{
    if (!(lambda > 1.0))
        throw DomainError("resolution of identity requires lambda > 1: the integral diverges for lambda <= 1");
    if (!(r_max > 0.0 && r_max < 1.0))
        throw DomainError("r_max must lie in (0, 1)");
    if (D < 2)
        throw DomainError("D must be >= 2");

    const double T = r_max * r_max;
    Rule rt = gauss_legendre(radial_nodes, 0.0, T);
    Rule ra = uniform_angles(angular_nodes);

    // mu(dzeta) = dt dtheta / (2 pi (1-t)^2); fold sqrt of (lambda-1) * weight into the columns
    const int N = radial_nodes * angular_nodes;
    CoeffTable V(D, N);
    std::vector<double> lg(D);
    for (int n = 0; n < D; ++n)
        lg[n] = log_g(lambda, n);
    for (int i = 0; i < radial_nodes; ++i) {
        const double t = rt.x[i];
        const double r = std::sqrt(t);
        const double base = 0.5 * std::log((lambda - 1.0) * rt.w[i] / (2.0 * std::numbers::pi)) +
                            0.5 * (lambda - 2.0) * std::log1p(-t);
        for (int j = 0; j < angular_nodes; ++j) {
            const int col = i * angular_nodes + j;
            const double lw = base + 0.5 * std::log(ra.w[j]);
            for (int n = 0; n < D; ++n) {
                const double lm = lw + lg[n] + (n > 0 ? n * std::log(r) : 0.0);
                V(n, col) = std::polar(std::exp(lm), n * ra.x[j]);
            }
        }
    }

    Mat M = gram(V, exec);
    RoiResult out{Op(M, Basis::su11_number), RVec(D), RVec(D), RVec(D), 0.0};
    for (int n = 0; n < D; ++n) {
        out.diag_defect(n) = std::abs(1.0 - M(n, n));
        out.cutoff_defect(n) = roi_cutoff(lambda, n, T);
        out.corrected(n) = std::abs(M(n, n) - (1.0 - out.cutoff_defect(n)));
    }
    Mat off = M;
    off.diagonal().setZero();
    out.offdiag_max = max_abs(off);
    return out;
}

}  // namespace su11
