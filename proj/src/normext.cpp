#include "su11/normext.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "su11/quadrature.hpp"
#include "su11/repkit.hpp"
#include "su11/squeezed.hpp"

namespace su11 {

namespace {

SpMat sparse(const Mat& m)
{
    SpMat s = m.sparseView();
    s.makeCompressed();
    return s;
}

SpMat sp_eye(int n)
{
    SpMat I(n, n);
    I.setIdentity();
    return I;
}

// places the qubit as the trailing (slow) index: index = q * n + i
SpMat qubit_kron(const SpMat& X, const Eigen::Matrix2cd& q)
{
    SpMat Q = sparse(q);
    return Eigen::kroneckerProduct(Q, X).eval();
}

}  // namespace

std::pair<CompoundOperator, ExtensionReport> heterodyne_extension(int D_b, int margin, int n_random,
                                                                  std::uint64_t seed, const Tolerances& tol)
{
    if (D_b < 8)
        throw DomainError("heterodyne extension needs D_b >= 8");
    if (margin < 1 || margin >= D_b / 2)
        throw DomainError("support margin out of range");
    BosonSpace B = boson_space(D_b);
    SpMat a = sparse(B.a.mat()), ad = sparse(B.ad.mat()), I = sp_eye(D_b);
    // index = n1 * D_b + n2 (system, ancilla)
    SpMat T = SpMat(Eigen::kroneckerProduct(ad, I)) + SpMat(Eigen::kroneckerProduct(I, a));
    SpMat Th = T.adjoint();
    SpMat C = T * Th - Th * T;

    double norm_res = 0.0;
    for (int k = 0; k < C.outerSize(); ++k)
        for (SpMat::InnerIterator it(C, k); it; ++it) {
            const int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
            if (r / D_b < D_b - 1 && r % D_b < D_b - 1 && c / D_b < D_b - 1 && c % D_b < D_b - 1)
                norm_res = std::max(norm_res, std::abs(it.value()));
        }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N01;
    std::vector<Vec> fam;
    Vec e0 = Vec::Zero(D_b);
    e0(0) = 1.0;
    fam.push_back(e0);
    for (int j = 0; j < n_random; ++j) {
        Vec v = Vec::Zero(D_b);
        for (int n = 0; n < D_b - margin; ++n)
            v(n) = cplx(N01(rng), N01(rng));
        fam.push_back(v.normalized());
    }
    double ext = 0.0;
    for (const auto& phi : fam) {
        Vec Phi = Vec::Zero(D_b * D_b);
        for (int n = 0; n < D_b; ++n)
            Phi(n * D_b) = phi(n);
        Vec lhs = T * Phi;
        Vec sphi = B.ad.mat() * phi;
        Vec rhs = Vec::Zero(D_b * D_b);
        for (int n = 0; n < D_b; ++n)
            rhs(n * D_b) = sphi(n);
        ext = std::max(ext, (lhs - rhs).norm());
    }

    CompoundOperator op{{D_b, D_b}, T, false, norm_res < tol.algebraic};
    ExtensionReport rep;
    rep.construction = "heterodyne";
    rep.dims = {D_b, D_b};
    rep.normality_residual = norm_res;
    rep.extension_residual = ext;
    rep.test_family = "basis |0> plus " + std::to_string(n_random) + " gaussian vectors, support margin " +
                      std::to_string(margin) + ", seed " + std::to_string(seed);
    rep.grid_spec = "two-mode Fock truncation " + std::to_string(D_b) + "x" + std::to_string(D_b);
    rep.ancilla_spec = "boson vacuum |0;1,0>";
    rep.pass = norm_res < tol.algebraic && ext < tol.algebraic;
    return {op, rep};
}

HeterodyneMoments heterodyne_moments(const Vec& phi, int D_b)
{
    const int d = static_cast<int>(phi.size());
    if (d + 1 > D_b)
        throw DomainError("phi needs a free top level inside D_b");
    BosonSpace B = boson_space(D_b);
    SpMat a = sparse(B.a.mat()), ad = sparse(B.ad.mat()), I = sp_eye(D_b);
    SpMat T = SpMat(Eigen::kroneckerProduct(ad, I)) + SpMat(Eigen::kroneckerProduct(I, a));
    Vec Phi = Vec::Zero(D_b * D_b);
    for (int n = 0; n < d; ++n)
        Phi(n * D_b) = phi(n);
    Vec TP = T * Phi;
    HeterodyneMoments m{};
    m.mean_T = Phi.dot(TP);
    m.second_T = TP.squaredNorm();

    // p(alpha) d^2alpha = e^{-t} |sum phi_n alpha^n / sqrt(n!)|^2 dt dtheta / (2 pi)
    const int nl = d + 4, na = 2 * d + 8;
    Rule lag = gauss_laguerre(nl);
    Rule ang = uniform_angles(na);
    cplx s1 = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < nl; ++i) {
        const double t = lag.x[i], r = std::sqrt(t);
        for (int j = 0; j < na; ++j) {
            const cplx al = std::polar(r, ang.x[j]);
            cplx h = 0.0;
            cplx p = 1.0;
            for (int n = 0; n < d; ++n) {
                h += phi(n) * p * std::exp(-0.5 * std::lgamma(n + 1.0));
                p *= al;
            }
            const double w = lag.w[i] * ang.w[j] / (2.0 * std::numbers::pi) * std::norm(h);
            s1 += w * al;
            s2 += w * t;
        }
    }
    m.mean_quad = s1;
    m.second_quad = s2;
    return m;
}

// no origin slab: its weight would sit against the one-sided closure rows and
// spoil the weighted adjoint near xmin, while functions in D(A*) carry no mass there
GridOps lambda1_grid_ops(int G)
{
    return grid_operators(AffineParams(0.0), Grid::log_grid(1e-16, 60.0, G, false));
}

namespace {

SpMat symmetric_T(const SpMat& A, const SpMat& As)
{
    QubitFrame q;
    return SpMat(qubit_kron(A, q.minus_plus())) + SpMat(qubit_kron(As, q.plus_minus()));
}

Vec weights2(const Grid& g)
{
    const int G = g.size();
    Vec w(2 * G);
    w.head(G) = g.w.cast<cplx>();
    w.tail(G) = g.w.cast<cplx>();
    return w;
}

double wnorm(const Vec& v, const Vec& w)
{
    return std::sqrt((v.cwiseAbs2().cwiseProduct(w.real())).sum());
}

}  // namespace

std::pair<CompoundOperator, ExtensionReport> symmetric_extension(const GridOps& ops,
                                                                 const SymmetricOptions& opt,
                                                                 const Tolerances& tol)
{
    if (std::abs(ops.k) > 1e-14)
        throw DomainError("symmetric extension is the lambda = 1 construction (k = 0)");
    const Grid& g = *ops.grid;
    const int G = g.size();
    SpMat As = weighted_adjoint(ops.A, g);
    // the input must already be symmetric up to the discretization
    {
        SpMat diff = ops.A - ops.A_star;
        double m = 0.0;
        for (int k = 0; k < diff.outerSize(); ++k)
            for (SpMat::InnerIterator it(diff, k); it; ++it)
                m = std::max(m, std::abs(it.value()));
        if (m > tol.algebraic)
            throw DomainError("grid A and A* differ as formal expressions; not a symmetric input");
    }
    SpMat T = symmetric_T(ops.A, As);

    // Hermiticity in the weighted inner product: W T = (W T)^H
    Vec w2 = weights2(g);
    SpMat WT = w2.asDiagonal() * T;
    SpMat WTh = WT.adjoint();
    SpMat D = WT - WTh;
    double dmax = 0.0, tmax = 0.0;
    for (int k = 0; k < D.outerSize(); ++k)
        for (SpMat::InnerIterator it(D, k); it; ++it)
            dmax = std::max(dmax, std::abs(it.value()));
    for (int k = 0; k < WT.outerSize(); ++k)
        for (SpMat::InnerIterator it(WT, k); it; ++it)
            tmax = std::max(tmax, std::abs(it.value()));
    const double herm = dmax / tmax;

    // Laguerre-damped family vanishing at 0: x e^{-x} S_j(x), j = 0..3
    const auto& x = g.x;
    double ext = 0.0, oracle = 0.0;
    for (int j = 0; j < 4; ++j) {
        Vec phi(G), dphi(G);
        for (int i = 0; i < G; ++i) {
            const double s = sonine(j, 0.0, x(i));
            const double ds = j == 0 ? 0.0 : -sonine(j - 1, 1.0, x(i));
            phi(i) = x(i) * std::exp(-x(i)) * s;
            dphi(i) = std::exp(-x(i)) * ((1.0 - x(i)) * s + x(i) * ds);
        }
        const double nrm = std::sqrt((phi.cwiseAbs2().cwiseProduct(g.w)).sum());
        phi /= nrm;
        dphi /= nrm;
        Vec up = Vec::Zero(2 * G);
        up.head(G) = phi;
        Vec lhs = T * up;
        Vec Asphi = As * phi;
        Vec rhs = Vec::Zero(2 * G);
        rhs.head(G) = Asphi;
        ext = std::max(ext, wnorm(lhs - rhs, w2));
        Vec an = -I_unit * dphi;
        oracle = std::max(oracle, std::sqrt(((Asphi - an).cwiseAbs2().cwiseProduct(g.w)).sum()));
    }

    ExtensionReport rep;
    rep.construction = "lambda1";
    rep.dims = {G, 2};
    rep.normality_residual = herm;  // T self-adjoint, so normal
    rep.extension_residual = ext;
    rep.test_family = "laguerre_damped_v1: x e^{-x} S_j^0(x), j=0..3, unit weighted norm";
    char spec[96];
    std::snprintf(spec, sizeof spec, "log grid [%g, %g], G=%d", x(0), x(G - 1), G);
    rep.grid_spec = spec;
    rep.ancilla_spec = "qubit |up>, frame |+-> = (|up> +- |down>)/sqrt2";
    rep.checks["hermiticity_defect"] = herm;
    rep.checks["analytic_derivative_residual"] = oracle;

    if (opt.domain_violation_test) {
        Vec phi(G);
        for (int i = 0; i < G; ++i)
            phi(i) = std::exp(-x(i));
        phi /= std::sqrt((phi.cwiseAbs2().cwiseProduct(g.w)).sum());
        Vec up = Vec::Zero(2 * G);
        up.head(G) = phi;
        Vec rhs = Vec::Zero(2 * G);
        rhs.head(G) = As * phi;
        rep.domain_violation = DomainViolation{"exp(-x), phi(0) != 0", wnorm(T * up - rhs, w2)};
    }
    if (opt.spectral_G > 0) {
        const double im = symmetric_spectrum_imag(opt.spectral_xmin, opt.spectral_G);
        rep.checks["spectrum_max_imag"] = im;
    }
    rep.pass = herm < tol.quadrature && ext < tol.quadrature;
    if (rep.checks.count("spectrum_max_imag"))
        rep.pass = rep.pass && rep.checks["spectrum_max_imag"] < tol.quadrature;

    CompoundOperator op{{G, 2}, T, herm < tol.quadrature, herm < tol.quadrature};
    return {op, rep};
}

double symmetric_spectrum_imag(double xmin, int G)
{
    GridOps ops = grid_operators(AffineParams(0.0), Grid::log_grid(xmin, 60.0, G, false));
    SpMat As = weighted_adjoint(ops.A, *ops.grid);
    Mat T = symmetric_T(ops.A, As).toDense();
    Vec w2 = weights2(*ops.grid);
    RVec sw = w2.real().cwiseSqrt();
    // W^{1/2} T W^{-1/2} is Hermitian when T is W-self-adjoint
    Mat S = sw.asDiagonal() * T * sw.cwiseInverse().asDiagonal();
    Eigen::ComplexEigenSolver<Mat> es(S, false);
    return es.eigenvalues().imag().cwiseAbs().maxCoeff();
}

std::pair<CompoundOperator, ExtensionReport> isometric_extension(const Op& U, int margin, const Tolerances& tol)
{
    const int D = U.dim();
    const Mat& u = U.mat();
    Mat UtU = u.adjoint() * u;
    const double iso = max_abs(interior_block(UtU - Mat::Identity(D, D), margin));
    if (iso > tol.algebraic)
        throw DomainError("input is not isometric on the interior block");
    Mat P = Mat::Identity(D, D) - u * u.adjoint();
    Mat T = Mat::Zero(2 * D, 2 * D);
    T.topLeftCorner(D, D) = u;
    T.bottomRightCorner(D, D) = u.adjoint();
    T.topRightCorner(D, D) = P;

    auto interior = [&](const Mat& X) {
        double m = 0.0;
        for (int r = 0; r < 2 * D; ++r)
            for (int c = 0; c < 2 * D; ++c)
                if (r % D < D - margin && c % D < D - margin)
                    m = std::max(m, std::abs(X(r, c)));
        return m;
    };
    const Mat I2 = Mat::Identity(2 * D, 2 * D);
    const double d1 = interior(T.adjoint() * T - I2);
    const double d2 = interior(T * T.adjoint() - I2);

    // T(phi (x) up) = (U phi) (x) up for random phi
    std::mt19937_64 rng(11);
    std::normal_distribution<double> N01;
    double ext = 0.0;
    for (int j = 0; j < 8; ++j) {
        Vec phi(D);
        for (int n = 0; n < D; ++n)
            phi(n) = cplx(N01(rng), N01(rng));
        phi.normalize();
        Vec up = Vec::Zero(2 * D);
        up.head(D) = phi;
        Vec rhs = Vec::Zero(2 * D);
        rhs.head(D) = u * phi;
        ext = std::max(ext, (T * up - rhs).norm());
    }

    ExtensionReport rep;
    rep.construction = "isometric";
    rep.dims = {D, 2};
    rep.normality_residual = std::max(d1, d2);
    rep.extension_residual = ext;
    rep.test_family = "8 gaussian vectors, seed 11";
    rep.grid_spec = "truncation D=" + std::to_string(D) + ", interior margin " + std::to_string(margin);
    rep.ancilla_spec = "qubit |up>";
    rep.checks["isometry_defect"] = iso;
    rep.checks["unitarity_defect"] = std::max(d1, d2);
    rep.checks["coimage_projector_norm"] = max_abs(P);
    rep.pass = std::max(d1, d2) < tol.algebraic && ext < tol.algebraic;
    CompoundOperator op{{D, 2}, sparse(T), false, std::max(d1, d2) < tol.algebraic};
    return {op, rep};
}

UnitCircleReport isometric_spectrum(const CompoundOperator& op, int margin)
{
    Mat T = op.T.toDense();
    const int n = static_cast<int>(T.rows());
    const int D = n / 2;
    const double unit = max_abs(T.adjoint() * T - Mat::Identity(n, n));
    UnitCircleReport r{0.0, 0.0, false};
    Mat W = T;
    if (unit > 1e-12) {
        // polar factor: closes the truncated chain into a unitary
        Eigen::BDCSVD<Mat> svd(T, Eigen::ComputeFullU | Eigen::ComputeFullV);
        W = svd.matrixU() * svd.matrixV().adjoint();
        r.completed = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i % D < D - margin && j % D < D - margin)
                    r.completion_change = std::max(r.completion_change, std::abs(W(i, j) - T(i, j)));
    }
    Eigen::ComplexEigenSolver<Mat> es(W, false);
    for (int i = 0; i < n; ++i)
        r.max_radius_defect = std::max(r.max_radius_defect, std::abs(std::abs(es.eigenvalues()(i)) - 1.0));
    return r;
}

}  // namespace su11
