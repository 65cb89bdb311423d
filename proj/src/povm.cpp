#include "su11/povm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "su11/kernels.hpp"
#include "su11/quadrature.hpp"
#include "su11/repkit.hpp"

namespace su11 {

namespace {

void require_povm_lambda(double lambda)
{
    if (!(lambda > 1.0))
        throw DomainError("POVM density requires lambda > 1: the resolution-of-identity integral diverges");
}

Vec make_poly(double lambda, const State& psi)
{
    Vec p(psi.dim());
    for (int n = 0; n < psi.dim(); ++n)
        p(n) = std::exp(log_g(lambda, n)) * psi.coeffs()(n);
    return p;
}

double disk_value(double lambda, cplx h, double t)
{
    return (lambda - 1.0) * std::pow(1.0 - t, lambda - 2.0) * std::norm(h) / std::numbers::pi;
}

double cutoff_bound(double lambda, const State& psi, double T)
{
    double b = 0.0;
    for (int n = 0; n < psi.dim(); ++n)
        b += std::norm(psi.coeffs()(n)) * roi_cutoff(lambda, n, T);
    return b;
}

struct NodeSums {
    cplx first;
    double second, mass;
};

// per-radial-node partial sums, then a fixed-order reduction
template <class F>
Moments integrate(const DiskDensity& d, const QuadSpec& q, Exec exec, F outcome)
{
    if (!(q.r_max > 0 && q.r_max < 1))
        throw DomainError("r_max must lie in (0, 1)");
    const double T = q.r_max * q.r_max;
    Rule rt = gauss_legendre(q.radial, 0.0, T);
    Rule ra = uniform_angles(q.angular);
    std::vector<cplx> m1(q.radial);
    std::vector<double> m2(q.radial), m0(q.radial);
    auto body = [&](int i) {
        const double t = rt.x[i], r = std::sqrt(t);
        cplx s1 = 0.0;
        double s2 = 0.0, s0 = 0.0;
        for (int j = 0; j < q.angular; ++j) {
            const cplx z = std::polar(r, ra.x[j]);
            cplx h = 0.0;
            for (long k = d.poly().size() - 1; k >= 0; --k)
                h = h * z + d.poly()(k);
            const double w = 0.5 * ra.w[j] * disk_value(d.lambda(), h, t);
            const cplx o = outcome(z);
            s0 += w;
            s1 += w * o;
            s2 += w * std::norm(o);
        }
        m0[i] = rt.w[i] * s0;
        m1[i] = rt.w[i] * s1;
        m2[i] = rt.w[i] * s2;
    };
    if (exec == Exec::serial) {
        for (int i = 0; i < q.radial; ++i)
            body(i);
    } else {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < q.radial; ++i)
            body(i);
    }
    return {fixed_sum(m1), fixed_sum(m2), fixed_sum(m0), cutoff_bound(d.lambda(), d.psi(), T)};
}

}  // namespace

DiskDensity::DiskDensity(double lambda, const State& psi) : lambda_(lambda), psi_(psi)
{
    require_povm_lambda(lambda);
    if (psi.basis() != Basis::su11_number)
        throw BasisMismatch("density state must be in the su11 number basis");
    if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw DomainError("density state must be unit norm");
    poly_ = make_poly(lambda, psi);
}

double DiskDensity::operator()(cplx zeta) const
{
    const double t = std::norm(zeta);
    if (!(t < 1.0))
        throw DomainError("disk density needs |zeta| < 1");
    cplx h = 0.0;
    for (long k = poly_.size() - 1; k >= 0; --k)
        h = h * zeta + poly_(k);
    return disk_value(lambda_, h, t);
}

std::vector<double> DiskDensity::eval(const std::vector<cplx>& zetas, Exec exec) const
{
    for (const auto& z : zetas)
        if (!(std::norm(z) < 1.0))
            throw DomainError("disk density needs |zeta| < 1");
    auto h = eval_poly(poly_, zetas, exec);
    std::vector<double> out(zetas.size());
    for (std::size_t i = 0; i < zetas.size(); ++i)
        out[i] = disk_value(lambda_, h[i], std::norm(zetas[i]));
    return out;
}

HalfPlaneDensity::HalfPlaneDensity(double lambda, const State& psi) : disk_(lambda, psi) {}

// (lambda-1)|<eta|psi>|^2 / (4 pi Im(eta)^2), <eta|psi> = <zeta(eta)|psi>
double HalfPlaneDensity::operator()(cplx eta) const
{
    if (!(eta.imag() > 0))
        throw DomainError("half-plane density needs Im eta > 0");
    const cplx z = std::conj((eta - I_unit) / (eta + I_unit));
    const double t = std::norm(z);
    cplx h = 0.0;
    for (long k = disk_.poly().size() - 1; k >= 0; --k)
        h = h * z + disk_.poly()(k);
    const double y = eta.imag();
    return (lambda() - 1.0) * std::pow(1.0 - t, lambda()) * std::norm(h) /
           (4.0 * std::numbers::pi * y * y);
}

std::vector<double> HalfPlaneDensity::eval(const std::vector<cplx>& etas, Exec exec) const
{
    const long n = static_cast<long>(etas.size());
    for (const auto& e : etas)
        if (!(e.imag() > 0))
            throw DomainError("half-plane density needs Im eta > 0");
    std::vector<double> out(n);
    if (exec == Exec::serial) {
        for (long i = 0; i < n; ++i)
            out[i] = (*this)(etas[i]);
        return out;
    }
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        out[i] = (*this)(etas[i]);
    return out;
}

double disk_density(double lambda, const State& psi, cplx zeta) { return DiskDensity(lambda, psi)(zeta); }

double halfplane_density(double lambda, const State& psi, cplx eta)
{
    return HalfPlaneDensity(lambda, psi)(eta);
}

Moments mean_and_second_moment(const DiskDensity& d, const QuadSpec& q, Exec exec)
{
    return integrate(d, q, exec, [](cplx z) { return z; });
}

// nu(deta) pulls back to mu(dzeta) under zeta = (eta - i)/(eta + i); the label eta
// sits at zeta while the disk kernel evaluates h at conj(zeta), so integrate over
// w = conj(zeta) and map back
Moments mean_and_second_moment(const HalfPlaneDensity& d, const QuadSpec& q, Exec exec)
{
    return integrate(d.disk(), q, exec, [](cplx w) {
        const cplx z = std::conj(w);
        const cplx eta = I_unit * (1.0 + z) / (1.0 - z);
        return std::conj(eta);
    });
}

double radial_cdf(double lambda, double t, double t_max)
{
    const double F = -std::expm1((lambda - 1.0) * std::log1p(-t_max));
    const double Ft = -std::expm1((lambda - 1.0) * std::log1p(-std::min(t, t_max)));
    return Ft / F;
}

double ks_statistic(std::vector<double> s, double lambda, double t_max)
{
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double D = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double F = radial_cdf(lambda, s[i], t_max);
        D = std::max({D, F - i / n, (i + 1) / n - F});
    }
    return D;
}

// asymptotic Kolmogorov quantile sqrt(-ln(alpha/2)/2) with the small-sample correction
double ks_critical(long n, double alpha)
{
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    const double sn = std::sqrt(static_cast<double>(n));
    return c / (sn + 0.12 + 0.11 / sn);
}

SampleBatch sample(const DiskDensity& d, long n, std::uint64_t seed, double r_max, Exec exec)
{
    if (n < 1)
        throw DomainError("sample count must be >= 1");
    if (!(r_max > 0 && r_max < 1))
        throw DomainError("r_max must lie in (0, 1)");
    const double lambda = d.lambda();
    const double T = r_max * r_max;
    const double F = -std::expm1((lambda - 1.0) * std::log1p(-T));
    const Vec& poly = d.poly();
    const long deg = poly.size() - 1;

    // |h|^2 is subharmonic: its max over |zeta| <= r_max sits on the circle
    double tri = 0.0;
    for (long k = 0; k <= deg; ++k)
        tri += std::abs(poly(k)) * std::pow(r_max, static_cast<double>(k));
    const long M = 16 * (deg + 1);
    std::vector<cplx> ring(M);
    for (long j = 0; j < M; ++j)
        ring[j] = std::polar(r_max, 2.0 * std::numbers::pi * j / M);
    auto hv = eval_poly(poly, ring, Exec::serial);
    double ringmax = 0.0;
    for (const auto& h : hv)
        ringmax = std::max(ringmax, std::abs(h));
    const double sec = deg > 0 ? 1.0 / std::cos(std::numbers::pi * deg / (2.0 * M)) : 1.0;
    const double B = std::pow(std::min(tri, ringmax * sec), 2);

    // expected acceptance per proposal is ~ mass / (F B)
    const double predicted = 1.0 / (F * B);
    if (predicted < 0.01)
        throw TruncationError("rejection sampler acceptance below 1%: envelope B=" + std::to_string(B) +
                              ", proposal mass F=" + std::to_string(F) +
                              ", predicted rate=" + std::to_string(predicted));

    const long max_attempts = 1000000;
    std::vector<cplx> out(n);
    std::vector<long> tries(n);
    std::vector<int> viol(n, 0);
    auto draw = [&](long i) {
        for (long a = 0; a < max_attempts; ++a) {
            const double u1 = uniform01(seed, 3 * a, i);
            const double u2 = uniform01(seed, 3 * a + 1, i);
            const double u3 = uniform01(seed, 3 * a + 2, i);
            const double t = -std::expm1(std::log1p(-u1 * F) / (lambda - 1.0));
            const cplx z = std::polar(std::sqrt(t), 2.0 * std::numbers::pi * u2);
            cplx h = 0.0;
            for (long k = deg; k >= 0; --k)
                h = h * z + poly(k);
            const double ratio = std::norm(h) / B;
            if (ratio > 1.0)
                viol[i] = 1;
            if (u3 < ratio) {
                out[i] = z;
                tries[i] = a + 1;
                return;
            }
        }
        tries[i] = -1;
    };
    if (exec == Exec::serial) {
        for (long i = 0; i < n; ++i)
            draw(i);
    } else {
#pragma omp parallel for schedule(dynamic, 256)
        for (long i = 0; i < n; ++i)
            draw(i);
    }
    long total = 0;
    int nv = 0;
    for (long i = 0; i < n; ++i) {
        if (tries[i] < 0)
            throw TruncationError("rejection sampler exhausted its attempt budget");
        total += tries[i];
        nv += viol[i];
    }
    const double rate = static_cast<double>(n) / static_cast<double>(total);
    if (rate < 0.01)
        throw TruncationError("rejection sampler acceptance below 1%: observed rate=" + std::to_string(rate));
    return {std::move(out), seed, rate, B, nv};
}

double hyponormality_gap(const Op& S, int margin)
{
    Mat C = S.mat().adjoint() * S.mat() - S.mat() * S.mat().adjoint();
    Mat B = interior_block(C, margin);
    Mat H = 0.5 * (B + B.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

Mat psd_sqrt(const Mat& X)
{
    Mat H = 0.5 * (X + X.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    RVec ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

void FinitePOVM::validate(double tol) const
{
    if (effects.empty())
        throw DomainError("POVM needs at least one effect");
    const int D = dim();
    Mat S = Mat::Zero(D, D);
    for (const auto& E : effects) {
        if (E.rows() != D || E.cols() != D)
            throw DomainError("POVM effects must share one dimension");
        if (max_abs(E - E.adjoint()) > tol)
            throw DomainError("POVM effect is not Hermitian");
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (E + E.adjoint()), Eigen::EigenvaluesOnly);
        if (es.eigenvalues()(0) < -tol)
            throw DomainError("POVM effect is not positive semidefinite");
        S += E;
    }
    if (max_abs(S - Mat::Identity(D, D)) > tol)
        throw DomainError("POVM effects do not sum to the identity");
}

NaimarkDilation naimark_dilate(const FinitePOVM& M, double tol)
{
    M.validate(tol);
    const int D = M.dim();
    const int K = static_cast<int>(M.effects.size());
    NaimarkDilation out;
    out.V = Mat::Zero(D * K, D);
    for (int i = 0; i < K; ++i) {
        out.V.block(i * D, 0, D, D) = psd_sqrt(M.effects[i]);
        Mat E = Mat::Zero(D * K, D * K);
        E.block(i * D, i * D, D, D).setIdentity();
        out.projective.effects.push_back(std::move(E));
    }
    return out;
}

std::vector<ConsistencyRow> eigenvector_povm_consistency(double lambda, const std::vector<State>& psis,
                                                         const QuadSpec& q, SubnormalOp op)
{
    require_povm_lambda(lambda);
    std::vector<ConsistencyRow> rows;
    int idx = 0;
    for (const auto& psi : psis) {
        const int D = psi.dim();
        Moments m;
        cplx mean_exact;
        double second_exact;
        if (op == SubnormalOp::a_star) {
            m = mean_and_second_moment(DiskDensity(lambda, psi), q);
            Op as = build_a_pair(lambda, D + 1).a_star;
            Vec v = Vec::Zero(D + 1);
            v.head(D) = psi.coeffs();
            Vec w = as.mat() * v;
            mean_exact = v.dot(w);
            second_exact = w.squaredNorm();
        } else {
            m = mean_and_second_moment(HalfPlaneDensity(lambda, psi), q);
            // A is upper triangular, so its leading block is exact and A^dag psi is
            // exact on the first D rows. Beyond them A_{nm} = 2i sqrt(G(m+1)G(n+lam)/(G(n+1)G(m+lam)))
            // and the row sum over m >= D telescopes to G(D+1)/((lam-2) G(D+lam-1)).
            Mat Ad = cayley_A(lambda, D).A.mat().adjoint();
            Vec w = Ad * psi.coeffs();
            mean_exact = psi.coeffs().dot(w);
            cplx S = 0.0;
            for (int n = 0; n < D; ++n)
                S += std::exp(0.5 * (std::lgamma(n + lambda) - std::lgamma(n + 1.0))) * psi.coeffs()(n);
            if (lambda > 2.0)
                second_exact = w.squaredNorm() +
                               4.0 * std::norm(S) *
                                   std::exp(std::lgamma(D + 1.0) - std::lgamma(D + lambda - 1.0)) / (lambda - 2.0);
            else
                second_exact = std::numeric_limits<double>::infinity();
        }
        ConsistencyRow r{idx++, m.mean, mean_exact, m.second, second_exact,
                         std::abs(m.mean - mean_exact), std::abs(m.second - second_exact), m.cutoff_bound};
        rows.push_back(r);
    }
    return rows;
}

}  // namespace su11
