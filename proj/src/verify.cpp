#include "su11/verify.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "su11/coherent.hpp"
#include "su11/halfline.hpp"
#include "su11/normext.hpp"
#include "su11/povm.hpp"
#include "su11/repkit.hpp"
#include "su11/squeezed.hpp"

namespace su11 {

namespace {

struct Builder {
    SuiteReport r;
    void less(std::string name, double v, double bound)
    {
        r.invariants.push_back({std::move(name), v, bound, "<", v < bound});
    }
    void at_least(std::string name, double v, double bound)
    {
        r.invariants.push_back({std::move(name), v, bound, ">=", v >= bound});
    }
};

void repkit_suite(Builder& b, const SuiteParams& p)
{
    const double lam = p.lambda;
    const int D = p.dim;
    auto [L0, Lp, Lm] = build_ladder(lam, D);
    // relative to the largest operand entry
    const double s = max_abs((L0 * L0).mat());
    auto rel = [&](const Op& x, int m) { return max_abs(interior_block(x, m).mat()) / s; };
    b.less("[L0,L+] - 2L+", rel(commutator(L0, Lp) - 2.0 * Lp, 1), p.tol.algebraic);
    b.less("[L0,L-] + 2L-", rel(commutator(L0, Lm) + 2.0 * Lm, 1), p.tol.algebraic);
    b.less("[L+,L-] - L0", rel(commutator(Lp, Lm) - L0, 1), p.tol.algebraic);
    b.less("L- + L+^dag", max_abs(Lm.mat() + Lp.mat().adjoint()), p.tol.algebraic);
    b.less("L0 - L0^dag", max_abs(L0.mat() - L0.mat().adjoint()), p.tol.algebraic);

    auto cas = casimir(lam, D);
    const Op target = lam * (lam - 2.0) * identity(D);
    b.less("casimir - lambda(lambda-2)", rel(cas.C - target, 2), p.tol.algebraic);
    b.less("casimir E-form deviation", cas.form_deviation / s, p.tol.algebraic);

    auto [a, as] = build_a_pair(lam, D);
    Mat f1 = Mat::Zero(D, D), f2 = Mat::Zero(D, D);
    for (int n = 0; n < D; ++n) {
        f1(n, n) = (n + 1.0) / (n + lam);
        f2(n, n) = n / (n + lam - 1.0);
    }
    b.less("a a* - (N+lambda)^-1 (N+1)", max_abs(interior_block(Mat((a * as).mat() - f1), 1)), p.tol.algebraic);
    b.less("a* a - (N+lambda-1)^-1 N", max_abs((as * a).mat() - f2), p.tol.algebraic);
    if (lam > 1.0 && D >= 8)
        b.less("Cayley commutator [A,A^dag] = lambda-1", cayley_commutator_residual(lam, D, D / 4),
               p.tol.algebraic);
}

void coherent_suite(Builder& b, const SuiteParams& p)
{
    const double lam = p.lambda;
    const int D = std::max(p.dim, 256);
    auto a = build_a_pair(lam, D).a;
    double eig = 0.0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const cplx z = std::polar(0.9 * i / 4.0, 2 * M_PI * j / 5.0);
            eig = std::max(eig, eigen_residual(a, coherent_state(lam, DiskPoint(z), D), z));
        }
    b.less("a|zeta> - zeta|zeta>, |zeta| <= 0.9", eig, p.tol.quadrature * 1e-2);

    double ov = 1.0;
    for (cplx z : {cplx(0.5, 0.0), cplx(0.3, -0.6), cplx(-0.8, 0.1)}) {
        State s = coherent_state(lam, DiskPoint(z), 160);
        Vec u0 = displacement_unitary(xi_of_zeta(z), lam, 160).mat().col(0);
        ov = std::min(ov, std::abs(s.coeffs().dot(u0)));
    }
    b.at_least("closed form vs exp(xi L+ - xi* L-)|0> overlap", ov, 1.0 - 1e-8);

    if (lam > 1.0) {
        auto r = resolution_of_identity(lam, 16, 400, 64, 0.999);
        b.less("resolution of identity, cutoff-corrected", r.corrected.maxCoeff(), 2e-3);
        double excess = 0.0;
        for (int n = 0; n < 16; ++n)
            excess = std::max(excess, r.diag_defect(n) - r.cutoff_defect(n));
        b.less("resolution of identity, raw beyond cutoff", excess, p.tol.quadrature);
    }
}

void povm_suite(Builder& b, const SuiteParams& p)
{
    const double lam = p.lambda;
    const double gap = hyponormality_gap(build_a_pair(lam, std::max(p.dim, 8)).a_star, 1);
    if (lam >= 1.0)
        b.at_least("hyponormality gap of a*", gap, -p.tol.algebraic);
    else
        b.less("hyponormality gap of a* (expected negative)", gap, -1e-3);

    std::mt19937_64 rng(p.seed);
    std::uniform_int_distribution<int> dD(1, 8), dK(1, 5);
    std::normal_distribution<double> N01;
    double rec = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int D = dD(rng), K = dK(rng);
        std::vector<Mat> G;
        Mat S = Mat::Zero(D, D);
        for (int i = 0; i < K; ++i) {
            Mat X(D, D);
            for (int r = 0; r < D; ++r)
                for (int c = 0; c < D; ++c)
                    X(r, c) = cplx(N01(rng), N01(rng));
            G.push_back(X * X.adjoint());
            S += G.back();
        }
        Eigen::SelfAdjointEigenSolver<Mat> es(S);
        Mat Sih = es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                  es.eigenvectors().adjoint();
        FinitePOVM M;
        for (auto& g : G)
            M.effects.push_back(Sih * g * Sih);
        auto nd = naimark_dilate(M);
        rec = std::max(rec, max_abs(nd.V.adjoint() * nd.V - Mat::Identity(D, D)));
        for (int i = 0; i < K; ++i)
            rec = std::max(rec, max_abs(nd.V.adjoint() * nd.projective.effects[i] * nd.V - M.effects[i]));
    }
    b.less("Naimark reconstruction, 100 random POVMs", rec, p.tol.algebraic);

    if (lam > 1.0) {
        std::vector<State> basis;
        for (int n = 0; n <= 8; ++n)
            basis.push_back(State::basis_vector(16, n));
        double over = 0.0;
        for (const auto& r : eigenvector_povm_consistency(lam, basis, QuadSpec{800, 128, 0.999999}))
            over = std::max(over, std::max(r.mean_defect, r.second_defect) - r.cutoff_bound);
        b.less("a* moments beyond cutoff bound, n <= 8", over, p.tol.quadrature);

        const double tmax = 0.9999 * 0.9999;
        SampleBatch s = sample(DiskDensity(lam, State::basis_vector(8, 0)), p.n, p.seed);
        std::vector<double> t;
        t.reserve(s.outcomes.size());
        for (auto z : s.outcomes)
            t.push_back(std::norm(z));
        b.less("KS statistic of |zeta|^2, alpha 0.001", ks_statistic(t, lam, tmax), ks_critical(p.n, 0.001));
    }
}

double halfline_k(const SuiteParams& p)
{
    if (p.k >= 0.0)
        return p.k;
    if (p.lambda < 1.0)
        throw DomainError("halfline suite needs k >= 0 or lambda >= 1");
    return (p.lambda - 1.0) / 2.0;
}

void halfline_suite(Builder& b, const SuiteParams& p)
{
    AffineParams kp(halfline_k(p));
    auto g = Grid::log_grid();
    b.less("grid moment error", g->moment_error(kp.k), p.tol.grid);
    auto ops = grid_operators(kp, g);
    std::vector<GridFunction> basis;
    for (int n = 0; n < 8; ++n)
        basis.push_back(basis_fn(n, kp, g));
    Mat gram(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            gram(i, j) = overlap(basis[i], basis[j]);
    b.less("basis orthonormality", max_abs(gram - Mat::Identity(8, 8)), p.tol.quadrature);

    auto L = build_ladder(kp.lambda(), 8);
    const double lad = std::max({max_abs(galerkin(ops.L0, basis) - L.L0.mat()),
                                 max_abs(galerkin(ops.Lplus, basis) - L.Lplus.mat()),
                                 max_abs(galerkin(ops.Lminus, basis) - L.Lminus.mat())});
    b.less("differential ladder vs matrices", lad, p.tol.grid);

    double fock = 0.0, eig = 0.0;
    for (double y : {0.5, 1.0, 2.0, 4.0})
        for (double x : {-2.0, -0.5, 0.0, 1.0, 2.0}) {
            const cplx eta(x, y);
            GridFunction e = affine_coherent(HalfPlanePoint(eta), kp, g);
            for (int n = 0; n < 8; ++n)
                fock = std::max(fock, std::abs(overlap(basis[n], e) - affine_fock_overlap(n, kp, HalfPlanePoint(eta))));
            eig = std::max(eig, GridFunction{g, ops.A * e.values - eta * e.values}.norm());
        }
    b.less("Fock overlaps of affine coherent states", fock, p.tol.quadrature);
    b.less("A|eta> - eta|eta>", eig, p.tol.grid);
}

void squeezed_suite(Builder& b, const SuiteParams& p)
{
    const int Db = p.boson_dim;
    BosonSpace B = boson_space(Db);
    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double bres = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double r = std::atanh(0.9 * U(rng));
        SqueezeParams sp(std::polar(std::cosh(r), 2 * M_PI * U(rng)), std::polar(std::sinh(r), 2 * M_PI * U(rng)));
        bres = std::max(bres, b_residual(sp, B, squeezed_vacuum(sp, Db)));
    }
    b.less("b|0;mu,nu>, 20 random |nu/mu| <= 0.9", bres, 1e-7);

    double chr = 0.0;
    for (SqueezeParams sp : {SqueezeParams(std::cosh(1.0), std::sinh(1.0)),
                             SqueezeParams(std::cosh(0.5), std::polar(std::sinh(0.5), 1.0))}) {
        auto r = characteristic_equations_check(sp, std::min(Db, 256));
        chr = std::max({chr, r.res_QinvP, r.res_adinv_a});
    }
    b.less("characteristic eigen-equations", chr, p.tol.quadrature);

    double sec = 0.0;
    for (Parity par : {Parity::even, Parity::odd}) {
        SectorLadder s = su11_from_boson(B, par);
        auto L = build_ladder(s.lambda, Db / 2);
        const double scale = max_abs(L.L0.mat());
        sec = std::max({sec, max_abs(interior_block(Mat(s.L.L0.mat() - L.L0.mat()), 1)) / scale,
                        max_abs(interior_block(Mat(s.L.Lplus.mat() - L.Lplus.mat()), 1)) / scale,
                        max_abs(interior_block(Mat(s.L.Lminus.mat() - L.Lminus.mat()), 1)) / scale});
    }
    b.less("sector isomorphism to lambda = 1/2, 3/2", sec, p.tol.algebraic);

    int wrong = 0;
    for (int n = 1; n <= 8; ++n)
        wrong += multiparticle_reduction(n).subnormal != (n >= 2);
    b.less("reduction table rows violating subnormal iff n >= 2", wrong, 0.5);
}

void normext_suite(Builder& b, const SuiteParams& p)
{
    auto [Th, het] = heterodyne_extension(32, 4, 8, p.seed, p.tol);
    b.less("heterodyne normality", het.normality_residual, p.tol.algebraic);
    b.less("heterodyne extension", het.extension_residual, p.tol.algebraic);

    SymmetricOptions so;
    so.spectral_G = 0;
    auto [Ts, sym] = symmetric_extension(lambda1_grid_ops(), so, p.tol);
    b.less("lambda=1 Hermiticity", sym.normality_residual, p.tol.quadrature);
    b.less("lambda=1 extension", sym.extension_residual, p.tol.quadrature);

    auto [Ti, iso] = isometric_extension(build_a_pair(1.0, 16).a_star, 1, p.tol);
    b.less("isometric unitarity", iso.checks.at("unitarity_defect"), p.tol.algebraic);
    b.less("isometric extension", iso.extension_residual, p.tol.algebraic);

    const double k = p.k >= 0.0 ? p.k : 0.5;
    auto [Tg, gt] = lambda_gt1_extension(k, Grid2DSpec{}, {}, p.tol);
    b.less("lambda>1 extension", gt.extension_residual, p.tol.grid);
    b.less("lambda>1 normality (x side)", gt.checks.at("normality_residual_x"), p.tol.grid);
    b.at_least("lambda>1 extension refinement ratio", gt.checks.at("extension_ratio_fine"), 3.5);
}

}  // namespace

bool SuiteReport::pass() const
{
    for (const auto& i : invariants)
        if (!i.pass)
            return false;
    return true;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {"repkit", "coherent", "povm", "halfline", "squeezed", "normext"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteParams& p)
{
    if (!(p.lambda > 0.0))
        throw DomainError("lambda must be positive");
    if (p.dim < 2)
        throw DomainError("dim must be at least 2");
    if (p.boson_dim < 8 || p.boson_dim % 2)
        throw DomainError("boson-dim must be even and at least 8");
    if (p.n < 1)
        throw DomainError("n must be positive");
    p.tol.validate();

    Builder b;
    b.r.suite = name;
    if (name == "repkit")
        repkit_suite(b, p);
    else if (name == "coherent")
        coherent_suite(b, p);
    else if (name == "povm")
        povm_suite(b, p);
    else if (name == "halfline")
        halfline_suite(b, p);
    else if (name == "squeezed")
        squeezed_suite(b, p);
    else if (name == "normext")
        normext_suite(b, p);
    else
        throw DomainError("unknown suite: " + name);
    return b.r;
}

}  // namespace su11
