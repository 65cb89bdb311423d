#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "su11/coherent.hpp"
#include "su11/povm.hpp"
#include "su11/repkit.hpp"

using namespace su11;

namespace {

constexpr double pi = std::numbers::pi;

State from(std::initializer_list<cplx> c, int D)
{
    Vec v = Vec::Zero(D);
    int i = 0;
    for (cplx x : c)
        v(i++) = x;
    return State(v.normalized(), Basis::su11_number);
}

State random_state(int D, std::mt19937_64& rng) { return State(th::random_vec(D, rng), Basis::su11_number); }

// (lambda-1)|<zeta*|psi>|^2 / (pi (1-|zeta|^2)^2) with the bra built by the coherent module
double density_oracle(double lam, const State& psi, cplx z)
{
    State c = coherent_state(lam, DiskPoint(std::conj(z)), 1024);
    const double t = std::norm(z);
    return (lam - 1.0) * std::norm(c.coeffs().head(psi.dim()).dot(psi.coeffs())) / (pi * (1 - t) * (1 - t));
}

FinitePOVM random_povm(int D, int K, std::mt19937_64& rng)
{
    std::normal_distribution<double> N01;
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
    return M;
}

}  // namespace

TEST_SUITE("povm")
{
    TEST_CASE("disk density values")
    {
        State v0 = State::basis_vector(8, 0);
        for (cplx z : {cplx(0.0), cplx(0.3, 0.4), cplx(-0.9, 0.1)})
            CHECK(std::abs(disk_density(2.0, v0, z) - 1.0 / pi) < 1e-14);
        CHECK(std::abs(disk_density(3.0, v0, 0.0) - 2.0 / pi) < 1e-14);

        std::mt19937_64 rng(11);
        for (double lam : {1.5, 2.0, 3.0}) {
            State psi = random_state(10, rng);
            for (cplx z : {cplx(0.1, 0.2), cplx(-0.5, 0.6), cplx(0.0, -0.95)}) {
                const double p = disk_density(lam, psi, z);
                CHECK(p >= 0.0);
                CHECK(std::abs(p - density_oracle(lam, psi, z)) < 1e-11 * (1 + p));
            }
        }
        CHECK_THROWS_WITH_AS(disk_density(1.0, v0, 0.1), doctest::Contains("diverges"), DomainError);
        CHECK_THROWS_AS(disk_density(0.5, v0, 0.1), DomainError);
        CHECK_THROWS_AS(DiskDensity(2.0, State(Vec::Ones(4), Basis::su11_number)), DomainError);
    }

    TEST_CASE("half-plane density is the disk density under the Cayley pullback")
    {
        State v0 = State::basis_vector(8, 0);
        CHECK(std::abs(halfplane_density(2.0, v0, I_unit) - 1.0 / (4 * pi)) < 1e-14);
        std::mt19937_64 rng(12);
        State psi = random_state(8, rng);
        for (cplx eta : {cplx(0, 1), cplx(0.4, 2.0), cplx(-3.0, 0.5)}) {
            const cplx zeta = (eta - I_unit) / (eta + I_unit);
            const double jac = 4.0 / std::pow(std::abs(eta + I_unit), 4);
            CHECK(std::abs(halfplane_density(2.5, psi, eta) - disk_density(2.5, psi, std::conj(zeta)) * jac) <
                  1e-12);
        }
        CHECK_THROWS_AS(halfplane_density(1.0, v0, I_unit), DomainError);
    }

    TEST_CASE("normalization")
    {
        std::mt19937_64 rng(13);
        QuadSpec q{400, 64, 0.999};
        for (double lam : {1.5, 2.0, 3.0}) {
            // the boundary loss grows like binomial(n+lam-1, n), so the simple bound needs low n
            Vec v = Vec::Zero(12);
            v.head(2) = th::random_vec(2, rng);
            State psi(v, Basis::su11_number);
            Moments m = mean_and_second_moment(DiskDensity(lam, psi), q);
            const double T = q.r_max * q.r_max;
            CHECK(std::abs(m.mass - 1.0) <= 5 * std::pow(1 - T, lam - 1) + 1e-6);
            CHECK(1.0 - m.mass <= m.cutoff_bound + 1e-9);
            Moments h = mean_and_second_moment(HalfPlaneDensity(lam, psi), q);
            CHECK(std::abs(h.mass - m.mass) < 1e-13);

            State wide = random_state(12, rng);
            Moments w = mean_and_second_moment(DiskDensity(lam, wide), q);
            CHECK(w.mass <= 1.0 + 1e-9);
            CHECK(1.0 - w.mass <= w.cutoff_bound + 1e-9);
        }
    }

    TEST_CASE("moments of a*")
    {
        QuadSpec q{800, 128, 0.9999};
        Moments m0 = mean_and_second_moment(DiskDensity(2.0, State::basis_vector(8, 0)), q);
        CHECK(std::abs(m0.mean) < 1e-14);

        Moments m1 = mean_and_second_moment(DiskDensity(2.0, from({1.0, 1.0}, 8)), q);
        CHECK(std::abs(m1.mean - 0.5 * std::sqrt(0.5)) <= m1.cutoff_bound + 1e-8);

        Moments m3 = mean_and_second_moment(DiskDensity(3.0, State::basis_vector(8, 0)), q);
        CHECK(std::abs(m3.second - 1.0 / 3.0) <= m3.cutoff_bound + 1e-8);

        // lambda = 2, |0>: density 1/pi, so the truncated integrals are T and T^2/2
        const double T = q.r_max * q.r_max;
        CHECK(std::abs(m0.mass - T) < 1e-10);
        CHECK(std::abs(m0.second - 0.5 * T * T) < 1e-10);
    }

    TEST_CASE("eigenvector construction is consistent for a*")
    {
        std::vector<State> basis;
        for (int n = 0; n <= 8; ++n)
            basis.push_back(State::basis_vector(12, n));
        for (double lam : {2.0, 3.0}) {
            auto rows = eigenvector_povm_consistency(lam, basis, QuadSpec{800, 128, 0.9999});
            for (const auto& r : rows) {
                CHECK(r.mean_defect <= r.cutoff_bound + 1e-8);
                CHECK(r.second_defect <= r.cutoff_bound + 1e-8);
                if (lam == 3.0 && r.index <= 4) {
                    CHECK(r.mean_defect < 1e-5);
                    CHECK(r.second_defect < 1e-5);
                }
            }
        }
        // pushing the cutoff out brings every basis state n <= 8 under 1e-4 at lambda = 2
        auto rows = eigenvector_povm_consistency(2.0, basis, QuadSpec{800, 128, 0.999999});
        for (const auto& r : rows) {
            CHECK(r.cutoff_bound < 1e-4);
            CHECK(r.second_defect < 1e-4);
        }
        // exact second moment against <n|a a*|n> = (n+1)/(n+lambda)
        for (const auto& r : rows)
            CHECK(std::abs(r.second_exact - (r.index + 1.0) / (r.index + 2.0)) < 1e-14);

        std::mt19937_64 rng(14);
        std::vector<State> rs{random_state(8, rng), random_state(8, rng)};
        for (const auto& r : eigenvector_povm_consistency(2.5, rs, QuadSpec{800, 128, 0.999999})) {
            CHECK(r.mean_defect <= r.cutoff_bound + 1e-8);
            CHECK(r.second_defect <= r.cutoff_bound + 1e-8);
        }
    }

    TEST_CASE("eigenvector construction for A*")
    {
        // ||A^dag|0>||^2 = 1 + 4 sum_{m>=1} G(m+1)G(lam)/G(m+lam) = 1 + 4/(lam-2)
        for (double lam : {3.0, 4.0}) {
            auto r = eigenvector_povm_consistency(lam, {State::basis_vector(6, 0)}, QuadSpec{}, SubnormalOp::A_star);
            CHECK(std::abs(r[0].mean_exact - cplx(0, -1)) < 1e-14);
            CHECK(std::abs(r[0].second_exact - (1 + 4 / (lam - 2))) < 1e-12);
        }
        // truncation independence of the exact value
        auto a = eigenvector_povm_consistency(3.5, {from({1.0, 0.5, cplx(0, 1)}, 4)}, QuadSpec{}, SubnormalOp::A_star);
        auto b = eigenvector_povm_consistency(3.5, {from({1.0, 0.5, cplx(0, 1)}, 24)}, QuadSpec{}, SubnormalOp::A_star);
        CHECK(std::abs(a[0].second_exact - b[0].second_exact) < 1e-12);
        CHECK(std::abs(a[0].mean_exact - b[0].mean_exact) < 1e-14);

        // quadrature side: |eta|^2 weighs the boundary point zeta = 1 heavily, so use lambda = 4
        std::vector<State> basis{State::basis_vector(6, 0), State::basis_vector(6, 1), State::basis_vector(6, 2)};
        for (const auto& r :
             eigenvector_povm_consistency(4.0, basis, QuadSpec{1600, 512, 0.9999}, SubnormalOp::A_star)) {
            CHECK(r.mean_defect < 1e-4);
            CHECK(r.second_defect / r.second_exact < 1e-3);
        }
        auto inf = eigenvector_povm_consistency(2.0, {State::basis_vector(4, 0)}, QuadSpec{}, SubnormalOp::A_star);
        CHECK(std::isinf(inf[0].second_exact));
    }

    TEST_CASE("sampling matches the radial law")
    {
        DiskDensity d(2.0, State::basis_vector(4, 0));
        const long n = 100000;
        SampleBatch s = sample(d, n, 20261018);
        CHECK(s.outcomes.size() == std::size_t(n));
        CHECK(s.bound_violations == 0);
        std::vector<double> t;
        for (auto z : s.outcomes)
            t.push_back(std::norm(z));
        const double T = 0.9999 * 0.9999;
        const double D = ks_statistic(t, 2.0, T);
        CHECK(D < 0.006);
        CHECK(D < ks_critical(n, 0.001));
        CHECK(std::abs(ks_critical(n, 0.001) - 1.9495 / (std::sqrt(double(n)) + 0.12 + 0.11 / std::sqrt(double(n)))) < 1e-4);
        CHECK(std::abs(radial_cdf(2.0, 0.25, 1.0) - 0.25) < 1e-15);
    }

    TEST_CASE("sampling is deterministic and thread-independent")
    {
        DiskDensity d(2.5, from({1.0, cplx(0.3, -0.2), 0.4}, 6));
        SampleBatch a = sample(d, 5000, 42, 0.9999, Exec::parallel);
        SampleBatch b = sample(d, 5000, 42, 0.9999, Exec::parallel);
        SampleBatch c = sample(d, 5000, 42, 0.9999, Exec::serial);
        CHECK(a.outcomes == b.outcomes);
        CHECK(a.outcomes == c.outcomes);
        CHECK(a.acceptance_rate == c.acceptance_rate);
        SampleBatch e = sample(d, 5000, 43);
        CHECK(a.outcomes != e.outcomes);
    }

    TEST_CASE("sample mean agrees with the POVM mean")
    {
        DiskDensity d(2.0, from({1.0, 1.0}, 6));
        const long n = 200000;
        SampleBatch s = sample(d, n, 7);
        cplx mean = 0.0;
        double m2 = 0.0;
        for (auto z : s.outcomes) {
            mean += z;
            m2 += std::norm(z);
        }
        mean /= double(n);
        m2 /= double(n);
        Moments m = mean_and_second_moment(d, QuadSpec{});
        const double sigma = std::sqrt((m2 - std::norm(mean)) / n);
        CHECK(std::abs(mean - m.mean) < 3 * std::sqrt(2.0) * sigma);
        CHECK(s.acceptance_rate > 0.01);
        CHECK(s.acceptance_rate <= 1.0);
    }

    TEST_CASE("sampler aborts on a hopeless envelope")
    {
        DiskDensity d(3.0, State::basis_vector(48, 40));
        CHECK_THROWS_WITH_AS(sample(d, 10, 1), doctest::Contains("acceptance"), TruncationError);
        CHECK_THROWS_AS(sample(DiskDensity(2.0, State::basis_vector(4, 0)), 0, 1), DomainError);
    }

    TEST_CASE("hyponormality")
    {
        const int D = 64;
        for (double lam : {1.0, 1.5, 2.0, 3.0}) {
            const double gap = hyponormality_gap(build_a_pair(lam, D).a_star, 1);
            CHECK(gap >= -1e-12);
            double oracle = 1e300;
            for (int n = 0; n < D - 1; ++n)
                oracle = std::min(oracle, (lam - 1) / ((n + lam) * (n + lam - 1)));
            CHECK(std::abs(gap - oracle) < 1e-13);
        }
        for (int D2 : {8, 32})
            CHECK(hyponormality_gap(build_a_pair(0.5, D2).a_star, 1) < -1e-3);
        std::mt19937_64 rng(1);
        Mat H = th::random_unitary(6, rng);
        H = (H + H.adjoint()).eval();
        CHECK(std::abs(hyponormality_gap(Op(H, Basis::su11_number), 1)) < 1e-13);
    }

    TEST_CASE("Naimark dilation")
    {
        FinitePOVM P;
        P.effects = {Mat(Eigen::Vector2cd(1, 0).asDiagonal()), Mat(Eigen::Vector2cd(0, 1).asDiagonal())};
        auto d = naimark_dilate(P);
        for (int i = 0; i < 2; ++i)
            CHECK(max_abs(d.V.adjoint() * d.projective.effects[i] * d.V - P.effects[i]) == 0.0);

        FinitePOVM H;
        H.effects = {0.5 * Mat::Identity(2, 2), 0.5 * Mat::Identity(2, 2)};
        auto dh = naimark_dilate(H);
        CHECK(max_abs(dh.V.adjoint() * dh.projective.effects[0] * dh.V - 0.5 * Mat::Identity(2, 2)) < 1e-15);

        std::mt19937_64 rng(99);
        std::uniform_int_distribution<int> dimD(1, 8), dimK(1, 5);
        double worst = 0.0, worst_iso = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const int D = dimD(rng), K = dimK(rng);
            FinitePOVM M = random_povm(D, K, rng);
            auto nd = naimark_dilate(M);
            worst_iso = std::max(worst_iso, max_abs(nd.V.adjoint() * nd.V - Mat::Identity(D, D)));
            for (int i = 0; i < K; ++i) {
                const Mat& E = nd.projective.effects[i];
                worst = std::max(worst, max_abs(nd.V.adjoint() * E * nd.V - M.effects[i]));
                CHECK(max_abs(E * E - E) == 0.0);
            }
        }
        CHECK(worst < 1e-12);
        CHECK(worst_iso < 1e-12);

        FinitePOVM bad;
        bad.effects = {Mat(Eigen::Vector2cd(1.5, 0).asDiagonal()), Mat(Eigen::Vector2cd(-0.5, 1).asDiagonal())};
        CHECK_THROWS_AS(naimark_dilate(bad), DomainError);
        FinitePOVM shy;
        shy.effects = {0.5 * Mat::Identity(2, 2)};
        CHECK_THROWS_AS(naimark_dilate(shy), DomainError);
    }

    TEST_CASE("moments: serial and parallel agree bitwise")
    {
        std::mt19937_64 rng(15);
        DiskDensity d(2.0, random_state(10, rng));
        Moments a = mean_and_second_moment(d, QuadSpec{200, 32, 0.999}, Exec::serial);
        Moments b = mean_and_second_moment(d, QuadSpec{200, 32, 0.999}, Exec::parallel);
        CHECK(a.mean == b.mean);
        CHECK(a.second == b.second);
        CHECK(a.mass == b.mass);
    }
}
