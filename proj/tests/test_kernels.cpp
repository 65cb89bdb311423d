#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include <omp.h>

#include "helpers.hpp"
#include "su11/expm.hpp"
#include "su11/kernels.hpp"
#include "su11/parallel.hpp"
#include "su11/quadrature.hpp"

using namespace su11;

TEST_SUITE("kernels")
{
    TEST_CASE("Gauss-Legendre integrates polynomials exactly")
    {
        Rule r = gauss_legendre(12, 0.0, 2.0);
        for (int p = 0; p < 24; ++p) {
            double s = 0.0;
            for (std::size_t i = 0; i < r.x.size(); ++i)
                s += r.w[i] * std::pow(r.x[i], p);
            CHECK(std::abs(s - std::pow(2.0, p + 1) / (p + 1)) < 1e-13 * std::pow(2.0, p + 1));
        }
        Rule big = gauss_legendre(800, 0.0, 1.0);
        CHECK(std::abs(std::accumulate(big.w.begin(), big.w.end(), 0.0) - 1.0) < 1e-13);
    }

    TEST_CASE("Gauss-Laguerre moments are factorials")
    {
        Rule r = gauss_laguerre(10);
        for (int p = 0; p < 20; ++p) {
            double s = 0.0;
            for (std::size_t i = 0; i < r.x.size(); ++i)
                s += r.w[i] * std::pow(r.x[i], p);
            CHECK(std::abs(s / std::tgamma(p + 1.0) - 1.0) < 1e-11);
        }
    }

    TEST_CASE("uniform angles")
    {
        Rule r = uniform_angles(8);
        CHECK(r.x[0] == 0.0);
        CHECK(std::abs(r.w[3] - 2 * M_PI / 8) < 1e-16);
        cplx s = 0.0;
        for (int i = 0; i < 8; ++i)
            s += r.w[i] * std::polar(1.0, 3 * r.x[i]);
        CHECK(std::abs(s) < 1e-14);
    }

    TEST_CASE("matrix exponential")
    {
        std::mt19937_64 rng(1);
        // diagonalizable oracle: V diag(e^d) V^{-1}
        for (double scale : {0.01, 1.0, 30.0}) {
            Mat V = th::random_unitary(6, rng);
            Vec d(6);
            for (int i = 0; i < 6; ++i)
                d(i) = cplx(scale * (i - 2.5) / 3.0, scale * 0.3 * i);
            Mat X = V * d.asDiagonal() * V.adjoint();
            Mat ref = V * d.array().exp().matrix().asDiagonal() * V.adjoint();
            CHECK(max_abs(expm(X) - ref) / std::max(1.0, max_abs(ref)) < 1e-11);
        }
        // nilpotent: exp(N) = I + N + N^2/2
        Mat N = Mat::Zero(3, 3);
        N(0, 1) = 2.0;
        N(1, 2) = 3.0;
        Mat ref = Mat::Identity(3, 3) + N + 0.5 * N * N;
        CHECK(max_abs(expm(N) - ref) < 1e-14);
        CHECK(max_abs(expm(Mat::Zero(4, 4)) - Mat::Identity(4, 4)) < 1e-15);
    }

    TEST_CASE("counter-based RNG")
    {
        CHECK(uniform01(1, 2, 3) == uniform01(1, 2, 3));
        CHECK(uniform01(1, 2, 3) != uniform01(1, 2, 4));
        CHECK(uniform01(1, 2, 3) != uniform01(2, 2, 3));
        double mean = 0.0;
        const int n = 100000;
        int outside = 0;
        for (int i = 0; i < n; ++i) {
            const double u = uniform01(9, 0, i);
            outside += u < 0.0 || u >= 1.0;
            mean += u;
        }
        CHECK(outside == 0);
        CHECK(std::abs(mean / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
    }

    TEST_CASE("thread cap from the environment")
    {
        const int before = max_threads();
        setenv("SU11KIT_THREADS", "1", 1);
        CHECK(configure_threads() == 1);
        unsetenv("SU11KIT_THREADS");
        omp_set_num_threads(before);
        setenv("SU11KIT_THREADS", "junk", 1);
        CHECK(configure_threads() == before);
        unsetenv("SU11KIT_THREADS");
    }

    TEST_CASE("fixed sum")
    {
        std::vector<double> v(1000);
        for (int i = 0; i < 1000; ++i)
            v[i] = 1.0 / (i + 1.0);
        double ref = 0.0;
        for (int i = 999; i >= 0; --i)
            ref += v[i];
        CHECK(std::abs(fixed_sum(v) - ref) < 1e-13);
        CHECK(fixed_sum(std::vector<double>{}) == 0.0);
        CHECK(fixed_sum(std::vector<cplx>{cplx(1, 2), cplx(3, -1)}) == cplx(4, 1));
    }

    TEST_CASE("gram, polynomial evaluation and matvec: serial vs parallel")
    {
        std::mt19937_64 rng(2);
        std::normal_distribution<double> N01;
        CoeffTable V(24, 3000);
        for (int i = 0; i < V.rows(); ++i)
            for (int j = 0; j < V.cols(); ++j)
                V(i, j) = cplx(N01(rng), N01(rng));
        Mat gs = gram(V, Exec::serial), gp = gram(V, Exec::parallel);
        Mat ref = V * V.adjoint();
        CHECK(max_abs(gs - ref) < 1e-9);
        CHECK(max_abs(gs - gp) < 1e-10);
        CHECK(max_abs(gp - gram(V, Exec::parallel)) == 0.0);
        CHECK(max_abs(gs - gs.adjoint()) < 1e-10);

        Vec c = th::random_vec(9, rng);
        std::vector<cplx> z;
        for (int i = 0; i < 500; ++i)
            z.push_back(std::polar(0.9 * i / 500.0, 0.37 * i));
        auto hs = eval_poly(c, z, Exec::serial), hp = eval_poly(c, z, Exec::parallel);
        CHECK(hs == hp);
        for (int i : {0, 123, 499}) {
            cplx direct = 0.0;
            for (int n = 0; n < 9; ++n)
                direct += c(n) * std::pow(z[i], n);
            CHECK(std::abs(hs[i] - direct) < 1e-14);
        }

        Mat A = th::random_unitary(40, rng);
        Vec x = th::random_vec(40, rng);
        CHECK((matvec(A, x, Exec::serial) - A * x).norm() < 1e-14);
        CHECK(matvec(A, x, Exec::serial) == matvec(A, x, Exec::parallel));
    }
}
