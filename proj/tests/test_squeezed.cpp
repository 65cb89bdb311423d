#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "su11/coherent.hpp"
#include "su11/expm.hpp"
#include "su11/povm.hpp"
#include "su11/repkit.hpp"
#include "su11/squeezed.hpp"

using namespace su11;

namespace {

SqueezeParams random_squeeze(std::mt19937_64& rng, double zmax)
{
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double r = std::atanh(zmax * U(rng));
    const double a = 6.283185307179586 * U(rng), b = 6.283185307179586 * U(rng);
    return {std::polar(std::cosh(r), a), std::polar(std::sinh(r), b)};
}

}  // namespace

TEST_SUITE("squeezed")
{
    TEST_CASE("boson space")
    {
        BosonSpace B = boson_space(16);
        const Mat& a = B.a.mat();
        CHECK(a(0, 1) == cplx(1.0));
        CHECK(max_abs(interior_block(Mat(a * B.ad.mat() - B.ad.mat() * a), 1) - Mat::Identity(15, 15)) < 1e-14);
        CHECK(max_abs(a - std::sqrt(0.5) * (B.Q.mat() + I_unit * B.P.mat())) < 1e-15);
        Mat nb = 0.5 * (B.Q.mat() * B.Q.mat() + B.P.mat() * B.P.mat() - Mat::Identity(16, 16));
        CHECK(max_abs(interior_block(Mat(nb - B.nb.mat()), 1)) < 1e-13);
        Mat QP = B.Q.mat() * B.P.mat() - B.P.mat() * B.Q.mat();
        CHECK(max_abs(interior_block(Mat(QP - I_unit * Mat::Identity(16, 16)), 1)) < 1e-13);
        for (int n = 0; n < 16; ++n)
            CHECK(B.nb.mat()(n, n) == cplx(n));
        CHECK(B.a.basis() == Basis::boson_number);
        CHECK_THROWS_AS(boson_space(15), DomainError);
        CHECK_THROWS_AS(boson_space(2), DomainError);
    }

    TEST_CASE("sector embedding")
    {
        Mat Je = sector_embedding(8, Parity::even), Jo = sector_embedding(8, Parity::odd);
        CHECK(Je(0, 0) == cplx(1.0));
        CHECK(Je(2, 1) == cplx(-1.0));
        CHECK(Jo(5, 2) == cplx(1.0));
        CHECK(max_abs(Je.adjoint() * Je - Mat::Identity(4, 4)) == 0.0);
        CHECK(max_abs(Je.adjoint() * Jo) == 0.0);
    }

    TEST_CASE("parity sectors carry lambda = 1/2 and 3/2")
    {
        const int Db = 64;
        BosonSpace B = boson_space(Db);
        for (Parity p : {Parity::even, Parity::odd}) {
            SectorLadder s = su11_from_boson(B, p);
            const double lam = p == Parity::even ? 0.5 : 1.5;
            CHECK(s.lambda == lam);
            auto L = build_ladder(lam, Db / 2);
            CHECK(max_abs(interior_block(Mat(s.L.L0.mat() - L.L0.mat()), 1)) < 1e-12);
            CHECK(max_abs(interior_block(Mat(s.L.Lplus.mat() - L.Lplus.mat()), 1)) < 1e-12);
            CHECK(max_abs(interior_block(Mat(s.L.Lminus.mat() - L.Lminus.mat()), 1)) < 1e-12);
            for (int n = 0; n < 5; ++n)
                CHECK(std::abs(s.L.L0.mat()(n, n) - (lam + 2.0 * n)) < 1e-15);
            const Mat& L0 = s.L.L0.mat();
            Mat C = L0 * L0 - 2.0 * L0 + 4.0 * s.L.Lplus.mat() * s.L.Lminus.mat();
            CHECK(max_abs(interior_block(Mat(C + 0.75 * Mat::Identity(Db / 2, Db / 2)), 1)) < 1e-11);
        }
    }

    TEST_CASE("even-sector a matches lambda = 1/2")
    {
        BosonSpace B = boson_space(64);
        SectorA s = sector_annihilator(B);
        CHECK(s.solve_residual < 1e-12);
        Mat a = build_a_pair(0.5, 32).a.mat();
        CHECK(max_abs(interior_block(Mat(s.a.mat() - a), 1)) < 1e-12);
        // lambda = 1/2 is below the subnormality threshold
        CHECK(hyponormality_gap(Op(s.a.mat().adjoint(), Basis::su11_number), 1) < 0.0);
    }

    TEST_CASE("squeeze parameters")
    {
        CHECK_THROWS_AS(SqueezeParams(1.0, 0.5), DomainError);
        SqueezeParams p(std::cosh(1.0), std::sinh(1.0));
        CHECK(std::abs(p.zeta() - std::tanh(1.0)) < 1e-15);
        CHECK(std::abs(p.xi() - 1.0) < 1e-14);
        SqueezeParams q = from_xi(std::polar(0.7, 1.2));
        CHECK(std::abs(q.xi() - std::polar(0.7, 1.2)) < 1e-14);
        CHECK(std::abs(std::norm(q.mu) - std::norm(q.nu) - 1.0) < 1e-14);
    }

    TEST_CASE("squeezed vacuum")
    {
        const int Db = 512;
        BosonSpace B = boson_space(Db);
        State v0 = squeezed_vacuum(SqueezeParams(1.0, 0.0), Db);
        CHECK(v0.coeffs()(0) == cplx(1.0));
        CHECK(v0.coeffs().tail(Db - 1).norm() == 0.0);

        SqueezeParams p(std::cosh(1.0), std::sinh(1.0));
        State v = squeezed_vacuum(p, Db);
        CHECK(v.basis() == Basis::boson_number);
        CHECK(b_residual(p, B, v) < 1e-8);
        for (int n = 1; n < Db; n += 2)
            CHECK(v.coeffs()(n) == cplx(0.0));
        State c = coherent_state(0.5, DiskPoint(p.zeta()), Db / 2);
        CHECK((sector_embedding(Db, Parity::even) * c.coeffs() - v.coeffs()).norm() == 0.0);

        std::mt19937_64 rng(21);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            SqueezeParams r = random_squeeze(rng, 0.9);
            worst = std::max(worst, b_residual(r, B, squeezed_vacuum(r, Db)));
        }
        CHECK(worst < 1e-7);
    }

    TEST_CASE("squeezed vacuum is the Caves squeezed ray")
    {
        const int Db = 200;
        BosonSpace B = boson_space(Db);
        for (cplx xi : {cplx(0.3, 0.0), std::polar(0.5, 0.9), std::polar(0.6, -2.0)}) {
            Mat X = -0.5 * xi * B.ad.mat() * B.ad.mat() + 0.5 * std::conj(xi) * B.a.mat() * B.a.mat();
            Vec s = expm(X).col(0);
            State v = squeezed_vacuum(from_xi(xi), Db);
            CHECK(std::abs(std::abs(v.coeffs().dot(s)) - 1.0) < 1e-10);
        }
    }

    TEST_CASE("characteristic equations")
    {
        auto r0 = characteristic_equations_check(SqueezeParams(1.0, 0.0), 256);
        CHECK(r0.eig_adinv_a == cplx(0.0));
        CHECK(r0.res_adinv_a < 1e-14);

        SqueezeParams p(std::cosh(1.0), std::sinh(1.0));
        auto r = characteristic_equations_check(p, 512);
        CHECK(std::abs(r.eig_QinvP - cplx(0, std::exp(2.0))) < 1e-13);
        CHECK(std::abs(r.eig_adinv_a - std::tanh(1.0)) < 1e-15);
        CHECK(r.res_QinvP < 1e-6);
        CHECK(r.res_adinv_a < 1e-6);
        CHECK(r.solve_res_Q < 1e-10);
        CHECK(r.solve_res_ad < 1e-10);

        std::mt19937_64 rng(22);
        for (int i = 0; i < 5; ++i) {
            SqueezeParams q = random_squeeze(rng, 0.9);
            auto c = characteristic_equations_check(q, 512);
            CHECK(c.res_QinvP / std::max(1.0, std::abs(c.eig_QinvP)) < 1e-6);
            CHECK(c.res_adinv_a < 1e-6);
        }
    }

    TEST_CASE("multi-particle reduction")
    {
        auto r1 = multiparticle_reduction(1);
        CHECK(r1.lambda == 0.5);
        CHECK_FALSE(r1.subnormal);
        auto r2 = multiparticle_reduction(2);
        CHECK(r2.k == 0.0);
        CHECK(r2.lambda == 1.0);
        CHECK(r2.subnormal);
        auto r4 = multiparticle_reduction(4);
        CHECK(r4.k == 0.5);
        CHECK(r4.lambda == 2.0);
        for (int n = 1; n <= 8; ++n)
            CHECK(multiparticle_reduction(n).subnormal == (n >= 2));
        CHECK_THROWS_AS(multiparticle_reduction(0), DomainError);

        // k = 0 realization carries lambda = 1, where a* is hyponormal
        CHECK(hyponormality_gap(build_a_pair(r2.lambda, 64).a_star, 1) >= -1e-12);
    }

    TEST_CASE("product coherent states: overlaps are Mobius invariant")
    {
        const cplx z1(0.2, -0.3), z2(-0.4, 0.1);
        // |<z1|z2>|^2 = ((1-|z1|^2)(1-|z2|^2)/|1 - conj(z1) z2|^2)^lambda
        const double base = (1 - std::norm(z1)) * (1 - std::norm(z2)) / std::norm(1.0 - std::conj(z1) * z2);
        for (int n : {1, 2, 3}) {
            const double o = product_overlap_sq(n, z1, z2, 400);
            CHECK(std::abs(o - std::pow(base, 0.5 * n)) < 1e-10);
            SU11Element g = compose(SU11Element::boost(0.4, 0.3), SU11Element::rotation(1.1));
            const double og = product_overlap_sq(n, mobius_act(g, DiskPoint(z1)).zeta, mobius_act(g, DiskPoint(z2)).zeta, 400);
            CHECK(std::abs(og - o) < 1e-10);
        }
    }
}
