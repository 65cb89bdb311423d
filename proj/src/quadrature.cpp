#include "su11/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "su11/types.hpp"

namespace su11 {

Rule gauss_legendre(int n, double a, double b)
{
    if (n < 1)
        throw DomainError("quadrature needs at least one node");
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15)
                break;
        }
        r.x[i] = xm - xl * z;
        r.x[n - 1 - i] = xm + xl * z;
        r.w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    return r;
}

Rule gauss_laguerre(int n)
{
    if (n < 1)
        throw DomainError("quadrature needs at least one node");
    // Golub-Welsch on the Jacobi matrix
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = 2.0 * i + 1.0;
        if (i + 1 < n)
            J(i, i + 1) = J(i + 1, i) = i + 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        r.x[i] = es.eigenvalues()(i);
        const double v = es.eigenvectors()(0, i);
        r.w[i] = v * v;
    }
    return r;
}

Rule uniform_angles(int n)
{
    if (n < 1)
        throw DomainError("quadrature needs at least one node");
    Rule r;
    r.x.resize(n);
    r.w.assign(n, 2.0 * std::numbers::pi / n);
    for (int i = 0; i < n; ++i)
        r.x[i] = 2.0 * std::numbers::pi * i / n;
    return r;
}

}  // namespace su11
