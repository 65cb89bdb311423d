#include "su11/kernels.hpp"

namespace su11 {

Mat gram(const CoeffTable& V, Exec exec)
{
    const Eigen::Index D = V.rows(), N = V.cols();
    Mat M = Mat::Zero(D, D);
    if (exec == Exec::serial) {
        for (Eigen::Index j = 0; j < N; ++j)
            for (Eigen::Index m = 0; m < D; ++m)
                for (Eigen::Index n = 0; n < D; ++n)
                    M(m, n) += V(m, j) * std::conj(V(n, j));
        return M;
    }
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index m = 0; m < D; ++m) {
        for (Eigen::Index n = m; n < D; ++n) {
            cplx s = 0.0;
            for (Eigen::Index j = 0; j < N; ++j)
                s += V(m, j) * std::conj(V(n, j));
            M(m, n) = s;
            M(n, m) = std::conj(s);
        }
    }
    return M;
}

std::vector<cplx> eval_poly(const Vec& coef, const std::vector<cplx>& z, Exec exec)
{
    const long n = static_cast<long>(z.size());
    const long d = coef.size();
    std::vector<cplx> out(n);
    auto horner = [&](cplx x) {
        cplx acc = 0.0;
        for (long k = d - 1; k >= 0; --k)
            acc = acc * x + coef(k);
        return acc;
    };
    if (exec == Exec::serial) {
        for (long i = 0; i < n; ++i)
            out[i] = horner(z[i]);
        return out;
    }
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        out[i] = horner(z[i]);
    return out;
}

template <class T>
static T pairwise(const T* v, std::size_t n)
{
    if (n <= 16) {
        T s{};
        for (std::size_t i = 0; i < n; ++i)
            s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise(v, h) + pairwise(v + h, n - h);
}

double fixed_sum(const std::vector<double>& v) { return pairwise(v.data(), v.size()); }
cplx fixed_sum(const std::vector<cplx>& v) { return pairwise(v.data(), v.size()); }

Vec matvec(const Mat& A, const Vec& x, Exec exec)
{
    if (exec == Exec::serial)
        return A * x;
    const Eigen::Index n = A.rows();
    Vec y(n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i)
        y(i) = A.row(i).transpose().cwiseProduct(x).sum();
    return y;
}

}  // namespace su11
