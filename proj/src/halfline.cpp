#include "su11/halfline.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace su11 {

using Trip = Eigen::Triplet<cplx>;

AffineParams::AffineParams(double kk) : k(kk)
{
    if (!(kk > -0.5) || !std::isfinite(kk))
        throw DomainError("affine parameter k must satisfy k > -1/2");
}

std::shared_ptr<const Grid> Grid::log_grid(double xmin, double xmax, int G, bool lump_origin)
{
    if (!(xmin > 0 && xmax > xmin) || G < 16)
        throw DomainError("log grid needs 0 < xmin < xmax and G >= 16");
    auto g = std::make_shared<Grid>();
    g->scheme = GridScheme::log;
    const double s0 = std::log(xmin), s1 = std::log(xmax);
    g->h = (s1 - s0) / (G - 1);
    g->x.resize(G);
    g->w.resize(G);
    for (int i = 0; i < G; ++i) {
        g->x(i) = std::exp(s0 + i * g->h);
        g->w(i) = g->x(i) * g->h * ((i == 0 || i == G - 1) ? 0.5 : 1.0);
    }
    // the slab [0, xmin] with the integrand frozen at the first node
    if (lump_origin)
        g->w(0) += xmin;
    return g;
}

std::shared_ptr<const Grid> Grid::uniform_grid(double xmax, int G)
{
    if (!(xmax > 0) || G < 16)
        throw DomainError("uniform grid needs xmax > 0 and G >= 16");
    auto g = std::make_shared<Grid>();
    g->scheme = GridScheme::uniform;
    g->h = xmax / G;
    g->x.resize(G);
    g->w.resize(G);
    for (int i = 0; i < G; ++i) {
        g->x(i) = (i + 1) * g->h;
        g->w(i) = g->h * (i == G - 1 ? 0.5 : 1.0);
    }
    return g;
}

double Grid::moment_error(double k) const
{
    double s = 0.0;
    for (int i = 0; i < size(); ++i)
        s += w(i) * std::exp(2.0 * k * std::log(x(i)) - x(i));
    const double exact = std::tgamma(2.0 * k + 1.0);
    return std::abs(s - exact) / exact;
}

double GridFunction::norm() const { return std::sqrt(std::abs(overlap(*this, *this))); }

cplx overlap(const GridFunction& f, const GridFunction& g)
{
    if (f.grid != g.grid)
        throw BasisMismatch("grid functions live on different grids");
    cplx s = 0.0;
    for (int i = 0; i < f.grid->size(); ++i)
        s += f.grid->w(i) * std::conj(f.values(i)) * g.values(i);
    return s;
}

double sonine(int n, double l, double x)
{
    if (n < 0)
        throw DomainError("sonine degree must be >= 0");
    if (!(l > -1))
        throw DomainError("sonine parameter must satisfy l > -1");
    if (n == 0)
        return 1.0;
    double p0 = 1.0, p1 = l + 1.0 - x;
    for (int m = 1; m < n; ++m) {
        const double p2 = ((2.0 * m + 1.0 + l - x) * p1 - (m + l) * p0) / (m + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double sonine_sum(int n, double l, double x)
{
    double s = 0.0;
    for (int m = 0; m <= n; ++m) {
        const double lc = std::lgamma(n + l + 1.0) - std::lgamma(n - m + 1.0) - std::lgamma(m + l + 1.0) -
                          std::lgamma(m + 1.0);
        s += (m % 2 ? -1.0 : 1.0) * std::exp(lc) * std::pow(x, m);
    }
    return s;
}

static void check_resolved(const Grid& g, double k, double tol)
{
    if (g.moment_error(k) > tol)
        throw TruncationError("grid under-resolves the x^{2k} e^{-x} mass");
}

GridFunction basis_fn(int n, const AffineParams& k, const GridPtr& grid, double tol)
{
    if (n < 0)
        throw DomainError("basis index must be >= 0");
    check_resolved(*grid, k.k, tol);
    const double kk = k.k;
    const double lpre = 0.5 * ((2.0 * kk + 1.0) * std::log(2.0) + std::lgamma(n + 1.0) -
                               std::lgamma(n + 2.0 * kk + 1.0));
    Vec v(grid->size());
    for (int i = 0; i < grid->size(); ++i) {
        const double x = grid->x(i);
        v(i) = std::exp(lpre - x + kk * std::log(x)) * sonine(n, 2.0 * kk, 2.0 * x);
    }
    return {grid, v};
}

GridFunction affine_coherent(const HalfPlanePoint& eta, const AffineParams& k, const GridPtr& grid,
                             double tol)
{
    check_resolved(*grid, k.k, tol);
    const double kk = k.k, y = eta.eta.imag(), re = eta.eta.real();
    const double lpre = 0.5 * ((2.0 * kk + 1.0) * std::log(2.0 * y) - std::lgamma(2.0 * kk + 1.0));
    Vec v(grid->size());
    double peak = 0.0;
    for (int i = 0; i < grid->size(); ++i) {
        const double x = grid->x(i);
        const double amp = std::exp(lpre + kk * std::log(x) - y * x);
        v(i) = std::polar(amp, re * x);
        peak = std::max(peak, amp);
    }
    // phase step between neighbours where the state carries weight
    for (int i = 0; i + 1 < grid->size(); ++i) {
        if (std::abs(v(i)) < 1e-6 * peak)
            continue;
        const double dx = grid->x(i + 1) - grid->x(i);
        if (std::abs(re) * dx > 0.25 * M_PI)
            throw TruncationError("affine coherent state oscillation under-resolved (Nyquist check)");
    }
    return {grid, v};
}

cplx affine_fock_overlap(int n, const AffineParams& k, const HalfPlanePoint& eta)
{
    const double lam = k.lambda();
    const DiskPoint z = to_disk(eta);
    const double r = std::abs(z.zeta);
    cplx c = std::exp(0.5 * lam * std::log1p(-r * r) + log_g(lam, n));
    if (n > 0)
        c *= std::pow(z.zeta, n);
    return std::polar(1.0, -lam * std::arg(1.0 - I_unit * eta.eta)) * c;
}

namespace {

// first derivative on a uniform mesh, 4th order
SpMat diff1(int G, double h)
{
    std::vector<Trip> t;
    const double c = 1.0 / (12.0 * h);
    const std::array<double, 5> b0{-25, 48, -36, 16, -3};
    const std::array<double, 5> b1{-3, -10, 18, -6, 1};
    for (int j = 0; j < 5; ++j) {
        t.emplace_back(0, j, b0[j] * c);
        t.emplace_back(1, j, b1[j] * c);
        t.emplace_back(G - 1, G - 1 - j, -b0[j] * c);
        t.emplace_back(G - 2, G - 2 + 1 - j, -b1[j] * c);
    }
    for (int i = 2; i < G - 2; ++i) {
        t.emplace_back(i, i - 2, 1.0 * c);
        t.emplace_back(i, i - 1, -8.0 * c);
        t.emplace_back(i, i + 1, 8.0 * c);
        t.emplace_back(i, i + 2, -1.0 * c);
    }
    SpMat D(G, G);
    D.setFromTriplets(t.begin(), t.end());
    return D;
}

// second derivative on a uniform mesh, 4th order
SpMat diff2(int G, double h)
{
    std::vector<Trip> t;
    const double c = 1.0 / (12.0 * h * h);
    const std::array<double, 6> b0{45, -154, 214, -156, 61, -10};
    const std::array<double, 6> b1{10, -15, -4, 14, -6, 1};
    for (int j = 0; j < 6; ++j) {
        t.emplace_back(0, j, b0[j] * c);
        t.emplace_back(1, j, b1[j] * c);
        t.emplace_back(G - 1, G - 1 - j, b0[j] * c);
        t.emplace_back(G - 2, G - 1 - j, b1[j] * c);
    }
    for (int i = 2; i < G - 2; ++i) {
        t.emplace_back(i, i - 2, -1.0 * c);
        t.emplace_back(i, i - 1, 16.0 * c);
        t.emplace_back(i, i, -30.0 * c);
        t.emplace_back(i, i + 1, 16.0 * c);
        t.emplace_back(i, i + 2, -1.0 * c);
    }
    SpMat D(G, G);
    D.setFromTriplets(t.begin(), t.end());
    return D;
}

SpMat diag(const Vec& d)
{
    SpMat M(d.size(), d.size());
    M.reserve(Eigen::VectorXi::Constant(d.size(), 1));
    for (Eigen::Index i = 0; i < d.size(); ++i)
        M.insert(i, i) = d(i);
    M.makeCompressed();
    return M;
}

SpMat eye(int G)
{
    SpMat M(G, G);
    M.setIdentity();
    return M;
}

}  // namespace

GridOps grid_operators(const AffineParams& kp, const GridPtr& grid)
{
    const Grid& g = *grid;
    const int G = g.size();
    const double k = kp.k;
    // stencil sanity: the mesh must be fine enough that neighbouring nodes
    // differ by well under a unit in the stencil variable
    if (G < 16)
        throw DomainError("grid too small for the 4th-order stencil");
    if (g.scheme == GridScheme::log && g.h > 0.1)
        throw TruncationError("log-grid spacing too coarse for a stable derivative stencil");

    const Vec x = g.x.cast<cplx>();
    const Vec xinv = g.x.cwiseInverse().cast<cplx>();
    GridOps o;
    o.grid = grid;
    o.k = k;
    o.Q = diag(x);
    o.Qinv = diag(xinv);
    SpMat Id = eye(G);
    SpMat PQP;  // -(x f')'
    if (g.scheme == GridScheme::log) {
        SpMat Ds = diff1(G, g.h);
        SpMat Dss = diff2(G, g.h);
        o.D1 = o.Qinv * Ds;
        o.E0 = Id + 2.0 * Ds;
        PQP = -SpMat(o.Qinv * Dss);
    } else {
        SpMat Dx = diff1(G, g.h);
        SpMat Dxx = diff2(G, g.h);
        o.D1 = Dx;
        o.E0 = Id + 2.0 * SpMat(o.Q * Dx);
        PQP = -(Dx + SpMat(o.Q * Dxx));
    }
    o.P = -I_unit * o.D1;
    o.Eplus = I_unit * o.Q;
    o.Eminus = -I_unit * (PQP + (k * k) * o.Qinv);
    o.L0 = -I_unit * (o.Eplus - o.Eminus);
    SpMat s = I_unit * (o.Eplus + o.Eminus);
    o.Lplus = 0.5 * (o.E0 + s);
    o.Lminus = 0.5 * (o.E0 - s);
    o.A = o.P + (I_unit * k) * o.Qinv;
    o.A_star = o.P - (I_unit * k) * o.Qinv;
    return o;
}

GridFunction apply(const SpMat& X, const GridFunction& f) { return {f.grid, X * f.values}; }

Mat galerkin(const SpMat& X, const std::vector<GridFunction>& basis)
{
    const int M = static_cast<int>(basis.size());
    Mat out(M, M);
    for (int n = 0; n < M; ++n) {
        GridFunction xb = apply(X, basis[n]);
        for (int m = 0; m < M; ++m)
            out(m, n) = overlap(basis[m], xb);
    }
    return out;
}

SpMat weighted_adjoint(const SpMat& X, const Grid& g)
{
    SpMat W = diag(g.w.cast<cplx>());
    SpMat Wi = diag(g.w.cwiseInverse().cast<cplx>());
    SpMat XH = X.adjoint();
    return Wi * XH * W;
}

}  // namespace su11
