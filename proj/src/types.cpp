#include "su11/types.hpp"

#include <cmath>

namespace su11 {

const char* basis_name(Basis b)
{
    switch (b) {
    case Basis::su11_number: return "su11_number";
    case Basis::boson_number: return "boson_number";
    case Basis::grid: return "grid";
    }
    return "?";
}

void Tolerances::validate() const
{
    if (!(algebraic > 0) || !(quadrature > 0) || !(grid > 0))
        throw DomainError("tolerances must be positive");
}

Op::Op(Mat m, Basis b) : m_(std::move(m)), basis_(b)
{
    if (m_.rows() != m_.cols())
        throw DomainError("operator matrix must be square");
    if (m_.rows() < 2)
        throw DomainError("operator dimension must be at least 2");
    if (!m_.allFinite())
        throw DomainError("operator has non-finite entries");
}

static void check_same(const Op& a, const Op& b)
{
    if (a.basis() != b.basis())
        throw BasisMismatch(std::string("basis mismatch: ") + basis_name(a.basis()) + " vs " +
                            basis_name(b.basis()));
    if (a.dim() != b.dim())
        throw BasisMismatch("dimension mismatch");
}

Op Op::operator+(const Op& o) const
{
    check_same(*this, o);
    return {m_ + o.m_, basis_};
}

Op Op::operator-(const Op& o) const
{
    check_same(*this, o);
    return {m_ - o.m_, basis_};
}

Op Op::operator*(const Op& o) const
{
    check_same(*this, o);
    return {m_ * o.m_, basis_};
}

Op commutator(const Op& x, const Op& y) { return x * y - y * x; }

Op identity(int D, Basis b) { return {Mat::Identity(D, D), b}; }

double State::tail_mass() const
{
    const int n = dim();
    const int tail = std::max(1, n / 10);
    return c_.tail(tail).squaredNorm();
}

State State::normalized() const
{
    const double nrm = norm();
    if (nrm == 0.0)
        throw DomainError("cannot normalize zero vector");
    return {c_ / nrm, basis_};
}

State State::basis_vector(int D, int n, Basis b)
{
    if (n < 0 || n >= D)
        throw DomainError("basis index out of range");
    Vec c = Vec::Zero(D);
    c(n) = 1.0;
    return {c, b};
}

State apply(const Op& x, const State& v)
{
    if (x.basis() != v.basis())
        throw BasisMismatch(std::string("basis mismatch: ") + basis_name(x.basis()) + " vs " +
                            basis_name(v.basis()));
    if (x.dim() != v.dim())
        throw BasisMismatch("dimension mismatch");
    return {x.mat() * v.coeffs(), v.basis()};
}

cplx inner(const State& u, const State& v)
{
    if (u.basis() != v.basis() || u.dim() != v.dim())
        throw BasisMismatch("inner product across bases");
    return u.coeffs().dot(v.coeffs());
}

double max_abs(const Mat& m)
{
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace su11
