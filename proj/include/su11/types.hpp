#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace su11 {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr cplx I_unit{0.0, 1.0};

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BasisMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

// tail bound or resolution check failed at the requested size
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Basis { su11_number, boson_number, grid };

const char* basis_name(Basis b);

struct Tolerances {
    double algebraic = 1e-12;
    double quadrature = 1e-6;
    double grid = 1e-3;

    void validate() const;
};

class Op {
public:
    Op() = default;
    Op(Mat m, Basis b);

    int dim() const { return static_cast<int>(m_.rows()); }
    Basis basis() const { return basis_; }
    const Mat& mat() const { return m_; }
    Mat& mat() { return m_; }
    cplx operator()(int i, int j) const { return m_(i, j); }

    Op adjoint() const { return {m_.adjoint(), basis_}; }

    Op operator+(const Op& o) const;
    Op operator-(const Op& o) const;
    Op operator*(const Op& o) const;
    Op operator*(cplx s) const { return {m_ * s, basis_}; }
    friend Op operator*(cplx s, const Op& a) { return a * s; }

private:
    Mat m_;
    Basis basis_ = Basis::su11_number;
};

Op commutator(const Op& x, const Op& y);
Op identity(int D, Basis b = Basis::su11_number);

class State {
public:
    State() = default;
    State(Vec c, Basis b) : c_(std::move(c)), basis_(b) {}

    int dim() const { return static_cast<int>(c_.size()); }
    Basis basis() const { return basis_; }
    const Vec& coeffs() const { return c_; }
    Vec& coeffs() { return c_; }

    double norm() const { return c_.norm(); }
    // squared mass in the last 10% of coefficients
    double tail_mass() const;
    State normalized() const;

    static State basis_vector(int D, int n, Basis b = Basis::su11_number);

private:
    Vec c_;
    Basis basis_ = Basis::su11_number;
};

State apply(const Op& x, const State& v);
cplx inner(const State& u, const State& v);

double max_abs(const Mat& m);

}  // namespace su11
