#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "su11/halfline.hpp"
#include "su11/parallel.hpp"
#include "su11/types.hpp"

namespace su11 {

struct QubitFrame {
    Eigen::Vector2cd up{1.0, 0.0}, down{0.0, 1.0};
    Eigen::Vector2cd plus() const { return (up + down) / std::sqrt(2.0); }
    Eigen::Vector2cd minus() const { return (up - down) / std::sqrt(2.0); }
    // |-><+| + ... in the (up, down) basis
    Eigen::Matrix2cd minus_plus() const { return minus() * plus().adjoint(); }
    Eigen::Matrix2cd plus_minus() const { return plus() * minus().adjoint(); }
};

struct CompoundOperator {
    std::vector<int> dims;  // factor dimensions, qubit last
    SpMat T;
    // layout: index = q * (product of other dims) + i for a trailing qubit
    bool hermitian_flag = false;
    bool normal_flag = false;
};

struct DomainViolation {
    std::string phi;
    double residual;
};

struct ExtensionReport {
    std::string construction;
    std::vector<int> dims;
    double normality_residual = 0.0;
    double extension_residual = 0.0;
    std::string test_family;
    std::string grid_spec;
    std::string ancilla_spec;
    std::map<std::string, double> checks;  // further measured values
    std::optional<DomainViolation> domain_violation;
    bool pass = false;
};

// T = a_b^dag (x) I + I (x) a_b, ancilla |0;1,0>
std::pair<CompoundOperator, ExtensionReport> heterodyne_extension(int D_b, int margin = 4,
                                                                  int n_random = 8,
                                                                  std::uint64_t seed = 7,
                                                                  const Tolerances& tol = {});

struct HeterodyneMoments {
    cplx mean_T, mean_quad;
    double second_T, second_quad;
};

// moments of the a_b^dag POVM for phi: from <T>, <T^dag T> in phi (x) |0>, and from
// the plane integral of |<alpha*|phi>|^2 / pi
HeterodyneMoments heterodyne_moments(const Vec& phi, int D_b);

struct SymmetricOptions {
    bool domain_violation_test = false;
    double spectral_xmin = 1e-6;
    int spectral_G = 256;
};

// T = A (x) |-><+| + A^* (x) |+><-| with A^* the weighted adjoint of the grid A
std::pair<CompoundOperator, ExtensionReport> symmetric_extension(const GridOps& ops,
                                                                 const SymmetricOptions& opt = {},
                                                                 const Tolerances& tol = {});
// default lambda = 1 grid: k = 0 on a log grid reaching down to 1e-16
GridOps lambda1_grid_ops(int G = 2048);
// max |Im| over the eigenvalues of the symmetric extension on a small grid
double symmetric_spectrum_imag(double xmin, int G);

// T = U (x) |up><up| + U^dag (x) |down><down| + (I - U U^dag) (x) |up><down|
std::pair<CompoundOperator, ExtensionReport> isometric_extension(const Op& U, int margin,
                                                                 const Tolerances& tol = {});

struct UnitCircleReport {
    double max_radius_defect;  // max ||ev| - 1|
    double completion_change;  // max |W - T| on the interior
    bool completed;            // T itself was not unitary
};

// eigenvalues of T, or of its polar unitary factor when T is a truncated isometry
UnitCircleReport isometric_spectrum(const CompoundOperator& T, int margin);

struct Grid2DSpec {
    double u_max = 1.0;
    double v_max = 8.0;
    int Nu = 512;
    int Nv = 512;
    std::string describe() const;
};

struct GtOneOptions {
    bool refinement = true;      // rerun at h*2 and h*4 for ratios
    bool interpolated_u = true;  // materialize U by cubic interpolation in log x2
    Exec exec = Exec::parallel;
};

std::pair<CompoundOperator, ExtensionReport> lambda_gt1_extension(double k, const Grid2DSpec& spec,
                                                                  const GtOneOptions& opt = {},
                                                                  const Tolerances& tol = {});

// pieces exposed for tests and benchmarks
struct Field2D {
    int Nu, Nv;
    std::vector<cplx> up, down;  // row-major in (u, v)
};

// T' on U-coordinates, central differences in v with zero ghost at 0, one-sided at v_max
Field2D apply_tprime(const Field2D& F, const Grid2DSpec& s, Exec exec);
double extension_residual_2d(double k, const Grid2DSpec& s, Exec exec);
// relative commutator residual in U-coordinates for a Gaussian bump
double normality_residual_u(const Grid2DSpec& s, Exec exec);
// same in the original (x1, x2) coordinates, box [0.5, 8] x [0, 8] with N^2 nodes
double normality_residual_x(int N, Exec exec);

}  // namespace su11
