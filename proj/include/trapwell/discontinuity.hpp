#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "trapwell/eigenfunction.hpp"
#include "trapwell/swlimit.hpp"

namespace trapwell {

// Square-well eigenfunction with prescribed jumps at xi = -1 and +1.
// Jumps are absolute values of the normalized function: right-zone value
// minus left-zone value.
struct discontinuous_eigenfunction {
    double v1 = 0, v2 = 0;
    eigenvalue_record record;
    double k1 = 0, k2 = 0;
    double jump_left = 0, jump_right = 0;    // delta phi(-1), delta phi(+1)
    double djump_left = 0, djump_right = 0;  // delta phi'(-1), delta phi'(+1)
    double c0 = 0, d0 = 0, a0 = 0, b0 = 0;
    double bt1 = 0, bt2 = 0;
    double bt1e = 0, bt1d = 0, bt2e = 0, bt2d = 0;
    double bt1a = 0, bt2a = 0;
    double d2jump_left = 0, d2jump_right = 0;
    double norm_lhs = 0;  // left side of the normalization quadratic
};

// Throws domain_error when no positive scale normalizes the jumps.
discontinuous_eigenfunction build_discontinuous(double v1, double v2, const eigenvalue_record& rec,
                                                double dphi_left, double dphi_right);

// Junction points belong to the zone on their left.
phi_triplet disc_eval(const discontinuous_eigenfunction& d, double xi);
// zone must be z1, z0 or z2; evaluated with that zone's formula.
phi_triplet disc_eval_in_zone(const discontinuous_eigenfunction& d, zone z, double xi);

// Coefficient matrix of the (A0, B0) system; its determinant does not depend on the jumps.
Eigen::Matrix2d jump_system_matrix(double v1, double v2, double beta);
// Right side of the (A0, B0) system for given value and slope jumps.
Eigen::Vector2d jump_system_rhs(double k1, double k2, double dphi_left, double dphi_right,
                                double ddphi_left, double ddphi_right);

struct overlap_result {
    double integral = 0;  // (1/2) int phi_a phi_b; T1 + T2 equals twice this for distinct betas
    double t1 = 0, t2 = 0;
};

overlap_result overlap(const discontinuous_eigenfunction& a, const discontinuous_eigenfunction& b);

struct boundary_integral_result {
    double from_t_terms = 0;      // (beta_a - beta_b)(T1 + T2)
    double from_wronskian = 0;    // -(jump of W at -1) - (jump of W at +1)
};

// Integral of d/dxi (phi_a phi_b' - phi_b phi_a') over the real line.
boundary_integral_result boundary_integral(const discontinuous_eigenfunction& a,
                                           const discontinuous_eigenfunction& b);

// W = phi_a phi_b' - phi_a' phi_b; a and b must share beta.
double piecewise_wronskian(const discontinuous_eigenfunction& a, const discontinuous_eigenfunction& b,
                           double xi);

struct uniqueness_report {
    double a0_left = 0, a0_right = 0;  // jump ratios at -1 and +1
    double a1 = 0, a0 = 0, a2 = 0;     // zone proportionality constants
    bool swapped = false;              // ratios taken against b's jumps
    bool ratios_differ = false;
    bool non_unique = false;           // a1, a0, a2 not all equal
};

// Ratios of b's jumps to a's jumps (the member with nonzero jumps is the
// denominator).  Throws domain_error when neither member has both jumps.
uniqueness_report uniqueness_obstruction(const discontinuous_eigenfunction& a,
                                         const discontinuous_eigenfunction& b);

struct hermiticity_result {
    std::complex<double> defect;  // double sum of c_n c_m e^{i(b_m - b_n) tau} B_nm
    double norm = 0;              // (1/2) int |Psi|^2 at tau
    Eigen::MatrixXd boundary;     // B_nm
    Eigen::MatrixXd overlaps;     // (1/2) int phi_n phi_m
};

hermiticity_result hermiticity_defect(const std::vector<discontinuous_eigenfunction>& states,
                                      const std::vector<double>& coefficients, double tau);

}  // namespace trapwell
