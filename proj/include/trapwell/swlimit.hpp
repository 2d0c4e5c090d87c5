#pragma once

#include <string>
#include <vector>

#include "trapwell/eigenfunction.hpp"
#include "trapwell/spectrum.hpp"

namespace trapwell {

// Square-well limit (lambda = 0): walls at xi = -1 and xi = +1.
struct square_well_solution {
    double v1 = 0, v2 = 0;
    eigenvalue_record record;
    double k1 = 0, k2 = 0;
    double c0 = 0, d0 = 0, a0 = 0, b0 = 0;
    double b1p = 0, b2p = 0;   // ramp amplitudes of the collapsed zones
    double bt1 = 0, bt2 = 0;   // outer amplitudes, equal to b1p, b2p times Lambda
    double plateau_left = 0, plateau_right = 0;
    double d2_jump_left = 0, d2_jump_right = 0;  // phi''(x+) - phi''(x-) at -1, +1
    double norm_sum = 0;
};

struct d2_limits {
    double left = 0, right = 0, jump = 0;
};

// Left side of 2 sqrt(beta) + asin sqrt(beta/v1) + asin sqrt(beta/v2) = n pi.
double swp_angle_sum(double v1, double v2, double beta);

std::vector<eigenvalue_record> swp_eigenvalues(double v1, double v2);

// (1 - beta/k) sin 2 sqrt(beta) + 2 sqrt(beta/k) cos 2 sqrt(beta), symmetric well.
double reed_residual(double v, double beta);

// True when a bound state exists (Messiah's condition fails).
bool swp_exists(double v1, double v2);

// The same condition in the arcsin form; true when no bound state exists.
bool swp_absent_landau(double v1, double v2);

square_well_solution swp_solution(double v1, double v2, const eigenvalue_record& rec);

// Junction points belong to the zone on their left.
phi_triplet sw_eval(const square_well_solution& s, double xi);

// One-sided second-derivative limits at xi = -1 or xi = +1.
d2_limits sw_d2_limits(const square_well_solution& s, double xi);

struct sweep_row {
    double lambda = 0;
    int n = 0;
    double beta_twp = 0, beta_swp = 0, abs_dev = 0;
    double d2jump_left = 0, d2jump_right = 0;
};

struct sweep_result {
    std::vector<sweep_row> rows;
    std::vector<int> counts;            // states found per lambda
    std::vector<std::string> errors;    // empty string when the lambda succeeded
    bool monotone = true;               // per-state deviation decreasing with lambda
};

sweep_result lambda_sweep(double v1, double v2, const std::vector<double>& lambdas);

}  // namespace trapwell
