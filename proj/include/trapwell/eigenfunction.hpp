#pragma once

#include <vector>

#include "trapwell/spectrum.hpp"
#include "trapwell/well.hpp"

namespace trapwell {

struct coefficient_set {
    double c0 = 0, d0 = 0;
    double a0 = 0, b0 = 0;
    double b1p = 0, b2p = 0;
    double a1p = 0, a2p = 0;
    double bt1 = 0, bt2 = 0;
    double j1p = 0, j2p = 0;
    double d0_over_c0 = 0;     // -1 even, +1 odd in symmetric wells
    double norm_sum = 0;       // left side of the normalization equation
};

struct eigen_solution {
    well_spec well;
    eigenvalue_record record;
    zone_geometry geometry;
    double f1 = 0, f2 = 0;
    coefficient_set coeffs;
};

struct phi_triplet {
    double phi = 0, dphi = 0, d2phi = 0;
};

coefficient_set solve_coefficients(const well_spec& w, const eigenvalue_record& rec);

eigen_solution make_solution(const well_spec& w, const eigenvalue_record& rec);

// All bound states of the well, coefficients included.
std::vector<eigen_solution> solve_all(const well_spec& w);

// Evaluation with the formulas of one zone, valid on that zone's closure.
phi_triplet eval_in_zone(const eigen_solution& s, zone z, double xi);
phi_triplet eval_all(const eigen_solution& s, double xi);

double eval_phi(const eigen_solution& s, double xi);
double eval_dphi(const eigen_solution& s, double xi);
double eval_d2phi(const eigen_solution& s, double xi);

// (1/2) integral of phi_a phi_b over the real line.
double inner_product(const eigen_solution& a, const eigen_solution& b);

struct junction_mismatch {
    double xi = 0;
    double dphi0 = 0, dphi1 = 0, dphi2 = 0;  // |left - right| for phi, phi', phi''
};

std::vector<junction_mismatch> junction_mismatches(const eigen_solution& s);

}  // namespace trapwell
