#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "trapwell/eigenfunction.hpp"
#include "trapwell/swlimit.hpp"

namespace trapwell {

// An eigenstate seen as a function of xi, independent of how it was solved.
struct basis_state {
    int n = 0;
    double beta = 0;
    double b0 = 0;          // cosine amplitude in zone 0
    parity par = parity::none;
    double lambda = 0;      // ramp width, 0 for square wells
    double k1 = 0, k2 = 0;  // outer decay constants squared
    std::function<double(double)> phi;
};

basis_state to_basis_state(const eigen_solution& s);
basis_state to_basis_state(const square_well_solution& s);
std::vector<basis_state> to_basis(const std::vector<eigen_solution>& v);
std::vector<basis_state> to_basis(const std::vector<square_well_solution>& v);

struct initial_function {
    std::function<double(double)> f;
    std::string tag;                  // "triangular" enables the closed form
    std::vector<double> breakpoints;  // points where f is not smooth
};

// sqrt(3) (1 - |xi|) on [-1, 1], zero outside; (1/2) int F^2 = 1.
initial_function triangular_function();

// Integration range holding every basis state to exp(-40) of its junction value.
std::pair<double, double> basis_domain(const std::vector<basis_state>& basis);

// (1/2) integral of a * b over the basis domain, split at the junctions.
double basis_inner(const basis_state& a, const basis_state& b, double tol = 1e-12);

struct projection_result {
    std::vector<double> coefficients;
    std::vector<double> probabilities;
    double probability_sum = 0;
    double reconstruction_error = 0;  // L2 norm (1/2 measure) of F - sum c psi
    double f_norm = 0;                // (1/2) int F^2
    double gram_deviation = 0;        // max |G - I|
    bool normalization_warning = false;
    std::string tag;
};

// Throws numerical_error when the Gram matrix deviates from I by more than 1e-6.
projection_result project(const initial_function& F, const std::vector<basis_state>& basis);

// c_n = sqrt(3) B0 (1 - cos sqrt(beta)) / beta.
std::vector<double> triangular_coefficients(const std::vector<basis_state>& basis);

struct time_state {
    double tau = 0;
    std::vector<double> xi;
    std::vector<std::complex<double>> psi;
    double norm = 0;  // (1/2) int |Psi|^2
};

// Psi = sum c_n exp(-i beta_n tau) phi_n.
time_state evolve(const projection_result& proj, const std::vector<basis_state>& basis, double tau,
                  const std::vector<double>& xis);

}  // namespace trapwell
