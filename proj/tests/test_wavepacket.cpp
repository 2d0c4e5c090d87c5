#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "trapwell/errors.hpp"
#include "trapwell/wavepacket.hpp"

using namespace trapwell;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = a + (b - a) * i / (n - 1);
    return x;
}

double trapezoid_half(const std::vector<double>& x, const std::vector<std::complex<double>>& psi) {
    double s = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
        s += 0.5 * (x[i] - x[i - 1]) * (std::norm(psi[i]) + std::norm(psi[i - 1]));
    return 0.5 * s;
}

}  // namespace

TEST_CASE("projecting an eigenstate gives a unit vector") {
    auto basis = to_basis(solve_all({10, 10, 0.5}));
    initial_function F{basis[0].phi, "state-1", {-1.5, -1, 1, 1.5}};
    auto p = project(F, basis);
    CHECK(std::fabs(p.coefficients[0] - 1) <= 1e-9);
    CHECK(std::fabs(p.coefficients[1]) <= 1e-9);
    CHECK(std::fabs(p.coefficients[2]) <= 1e-9);
    CHECK(p.reconstruction_error <= 1e-6);
}

TEST_CASE("triangular packet in the Reed well") {
    auto basis = to_basis(solve_all({26.2468, 26.2468, 1e-9}));
    REQUIRE(basis.size() == 4);
    auto p = project(triangular_function(), basis);
    auto closed = triangular_coefficients(basis);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        CHECK(std::fabs(p.coefficients[i] - closed[i]) <= 1e-8);
        if (basis[i].par == parity::odd) CHECK(std::fabs(p.coefficients[i]) <= 1e-10);
    }
    CHECK(p.probability_sum > 0);
    CHECK(p.probability_sum < 1);
    CHECK(std::fabs(p.f_norm - 1) <= 1e-10);
    // Parseval: what is missing from the sum is the squared reconstruction error
    CHECK(std::fabs(p.probability_sum + p.reconstruction_error * p.reconstruction_error - 1) <= 1e-7);

    auto sq = to_basis([] {
        std::vector<square_well_solution> v;
        for (const auto& r : swp_eigenvalues(26.2468, 26.2468)) v.push_back(swp_solution(26.2468, 26.2468, r));
        return v;
    }());
    auto psq = project(triangular_function(), sq);
    CHECK(psq.probability_sum < 1);
    CHECK(std::fabs(psq.probability_sum - p.probability_sum) <= 1e-6);
}

TEST_CASE("more states reconstruct better") {
    auto full = to_basis(solve_all({225, 225, 1e-9}));
    REQUIRE(full.size() == 10);
    double prev = 2;
    for (std::size_t k = 1; k <= full.size(); ++k) {
        std::vector<basis_state> b(full.begin(), full.begin() + static_cast<long>(k));
        double e = project(triangular_function(), b).reconstruction_error;
        CHECK(e <= prev + 1e-12);
        prev = e;
    }
    // coefficient magnitudes follow the 2 sqrt(3) |B0| / beta envelope
    auto c = triangular_coefficients(full);
    for (std::size_t i = 0; i < full.size(); ++i)
        CHECK(std::fabs(c[i]) <= 2 * std::sqrt(3.0) * std::fabs(full[i].b0) / full[i].beta + 1e-14);
}

TEST_CASE("norm is conserved under evolution") {
    auto basis = to_basis(solve_all({26.2468, 26.2468, 1e-9}));
    auto p = project(triangular_function(), basis);
    auto xs = linspace(-4, 4, 4001);
    double n0 = evolve(p, basis, 0, xs).norm;
    CHECK(std::fabs(n0 - p.probability_sum) <= 1e-8);
    for (double tau : {0.5, 3.0, 17.0, 100.0}) {
        time_state st = evolve(p, basis, tau, xs);
        CHECK(std::fabs(st.norm - n0) <= 1e-10);
        CHECK(std::fabs(trapezoid_half(st.xi, st.psi) - n0) <= 1e-4);
    }
}

TEST_CASE("a single stationary state has a fixed modulus") {
    auto basis = to_basis(solve_all({10, 10, 0.5}));
    projection_result p;
    p.coefficients = {0, 1, 0};
    auto xs = linspace(-3, 3, 61);
    auto a = evolve(p, basis, 0, xs), b = evolve(p, basis, 7.3, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::fabs(std::abs(a.psi[i]) - std::abs(b.psi[i])) <= 1e-13);
}

TEST_CASE("a non-orthonormal basis is rejected") {
    auto basis = to_basis(solve_all({10, 10, 0.5}));
    basis.push_back(basis[0]);
    CHECK_THROWS_AS(project(triangular_function(), basis), numerical_error);
}
