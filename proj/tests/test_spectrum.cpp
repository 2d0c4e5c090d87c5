#include <cmath>
#include <vector>

#include "doctest.h"
#include "trapwell/errors.hpp"
#include "trapwell/spectrum.hpp"

using namespace trapwell;

namespace {

// phi'' = (v - beta) phi integrated zone by zone with RK4, starting from the
// decaying exponential on the left; returns phi' + sqrt(k2) phi at 1 + lambda.
double shooting_mismatch(const well_spec& w, double beta, int steps_per_zone = 4000) {
    double y = 1, yp = std::sqrt(w.v1 - beta);
    const double l = w.lambda;
    const double edges[4] = {-1 - l, -1, 1, 1 + l};
    for (int z = 0; z < 3; ++z) {
        double a = edges[z], b = edges[z + 1], h = (b - a) / steps_per_zone;
        auto f = [&](double x) {
            double v = z == 0 ? w.v1 * (-1 - x) / l : (z == 1 ? 0.0 : w.v2 * (x - 1) / l);
            return v - beta;
        };
        for (int i = 0; i < steps_per_zone; ++i) {
            double x = a + i * h;
            double k1y = yp, k1p = f(x) * y;
            double k2y = yp + 0.5 * h * k1p, k2p = f(x + 0.5 * h) * (y + 0.5 * h * k1y);
            double k3y = yp + 0.5 * h * k2p, k3p = f(x + 0.5 * h) * (y + 0.5 * h * k2y);
            double k4y = yp + h * k3p, k4p = f(x + h) * (y + h * k3y);
            y += h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
            yp += h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
        }
    }
    return yp + std::sqrt(w.v2 - beta) * y;
}

std::vector<double> shooting_eigenvalues(const well_spec& w) {
    std::vector<double> out;
    const int n = 600;
    double prev_b = 1e-9 * w.v2, prev_m = shooting_mismatch(w, prev_b);
    for (int i = 1; i <= n; ++i) {
        double b = w.v2 * (i == n ? 1 - 1e-12 : static_cast<double>(i) / n);
        double m = shooting_mismatch(w, b);
        if ((m < 0) != (prev_m < 0)) {
            double lo = prev_b, hi = b, mlo = prev_m;
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi), mm = shooting_mismatch(w, mid);
                if ((mm < 0) == (mlo < 0)) lo = mid, mlo = mm;
                else hi = mid;
            }
            out.push_back(0.5 * (lo + hi));
        }
        prev_b = b;
        prev_m = m;
    }
    return out;
}

}  // namespace

TEST_CASE("single-eigenvalue well (1, 0.5, 1)") {
    well_spec w{1, 0.5, 1};
    auto ev = find_eigenvalues(w);
    REQUIRE(ev.size() == 1);
    CHECK(std::fabs(ev[0].beta - 0.31447) <= 1e-5);
    CHECK(ev[0].residual <= 1e-10);
    auto shoot = shooting_eigenvalues(w);
    REQUIRE(shoot.size() == 1);
    CHECK(std::fabs(ev[0].beta - shoot[0]) <= 1e-9 * shoot[0]);
}

TEST_CASE("eigenvalues agree with a shooting integrator") {
    for (well_spec w : {well_spec{10, 10, 0.5}, well_spec{7, 3, 0.3}, well_spec{40, 12, 2.0}}) {
        auto ev = find_eigenvalues(w);
        auto shoot = shooting_eigenvalues(w);
        REQUIRE(ev.size() == shoot.size());
        for (std::size_t i = 0; i < ev.size(); ++i) {
            CHECK(std::fabs(ev[i].beta - shoot[i]) <= 1e-9 * shoot[i]);
            CHECK(ev[i].residual <= 1e-10);
            CHECK(ev[i].index_n == static_cast<int>(i) + 1);
        }
    }
}

TEST_CASE("state counts") {
    CHECK(find_eigenvalues({26.2468, 26.2468, 1e-9}).size() == 4);
    CHECK(find_eigenvalues({225, 225, 1e-9}).size() == 10);
    CHECK(find_eigenvalues({10, 10, 0.5}).size() == 3);
    CHECK(find_eigenvalues({1, 0.15, 1}).empty());
    CHECK(find_eigenvalues({1, 0.15, 1.5}).size() >= 1);
    CHECK(absence_condition({1, 0.15, 1}));
    CHECK_FALSE(absence_condition({1, 0.15, 1.5}));
}

TEST_CASE("symmetric wells alternate parity") {
    auto ev = find_eigenvalues({225, 225, 1e-9});
    for (std::size_t i = 0; i < ev.size(); ++i)
        CHECK(ev[i].par == (i % 2 == 0 ? parity::even : parity::odd));
    CHECK(find_eigenvalues({7, 3, 0.3})[0].par == parity::none);
}

TEST_CASE("theta is monotone and counts the states") {
    for (well_spec w : {well_spec{10, 10, 0.5}, well_spec{1, 0.5, 1}, well_spec{7, 3, 0.3}}) {
        spectrum_scan s = scan_spectrum(w);
        CHECK(s.theta_monotone);
        CHECK(static_cast<std::size_t>(std::floor(s.theta_end)) == find_eigenvalues(w).size());
        CHECK(std::fabs(theta(w, 1e-12 * w.v2)) <= 1e-5);
    }
}

TEST_CASE("eigenvalue function forms agree where finite") {
    well_spec w{10, 10, 0.5};
    for (double b : {0.3, 1.7, 3.3, 6.1, 9.2}) {
        auto d = d_raw(w, b);
        REQUIRE(d.has_value());
        CHECK(std::fabs(*d - d_raw_symmetric_product(w, b)) <= 1e-10 * std::max(1.0, std::fabs(*d)));
        // D and D-circ share zeros, D* is bounded by 1
        CHECK(std::fabs(d_star(w, b)) <= 1 + 1e-14);
    }
    for (const auto& r : find_eigenvalues(w)) {
        CHECK(std::fabs(d_circ(w, r.beta)) <= 1e-9);
        CHECK(std::fabs(d_star(w, r.beta - 1e-6)) > 0);
        CHECK((d_star(w, r.beta - 1e-4) < 0) != (d_star(w, r.beta + 1e-4) < 0));
    }
}

TEST_CASE("lambda = 0 is routed to the square-well module") {
    CHECK_THROWS_AS(find_eigenvalues({1, 0.5, 0}), domain_error);
}

TEST_CASE("no negative eigenvalues") {
    for (well_spec w : {well_spec{1, 0.5, 1}, well_spec{1, 0.5, 1e-9}}) {
        std::vector<double> grid;
        for (int i = 0; i < 2000; ++i) grid.push_back(-5 * w.v2 * (1 - i / 2000.0));
        auto rep = negative_beta_diagnostic(w, grid);
        CHECK(rep.min_abs > 0);
        CHECK(rep.at_beta < 0);
    }
}

TEST_CASE("H(u) is positive and increasing") {
    double prev = 0;
    for (int i = 0; i <= 200; ++i) {
        double u = 0.1 + 9.9 * i / 200;
        double h = h_universal(u);
        CHECK(h > 0);
        if (i > 0) CHECK(h > prev);
        prev = h;
    }
    CHECK(std::fabs(h_universal(0.1) - 1.0) <= 1e-3);
}
