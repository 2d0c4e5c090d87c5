#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "doctest.h"
#include "trapwell/errors.hpp"
#include "trapwell/swlimit.hpp"

using namespace trapwell;

namespace {

double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi), fm = f(mid);
        if ((fm < 0) == (flo < 0)) lo = mid, flo = fm;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Roots of the even and odd parity equations of a symmetric well, in the
// sin/cos form that has no poles: sqrt(k) cos s - sqrt(b) sin s (even) and
// sqrt(k) sin s + sqrt(b) cos s (odd), s = sqrt(b).
std::vector<double> parity_roots(double v) {
    auto even = [v](double b) { double s = std::sqrt(b); return std::sqrt(v - b) * std::cos(s) - s * std::sin(s); };
    auto odd = [v](double b) { double s = std::sqrt(b); return std::sqrt(v - b) * std::sin(s) + s * std::cos(s); };
    std::vector<double> roots;
    const int n = 20000;
    for (auto f : {std::function<double(double)>(even), std::function<double(double)>(odd)}) {
        double prev = 1e-14 * v;
        for (int i = 1; i <= n; ++i) {
            double b = v * i / n;
            if (i == n) b = v * (1 - 1e-15);
            if ((f(prev) < 0) != (f(b) < 0)) roots.push_back(bisect(f, prev, b));
            prev = b;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace

TEST_CASE("angle equation equals the union of parity roots") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(0.5, 300.0);
    for (int k = 0; k < 5; ++k) {
        double v = dist(rng);
        auto ev = swp_eigenvalues(v, v);
        auto roots = parity_roots(v);
        REQUIRE(ev.size() == roots.size());
        for (std::size_t i = 0; i < ev.size(); ++i) CHECK(std::fabs(ev[i].beta - roots[i]) <= 1e-10 * std::max(1.0, roots[i]));
    }
}

TEST_CASE("Reed residual vanishes at the roots") {
    for (const auto& r : swp_eigenvalues(26.2468, 26.2468)) CHECK(std::fabs(reed_residual(26.2468, r.beta)) <= 1e-10);
    CHECK(swp_eigenvalues(26.2468, 26.2468).size() == 4);
    CHECK(swp_eigenvalues(225, 225).size() == 10);
}

TEST_CASE("absence conditions agree on a grid") {
    for (int i = 1; i <= 20; ++i) {
        for (int j = 1; j <= 20; ++j) {
            double v2 = 0.02 * j * j, v1 = v2 * (1 + 0.5 * i);
            CHECK(swp_exists(v1, v2) == !swp_absent_landau(v1, v2));
            CHECK(swp_exists(v1, v2) == !swp_eigenvalues(v1, v2).empty());
        }
    }
}

TEST_CASE("square-well solution is continuous and normalized") {
    for (auto [v1, v2] : {std::pair{26.2468, 26.2468}, std::pair{10.0, 3.0}}) {
        for (const auto& r : swp_eigenvalues(v1, v2)) {
            auto s = swp_solution(v1, v2, r);
            CHECK(std::fabs(s.norm_sum - 2) <= 1e-12);
            for (double x : {-1.0, 1.0}) {
                auto lim = sw_d2_limits(s, x);
                double inner = sw_eval(s, x < 0 ? std::nextafter(-1.0, 0.0) : 1.0).phi;
                double outer = sw_eval(s, x < 0 ? -1.0 : std::nextafter(1.0, 2.0)).phi;
                CHECK(std::fabs(inner - outer) <= 1e-12);
                CHECK(std::fabs(lim.jump - (x < 0 ? s.d2_jump_left : s.d2_jump_right)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("lambda sweep converges monotonically") {
    auto res = lambda_sweep(26.2468, 26.2468, {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-9});
    CHECK(res.monotone);
    for (const auto& e : res.errors) CHECK(e.empty());
    for (int c : res.counts) CHECK(c == 4);
    auto ref = swp_eigenvalues(26.2468, 26.2468);
    for (const auto& row : res.rows) {
        if (row.lambda == 1e-9) {
            CHECK(row.abs_dev <= 1e-6 * row.beta_swp);
            // second-derivative jump across the thin ramp approaches -v1 Bt1
            auto s = swp_solution(26.2468, 26.2468, ref[row.n - 1]);
            CHECK(std::fabs(row.d2jump_left - s.d2_jump_left) <= 1e-5 * std::fabs(s.d2_jump_left));
        }
    }
}

TEST_CASE("square-well input validation") {
    CHECK_THROWS_AS(swp_eigenvalues(1, 2), validation_error);
    CHECK_THROWS_AS(lambda_sweep(10, 10, {1e-2, 1e-1}), validation_error);
}
