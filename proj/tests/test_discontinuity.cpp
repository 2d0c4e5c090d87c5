#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "trapwell/discontinuity.hpp"
#include "trapwell/errors.hpp"
#include "trapwell/quadrature.hpp"

using namespace trapwell;

namespace {

const double reed_v = 26.2468;

std::vector<eigenvalue_record> reed_levels() { return swp_eigenvalues(reed_v, reed_v); }

// (1/2) int phi^2 summed zone by zone with a plain composite Simpson rule.
double simpson_norm(const discontinuous_eigenfunction& d) {
    auto simpson = [](auto f, double a, double b, int n) {
        double h = (b - a) / n, s = f(a) + f(b);
        for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
        return s * h / 3;
    };
    auto sq = [&](zone z) { return [&, z](double x) { double p = disc_eval_in_zone(d, z, x).phi; return p * p; }; };
    return 0.5 * (simpson(sq(zone::z1), -30, -1, 20000) + simpson(sq(zone::z0), -1, 1, 20000) +
                  simpson(sq(zone::z2), 1, 30, 20000));
}

}  // namespace

TEST_CASE("zero jumps reproduce the continuous solution") {
    for (const auto& r : reed_levels()) {
        auto c = swp_solution(reed_v, reed_v, r);
        auto d = build_discontinuous(reed_v, reed_v, r, 0, 0);
        for (double x : {-2.0, -1.0, -0.3, 0.5, 1.0, 1.7})
            CHECK(std::fabs(disc_eval(d, x).phi - sw_eval(c, x).phi) <= 1e-12);
        CHECK(std::fabs(d.d2jump_left - c.d2_jump_left) <= 1e-10 * std::max(1.0, std::fabs(c.d2_jump_left)));
    }
}

TEST_CASE("discontinuous states are normalized and jump as prescribed") {
    auto levels = reed_levels();
    for (const auto& r : levels) {
        auto d = build_discontinuous(reed_v, reed_v, r, -0.5, 0.5);
        CHECK(std::fabs(simpson_norm(d) - 1) <= 1e-9);
        CHECK(std::fabs(d.norm_lhs - 2) <= 1e-10);
        auto jump = [&](zone lo, zone hi, double x) {
            phi_triplet a = disc_eval_in_zone(d, lo, x), b = disc_eval_in_zone(d, hi, x);
            return std::array<double, 3>{b.phi - a.phi, b.dphi - a.dphi, b.d2phi - a.d2phi};
        };
        auto jl = jump(zone::z1, zone::z0, -1), jr = jump(zone::z0, zone::z2, 1);
        CHECK(std::fabs(jl[0] - d.jump_left) <= 1e-12);
        CHECK(std::fabs(jr[0] - d.jump_right) <= 1e-12);
        CHECK(std::fabs(jl[1] - d.djump_left) <= 1e-10);
        CHECK(std::fabs(jr[1] - d.djump_right) <= 1e-10);
        CHECK(std::fabs(jl[2] - d.d2jump_left) <= 1e-10 * reed_v);
        CHECK(std::fabs(jr[2] - d.d2jump_right) <= 1e-10 * reed_v);
    }
}

TEST_CASE("overlaps reduce to the boundary terms") {
    auto levels = reed_levels();
    auto a = build_discontinuous(reed_v, reed_v, levels[0], -0.5, 0.5);
    auto b = build_discontinuous(reed_v, reed_v, levels[2], -0.5, 0.5);
    auto o = overlap(a, b);
    CHECK(std::fabs(o.integral) > 1e-6);
    // the relation holds for the full integral, twice the stored half-measure value
    CHECK(std::fabs(2 * o.integral - (o.t1 + o.t2)) <= 1e-10);

    auto ca = build_discontinuous(reed_v, reed_v, levels[0], 0, 0);
    auto cb = build_discontinuous(reed_v, reed_v, levels[2], 0, 0);
    auto oc = overlap(ca, cb);
    CHECK(std::fabs(oc.integral) <= 1e-12);
    CHECK(std::fabs(oc.t1) <= 1e-15);
    CHECK(std::fabs(oc.t2) <= 1e-15);

    auto bi = boundary_integral(a, b);
    CHECK(std::fabs(bi.from_t_terms - bi.from_wronskian) <= 1e-10 * std::max(1.0, std::fabs(bi.from_wronskian)));
    CHECK(std::fabs(bi.from_wronskian) > 1e-6);
}

TEST_CASE("same-eigenvalue states and uniqueness") {
    auto r = reed_levels()[0];
    auto a = build_discontinuous(reed_v, reed_v, r, -0.5, 0.5);
    auto b = build_discontinuous(reed_v, reed_v, r, -0.2, 0.6);
    CHECK(std::fabs(piecewise_wronskian(a, b, -3)) <= 1e-12);
    CHECK(std::fabs(piecewise_wronskian(a, b, 0)) <= 1e-12);

    auto u = uniqueness_obstruction(a, b);
    CHECK_FALSE(u.swapped);
    CHECK(u.ratios_differ);
    CHECK(u.non_unique);

    auto same = uniqueness_obstruction(a, build_discontinuous(reed_v, reed_v, r, -0.5, 0.5));
    CHECK_FALSE(same.ratios_differ);
    CHECK_FALSE(same.non_unique);

    auto cont = build_discontinuous(reed_v, reed_v, r, 0, 0);
    CHECK(uniqueness_obstruction(cont, a).swapped);
    CHECK_THROWS_AS(uniqueness_obstruction(cont, cont), domain_error);
    CHECK_THROWS_AS(piecewise_wronskian(a, build_discontinuous(reed_v, reed_v, reed_levels()[1], 0, 0), 0),
                    domain_error);
}

TEST_CASE("norm drifts only when the basis is discontinuous") {
    auto levels = reed_levels();
    std::vector<discontinuous_eigenfunction> jumpy, smooth;
    for (const auto& r : levels) {
        jumpy.push_back(build_discontinuous(reed_v, reed_v, r, -0.5, 0.5));
        smooth.push_back(build_discontinuous(reed_v, reed_v, r, 0, 0));
    }
    std::vector<double> c{0.8, 0, 0.6, 0};
    auto range = [&](const std::vector<discontinuous_eigenfunction>& s) {
        double lo = 1e300, hi = -1e300;
        for (int i = 0; i <= 200; ++i) {
            auto h = hermiticity_defect(s, c, 0.05 * i);
            CHECK(std::fabs(h.defect.real()) <= 1e-12);
            lo = std::min(lo, h.norm);
            hi = std::max(hi, h.norm);
        }
        return hi - lo;
    };
    CHECK(range(jumpy) > 1e-3);
    CHECK(range(smooth) <= 1e-8);
}

TEST_CASE("jump system is singular at the square-well eigenvalues") {
    for (auto [v1, v2] : {std::pair{reed_v, reed_v}, std::pair{12.0, 5.0}}) {
        for (const auto& r : swp_eigenvalues(v1, v2)) {
            Eigen::Matrix2d m = jump_system_matrix(v1, v2, r.beta);
            CHECK(std::fabs(m.determinant()) <= 1e-10 * m.norm() * m.norm());
        }
        auto m = jump_system_matrix(v1, v2, 0.5 * swp_eigenvalues(v1, v2)[0].beta);
        CHECK(std::fabs(m.determinant()) > 1e-3);
    }
}

TEST_CASE("invalid constructions") {
    auto r = reed_levels()[0];
    CHECK_THROWS_AS(build_discontinuous(reed_v, reed_v, r, 50, -50), domain_error);
    CHECK_THROWS_AS(build_discontinuous(reed_v, reed_v, r, NAN, 0), validation_error);
    auto a = build_discontinuous(reed_v, reed_v, r, -0.5, 0.5);
    auto other = build_discontinuous(12, 5, swp_eigenvalues(12, 5)[0], -0.5, 0.5);
    CHECK_THROWS_AS(overlap(a, other), domain_error);
}
