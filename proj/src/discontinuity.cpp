#include "trapwell/discontinuity.hpp"

#include <algorithm>
#include <cmath>

#include "trapwell/errors.hpp"
#include "trapwell/quadrature.hpp"

namespace trapwell {

namespace {

void same_well(const discontinuous_eigenfunction& a, const discontinuous_eigenfunction& b) {
    if (a.v1 != b.v1 || a.v2 != b.v2) throw domain_error("states belong to different wells");
}

double tail_length(double k) { return 40 / std::sqrt(std::max(k, 1e-8)); }

}  // namespace

discontinuous_eigenfunction build_discontinuous(double v1, double v2, const eigenvalue_record& rec,
                                                double dphi_left, double dphi_right) {
    if (!std::isfinite(dphi_left) || !std::isfinite(dphi_right))
        throw validation_error("jumps must be finite");
    const square_well_solution c = swp_solution(v1, v2, rec);
    discontinuous_eigenfunction d;
    d.v1 = v1;
    d.v2 = v2;
    d.record = rec;
    d.k1 = c.k1;
    d.k2 = c.k2;
    d.jump_left = dphi_left;
    d.jump_right = dphi_right;
    d.djump_left = std::sqrt(c.k1) * dphi_left;
    d.djump_right = -std::sqrt(c.k2) * dphi_right;

    // Scale s of the continuous solution: 2 s^2 - b s + (q - 2) = 0.
    const double r1 = std::sqrt(c.k1), r2 = std::sqrt(c.k2);
    const double b = c.bt1 * dphi_left / r1 - c.bt2 * dphi_right / r2;
    const double q = dphi_left * dphi_left / (2 * r1) + dphi_right * dphi_right / (2 * r2);
    const double disc = b * b - 8 * (q - 2);
    if (disc < 0) throw domain_error("jumps too large: normalization has no real solution");
    const double s = (b + std::sqrt(disc)) / 4;
    if (!(s > 0)) throw domain_error("jumps too large: normalization has no positive solution");

    const double beta = rec.beta, sb = std::sqrt(beta);
    const double sn = std::sin(sb), cs = std::cos(sb);
    d.c0 = s * c.c0;
    d.d0 = s * c.d0;
    d.a0 = s * c.a0;
    d.b0 = s * c.b0;
    d.bt1e = -d.a0 * sn + d.b0 * cs;
    d.bt1d = std::sqrt(beta / c.k1) * (d.a0 * cs + d.b0 * sn);
    d.bt2e = d.a0 * sn + d.b0 * cs;
    d.bt2d = -std::sqrt(beta / c.k2) * (d.a0 * cs - d.b0 * sn);
    d.bt1a = 0.5 * (d.bt1e + d.bt1d);
    d.bt2a = 0.5 * (d.bt2e + d.bt2d);
    d.bt1 = d.bt1a - dphi_left;
    d.bt2 = d.bt2a + dphi_right;
    d.d2jump_left = -v1 * d.bt1 - beta * dphi_left;
    d.d2jump_right = v2 * d.bt2 - beta * dphi_right;

    const double sinc = std::sin(2 * sb) / (2 * sb);
    d.norm_lhs = d.bt1a * d.bt1a / (2 * r1) + d.a0 * d.a0 * (1 - sinc) + d.b0 * d.b0 * (1 + sinc) +
                 d.bt2a * d.bt2a / (2 * r2) - (d.bt1a / r1 * dphi_left - d.bt2a / r2 * dphi_right) + q;
    return d;
}

phi_triplet disc_eval_in_zone(const discontinuous_eigenfunction& d, zone z, double xi) {
    phi_triplet t;
    const double beta = d.record.beta;
    switch (z) {
        case zone::z1: {
            double sk = std::sqrt(d.k1), e = (xi + 1) * sk;
            if (e < -700) return t;
            t.phi = d.bt1 * std::exp(e);
            t.dphi = sk * t.phi;
            t.d2phi = d.k1 * t.phi;
            return t;
        }
        case zone::z0: {
            double sb = std::sqrt(beta);
            double sn = std::sin(sb * xi), cs = std::cos(sb * xi);
            t.phi = d.a0 * sn + d.b0 * cs;
            t.dphi = sb * (d.a0 * cs - d.b0 * sn);
            t.d2phi = -beta * t.phi;
            return t;
        }
        case zone::z2: {
            double sk = std::sqrt(d.k2), e = (1 - xi) * sk;
            if (e < -700) return t;
            t.phi = d.bt2 * std::exp(e);
            t.dphi = -sk * t.phi;
            t.d2phi = d.k2 * t.phi;
            return t;
        }
        default:
            throw domain_error("square-well states have no ramp zones");
    }
}

phi_triplet disc_eval(const discontinuous_eigenfunction& d, double xi) {
    if (xi <= -1) return disc_eval_in_zone(d, zone::z1, xi);
    if (xi <= 1) return disc_eval_in_zone(d, zone::z0, xi);
    return disc_eval_in_zone(d, zone::z2, xi);
}

Eigen::Matrix2d jump_system_matrix(double v1, double v2, double beta) {
    const double sb = std::sqrt(beta), sn = std::sin(sb), cs = std::cos(sb);
    const double g1 = std::sqrt(beta / (v1 - beta)), g2 = std::sqrt(beta / (v2 - beta));
    Eigen::Matrix2d m;
    m << sn + g1 * cs, g1 * sn - cs, sn + g2 * cs, -g2 * sn + cs;
    return m;
}

Eigen::Vector2d jump_system_rhs(double k1, double k2, double dphi_left, double dphi_right,
                                double ddphi_left, double ddphi_right) {
    return {-dphi_left + ddphi_left / std::sqrt(k1), -dphi_right - ddphi_right / std::sqrt(k2)};
}

overlap_result overlap(const discontinuous_eigenfunction& a, const discontinuous_eigenfunction& b) {
    same_well(a, b);
    auto prod = [&](zone z) {
        return [&, z](double x) { return disc_eval_in_zone(a, z, x).phi * disc_eval_in_zone(b, z, x).phi; };
    };
    const double lo = -1 - std::max(tail_length(a.k1), tail_length(b.k1));
    const double hi = 1 + std::max(tail_length(a.k2), tail_length(b.k2));
    double total = integrate(prod(zone::z1), lo, -1).value + integrate(prod(zone::z0), -1, 1).value +
                   integrate(prod(zone::z2), 1, hi).value;
    overlap_result r;
    r.integral = 0.5 * total;
    // a plays n, b plays m
    r.t1 = (a.bt1 * b.bt1 - (a.bt1 + a.jump_left) * (b.bt1 + b.jump_left)) /
           (std::sqrt(a.v1 - b.record.beta) + std::sqrt(a.v1 - a.record.beta));
    r.t2 = (a.bt2 * b.bt2 - (a.bt2 - a.jump_right) * (b.bt2 - b.jump_right)) /
           (std::sqrt(a.v2 - b.record.beta) + std::sqrt(a.v2 - a.record.beta));
    return r;
}

boundary_integral_result boundary_integral(const discontinuous_eigenfunction& a,
                                           const discontinuous_eigenfunction& b) {
    same_well(a, b);
    overlap_result o = overlap(a, b);
    boundary_integral_result r;
    r.from_t_terms = (a.record.beta - b.record.beta) * (o.t1 + o.t2);
    auto w = [&](zone z, double x) {
        phi_triplet pa = disc_eval_in_zone(a, z, x), pb = disc_eval_in_zone(b, z, x);
        return pa.phi * pb.dphi - pb.phi * pa.dphi;
    };
    double jump_l = w(zone::z0, -1) - w(zone::z1, -1);
    double jump_r = w(zone::z2, 1) - w(zone::z0, 1);
    r.from_wronskian = -jump_l - jump_r;
    return r;
}

double piecewise_wronskian(const discontinuous_eigenfunction& a, const discontinuous_eigenfunction& b,
                           double xi) {
    same_well(a, b);
    if (std::fabs(a.record.beta - b.record.beta) > 1e-12 * std::max(1.0, a.record.beta))
        throw domain_error("piecewise_wronskian: states must share the eigenvalue");
    phi_triplet pa = disc_eval(a, xi), pb = disc_eval(b, xi);
    return pa.phi * pb.dphi - pa.dphi * pb.phi;
}

uniqueness_report uniqueness_obstruction(const discontinuous_eigenfunction& a,
                                         const discontinuous_eigenfunction& b) {
    same_well(a, b);
    if (std::fabs(a.record.beta - b.record.beta) > 1e-12 * std::max(1.0, a.record.beta))
        throw domain_error("uniqueness_obstruction: states must share the eigenvalue");
    uniqueness_report r;
    const discontinuous_eigenfunction* phi = &a;
    const discontinuous_eigenfunction* theta = &b;
    auto has_jumps = [](const discontinuous_eigenfunction& d) { return d.jump_left != 0 && d.jump_right != 0; };
    if (!has_jumps(a)) {
        if (!has_jumps(b)) throw domain_error("uniqueness_obstruction: zero jump in a denominator");
        std::swap(phi, theta);
        r.swapped = true;
    }
    r.a0_left = theta->jump_left / phi->jump_left;
    r.a0_right = theta->jump_right / phi->jump_right;
    r.a1 = theta->bt1 / phi->bt1;
    r.a2 = theta->bt2 / phi->bt2;
    r.a0 = theta->c0 / phi->c0;
    auto differ = [](double x, double y) { return std::fabs(x - y) > 1e-12 * std::max({1.0, std::fabs(x), std::fabs(y)}); };
    r.ratios_differ = differ(r.a0_left, r.a0_right);
    r.non_unique = differ(r.a1, r.a0) || differ(r.a2, r.a0);
    return r;
}

hermiticity_result hermiticity_defect(const std::vector<discontinuous_eigenfunction>& states,
                                      const std::vector<double>& coefficients, double tau) {
    if (states.size() != coefficients.size())
        throw domain_error("hermiticity_defect: states and coefficients differ in length");
    const Eigen::Index n = static_cast<Eigen::Index>(states.size());
    hermiticity_result r;
    r.boundary = Eigen::MatrixXd::Zero(n, n);
    r.overlaps = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            overlap_result o = overlap(states[i], states[j]);
            r.overlaps(i, j) = r.overlaps(j, i) = o.integral;
            if (i != j) {
                double bij = (states[i].record.beta - states[j].record.beta) * (o.t1 + o.t2);
                r.boundary(i, j) = bij;
                r.boundary(j, i) = -bij;
            }
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            double phase = (states[j].record.beta - states[i].record.beta) * tau;
            double cc = coefficients[i] * coefficients[j];
            r.defect += cc * std::polar(1.0, phase) * r.boundary(i, j);
            r.norm += cc * std::cos(phase) * r.overlaps(i, j);
        }
    }
    return r;
}

}  // namespace trapwell
