#include "trapwell/eigenfunction.hpp"

#include <cmath>

#include "trapwell/airy.hpp"
#include "trapwell/errors.hpp"
#include "trapwell/quadrature.hpp"

namespace trapwell {

namespace {

constexpr double quad_tol = 1e-12;

// Average of two expressions num_a/den_a and num_b/den_b of the same value.
// A form whose denominator is tiny relative to the other is dropped.
double averaged(double num_a, double den_a, double num_b, double den_b, const char* what) {
    double ma = std::fabs(den_a), mb = std::fabs(den_b);
    if (ma < 1e-250 && mb < 1e-250) throw numerical_error(std::string("degenerate coefficient: ") + what);
    if (ma < 1e-6 * mb) return num_b / den_b;
    if (mb < 1e-6 * ma) return num_a / den_a;
    return 0.5 * (num_a / den_a + num_b / den_b);
}

// Bi - f Ai and derivative at a shoulder junction; the direct form where it
// is representable, the Wronskian form otherwise.
ramp_pair junction_pair(double f, double z) {
    if (z <= 20.0) return ramp_solution(f, z);
    airy_scaled a = airy_eval_scaled(z);
    double y = -std::exp(a.s) / (M_PI * (std::sqrt(z) * a.v.ai + a.v.aip));
    return {y, -std::sqrt(z) * y};
}

double outer_amplitude(double bp, const ramp_pair& y, double z) {
    if (z < 1e-12) return bp * y.y;
    return 0.5 * bp * (y.y - y.yp / std::sqrt(z));
}

}  // namespace

coefficient_set solve_coefficients(const well_spec& w, const eigenvalue_record& rec) {
    const double beta = rec.beta;
    factor_chain ch = make_factor_chain(w, beta);
    const zone_geometry& g = ch.geo;
    const double sb = std::sqrt(beta);
    const double s = std::sin(sb), c = std::cos(sb);
    const double nl = ch.n_left, dl = ch.d_left, nr = ch.n_right, dr = ch.d_right;

    coefficient_set k;
    // D0 = -C0 * frac, frac in two equivalent fractional forms
    double num1 = (dl + nl) * s - (dl - nl) * c;
    double den1 = (dl - nl) * s + (dl + nl) * c;
    double num2 = (dr + nr) * s + (dr - nr) * c;
    double den2 = (dr - nr) * s - (dr + nr) * c;
    double frac = averaged(num1, den1, num2, den2, "D0");
    k.d0_over_c0 = -frac;

    double c0 = 1.0, d0 = -frac;
    double a0 = c0 + d0, b0 = c0 - d0;

    double b1p = averaged(-a0 * s + b0 * c, ch.y1_hat, -std::sqrt(-g.eta_hat) * (a0 * c + b0 * s),
                          ch.y1p_hat, "B1'");
    double b2p = averaged(a0 * s + b0 * c, ch.y2_hat, std::sqrt(-g.zeta_hat) * (a0 * c - b0 * s),
                          ch.y2p_hat, "B2'");

    ramp_pair y1b = junction_pair(ch.f1, g.eta_bar);
    ramp_pair y2b = junction_pair(ch.f2, g.zeta_bar);
    double bt1 = outer_amplitude(b1p, y1b, g.eta_bar);
    double bt2 = outer_amplitude(b2p, y2b, g.zeta_bar);

    auto sq1 = [&](double e) { double y = ramp_solution(ch.f1, e).y; return y * y; };
    auto sq2 = [&](double z) { double y = ramp_solution(ch.f2, z).y; return y * y; };
    double j1 = integrate(sq1, g.eta_hat, g.eta_bar, quad_tol).value;
    double j2 = integrate(sq2, g.zeta_hat, g.zeta_bar, quad_tol).value;

    const double r1 = std::cbrt(w.lambda / w.v1), r2 = std::cbrt(w.lambda / w.v2);
    const double sinc = std::sin(2 * sb) / (2 * sb);
    auto norm_sum = [&](double a0_, double b0_, double b1p_, double b2p_, double bt1_, double bt2_) {
        return bt1_ * bt1_ / (2 * std::sqrt(g.k1)) + b1p_ * b1p_ * r1 * j1 +
               a0_ * a0_ * (1 - sinc) + b0_ * b0_ * (1 + sinc) + b2p_ * b2p_ * r2 * j2 +
               bt2_ * bt2_ / (2 * std::sqrt(g.k2));
    };
    double sum1 = norm_sum(a0, b0, b1p, b2p, bt1, bt2);
    if (!(sum1 > 0) || !std::isfinite(sum1)) throw numerical_error("normalization sum not positive");
    double scale = std::sqrt(2.0 / sum1);

    k.c0 = scale;
    k.d0 = d0 * scale;
    k.a0 = a0 * scale;
    k.b0 = b0 * scale;
    k.b1p = b1p * scale;
    k.b2p = b2p * scale;
    k.a1p = -k.b1p * ch.f1;
    k.a2p = -k.b2p * ch.f2;
    k.bt1 = bt1 * scale;
    k.bt2 = bt2 * scale;
    k.j1p = j1;
    k.j2p = j2;
    k.norm_sum = norm_sum(k.a0, k.b0, k.b1p, k.b2p, k.bt1, k.bt2);
    return k;
}

eigen_solution make_solution(const well_spec& w, const eigenvalue_record& rec) {
    eigen_solution s;
    s.well = w;
    s.record = rec;
    s.geometry = make_geometry(w, rec.beta);
    s.f1 = f_factor(s.geometry.eta_bar);
    s.f2 = f_factor(s.geometry.zeta_bar);
    s.coeffs = solve_coefficients(w, rec);
    return s;
}

std::vector<eigen_solution> solve_all(const well_spec& w) {
    std::vector<eigen_solution> out;
    for (const auto& r : find_eigenvalues(w)) out.push_back(make_solution(w, r));
    return out;
}

phi_triplet eval_in_zone(const eigen_solution& s, zone z, double xi) {
    const well_spec& w = s.well;
    const zone_geometry& g = s.geometry;
    const coefficient_set& k = s.coeffs;
    const double beta = s.record.beta;
    phi_triplet t;
    switch (z) {
        case zone::z1: {
            double sk = std::sqrt(g.k1);
            double e = (xi + 1 + w.lambda) * sk;
            if (e < -700) return t;
            t.phi = k.bt1 * std::exp(e);
            t.dphi = sk * t.phi;
            t.d2phi = g.k1 * t.phi;
            return t;
        }
        case zone::z1p: {
            double m = std::cbrt(w.v1 / w.lambda);
            double eta = -m * (xi + 1) + g.eta_hat;
            ramp_pair y = ramp_solution(s.f1, eta);
            t.phi = k.b1p * y.y;
            t.dphi = -m * k.b1p * y.yp;
            t.d2phi = m * m * eta * t.phi;
            return t;
        }
        case zone::z0: {
            double sb = std::sqrt(beta);
            double sn = std::sin(sb * xi), cs = std::cos(sb * xi);
            t.phi = k.a0 * sn + k.b0 * cs;
            t.dphi = sb * (k.a0 * cs - k.b0 * sn);
            t.d2phi = -beta * t.phi;
            return t;
        }
        case zone::z2p: {
            double m = std::cbrt(w.v2 / w.lambda);
            double zeta = m * (xi - 1) + g.zeta_hat;
            ramp_pair y = ramp_solution(s.f2, zeta);
            t.phi = k.b2p * y.y;
            t.dphi = m * k.b2p * y.yp;
            t.d2phi = m * m * zeta * t.phi;
            return t;
        }
        case zone::z2: {
            double sk = std::sqrt(g.k2);
            double e = (-xi + 1 + w.lambda) * sk;
            if (e < -700) return t;
            t.phi = k.bt2 * std::exp(e);
            t.dphi = -sk * t.phi;
            t.d2phi = g.k2 * t.phi;
            return t;
        }
    }
    return t;
}

phi_triplet eval_all(const eigen_solution& s, double xi) {
    return eval_in_zone(s, zone_of(s.well, xi), xi);
}

double eval_phi(const eigen_solution& s, double xi) { return eval_all(s, xi).phi; }
double eval_dphi(const eigen_solution& s, double xi) { return eval_all(s, xi).dphi; }
double eval_d2phi(const eigen_solution& s, double xi) { return eval_all(s, xi).d2phi; }

double inner_product(const eigen_solution& a, const eigen_solution& b) {
    const well_spec& w = a.well;
    if (w.v1 != b.well.v1 || w.v2 != b.well.v2 || w.lambda != b.well.lambda)
        throw domain_error("inner_product: states belong to different wells");
    const double l = w.lambda;
    double total = a.coeffs.bt1 * b.coeffs.bt1 / (std::sqrt(a.geometry.k1) + std::sqrt(b.geometry.k1));
    total += a.coeffs.bt2 * b.coeffs.bt2 / (std::sqrt(a.geometry.k2) + std::sqrt(b.geometry.k2));
    auto piece = [&](zone z, double lo, double hi) {
        auto f = [&](double x) { return eval_in_zone(a, z, x).phi * eval_in_zone(b, z, x).phi; };
        return integrate(f, lo, hi, quad_tol).value;
    };
    total += piece(zone::z1p, -1 - l, -1);
    total += piece(zone::z0, -1, 1);
    total += piece(zone::z2p, 1, 1 + l);
    return 0.5 * total;
}

std::vector<junction_mismatch> junction_mismatches(const eigen_solution& s) {
    const double l = s.well.lambda;
    const std::pair<double, std::pair<zone, zone>> js[] = {
        {-1 - l, {zone::z1, zone::z1p}},
        {-1, {zone::z1p, zone::z0}},
        {1, {zone::z0, zone::z2p}},
        {1 + l, {zone::z2p, zone::z2}}};
    std::vector<junction_mismatch> out;
    for (const auto& [x, zz] : js) {
        phi_triplet a = eval_in_zone(s, zz.first, x), b = eval_in_zone(s, zz.second, x);
        out.push_back({x, std::fabs(a.phi - b.phi), std::fabs(a.dphi - b.dphi),
                       std::fabs(a.d2phi - b.d2phi)});
    }
    return out;
}

}  // namespace trapwell
