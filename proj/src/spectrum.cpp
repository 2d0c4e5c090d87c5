#include "trapwell/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "trapwell/airy.hpp"
#include "trapwell/errors.hpp"

namespace trapwell {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double two_pi = 2.0 * pi;
constexpr double end_fraction = 1.0 - 1e-12;

zone_geometry geometry_unchecked(const well_spec& w, double beta) {
    zone_geometry g;
    g.k1 = w.v1 - beta;
    g.k2 = w.v2 - beta;
    double c1 = std::cbrt((w.lambda / w.v1) * (w.lambda / w.v1));
    double c2 = std::cbrt((w.lambda / w.v2) * (w.lambda / w.v2));
    g.eta_bar = c1 * g.k1;
    g.eta_hat = -c1 * beta;
    g.zeta_hat = -c2 * beta;
    g.zeta_bar = c2 * g.k2;
    return g;
}

void require_ramp(const well_spec& w) {
    if (!(w.lambda > 0))
        throw domain_error("lambda = 0 is the square-well limit; use the swlimit module");
}

// y = Bi - f Ai and y' at the shoulder junction z, where y' = -sqrt(z) y.
// Uses Bi Ai' - Ai Bi' = -1/pi so no cancellation occurs for large z.
ramp_pair shoulder_value(double z) {
    airy_scaled a = airy_eval_scaled(z);
    double den = std::sqrt(z) * a.v.ai + a.v.aip;
    double lg = a.s - std::log(pi * std::fabs(den));
    if (lg > 709.0) throw overflow_error("shoulder value overflows (ramp too long)");
    double y = -std::exp(a.s) / (pi * den);
    return {y, -std::sqrt(z) * y};
}

factor_chain chain_unchecked(const well_spec& w, double beta) {
    factor_chain c;
    c.geo = geometry_unchecked(w, beta);
    c.f1 = f_factor(c.geo.eta_bar);
    c.f2 = f_factor(c.geo.zeta_bar);
    ramp_pair l = ramp_solution(c.f1, c.geo.eta_hat);
    ramp_pair r = ramp_solution(c.f2, c.geo.zeta_hat);
    ramp_pair lb = shoulder_value(c.geo.eta_bar);
    ramp_pair rb = shoulder_value(c.geo.zeta_bar);
    c.y1_hat = l.y;
    c.y1p_hat = l.yp;
    c.y2_hat = r.y;
    c.y2p_hat = r.yp;
    c.y1_bar = lb.y;
    c.y1p_bar = lb.yp;
    c.y2_bar = rb.y;
    c.y2p_bar = rb.yp;
    if (beta > 0) {
        c.n_left = -std::sqrt(-c.geo.eta_hat) * l.y;
        c.n_right = std::sqrt(-c.geo.zeta_hat) * r.y;
    }
    c.d_left = l.yp;
    c.d_right = r.yp;
    c.p = c.d_left * c.d_right + c.n_left * c.n_right;
    c.q = c.n_left * c.d_right - c.n_right * c.d_left;
    return c;
}

double raw_phase(const well_spec& w, double beta) {
    factor_chain c = chain_unchecked(w, beta);
    return std::atan2(c.q, c.p);
}

double nearest_branch(double raw, double ref) {
    return raw + two_pi * std::round((ref - raw) / two_pi);
}

// Adaptive unwrapping of a phase function from (a, pa) to b.
double unwrap_to(const std::function<double(double)>& raw, double a, double pa, double b,
                 int depth = 0) {
    double cand = nearest_branch(raw(b), pa);
    if (std::fabs(cand - pa) <= pi / 4 || depth > 40) return cand;
    double m = 0.5 * (a + b);
    double pm = unwrap_to(raw, a, pa, m, depth + 1);
    return unwrap_to(raw, m, pm, b, depth + 1);
}

// Same, recording every accepted point.
void unwrap_record(const std::function<double(double)>& raw, double a, double pa, double b,
                   std::vector<double>& xs, std::vector<double>& ps, int depth = 0) {
    double cand = nearest_branch(raw(b), pa);
    if (std::fabs(cand - pa) <= pi / 4 || depth > 40) {
        xs.push_back(b);
        ps.push_back(cand);
        return;
    }
    double m = 0.5 * (a + b);
    unwrap_record(raw, a, pa, m, xs, ps, depth + 1);
    unwrap_record(raw, m, ps.back(), b, xs, ps, depth + 1);
}

double continuous_phase(const well_spec& w, double beta) {
    auto raw = [&](double b) { return raw_phase(w, b); };
    double b0 = beta * 1e-9;
    double p = raw(b0);
    const int steps = 32;
    double a = b0;
    for (int i = 1; i <= steps; ++i) {
        double b = b0 + (beta - b0) * i / steps;
        p = unwrap_to(raw, a, p, b);
        a = b;
    }
    return p;
}

double pole_free_numerator(const factor_chain& c, double beta) {
    double s2 = std::sin(2 * std::sqrt(beta)), c2 = std::cos(2 * std::sqrt(beta));
    return c.p * s2 + c.q * c2;
}

void check_beta(const well_spec& w, double beta) {
    require_ramp(w);
    if (!(beta > 0) || !(beta <= w.v2)) throw domain_error("beta must lie in (0, v2]");
}

}  // namespace

zone_geometry make_geometry(const well_spec& w, double beta) {
    check_beta(w, beta);
    return geometry_unchecked(w, beta);
}

factor_chain make_factor_chain(const well_spec& w, double beta) {
    check_beta(w, beta);
    return chain_unchecked(w, beta);
}

spectral_factors make_spectral_factors(const well_spec& w, double beta) {
    check_beta(w, beta);
    factor_chain c = chain_unchecked(w, beta);
    spectral_factors s;
    const double inf = std::numeric_limits<double>::infinity();
    s.f1p = c.f1;
    s.f2p = c.f2;
    s.asymptote = std::fabs(c.d_left) < 1e-250 || std::fabs(c.d_right) < 1e-250;
    s.g_left = c.d_left != 0 ? c.n_left / c.d_left : inf;
    s.g_right = c.d_right != 0 ? c.n_right / c.d_right : inf;
    s.gamma_left = c.n_left != 0 ? c.d_left / c.n_left : inf;
    s.gamma_right = c.n_right != 0 ? c.d_right / c.n_right : inf;
    double nn = c.n_left * c.n_right;
    s.c_coef = c.p / nn;
    s.s_coef = c.q / nn;
    s.r_norm = std::hypot(c.p, c.q) / std::fabs(nn);
    s.phi = continuous_phase(w, beta);
    s.theta = (2 * std::sqrt(beta) + s.phi) / pi;
    return s;
}

std::optional<double> d_raw(const well_spec& w, double beta) {
    check_beta(w, beta);
    factor_chain c = chain_unchecked(w, beta);
    double den = c.d_left * c.d_right;
    if (std::fabs(den) < 1e-250) return std::nullopt;
    return pole_free_numerator(c, beta) / den;
}

double d_circ(const well_spec& w, double beta) {
    check_beta(w, beta);
    factor_chain c = chain_unchecked(w, beta);
    return pole_free_numerator(c, beta) / (c.n_left * c.n_right);
}

double d_star(const well_spec& w, double beta) {
    check_beta(w, beta);
    factor_chain c = chain_unchecked(w, beta);
    double nn = c.n_left * c.n_right;
    double sgn = nn > 0 ? 1.0 : -1.0;
    return sgn * pole_free_numerator(c, beta) / std::hypot(c.p, c.q);
}

double phase_angle(const well_spec& w, double beta) {
    check_beta(w, beta);
    return continuous_phase(w, beta);
}

double theta(const well_spec& w, double beta) {
    return (2 * std::sqrt(beta) + phase_angle(w, beta)) / pi;
}

double d_raw_symmetric_product(const well_spec& w, double beta) {
    check_beta(w, beta);
    factor_chain c = chain_unchecked(w, beta);
    double sb = std::sin(std::sqrt(beta)), cb = std::cos(std::sqrt(beta));
    double odd_f = c.d_left * sb + c.n_left * cb;
    double even_f = c.n_left * sb - c.d_left * cb;
    return -2.0 * odd_f * even_f / (c.d_left * c.d_left);
}

std::string parity_name(parity p) {
    switch (p) {
        case parity::even: return "even";
        case parity::odd: return "odd";
        case parity::none: return "none";
    }
    return "none";
}

spectrum_scan scan_spectrum(const well_spec& w, int grid_points) {
    require_ramp(w);
    validate(w);
    if (grid_points < 2) throw validation_error("grid_points must be >= 2");
    auto raw = [&](double b) { return raw_phase(w, b); };
    std::vector<double> xs, ps;
    double b0 = w.v2 * 1e-9;
    double p0 = raw(b0);
    double a = b0, pa = p0;
    for (int i = 1; i <= grid_points; ++i) {
        double b = (i == grid_points) ? w.v2 * end_fraction : w.v2 * i / grid_points;
        unwrap_record(raw, a, pa, b, xs, ps);
        a = b;
        pa = ps.back();
    }
    spectrum_scan out;
    out.points.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        factor_chain c = chain_unchecked(w, xs[i]);
        scan_point sp;
        sp.beta = xs[i];
        double num = pole_free_numerator(c, xs[i]);
        double den = c.d_left * c.d_right;
        if (std::fabs(den) >= 1e-250) sp.d_raw = num / den;
        double nn = c.n_left * c.n_right;
        sp.d_circ = num / nn;
        sp.d_star = (nn > 0 ? 1.0 : -1.0) * num / std::hypot(c.p, c.q);
        sp.theta = (2 * std::sqrt(xs[i]) + ps[i]) / pi;
        if (!out.points.empty() && sp.theta <= out.points.back().theta) out.theta_monotone = false;
        out.points.push_back(sp);
    }
    out.theta_end = out.points.back().theta;
    return out;
}

std::vector<eigenvalue_record> find_eigenvalues(const well_spec& w, const eigen_options& opt) {
    validate(w);
    require_ramp(w);
    spectrum_scan scan = scan_spectrum(w, opt.grid_points);
    const auto& pts = scan.points;
    const int n_max = static_cast<int>(std::floor(scan.theta_end));
    const double b_end = w.v2 * end_fraction;
    const bool symmetric = std::fabs(w.v1 - w.v2) <= 1e-12 * w.v1;

    std::vector<eigenvalue_record> out;
    std::size_t i = 0;
    for (int n = 1; n <= n_max; ++n) {
        while (i + 1 < pts.size() && pts[i + 1].theta < n) ++i;
        if (i + 1 >= pts.size()) break;
        double a = pts[i].beta, b = pts[i + 1].beta;
        double pa = pts[i].theta * pi - 2 * std::sqrt(a);
        double pb = pts[i + 1].theta * pi - 2 * std::sqrt(b);

        // F(beta) = 2 sqrt(beta) + phi(beta) - n pi on the bracket's branch
        auto F = [&](double x) {
            double ref = pa + (pb - pa) * (x - a) / (b - a);
            return 2 * std::sqrt(x) + nearest_branch(raw_phase(w, x), ref) - n * pi;
        };
        double fa = pts[i].theta * pi - n * pi;
        double fb = pts[i + 1].theta * pi - n * pi;
        double lo = a, hi = b;
        double x = (fa == fb) ? 0.5 * (a + b) : a - fa * (b - a) / (fb - fa);
        const double h = std::max(1e-7 * w.v2, 1e-9);
        int it = 0;
        double fx = F(x);
        for (; it < opt.max_iterations; ++it) {
            if (std::fabs(fx) <= 1e-14) break;
            if (fx < 0) lo = x; else hi = x;
            double xp = std::min(x + h, b_end), xm = std::max(x - h, 0.5 * x);
            double deriv = (F(xp) - F(xm)) / (xp - xm);
            double xn = x - fx / deriv;
            if (!(xn > lo && xn < hi) || !std::isfinite(xn)) xn = 0.5 * (lo + hi);
            double step = std::fabs(xn - x);
            x = xn;
            fx = F(x);
            if (step <= 1e-14 * w.v2) break;
        }
        eigenvalue_record r;
        r.index_n = n;
        r.beta = x;
        r.newton_iterations = it;
        r.residual = std::fabs(d_star(w, std::min(x, w.v2)));
        r.threshold = (w.v2 - x) <= 1e-10;
        if (symmetric) {
            factor_chain c = chain_unchecked(w, x);
            double sb = std::sin(std::sqrt(x)), cb = std::cos(std::sqrt(x));
            double nrm = std::hypot(c.n_left, c.d_left);
            double odd_f = std::fabs(c.d_left * sb + c.n_left * cb) / nrm;
            double even_f = std::fabs(c.n_left * sb - c.d_left * cb) / nrm;
            r.par = even_f < odd_f ? parity::even : parity::odd;
        }
        out.push_back(r);
    }
    return out;
}

negative_beta_report negative_beta_diagnostic(const well_spec& w,
                                              const std::vector<double>& grid) {
    require_ramp(w);
    negative_beta_report rep;
    rep.min_abs = std::numeric_limits<double>::infinity();
    for (double beta : grid) {
        if (!(beta < 0)) throw domain_error("negative_beta_diagnostic: grid entries must be < 0");
        factor_chain c = chain_unchecked(w, beta);
        double gl = -std::sqrt(c.geo.eta_hat) * c.y1_hat / c.y1p_hat;
        double gr = std::sqrt(c.geo.zeta_hat) * c.y2_hat / c.y2p_hat;
        double kappa = std::sqrt(-beta);
        double cs = 1.0 - gl * gr, cc = gl - gr;
        double im = cs * std::sinh(2 * kappa) + cc * std::cosh(2 * kappa);
        rep.beta.push_back(beta);
        rep.im_d.push_back(im);
        rep.coef_sinh.push_back(cs);
        rep.coef_cosh.push_back(cc);
        if (std::fabs(im) < rep.min_abs) {
            rep.min_abs = std::fabs(im);
            rep.at_beta = beta;
        }
    }
    return rep;
}

bool absence_condition(const well_spec& w) {
    validate(w);
    require_ramp(w);
    double b = w.v2 * end_fraction;
    return (2 * std::sqrt(w.v2) + continuous_phase(w, b)) / pi < 1.0;
}

double h_universal(double u) {
    if (!(u > 0) || !std::isfinite(u)) throw domain_error("h_universal: u must be > 0");
    const double f0 = airy_limit_constants().f0;
    auto raw = [&](double x) {
        ramp_pair y = ramp_solution(f0, -x);
        double n = -std::sqrt(x) * y.y;
        return std::atan2(y.yp, -n);
    };
    double u0 = std::min(u, 1e-4);
    double d = raw(u0);
    const int steps = 64;
    double a = u0;
    for (int i = 1; i <= steps; ++i) {
        double b = u0 + (u - u0) * i / steps;
        d = unwrap_to(raw, a, d, b);
        a = b;
    }
    return 2.0 * d / std::pow(u, 1.5);
}

}  // namespace trapwell
