#include "trapwell/swlimit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "trapwell/airy.hpp"
#include "trapwell/errors.hpp"
#include "trapwell/parallel.hpp"

namespace trapwell {

namespace {

constexpr double pi = 3.14159265358979323846;

double clamped_asin_sqrt(double r) {
    if (r > 1.0 && r <= 1.0 + 1e-14) r = 1.0;
    if (r < 0.0 && r >= -1e-14) r = 0.0;
    return std::asin(std::sqrt(r));
}

void check_pair(double v1, double v2) {
    if (!(v2 > 0) || !(v1 >= v2) || !std::isfinite(v1))
        throw validation_error("square well requires 0 < v2 <= v1");
}

double angle_derivative(double v1, double v2, double beta) {
    double d = 1.0 / std::sqrt(beta);
    if (beta < v1) d += 0.5 / std::sqrt(beta * (v1 - beta));
    if (beta < v2) d += 0.5 / std::sqrt(beta * (v2 - beta));
    return d;
}

}  // namespace

double swp_angle_sum(double v1, double v2, double beta) {
    return 2 * std::sqrt(beta) + clamped_asin_sqrt(beta / v1) + clamped_asin_sqrt(beta / v2);
}

std::vector<eigenvalue_record> swp_eigenvalues(double v1, double v2) {
    check_pair(v1, v2);
    const double top = swp_angle_sum(v1, v2, v2);
    const int n_max = static_cast<int>(std::floor(top / pi));
    const bool symmetric = std::fabs(v1 - v2) <= 1e-12 * v1;
    std::vector<eigenvalue_record> out;
    double lo_prev = 0;
    for (int n = 1; n <= n_max; ++n) {
        double target = n * pi;
        double lo = lo_prev, hi = v2;
        auto F = [&](double b) { return swp_angle_sum(v1, v2, b) - target; };
        double x = 0.5 * (lo + hi);
        int it = 0;
        double fx = F(x);
        for (; it < 200; ++it) {
            if (fx == 0) break;
            if (fx < 0) lo = x; else hi = x;
            double xn = x - fx / angle_derivative(v1, v2, x);
            if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
            double step = std::fabs(xn - x);
            x = xn;
            fx = F(x);
            if (std::fabs(fx) <= 1e-15 * target || step <= 1e-15 * v2) break;
        }
        if (F(v2) == 0) x = v2;
        eigenvalue_record r;
        r.index_n = n;
        r.beta = x;
        r.residual = std::fabs(F(x));
        r.newton_iterations = it;
        r.threshold = (v2 - x) <= 1e-10;
        if (symmetric) {
            double sb = std::sin(std::sqrt(x)), cb = std::cos(std::sqrt(x));
            double g = std::sqrt(x / (v1 - x));
            double nrm = std::hypot(1.0, g);
            double odd_f = std::fabs(sb + g * cb) / nrm;
            double even_f = std::fabs(g * sb - cb) / nrm;
            r.par = even_f < odd_f ? parity::even : parity::odd;
        }
        out.push_back(r);
        lo_prev = x;
    }
    return out;
}

double reed_residual(double v, double beta) {
    double k = v - beta;
    double t = 2 * std::sqrt(beta);
    return (1 - beta / k) * std::sin(t) + 2 * std::sqrt(beta / k) * std::cos(t);
}

bool swp_exists(double v1, double v2) {
    check_pair(v1, v2);
    return !(2 * std::sqrt(v2) < std::acos(std::sqrt(v2 / v1)));
}

bool swp_absent_landau(double v1, double v2) {
    check_pair(v1, v2);
    return 2 * std::sqrt(v2) < pi / 2 - clamped_asin_sqrt(v2 / v1);
}

square_well_solution swp_solution(double v1, double v2, const eigenvalue_record& rec) {
    check_pair(v1, v2);
    const double beta = rec.beta;
    if (!(beta > 0) || !(beta < v2)) throw domain_error("swp_solution: beta must lie in (0, v2)");
    square_well_solution s;
    s.v1 = v1;
    s.v2 = v2;
    s.record = rec;
    s.k1 = v1 - beta;
    s.k2 = v2 - beta;
    const double lam = airy_limit_constants().lambda_const;
    const double sb = std::sqrt(beta);
    const double sn = std::sin(sb), cs = std::cos(sb);
    // g_left = sqrt(beta/k1), g_right = -sqrt(beta/k2) in numerator/denominator form
    const double nl = sb, dl = std::sqrt(s.k1), nr = -sb, dr = std::sqrt(s.k2);
    double num1 = (dl + nl) * sn - (dl - nl) * cs;
    double den1 = (dl - nl) * sn + (dl + nl) * cs;
    double num2 = (dr + nr) * sn + (dr - nr) * cs;
    double den2 = (dr - nr) * sn - (dr + nr) * cs;
    double frac;
    if (std::fabs(den1) < 1e-6 * std::fabs(den2)) frac = num2 / den2;
    else if (std::fabs(den2) < 1e-6 * std::fabs(den1)) frac = num1 / den1;
    else frac = 0.5 * (num1 / den1 + num2 / den2);

    double c0 = 1, d0 = -frac, a0 = c0 + d0, b0 = c0 - d0;
    double b1p = 0.5 * ((-a0 * sn + b0 * cs) + std::sqrt(beta / s.k1) * (a0 * cs + b0 * sn)) / lam;
    double b2p = 0.5 * ((a0 * sn + b0 * cs) - std::sqrt(beta / s.k2) * (a0 * cs - b0 * sn)) / lam;
    double bt1 = b1p * lam, bt2 = b2p * lam;
    const double sinc = std::sin(2 * sb) / (2 * sb);
    auto norm = [&](double a, double b, double t1, double t2) {
        return t1 * t1 / (2 * std::sqrt(s.k1)) + a * a * (1 - sinc) + b * b * (1 + sinc) +
               t2 * t2 / (2 * std::sqrt(s.k2));
    };
    double scale = std::sqrt(2.0 / norm(a0, b0, bt1, bt2));
    s.c0 = scale;
    s.d0 = d0 * scale;
    s.a0 = a0 * scale;
    s.b0 = b0 * scale;
    s.b1p = b1p * scale;
    s.b2p = b2p * scale;
    s.bt1 = bt1 * scale;
    s.bt2 = bt2 * scale;
    s.plateau_left = s.b1p * lam;
    s.plateau_right = s.b2p * lam;
    s.d2_jump_left = -v1 * s.bt1;
    s.d2_jump_right = v2 * s.bt2;
    s.norm_sum = norm(s.a0, s.b0, s.bt1, s.bt2);
    return s;
}

phi_triplet sw_eval(const square_well_solution& s, double xi) {
    phi_triplet t;
    const double beta = s.record.beta;
    if (xi <= -1) {
        double sk = std::sqrt(s.k1), e = (xi + 1) * sk;
        if (e < -700) return t;
        t.phi = s.bt1 * std::exp(e);
        t.dphi = sk * t.phi;
        t.d2phi = s.k1 * t.phi;
    } else if (xi <= 1) {
        double sb = std::sqrt(beta);
        double sn = std::sin(sb * xi), cs = std::cos(sb * xi);
        t.phi = s.a0 * sn + s.b0 * cs;
        t.dphi = sb * (s.a0 * cs - s.b0 * sn);
        t.d2phi = -beta * t.phi;
    } else {
        double sk = std::sqrt(s.k2), e = (1 - xi) * sk;
        if (e < -700) return t;
        t.phi = s.bt2 * std::exp(e);
        t.dphi = -sk * t.phi;
        t.d2phi = s.k2 * t.phi;
    }
    return t;
}

d2_limits sw_d2_limits(const square_well_solution& s, double xi) {
    if (xi != -1.0 && xi != 1.0) throw domain_error("sw_d2_limits: xi must be -1 or +1");
    const double beta = s.record.beta;
    const double sb = std::sqrt(beta);
    double inner = -beta * (s.a0 * std::sin(sb * xi) + s.b0 * std::cos(sb * xi));
    d2_limits d;
    if (xi < 0) {
        d.left = s.k1 * s.bt1;
        d.right = inner;
    } else {
        d.left = inner;
        d.right = s.k2 * s.bt2;
    }
    d.jump = d.right - d.left;
    return d;
}

sweep_result lambda_sweep(double v1, double v2, const std::vector<double>& lambdas) {
    check_pair(v1, v2);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0)) throw validation_error("lambda_sweep: lambdas must be > 0");
        if (i > 0 && !(lambdas[i] < lambdas[i - 1]))
            throw validation_error("lambda_sweep: lambdas must be descending");
    }
    const auto ref = swp_eigenvalues(v1, v2);
    std::vector<std::vector<sweep_row>> per(lambdas.size());
    sweep_result out;
    out.counts.assign(lambdas.size(), 0);
    out.errors.assign(lambdas.size(), "");
    parallel_for(lambdas.size(), [&](std::size_t i) {
        well_spec w{v1, v2, lambdas[i]};
        try {
            auto ev = find_eigenvalues(w);
            out.counts[i] = static_cast<int>(ev.size());
            for (const auto& r : ev) {
                sweep_row row;
                row.lambda = lambdas[i];
                row.n = r.index_n;
                row.beta_twp = r.beta;
                if (r.index_n <= static_cast<int>(ref.size())) {
                    row.beta_swp = ref[r.index_n - 1].beta;
                    row.abs_dev = std::fabs(r.beta - row.beta_swp);
                } else {
                    row.beta_swp = std::nan("");
                    row.abs_dev = std::nan("");
                }
                eigen_solution s = make_solution(w, r);
                const double l = w.lambda;
                row.d2jump_left = eval_in_zone(s, zone::z0, -1).d2phi - eval_in_zone(s, zone::z1, -1 - l).d2phi;
                row.d2jump_right = eval_in_zone(s, zone::z2, 1 + l).d2phi - eval_in_zone(s, zone::z0, 1).d2phi;
                per[i].push_back(row);
            }
        } catch (const std::exception& e) {
            out.errors[i] = e.what();
        }
    });
    std::map<int, double> last;
    for (const auto& rows : per) {
        for (const auto& r : rows) {
            auto it = last.find(r.n);
            if (it != last.end() && !(r.abs_dev < it->second)) out.monotone = false;
            last[r.n] = r.abs_dev;
            out.rows.push_back(r);
        }
    }
    return out;
}

}  // namespace trapwell
