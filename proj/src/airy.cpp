#include "trapwell/airy.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "trapwell/errors.hpp"

namespace trapwell {

namespace {

using ld = long double;

constexpr ld pi_l = 3.141592653589793238462643383279502884L;
constexpr double table_lo = -10.0;
constexpr double table_step = 0.25;
constexpr int table_nodes = 81;  // [-10, 10]

struct quad_l {
    ld ai, aip, bi, bip;
};

struct node_values {
    std::array<quad_l, table_nodes> q;
};

// Taylor step of a solution pair (y, y') of y'' = x y from x0 to x0 + h.
void taylor(ld x0, ld h, ld& y, ld& yp, ld& y2, ld& yp2) {
    // both solutions share the recurrence and are advanced together
    ld sy = y + yp * h, syp = yp;
    ld sy2 = y2 + yp2 * h, syp2 = yp2;
    ld an = y, an1 = yp, anm1 = 0;
    ld bn = y2, bn1 = yp2, bnm1 = 0;
    ld hn = h;  // h^{n+1}
    int small = 0;  // every third coefficient vanishes at x0 = 0
    for (int n = 0; n < 120; ++n) {
        // a_{n+2} = (x0 a_n + a_{n-1}) / ((n+2)(n+1))
        ld a2 = (x0 * an + anm1) / ((n + 2.0L) * (n + 1.0L));
        ld b2 = (x0 * bn + bnm1) / ((n + 2.0L) * (n + 1.0L));
        ld hn2 = hn * h;  // h^{n+2}
        ld ty = a2 * hn2, typ = (n + 2) * a2 * hn;
        ld t2 = b2 * hn2, t2p = (n + 2) * b2 * hn;
        sy += ty;
        syp += typ;
        sy2 += t2;
        syp2 += t2p;
        anm1 = an;
        an = an1;
        an1 = a2;
        bnm1 = bn;
        bn = bn1;
        bn1 = b2;
        hn = hn2;
        ld scale = std::fabs(sy) + std::fabs(syp) + std::fabs(sy2) + std::fabs(syp2);
        ld tail = std::fabs(ty) + std::fabs(typ) + std::fabs(t2) + std::fabs(t2p);
        small = (tail <= 1e-24L * scale) ? small + 1 : 0;
        if (small >= 3) break;
    }
    y = sy;
    yp = syp;
    y2 = sy2;
    yp2 = syp2;
}

// Asymptotic sums for large |x|; returns the four bracketed series.
struct asym_sums {
    ld su_alt, sv_alt, su, sv;           // for x > 0
    ld u_even, u_odd, v_even, v_odd;     // for x < 0
};

asym_sums asymptotic_sums(ld zeta) {
    asym_sums r{1, 1, 1, 1, 1, 0, 1, 0};
    ld u = 1;
    ld zk = 1;
    ld last = std::numeric_limits<ld>::infinity();
    for (int k = 1; k < 200; ++k) {
        u *= (6.0L * k - 5) * (6.0L * k - 3) * (6.0L * k - 1) / ((2.0L * k - 1) * 216.0L * k);
        ld v = -(6.0L * k + 1) / (6.0L * k - 1) * u;
        zk *= zeta;
        ld tu = u / zk, tv = v / zk;
        ld mag = std::fabs(tu) + std::fabs(tv);
        if (mag > last) break;
        last = mag;
        ld sgn = (k % 2) ? -1.0L : 1.0L;
        r.su_alt += sgn * tu;
        r.sv_alt += sgn * tv;
        r.su += tu;
        r.sv += tv;
        // (-1)^j for the even (k = 2j) and odd (k = 2j+1) subsequences
        int j = k / 2;
        ld sj = (j % 2) ? -1.0L : 1.0L;
        if (k % 2 == 0) {
            r.u_even += sj * tu;
            r.v_even += sj * tv;
        } else {
            r.u_odd += sj * tu;
            r.v_odd += sj * tv;
        }
        if (mag < 1e-22L) break;
    }
    return r;
}

// Asymptotic values for x > 0 with ai, aip scaled by exp(+zeta), bi, bip by exp(-zeta).
quad_l asymptotic_positive_scaled(ld x) {
    ld zeta = 2.0L / 3.0L * x * std::sqrt(x);
    ld x4 = std::pow(x, 0.25L);
    ld spi = std::sqrt(pi_l);
    asym_sums s = asymptotic_sums(zeta);
    quad_l q;
    q.ai = s.su_alt / (2 * spi * x4);
    q.aip = -x4 * s.sv_alt / (2 * spi);
    q.bi = s.su / (spi * x4);
    q.bip = x4 * s.sv / spi;
    return q;
}

quad_l asymptotic_negative(ld x) {
    ld t = -x;
    ld zeta = 2.0L / 3.0L * t * std::sqrt(t);
    ld x4 = std::pow(t, 0.25L);
    ld spi = std::sqrt(pi_l);
    asym_sums s = asymptotic_sums(zeta);
    ld c = std::cos(zeta - pi_l / 4), sn = std::sin(zeta - pi_l / 4);
    quad_l q;
    q.ai = (c * s.u_even + sn * s.u_odd) / (spi * x4);
    q.aip = x4 * (sn * s.v_even - c * s.v_odd) / spi;
    q.bi = (-sn * s.u_even + c * s.u_odd) / (spi * x4);
    q.bip = x4 * (c * s.v_even + sn * s.v_odd) / spi;
    return q;
}

node_values build_table() {
    node_values t{};
    const int i0 = static_cast<int>(-table_lo / table_step);  // node of x = 0
    const ld g13 = std::tgamma(1.0L / 3.0L), g23 = std::tgamma(2.0L / 3.0L);
    quad_l z;
    z.ai = 1.0L / (std::pow(3.0L, 2.0L / 3.0L) * g23);
    z.aip = -1.0L / (std::pow(3.0L, 1.0L / 3.0L) * g13);
    z.bi = 1.0L / (std::pow(3.0L, 1.0L / 6.0L) * g23);
    z.bip = std::pow(3.0L, 1.0L / 6.0L) / g13;
    t.q[i0] = z;

    // negative side: both solutions oscillate, propagate from the origin
    for (int i = i0; i > 0; --i) {
        quad_l q = t.q[i];
        ld x0 = table_lo + i * static_cast<ld>(table_step);
        taylor(x0, -static_cast<ld>(table_step), q.ai, q.aip, q.bi, q.bip);
        t.q[i - 1] = q;
    }

    // positive side: Bi forward from the origin, Ai backward from x = 10
    {
        ld y = z.bi, yp = z.bip, d1 = 0, d2 = 0;
        for (int i = i0; i < table_nodes - 1; ++i) {
            ld x0 = table_lo + i * static_cast<ld>(table_step);
            taylor(x0, static_cast<ld>(table_step), y, yp, d1, d2);
            t.q[i + 1].bi = y;
            t.q[i + 1].bip = yp;
        }
    }
    {
        ld xe = table_lo + (table_nodes - 1) * static_cast<ld>(table_step);
        quad_l a = asymptotic_positive_scaled(xe);
        ld e = std::exp(-2.0L / 3.0L * xe * std::sqrt(xe));
        ld y = a.ai * e, yp = a.aip * e, d1 = 0, d2 = 0;
        t.q[table_nodes - 1].ai = y;
        t.q[table_nodes - 1].aip = yp;
        for (int i = table_nodes - 1; i > i0 + 1; --i) {
            ld x0 = table_lo + i * static_cast<ld>(table_step);
            taylor(x0, -static_cast<ld>(table_step), y, yp, d1, d2);
            t.q[i - 1].ai = y;
            t.q[i - 1].aip = yp;
        }
    }
    return t;
}

const node_values& table() {
    static const node_values t = build_table();
    return t;
}

quad_l eval_table(double x) {
    const node_values& t = table();
    int i = static_cast<int>(std::lround((x - table_lo) / table_step));
    if (i < 0) i = 0;
    if (i > table_nodes - 1) i = table_nodes - 1;
    ld x0 = table_lo + i * static_cast<ld>(table_step);
    ld h = static_cast<ld>(x) - x0;
    quad_l q = t.q[i];
    if (h != 0) taylor(x0, h, q.ai, q.aip, q.bi, q.bip);
    return q;
}

airy_quad to_double(const quad_l& q) {
    return {static_cast<double>(q.ai), static_cast<double>(q.bi), static_cast<double>(q.aip),
            static_cast<double>(q.bip)};
}

void check_finite(double x) {
    if (!std::isfinite(x)) throw domain_error("airy: non-finite argument");
}

}  // namespace

airy_quad airy_eval(double x) {
    check_finite(x);
    if (x > 100.0) throw overflow_error("airy_eval: Bi overflows for x > 100, use airy_eval_scaled");
    if (std::fabs(x) <= 10.0) return to_double(eval_table(x));
    if (x < 0) return to_double(asymptotic_negative(x));
    quad_l q = asymptotic_positive_scaled(x);
    ld zeta = 2.0L / 3.0L * x * std::sqrt(static_cast<ld>(x));
    ld em = std::exp(-zeta), ep = std::exp(zeta);
    q.ai *= em;
    q.aip *= em;
    q.bi *= ep;
    q.bip *= ep;
    return to_double(q);
}

airy_scaled airy_eval_scaled(double x) {
    check_finite(x);
    airy_scaled r;
    if (x <= 0) {
        r.v = airy_eval(x);
        r.s = 0;
        return r;
    }
    ld zeta = 2.0L / 3.0L * x * std::sqrt(static_cast<ld>(x));
    r.s = static_cast<double>(zeta);
    quad_l q;
    if (x <= 10.0) {
        q = eval_table(x);
        ld ep = std::exp(zeta), em = std::exp(-zeta);
        q.ai *= ep;
        q.aip *= ep;
        q.bi *= em;
        q.bip *= em;
    } else {
        q = asymptotic_positive_scaled(x);
    }
    r.v = to_double(q);
    return r;
}

double f_factor(double z) {
    if (!(z >= 0)) throw domain_error("f_factor: argument must be >= 0");
    airy_scaled a = airy_eval_scaled(z);
    double sz = std::sqrt(z);
    double num = sz * a.v.bi + a.v.bip;
    double den = sz * a.v.ai + a.v.aip;
    if (std::fabs(den) < 1e-300) throw numerical_error("f_factor: degenerate denominator");
    double lg = std::log(std::fabs(num / den)) + 2.0 * a.s;
    if (lg > 709.0) throw overflow_error("f_factor: value overflows (shoulder argument too large)");
    return num / den * std::exp(2.0 * a.s);
}

ramp_pair ramp_solution(double f, double x) {
    airy_quad a = airy_eval(x);
    return {a.bi - f * a.ai, a.bip - f * a.aip};
}

airy_constants airy_limit_constants() {
    airy_quad a = airy_eval(0.0);
    double f0 = a.bip / a.aip;
    return {f0, a.bi - f0 * a.ai};
}

}  // namespace trapwell
