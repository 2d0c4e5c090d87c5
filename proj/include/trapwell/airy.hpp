#pragma once

namespace trapwell {

struct airy_quad {
    double ai = 0, bi = 0, aip = 0, bip = 0;
};

// Scaled values: ai and aip carry a factor exp(+s), bi and bip exp(-s),
// with s = (2/3) x^{3/2} for x > 0 and s = 0 otherwise.
struct airy_scaled {
    airy_quad v;
    double s = 0;
};

struct airy_constants {
    double f0;            // Bi'(0)/Ai'(0)
    double lambda_const;  // Bi(0) - f0 Ai(0)
};

// Ai, Bi, Ai', Bi' at real x.  Throws domain_error on non-finite input and
// overflow_error for x > 100 (use airy_eval_scaled there).
airy_quad airy_eval(double x);

airy_scaled airy_eval_scaled(double x);

// f(z) = (sqrt(z) Bi + Bi') / (sqrt(z) Ai + Ai'), z >= 0.
double f_factor(double z);

// y = Bi(x) - f Ai(x) and y'.
struct ramp_pair {
    double y = 0, yp = 0;
};
ramp_pair ramp_solution(double f, double x);

airy_constants airy_limit_constants();

}  // namespace trapwell
