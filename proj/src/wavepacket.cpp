#include "trapwell/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "trapwell/errors.hpp"
#include "trapwell/parallel.hpp"
#include "trapwell/quadrature.hpp"

namespace trapwell {

namespace {

constexpr double coefficient_tol = 1e-10;

std::vector<double> pieces(const std::vector<basis_state>& basis, const std::vector<double>& extra) {
    auto [lo, hi] = basis_domain(basis);
    std::vector<double> pts{lo, hi};
    for (const auto& b : basis) {
        pts.insert(pts.end(), {-1 - b.lambda, -1.0, 1.0, 1 + b.lambda});
    }
    for (double e : extra)
        if (e > lo && e < hi) pts.push_back(e);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double piecewise(const std::function<double(double)>& f, const std::vector<double>& pts, double tol) {
    double total = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += integrate(f, pts[i], pts[i + 1], tol).value;
    return total;
}

}  // namespace

basis_state to_basis_state(const eigen_solution& s) {
    basis_state b;
    b.n = s.record.index_n;
    b.beta = s.record.beta;
    b.b0 = s.coeffs.b0;
    b.par = s.record.par;
    b.lambda = s.well.lambda;
    b.k1 = s.geometry.k1;
    b.k2 = s.geometry.k2;
    b.phi = [s](double xi) { return eval_phi(s, xi); };
    return b;
}

basis_state to_basis_state(const square_well_solution& s) {
    basis_state b;
    b.n = s.record.index_n;
    b.beta = s.record.beta;
    b.b0 = s.b0;
    b.par = s.record.par;
    b.lambda = 0;
    b.k1 = s.k1;
    b.k2 = s.k2;
    b.phi = [s](double xi) { return sw_eval(s, xi).phi; };
    return b;
}

std::vector<basis_state> to_basis(const std::vector<eigen_solution>& v) {
    std::vector<basis_state> out;
    for (const auto& s : v) out.push_back(to_basis_state(s));
    return out;
}

std::vector<basis_state> to_basis(const std::vector<square_well_solution>& v) {
    std::vector<basis_state> out;
    for (const auto& s : v) out.push_back(to_basis_state(s));
    return out;
}

initial_function triangular_function() {
    initial_function F;
    F.tag = "triangular";
    F.f = [](double xi) { return std::fabs(xi) < 1 ? std::sqrt(3.0) * (1 - std::fabs(xi)) : 0.0; };
    F.breakpoints = {-1.0, 0.0, 1.0};
    return F;
}

std::pair<double, double> basis_domain(const std::vector<basis_state>& basis) {
    double lo = -1, hi = 1;
    for (const auto& b : basis) {
        lo = std::min(lo, -1 - b.lambda - 40 / std::sqrt(std::max(b.k1, 1e-8)));
        hi = std::max(hi, 1 + b.lambda + 40 / std::sqrt(std::max(b.k2, 1e-8)));
    }
    return {lo, hi};
}

double basis_inner(const basis_state& a, const basis_state& b, double tol) {
    auto pts = pieces({a, b}, {});
    return 0.5 * piecewise([&](double x) { return a.phi(x) * b.phi(x); }, pts, tol);
}

projection_result project(const initial_function& F, const std::vector<basis_state>& basis) {
    if (basis.empty()) throw domain_error("project: empty basis");
    const std::size_t n = basis.size();
    projection_result r;
    r.tag = F.tag;

    std::vector<double> gram(n * n, 0.0);
    parallel_for(n * n, [&](std::size_t k) {
        std::size_t i = k / n, j = k % n;
        if (j < i) return;
        gram[k] = basis_inner(basis[i], basis[j]);
    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            r.gram_deviation = std::max(r.gram_deviation, std::fabs(gram[i * n + j] - (i == j ? 1.0 : 0.0)));
    if (r.gram_deviation > 1e-6) throw numerical_error("project: basis is not orthonormal");

    auto pts = pieces(basis, F.breakpoints);
    r.f_norm = 0.5 * piecewise([&](double x) { double v = F.f(x); return v * v; }, pts, coefficient_tol);
    r.normalization_warning = std::fabs(r.f_norm - 1) > 1e-6;
    if (r.normalization_warning)
        std::fprintf(stderr, "warning: initial function norm is %.12g, not 1\n", r.f_norm);

    r.coefficients.assign(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        r.coefficients[i] =
            0.5 * piecewise([&](double x) { return basis[i].phi(x) * F.f(x); }, pts, coefficient_tol);
    });
    for (double c : r.coefficients) {
        r.probabilities.push_back(c * c);
        r.probability_sum += c * c;
    }
    auto residual = [&](double x) {
        double s = F.f(x);
        for (std::size_t i = 0; i < n; ++i) s -= r.coefficients[i] * basis[i].phi(x);
        return s * s;
    };
    r.reconstruction_error = std::sqrt(0.5 * piecewise(residual, pts, 1e-12));
    return r;
}

std::vector<double> triangular_coefficients(const std::vector<basis_state>& basis) {
    std::vector<double> c;
    for (const auto& b : basis) {
        c.push_back(std::sqrt(3.0) * b.b0 * (1 - std::cos(std::sqrt(b.beta))) / b.beta);
    }
    return c;
}

time_state evolve(const projection_result& proj, const std::vector<basis_state>& basis, double tau,
                  const std::vector<double>& xis) {
    if (proj.coefficients.size() != basis.size())
        throw domain_error("evolve: projection and basis sizes differ");
    const std::size_t n = basis.size();
    std::vector<std::complex<double>> amp(n);
    for (std::size_t i = 0; i < n; ++i)
        amp[i] = proj.coefficients[i] * std::polar(1.0, -basis[i].beta * tau);
    auto psi_at = [&](double x) {
        std::complex<double> s = 0;
        for (std::size_t i = 0; i < n; ++i) s += amp[i] * basis[i].phi(x);
        return s;
    };
    time_state t;
    t.tau = tau;
    t.xi = xis;
    for (double x : xis) t.psi.push_back(psi_at(x));
    auto pts = pieces(basis, {});
    t.norm = 0.5 * piecewise([&](double x) { return std::norm(psi_at(x)); }, pts, 1e-12);
    return t;
}

}  // namespace trapwell
