#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trapwell/well.hpp"

namespace trapwell {

struct zone_geometry {
    double k1 = 0, k2 = 0;
    double eta_bar = 0, eta_hat = 0;
    double zeta_hat = 0, zeta_bar = 0;
};

// Requires 0 < beta <= v2 and lambda > 0.
zone_geometry make_geometry(const well_spec& w, double beta);

// The factor chain in numerator/denominator form.  g_left = n_left / d_left,
// g_right = n_right / d_right; neither pair vanishes simultaneously, so all
// pole-free quantities are built from these.
struct factor_chain {
    zone_geometry geo;
    double f1 = 0, f2 = 0;
    double y1_hat = 0, y1p_hat = 0;  // Bi - f1 Ai and derivative at eta_hat
    double y2_hat = 0, y2p_hat = 0;  // Bi - f2 Ai and derivative at zeta_hat
    double y1_bar = 0, y1p_bar = 0;  // same at eta_bar
    double y2_bar = 0, y2p_bar = 0;  // same at zeta_bar
    double n_left = 0, d_left = 0, n_right = 0, d_right = 0;
    double p = 0, q = 0;  // P + iQ = (d_left + i n_left)(d_right - i n_right)
};

factor_chain make_factor_chain(const well_spec& w, double beta);

struct spectral_factors {
    double f1p = 0, f2p = 0;
    double g_left = 0, g_right = 0;
    double gamma_left = 0, gamma_right = 0;
    double c_coef = 0, s_coef = 0, r_norm = 0;
    double phi = 0;    // branch-continuous, phi(0+) = 0
    double theta = 0;  // (2 sqrt(beta) + phi) / pi
    bool asymptote = false;  // a g denominator vanishes; g and D are infinite
};

spectral_factors make_spectral_factors(const well_spec& w, double beta);

// Empty when beta sits on a vertical asymptote of D.
std::optional<double> d_raw(const well_spec& w, double beta);
double d_circ(const well_spec& w, double beta);
double d_star(const well_spec& w, double beta);
double theta(const well_spec& w, double beta);

// Branch-continuous phase angle at beta, unwrapped from the beta -> 0 anchor.
double phase_angle(const well_spec& w, double beta);

// Symmetric-well identity: -2 (sin + g cos)(g sin - cos) evaluated in
// pole-free form, scaled by d_left^2 so it equals d_raw where that is finite.
double d_raw_symmetric_product(const well_spec& w, double beta);

enum class parity { even, odd, none };
std::string parity_name(parity p);

struct eigenvalue_record {
    int index_n = 0;
    double beta = 0;
    double residual = 0;  // |d_star| at convergence
    parity par = parity::none;
    int newton_iterations = 0;
    bool threshold = false;  // root within 1e-10 of v2
};

struct eigen_options {
    int grid_points = 512;
    double residual_tol = 1e-10;
    int max_iterations = 100;
};

struct scan_point {
    double beta = 0;
    std::optional<double> d_raw;
    double d_circ = 0, d_star = 0, theta = 0;
};

// Scan of the eigenvalue functions on an adaptively refined grid in (0, v2).
struct spectrum_scan {
    std::vector<scan_point> points;
    bool theta_monotone = true;
    double theta_end = 0;  // theta at v2 (1 - 1e-12)
};

spectrum_scan scan_spectrum(const well_spec& w, int grid_points = 512);

std::vector<eigenvalue_record> find_eigenvalues(const well_spec& w,
                                                const eigen_options& opt = {});

struct negative_beta_report {
    double min_abs = 0;
    double at_beta = 0;
    std::vector<double> beta, im_d, coef_sinh, coef_cosh;
};

// Evaluates Im D on the pure-imaginary branch for strictly negative betas.
negative_beta_report negative_beta_diagnostic(const well_spec& w,
                                              const std::vector<double>& grid);

// True when the well has no bound state.
bool absence_condition(const well_spec& w);

// H(u) = (phi|_{beta=v} - pi) / u^{3/2} for symmetric wells, u = (lambda sqrt v)^{2/3}.
double h_universal(double u);

}  // namespace trapwell
