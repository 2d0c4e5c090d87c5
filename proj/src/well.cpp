#include "trapwell/well.hpp"

#include <cmath>

#include "trapwell/errors.hpp"

namespace trapwell {

std::string zone_name(zone z) {
    switch (z) {
        case zone::z1: return "1";
        case zone::z1p: return "1'";
        case zone::z0: return "0";
        case zone::z2p: return "2'";
        case zone::z2: return "2";
    }
    return "?";
}

void validate(const dimensional_well& dw) {
    if (!(dw.half_width_m > 0)) throw validation_error("half_width_m must be > 0");
    if (!(dw.ramp_m >= 0)) throw validation_error("ramp_m must be >= 0");
    if (!(dw.v2_joule > 0)) throw validation_error("v2_joule must be > 0");
    if (!(dw.v1_joule >= dw.v2_joule)) throw validation_error("v1_joule must be >= v2_joule");
    if (!(dw.mass_kg > 0)) throw validation_error("mass_kg must be > 0");
    if (!(dw.hbar > 0)) throw validation_error("hbar must be > 0");
}

void validate(const well_spec& w) {
    if (!std::isfinite(w.v1) || !std::isfinite(w.v2) || !std::isfinite(w.lambda))
        throw validation_error("well parameters must be finite");
    if (!(w.v2 > 0)) throw validation_error("v2 must be > 0");
    if (!(w.v1 >= w.v2)) throw validation_error("v1 must be >= v2");
    if (!(w.lambda >= 0)) throw validation_error("lambda must be >= 0");
}

well_spec nondimensionalize(const dimensional_well& dw) {
    validate(dw);
    double s = 2.0 * dw.mass_kg * dw.half_width_m * dw.half_width_m / (dw.hbar * dw.hbar);
    return {s * dw.v1_joule, s * dw.v2_joule, dw.ramp_m / dw.half_width_m};
}

dimensional_well dimensionalize(const well_spec& w, double half_width_m, double mass_kg,
                                double hbar) {
    double s = hbar * hbar / (2.0 * mass_kg * half_width_m * half_width_m);
    dimensional_well dw;
    dw.v1_joule = w.v1 * s;
    dw.v2_joule = w.v2 * s;
    dw.half_width_m = half_width_m;
    dw.ramp_m = w.lambda * half_width_m;
    dw.mass_kg = mass_kg;
    dw.hbar = hbar;
    return dw;
}

double energy_joule(double beta, double half_width_m, double mass_kg, double hbar) {
    return beta * hbar * hbar / (2.0 * mass_kg * half_width_m * half_width_m);
}

double potential_value(const well_spec& w, double xi) {
    const double a = 1.0 + w.lambda;
    if (xi <= -a) return w.v1;
    if (xi < -1.0) return -w.v1 * (xi + 1.0) / w.lambda;
    if (xi <= 1.0) return 0.0;
    if (xi < a) return w.v2 * (xi - 1.0) / w.lambda;
    return w.v2;
}

zone zone_of(const well_spec& w, double xi) {
    const double a = 1.0 + w.lambda;
    if (xi <= -a) return zone::z1;
    if (xi <= -1.0) return zone::z1p;
    if (xi <= 1.0) return zone::z0;
    if (xi <= a) return zone::z2p;
    return zone::z2;
}

}  // namespace trapwell
