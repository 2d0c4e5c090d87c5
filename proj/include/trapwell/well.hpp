#pragma once

#include <string>

namespace trapwell {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double ev_per_joule = 6.24150907446076e18;
inline constexpr double electron_mass = 9.1093837015e-31;  // kg
inline constexpr double angstrom = 1e-10;               // m
}  // namespace constants

struct dimensional_well {
    double v1_joule = 0;
    double v2_joule = 0;
    double half_width_m = 0;  // L
    double ramp_m = 0;        // l
    double mass_kg = constants::electron_mass;
    double hbar = constants::hbar;
};

struct well_spec {
    double v1 = 0;
    double v2 = 0;
    double lambda = 0;
};

enum class zone { z1, z1p, z0, z2p, z2 };

std::string zone_name(zone z);

// Throws validation_error naming the offending field.
void validate(const dimensional_well& dw);
void validate(const well_spec& w);

well_spec nondimensionalize(const dimensional_well& dw);

// Inverse of nondimensionalize for fixed L, m, hbar.
dimensional_well dimensionalize(const well_spec& w, double half_width_m, double mass_kg,
                                double hbar = constants::hbar);

// Dimensional energy (J) of a nondimensional eigenvalue.
double energy_joule(double beta, double half_width_m, double mass_kg,
                    double hbar = constants::hbar);

double potential_value(const well_spec& w, double xi);

// Junction points belong to the zone on their left.
zone zone_of(const well_spec& w, double xi);

}  // namespace trapwell
