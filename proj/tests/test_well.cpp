#include <cmath>

#include "doctest.h"
#include "trapwell/errors.hpp"
#include "trapwell/well.hpp"

using namespace trapwell;

namespace {

dimensional_well reed() {
    dimensional_well dw;
    dw.v1_joule = dw.v2_joule = 100 / constants::ev_per_joule;
    dw.half_width_m = 1e-10;
    dw.ramp_m = 1e-19;
    return dw;
}

}  // namespace

TEST_CASE("Reed well nondimensionalizes to v = 26.2468") {
    well_spec w = nondimensionalize(reed());
    CHECK(std::fabs(w.v1 - 26.2468) <= 5e-5);
    CHECK(w.v1 == w.v2);
    CHECK(std::fabs(w.lambda - 1e-9) <= 1e-24);
}

TEST_CASE("nondimensional round trip") {
    well_spec w{10, 7, 0.5};
    dimensional_well dw = dimensionalize(w, 2e-10, constants::electron_mass);
    well_spec back = nondimensionalize(dw);
    CHECK(std::fabs(back.v1 - w.v1) <= 1e-13 * w.v1);
    CHECK(std::fabs(back.v2 - w.v2) <= 1e-13 * w.v2);
    CHECK(std::fabs(back.lambda - w.lambda) <= 1e-15);
    // energy scale is hbar^2 / (2 m L^2)
    double e = energy_joule(1.0, 2e-10, constants::electron_mass);
    CHECK(std::fabs(e - constants::hbar * constants::hbar / (2 * constants::electron_mass * 4e-20)) <= 1e-30);
}

TEST_CASE("potential profile and zone ownership") {
    well_spec w{4, 2, 0.5};
    CHECK(potential_value(w, -3) == 4);
    CHECK(potential_value(w, -1.25) == doctest::Approx(2));
    CHECK(potential_value(w, 0) == 0);
    CHECK(potential_value(w, 1.25) == doctest::Approx(1));
    CHECK(potential_value(w, 9) == 2);
    CHECK(zone_of(w, -1.5) == zone::z1);
    CHECK(zone_of(w, -1.2) == zone::z1p);
    CHECK(zone_of(w, -1.0) == zone::z1p);
    CHECK(zone_of(w, 1.0) == zone::z0);
    CHECK(zone_of(w, 1.5) == zone::z2p);
    CHECK(zone_of(w, 1.6) == zone::z2);
    CHECK(zone_name(zone::z2p) == "2'");
}

TEST_CASE("validation rejects bad wells") {
    CHECK_THROWS_AS(validate(well_spec{1, 2, 1}), validation_error);
    CHECK_THROWS_AS(validate(well_spec{1, 0, 1}), validation_error);
    CHECK_THROWS_AS(validate(well_spec{1, 0.5, -1}), validation_error);
    CHECK_THROWS_AS(validate(well_spec{NAN, 0.5, 1}), validation_error);
    dimensional_well dw = reed();
    dw.mass_kg = 0;
    CHECK_THROWS_AS(nondimensionalize(dw), validation_error);
}
