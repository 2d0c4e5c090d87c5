#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "trapwell/well.hpp"

namespace trapwell::cli {

using json = nlohmann::ordered_json;

enum exit_code { ok = 0, usage = 1, invalid = 2, numerical = 3 };

// Exactly one of the two input groups must be given.
struct well_options {
    std::optional<double> v1, v2, lambda;
    std::optional<double> v1_ev, v2_ev, l_big_angstrom, l_small_angstrom;
    std::string mass = "electron";
};

struct resolved_well {
    well_spec w;
    bool mirrored = false;  // v1 < v2 on input; swapped, xi -> -xi
    bool dimensional = false;
    double half_width_m = 0, mass_kg = 0;
    json input;
};

resolved_well resolve_well(const well_options& o, bool need_lambda);
json well_json(const resolved_well& r);
json meta_json(const json& flags);
void check_tolerance(double tol);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void emit(const json& doc, const std::string& path);

}  // namespace trapwell::cli
