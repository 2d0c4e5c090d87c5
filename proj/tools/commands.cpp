#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "trapwell/errors.hpp"

namespace trapwell::cli {

namespace {

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_mass(const std::string& s) {
    if (s == "electron") return constants::electron_mass;
    try {
        std::size_t used = 0;
        double m = std::stod(s, &used);
        if (used != s.size() || !(m > 0)) throw validation_error("mass must be 'electron' or a positive kg value");
        return m;
    } catch (const std::logic_error&) {
        throw validation_error("mass must be 'electron' or a positive kg value");
    }
}

}  // namespace

resolved_well resolve_well(const well_options& o, bool need_lambda) {
    const bool nondim = o.v1 || o.v2 || o.lambda;
    const bool dim = o.v1_ev || o.v2_ev || o.l_big_angstrom || o.l_small_angstrom;
    if (nondim == dim)
        throw validation_error("give either --v1/--v2/--lambda or the dimensional --V1-eV group, not both");
    resolved_well r;
    if (nondim) {
        if (!o.v1 || !o.v2) throw validation_error("--v1 and --v2 are required");
        if (need_lambda && !o.lambda) throw validation_error("--lambda is required");
        if (!need_lambda && o.lambda && *o.lambda != 0)
            throw validation_error("--lambda is not used by this command");
        r.w = {*o.v1, *o.v2, need_lambda ? *o.lambda : 0.0};
        r.input = {{"v1", *o.v1}, {"v2", *o.v2}};
        if (need_lambda) r.input["lambda"] = *o.lambda;
    } else {
        if (!o.v1_ev || !o.v2_ev || !o.l_big_angstrom)
            throw validation_error("--V1-eV, --V2-eV and --L-angstrom are required");
        if (need_lambda && !o.l_small_angstrom) throw validation_error("--l-angstrom is required");
        dimensional_well dw;
        dw.v1_joule = *o.v1_ev / constants::ev_per_joule;
        dw.v2_joule = *o.v2_ev / constants::ev_per_joule;
        if (dw.v1_joule < dw.v2_joule) {
            std::swap(dw.v1_joule, dw.v2_joule);
            r.mirrored = true;
        }
        dw.half_width_m = *o.l_big_angstrom * constants::angstrom;
        dw.ramp_m = need_lambda ? *o.l_small_angstrom * constants::angstrom : 0.0;
        dw.mass_kg = parse_mass(o.mass);
        r.w = nondimensionalize(dw);
        r.dimensional = true;
        r.half_width_m = dw.half_width_m;
        r.mass_kg = dw.mass_kg;
        r.input = {{"V1_eV", *o.v1_ev}, {"V2_eV", *o.v2_ev}, {"L_angstrom", *o.l_big_angstrom}};
        if (need_lambda) r.input["l_angstrom"] = *o.l_small_angstrom;
        r.input["mass_kg"] = dw.mass_kg;
    }
    if (r.w.v1 < r.w.v2) {
        std::swap(r.w.v1, r.w.v2);
        r.mirrored = true;
    }
    validate(r.w);
    if (need_lambda && !(r.w.lambda > 0)) throw validation_error("lambda must be > 0");
    return r;
}

json well_json(const resolved_well& r) {
    json j;
    j["v1"] = r.w.v1;
    j["v2"] = r.w.v2;
    j["lambda"] = r.w.lambda;
    j["mirrored"] = r.mirrored;
    j["input"] = r.input;
    return j;
}

json meta_json(const json& flags) {
    json j;
    j["version"] = "0.1.0";
    j["flags"] = flags;
    return j;
}

void check_tolerance(double tol) {
    if (!(tol >= 1e-14 && tol <= 1e-3)) throw validation_error("tolerance must lie in [1e-14, 1e-3]");
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream f(path);
    if (!f) throw validation_error("cannot open " + path);
    for (std::size_t i = 0; i < header.size(); ++i) f << (i ? "," : "") << header[i];
    f << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << fmt(row[i]);
        f << '\n';
    }
}

void emit(const json& doc, const std::string& path) {
    std::string text = doc.dump(2) + "\n";
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw validation_error("cannot open " + path);
    f << text;
}

}  // namespace trapwell::cli
