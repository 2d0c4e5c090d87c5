#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "commands.hpp"
#include "trapwell/discontinuity.hpp"
#include "trapwell/eigenfunction.hpp"
#include "trapwell/errors.hpp"
#include "trapwell/fdsolver.hpp"
#include "trapwell/spectrum.hpp"
#include "trapwell/swlimit.hpp"
#include "trapwell/wavepacket.hpp"

using namespace trapwell;
using namespace trapwell::cli;

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

void add_well(CLI::App* app, well_options& o) {
    app->add_option("--v1", o.v1, "left barrier height (nondimensional)");
    app->add_option("--v2", o.v2, "right barrier height (nondimensional)");
    app->add_option("--lambda", o.lambda, "ramp width l/L");
    app->add_option("--V1-eV", o.v1_ev, "left barrier height in eV");
    app->add_option("--V2-eV", o.v2_ev, "right barrier height in eV");
    app->add_option("--L-angstrom", o.l_big_angstrom, "half width of the bottom in angstrom");
    app->add_option("--l-angstrom", o.l_small_angstrom, "ramp width in angstrom");
    app->add_option("--mass", o.mass, "particle mass: 'electron' or kg");
}

json eigen_entry(const eigenvalue_record& r, const resolved_well& rw) {
    json e;
    e["n"] = r.index_n;
    e["beta"] = r.beta;
    e["residual"] = r.residual;
    e["parity"] = parity_name(r.par);
    if (r.threshold) e["threshold"] = true;
    if (rw.dimensional)
        e["energy_eV"] = energy_joule(r.beta, rw.half_width_m, rw.mass_kg) * constants::ev_per_joule;
    return e;
}

json document(const resolved_well& rw, json eigenvalues, json diagnostics, json flags) {
    json doc;
    doc["well"] = well_json(rw);
    doc["eigenvalues"] = std::move(eigenvalues);
    doc["diagnostics"] = std::move(diagnostics);
    flags["mirrored"] = rw.mirrored;
    doc["meta"] = meta_json(flags);
    return doc;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return x;
}

json coefficients_json(const coefficient_set& k) {
    return {{"C0", k.c0},   {"D0", k.d0},   {"A0", k.a0},   {"B0", k.b0},   {"B1p", k.b1p},
            {"B2p", k.b2p}, {"A1p", k.a1p}, {"A2p", k.a2p}, {"Bt1", k.bt1}, {"Bt2", k.bt2},
            {"J1p", k.j1p}, {"J2p", k.j2p}, {"D0_over_C0", k.d0_over_c0}, {"norm_sum", k.norm_sum}};
}

struct common {
    well_options well;
    std::string output;
    std::string csv;
};

int run_solve(const common& c, double tol, int grid) {
    check_tolerance(tol);
    resolved_well rw = resolve_well(c.well, true);
    eigen_options opt;
    opt.residual_tol = tol;
    opt.grid_points = grid;
    auto ev = find_eigenvalues(rw.w, opt);
    json list = json::array();
    double worst = 0;
    for (const auto& r : ev) {
        list.push_back(eigen_entry(r, rw));
        worst = std::max(worst, r.residual);
    }
    json diag{{"count", ev.size()}, {"max_residual", worst}, {"absence_condition", absence_condition(rw.w)}};
    emit(document(rw, list, diag, {{"command", "solve"}, {"tol", tol}, {"grid", grid}}), c.output);
    return ok;
}

int run_scan(const common& c, int grid, int negative_points) {
    resolved_well rw = resolve_well(c.well, true);
    spectrum_scan s = scan_spectrum(rw.w, grid);
    json diag{{"points", s.points.size()}, {"theta_monotone", s.theta_monotone}, {"theta_end", s.theta_end}};
    if (negative_points > 0) {
        auto g = linspace(-5 * rw.w.v2, -5 * rw.w.v2 / negative_points, negative_points);
        auto rep = negative_beta_diagnostic(rw.w, g);
        diag["negative_beta"] = {{"min_abs_im_d", rep.min_abs}, {"at_beta", rep.at_beta}};
    }
    if (!c.csv.empty()) {
        std::vector<std::vector<double>> rows;
        for (const auto& p : s.points)
            rows.push_back({p.beta, p.d_raw ? *p.d_raw : nan_value, p.d_circ, p.d_star, p.theta});
        write_csv(c.csv, {"beta", "d_raw", "d_circ", "d_star", "theta"}, rows);
    }
    emit(document(rw, json::array(), diag, {{"command", "scan"}, {"grid", grid}}), c.output);
    return ok;
}

int run_eigenfunction(const common& c, int n, int samples, double xmin, double xmax) {
    resolved_well rw = resolve_well(c.well, true);
    auto states = solve_all(rw.w);
    if (n < 0 || n > static_cast<int>(states.size()))
        throw validation_error("--n must be 0 (all) or a state index");
    json list = json::array(), detail = json::array();
    std::vector<std::vector<double>> rows;
    const auto xs = linspace(xmin, xmax, samples);
    for (const auto& s : states) {
        if (n != 0 && s.record.index_n != n) continue;
        list.push_back(eigen_entry(s.record, rw));
        double worst = 0, sup = 0;
        for (double x : xs) sup = std::max(sup, std::fabs(eval_phi(s, x)));
        for (const auto& m : junction_mismatches(s)) worst = std::max({worst, m.dphi0, m.dphi1, m.dphi2});
        detail.push_back({{"n", s.record.index_n},
                          {"coefficients", coefficients_json(s.coeffs)},
                          {"max_junction_mismatch", worst},
                          {"sup_phi", sup}});
        for (double x : xs) {
            phi_triplet t = eval_all(s, rw.mirrored ? -x : x);
            double sign = rw.mirrored ? -1 : 1;
            rows.push_back({static_cast<double>(s.record.index_n), x, t.phi, sign * t.dphi, t.d2phi});
        }
    }
    if (!c.csv.empty()) write_csv(c.csv, {"n", "xi", "phi", "dphi", "d2phi"}, rows);
    json diag{{"states", detail}};
    emit(document(rw, list, diag, {{"command", "eigenfunction"}, {"n", n}, {"samples", samples}}), c.output);
    return ok;
}

int run_sweep(const common& c, std::vector<double> lambdas) {
    resolved_well rw = resolve_well(c.well, false);
    auto res = lambda_sweep(rw.w.v1, rw.w.v2, lambdas);
    json rows = json::array();
    std::vector<std::vector<double>> csv;
    for (const auto& r : res.rows) {
        rows.push_back({{"lambda", r.lambda}, {"n", r.n}, {"beta_twp", r.beta_twp}, {"beta_swp", r.beta_swp},
                        {"abs_dev", r.abs_dev}, {"d2jump_left", r.d2jump_left}, {"d2jump_right", r.d2jump_right}});
        csv.push_back({r.lambda, static_cast<double>(r.n), r.beta_twp, r.beta_swp, r.abs_dev, r.d2jump_left,
                       r.d2jump_right});
    }
    if (!c.csv.empty())
        write_csv(c.csv, {"lambda", "n", "beta_twp", "beta_swp", "abs_dev", "d2jump_left", "d2jump_right"}, csv);
    json list = json::array();
    for (const auto& r : swp_eigenvalues(rw.w.v1, rw.w.v2)) list.push_back(eigen_entry(r, rw));
    json errors = json::array();
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        if (!res.errors[i].empty()) errors.push_back({{"lambda", lambdas[i]}, {"error", res.errors[i]}});
    json diag{{"rows", rows}, {"counts", res.counts}, {"monotone", res.monotone}, {"errors", errors}};
    emit(document(rw, list, diag, {{"command", "sweep-lambda"}, {"lambdas", lambdas}}), c.output);
    return errors.empty() ? ok : numerical;
}

int run_swp(const common& c) {
    resolved_well rw = resolve_well(c.well, false);
    json list = json::array();
    for (const auto& r : swp_eigenvalues(rw.w.v1, rw.w.v2)) list.push_back(eigen_entry(r, rw));
    json diag{{"count", list.size()},
              {"exists_messiah", swp_exists(rw.w.v1, rw.w.v2)},
              {"absent_landau", swp_absent_landau(rw.w.v1, rw.w.v2)}};
    emit(document(rw, list, diag, {{"command", "swp"}}), c.output);
    return ok;
}

int run_project(const common& c, bool square, std::vector<double> taus, const std::string& psi_csv,
                int samples) {
    resolved_well rw = resolve_well(c.well, !square);
    std::vector<basis_state> basis;
    json list = json::array();
    if (square) {
        for (const auto& r : swp_eigenvalues(rw.w.v1, rw.w.v2)) {
            basis.push_back(to_basis_state(swp_solution(rw.w.v1, rw.w.v2, r)));
            list.push_back(eigen_entry(r, rw));
        }
    } else {
        for (const auto& s : solve_all(rw.w)) {
            basis.push_back(to_basis_state(s));
            list.push_back(eigen_entry(s.record, rw));
        }
    }
    if (basis.empty()) throw numerical_error("the well has no bound states to project on");
    auto F = triangular_function();
    auto p = project(F, basis);
    auto closed = triangular_coefficients(basis);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < basis.size(); ++i)
        rows.push_back({static_cast<double>(basis[i].n), p.coefficients[i], p.probabilities[i]});
    if (!c.csv.empty()) write_csv(c.csv, {"n", "c_n", "P_n"}, rows);

    json norms = json::array();
    std::vector<std::vector<double>> psi_rows;
    auto [lo, hi] = basis_domain(basis);
    const auto xs = linspace(std::max(lo, -3.0), std::min(hi, 3.0), samples);
    for (double tau : taus) {
        auto t = evolve(p, basis, tau, xs);
        norms.push_back({{"tau", tau}, {"norm", t.norm}});
        for (std::size_t i = 0; i < xs.size(); ++i)
            psi_rows.push_back({tau, xs[i], t.psi[i].real(), t.psi[i].imag(), std::norm(t.psi[i])});
    }
    if (!psi_csv.empty()) write_csv(psi_csv, {"tau", "xi", "re_psi", "im_psi", "abs2_psi"}, psi_rows);
    json diag{{"initial_function", p.tag},
              {"coefficients", p.coefficients},
              {"closed_form_coefficients", closed},
              {"probability_sum", p.probability_sum},
              {"reconstruction_error", p.reconstruction_error},
              {"f_norm", p.f_norm},
              {"gram_deviation", p.gram_deviation},
              {"normalization_warning", p.normalization_warning},
              {"norms", norms}};
    emit(document(rw, list, diag, {{"command", "project"}, {"square_well", square}, {"taus", taus}}), c.output);
    return ok;
}

int run_discont(const common& c, int n, double jl, double jr, int partner, double tau_max, int tau_steps,
                int samples) {
    resolved_well rw = resolve_well(c.well, false);
    const double v1 = rw.w.v1, v2 = rw.w.v2;
    auto ev = swp_eigenvalues(v1, v2);
    const int count = static_cast<int>(ev.size());
    if (n < 1 || n > count) throw validation_error("--n is not a state of this well");
    if (partner == 0) partner = n == 1 ? (count >= 3 ? 3 : 2) : 1;
    if (partner < 1 || partner > count || partner == n)
        throw validation_error("--partner must be a different state of this well");
    if (rw.mirrored) std::swap(jl, jr);
    auto d = build_discontinuous(v1, v2, ev[n - 1], jl, jr);
    auto cont = build_discontinuous(v1, v2, ev[n - 1], 0, 0);
    auto other = build_discontinuous(v1, v2, ev[partner - 1], 0, 0);

    const auto lr = disc_eval_in_zone(d, zone::z1, -1), l0 = disc_eval_in_zone(d, zone::z0, -1);
    const auto r0 = disc_eval_in_zone(d, zone::z0, 1), rr = disc_eval_in_zone(d, zone::z2, 1);
    auto o = overlap(d, other);
    auto b = boundary_integral(d, other);

    const std::vector<double> w{std::sqrt(0.5), std::sqrt(0.5)};
    double drift = 0, control = 0;
    const double n0 = hermiticity_defect({other, d}, w, 0).norm;
    const double c0 = hermiticity_defect({other, cont}, w, 0).norm;
    for (double tau : linspace(0, tau_max, tau_steps + 1)) {
        drift = std::max(drift, std::fabs(hermiticity_defect({other, d}, w, tau).norm - n0));
        control = std::max(control, std::fabs(hermiticity_defect({other, cont}, w, tau).norm - c0));
    }
    auto h = hermiticity_defect({other, d}, w, tau_max);

    if (!c.csv.empty()) {
        std::vector<std::vector<double>> rows;
        for (double x : linspace(-3, 3, samples)) {
            double xe = rw.mirrored ? -x : x;
            double pc = disc_eval(cont, xe).phi, pd = disc_eval(d, xe).phi;
            rows.push_back({x, pc, pd, pc * pc, pd * pd});
        }
        write_csv(c.csv, {"xi", "phi_continuous", "phi_discontinuous", "phi2_continuous", "phi2_discontinuous"},
                  rows);
    }
    json list = json::array();
    list.push_back(eigen_entry(ev[n - 1], rw));
    json diag{{"jumps", {{"dphi_left", jl}, {"dphi_right", jr}, {"ddphi_left", d.djump_left},
                         {"ddphi_right", d.djump_right}}},
              {"coefficients", {{"C0", d.c0}, {"A0", d.a0}, {"B0", d.b0}, {"Bt1", d.bt1}, {"Bt2", d.bt2},
                                {"Bt1a", d.bt1a}, {"Bt2a", d.bt2a}}},
              {"normalization_lhs", d.norm_lhs},
              {"area", overlap(d, d).integral},
              {"d2jump_left", {{"measured", l0.d2phi - lr.d2phi}, {"formula", d.d2jump_left}}},
              {"d2jump_right", {{"measured", rr.d2phi - r0.d2phi}, {"formula", d.d2jump_right}}},
              {"partner", {{"n", partner}, {"overlap", o.integral}, {"t1", o.t1}, {"t2", o.t2},
                           {"boundary_t_terms", b.from_t_terms}, {"boundary_wronskian", b.from_wronskian}}},
              {"hermiticity", {{"tau", tau_max}, {"defect_re", h.defect.real()}, {"defect_im", h.defect.imag()},
                               {"norm", h.norm}, {"max_norm_drift", drift}, {"control_max_norm_drift", control}}}};
    emit(document(rw, list, diag, {{"command", "discont"}, {"n", n}, {"partner", partner}, {"tau_max", tau_max}}),
         c.output);
    return ok;
}

int run_fd(const common& c, int order, int points, double margin, int exterior, const std::string& dump,
           bool compare) {
    resolved_well rw = resolve_well(c.well, true);
    auto g = build_grid(rw.w, points, margin, exterior);
    auto r = fd_eigenvalues(rw.w, g, order);
    if (!dump.empty()) {
        std::ofstream f(dump);
        if (!f) throw validation_error("cannot open " + dump);
        write_triplets(f, build_operator(rw.w, g, order).matrix);
    }
    std::vector<eigenvalue_record> an;
    if (compare) an = find_eigenvalues(rw.w);
    json list = json::array(), devs = json::array();
    for (std::size_t k = 0; k < r.states.size(); ++k) {
        list.push_back({{"n", k + 1}, {"beta", r.states[k].beta}, {"residual", nullptr}, {"parity", "none"}});
        if (k < an.size()) devs.push_back(std::fabs(r.states[k].beta - an[k].beta) / an[k].beta);
    }
    json diag{{"order", order},
              {"total_points", g.total_points()},
              {"cut_left", g.cut_left},
              {"cut_right", g.cut_right},
              {"ramps_collapsed", g.ramps_collapsed},
              {"matrix_size", r.size},
              {"asymmetry", r.asymmetry},
              {"inertia_count", r.inertia_count}};
    if (compare) {
        diag["analytic_count"] = an.size();
        diag["relative_deviation"] = devs;
    }
    emit(document(rw, list, diag,
                  {{"command", "fd"}, {"order", order}, {"points", points}, {"margin", margin},
                   {"exterior_points", exterior}}),
         c.output);
    return ok;
}

int run_validate(const std::string& output) {
    json checks = json::array();
    bool all = true;
    auto report = [&](const std::string& name, bool pass, json detail) {
        std::cout << (pass ? "PASS " : "FAIL ") << name << '\n';
        checks.push_back({{"name", name}, {"pass", pass}, {"detail", std::move(detail)}});
        all = all && pass;
    };
    {
        well_spec w{1, 0.5, 1};
        auto ev = find_eigenvalues(w);
        auto fd = fd_eigenvalues(w, build_grid(w), 6);
        bool pass = ev.size() == 1 && fd.states.size() == 1 && std::fabs(ev[0].beta - 0.31447) <= 1e-5 &&
                    std::fabs(fd.states[0].beta - 0.31447) <= 1e-5;
        report("single-eigenvalue well (1, 0.5, 1)", pass,
               {{"analytic", ev.empty() ? nan_value : ev[0].beta},
                {"fd", fd.states.empty() ? nan_value : fd.states[0].beta}});
    }
    {
        dimensional_well dw;
        dw.v1_joule = dw.v2_joule = 100 / constants::ev_per_joule;
        dw.half_width_m = constants::angstrom;
        dw.ramp_m = 1e-9 * constants::angstrom;
        well_spec w = nondimensionalize(dw);
        auto ev = find_eigenvalues(w);
        auto sw = swp_eigenvalues(w.v1, w.v2);
        bool pass = ev.size() == 4 && sw.size() == 4 && std::fabs(w.v1 - 26.2468) < 1e-4;
        for (std::size_t i = 0; pass && i < ev.size(); ++i)
            pass = std::fabs(ev[i].beta - sw[i].beta) <= 1e-6 * sw[i].beta;
        report("Reed well, 4 states", pass, {{"v", w.v1}, {"count", ev.size()}});
    }
    {
        well_spec w{225, 225, 1e-9};
        auto ev = find_eigenvalues(w);
        auto sw = swp_eigenvalues(225, 225);
        bool pass = ev.size() == 10 && sw.size() == 10;
        for (std::size_t i = 0; pass && i < ev.size(); ++i)
            pass = std::fabs(ev[i].beta - sw[i].beta) <= 1e-6 * sw[i].beta;
        report("de Alcantara-Griffiths well, 10 states", pass, {{"count", ev.size()}});
    }
    json doc{{"checks", checks}, {"all_pass", all}, {"meta", meta_json({{"command", "validate"}})}};
    if (!output.empty()) emit(doc, output);
    return all ? ok : numerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eigenstates of the asymmetric trapezoidal potential well"};
    app.require_subcommand(1);
    common c;
    auto add_common = [&](CLI::App* s, bool csv) {
        add_well(s, c.well);
        s->add_option("-o,--output", c.output, "JSON output path (stdout when omitted)");
        if (csv) s->add_option("--csv", c.csv, "CSV output path");
    };

    double tol = 1e-10;
    int grid = 512;
    auto* solve = app.add_subcommand("solve", "eigenvalues of a trapezoidal well");
    add_common(solve, false);
    solve->add_option("--tol", tol, "Newton residual tolerance");
    solve->add_option("--grid", grid, "scan grid points");

    int negative_points = 0;
    auto* scan = app.add_subcommand("scan", "eigenvalue functions over (0, v2)");
    add_common(scan, true);
    scan->add_option("--grid", grid, "scan grid points");
    scan->add_option("--negative-points", negative_points, "also scan Im D on [-5 v2, 0)");

    int n = 0, samples = 401;
    double xmin = -3, xmax = 3;
    auto* efn = app.add_subcommand("eigenfunction", "normalized eigenfunctions and coefficients");
    add_common(efn, true);
    efn->add_option("--n", n, "state index, 0 for all");
    efn->add_option("--samples", samples, "sample count")->check(CLI::Range(2, 1000000));
    efn->add_option("--xmin", xmin, "first sample");
    efn->add_option("--xmax", xmax, "last sample");

    std::vector<double> lambdas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-9};
    auto* sweep = app.add_subcommand("sweep-lambda", "trapezoid eigenvalues as lambda -> 0");
    add_common(sweep, true);
    sweep->add_option("--lambdas", lambdas, "descending lambda values")->delimiter(',');

    auto* swp = app.add_subcommand("swp", "square-well eigenvalues");
    add_common(swp, false);

    bool square = false;
    std::vector<double> taus{0};
    std::string psi_csv;
    auto* proj = app.add_subcommand("project", "triangular initial function on the eigenbasis");
    add_common(proj, true);
    proj->add_flag("--square-well", square, "use the square well (lambda = 0)");
    proj->add_option("--taus", taus, "times for the evolved packet")->delimiter(',');
    proj->add_option("--psi-csv", psi_csv, "CSV of Psi samples per tau");
    proj->add_option("--samples", samples, "samples per tau")->check(CLI::Range(2, 1000000));

    int dn = 1, partner = 0, tau_steps = 1000;
    double jl = -0.5, jr = 0.5, tau_max = 10;
    auto* disc = app.add_subcommand("discont", "square-well eigenfunction with jumps at xi = -1, +1");
    add_common(disc, true);
    disc->add_option("--n", dn, "state index");
    disc->add_option("--jump-left", jl, "delta phi(-1)");
    disc->add_option("--jump-right", jr, "delta phi(+1)");
    disc->add_option("--partner", partner, "continuous partner state (default 3 for n = 1, else 1)");
    disc->add_option("--tau-max", tau_max, "end of the tau range");
    disc->add_option("--tau-steps", tau_steps, "tau steps")->check(CLI::Range(1, 1000000));
    disc->add_option("--samples", samples, "CSV samples")->check(CLI::Range(2, 1000000));

    int order = 6, points = 501, exterior = 0;
    double margin = 40;
    std::string dump;
    bool compare = false;
    auto* fd = app.add_subcommand("fd", "finite-difference eigenvalues");
    add_common(fd, false);
    fd->add_option("--order", order, "2, 4 or 6")->check(CLI::IsMember({2, 4, 6}));
    fd->add_option("--points", points, "points per zone (odd, >= 51)");
    fd->add_option("--margin", margin, "decay margin of the truncation");
    fd->add_option("--exterior-points", exterior, "points in each outer zone (0: same as --points)");
    fd->add_option("--dump", dump, "write matrix triplets to this path");
    fd->add_flag("--compare", compare, "compare with the analytic solver");

    std::string vout;
    auto* val = app.add_subcommand("validate", "run the reference wells");
    val->add_option("-o,--output", vout, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        auto subs = app.get_subcommands();
        std::cerr << (subs.empty() ? app.help() : subs.front()->help());
        return usage;
    }

    try {
        if (*solve) return run_solve(c, tol, grid);
        if (*scan) return run_scan(c, grid, negative_points);
        if (*efn) return run_eigenfunction(c, n, samples, xmin, xmax);
        if (*sweep) return run_sweep(c, lambdas);
        if (*swp) return run_swp(c);
        if (*proj) return run_project(c, square, taus, psi_csv, samples);
        if (*disc) return run_discont(c, dn, jl, jr, partner, tau_max, tau_steps, samples);
        if (*fd) return run_fd(c, order, points, margin, exterior, dump, compare);
        if (*val) return run_validate(vout);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return invalid;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return invalid;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return numerical;
    }
    return usage;
}
