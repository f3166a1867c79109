// Command-line front end: spectra, transmission curves, wave functions and
// error-control diagnostics as CSV/JSON artifacts.

#include "uaa/errors.hpp"
#include "uaa/oracle.hpp"
#include "uaa/potentials.hpp"
#include "uaa/semiclassical.hpp"
#include "uaa/sweep.hpp"
#include "uaa/version.hpp"
#include "uaa/wavefunction.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace uaa;

namespace {

constexpr int EXIT_VALIDATION = 2;
constexpr int EXIT_NUMERICAL = 3;

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// --- parameter handling -----------------------------------------------------

std::map<std::string, double> parse_params(const std::string& text) {
    std::map<std::string, double> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw CliError("bad parameter '" + item + "' (expected key=value)");
        const std::string key = item.substr(0, eq);
        double val;
        try {
            val = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw CliError("bad value in parameter '" + item + "'");
        }
        out[key] = val;
    }
    return out;
}

PhysicalParams to_physical(const std::map<std::string, double>& kv) {
    PhysicalParams p;
    for (const auto& [k, v] : kv) {
        if (k == "m") p.m = v;
        else if (k == "hbar") p.hbar = v;
        else if (k == "e") p.e = v;
        else if (k == "omega") p.omega = v;
        else if (k == "l") p.l = static_cast<int>(std::lround(v));
        else if (k == "D") p.D = static_cast<int>(std::lround(v));
        else if (k == "v0") p.v0 = v;
        else if (k == "v1") p.v1 = v;
        else if (k == "alpha") p.alpha = v;
        else
            throw CliError("unknown parameter '" + k +
                           "' (valid: m, hbar, e, omega, l, D, v0, v1, alpha)");
    }
    return p;
}

Potential make_potential(const std::string& kind_name,
                         const std::string& params_text) {
    const auto kind = kind_from_string(kind_name);
    if (!kind || *kind == PotentialKind::user_defined)
        throw CliError(
            "unknown potential '" + kind_name +
            "' (valid: hydrogen, oscillator-d, morse, poschl-teller-well, "
            "poschl-teller-barrier, eckart, pure-oscillator-1d)");
    return Potential::make(*kind, to_physical(parse_params(params_text)));
}

json params_json(const Potential& pot) {
    const auto& p = pot.params();
    json j;
    j["m"] = p.m;
    j["hbar"] = p.hbar;
    switch (pot.kind()) {
        case PotentialKind::hydrogen:
            j["e"] = p.e;
            j["l"] = p.l;
            break;
        case PotentialKind::oscillator_d:
            j["omega"] = p.omega;
            j["l"] = p.l;
            j["D"] = p.D;
            break;
        case PotentialKind::pure_oscillator_1d:
            j["omega"] = p.omega;
            break;
        case PotentialKind::morse:
        case PotentialKind::eckart:
            j["v0"] = p.v0;
            j["v1"] = p.v1;
            j["alpha"] = p.alpha;
            break;
        case PotentialKind::poschl_teller_well:
        case PotentialKind::poschl_teller_barrier:
            j["v0"] = p.v0;
            j["alpha"] = p.alpha;
            break;
        default:
            break;
    }
    return j;
}

// --- artifact writing --------------------------------------------------------

struct Artifact {
    json meta;
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

void write_artifact(const Artifact& art, const std::string& format,
                    const std::string& path) {
    std::ostringstream out;
    if (format == "csv") {
        for (const auto& [k, v] : art.meta.items()) {
            out << "# " << k << "=";
            if (v.is_string())
                out << v.get<std::string>();
            else
                out << v.dump();
            out << "\n";
        }
        for (size_t i = 0; i < art.columns.size(); ++i)
            out << art.columns[i] << (i + 1 < art.columns.size() ? "," : "\n");
        for (const auto& row : art.rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                if (row[i].is_number_float())
                    out << fmt17(row[i].get<double>());
                else if (row[i].is_string())
                    out << row[i].get<std::string>();
                else
                    out << row[i].dump();
                out << (i + 1 < row.size() ? "," : "\n");
            }
        }
    } else if (format == "json") {
        json j;
        j["meta"] = art.meta;
        json data = json::array();
        for (const auto& row : art.rows) {
            json obj;
            for (size_t i = 0; i < row.size(); ++i) obj[art.columns[i]] = row[i];
            data.push_back(obj);
        }
        j["data"] = data;
        out << j.dump(2) << "\n";
    } else {
        throw CliError("unknown format '" + format + "' (valid: csv, json)");
    }
    if (path.empty() || path == "-") {
        std::cout << out.str();
    } else {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw CliError("cannot open output file '" + path + "'");
        f << out.str();
    }
}

json base_meta(const Potential& pot) {
    json meta;
    meta["potential"] = to_string(pot.kind());
    meta["params"] = params_json(pot);
    meta["version"] = UAA_VERSION;
    meta["units"] = "natural (all quantities in the supplied m, hbar units)";
    return meta;
}

void parse_n_range(const std::string& text, int& lo, int& hi) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoi(text);
        } else {
            lo = std::stoi(text.substr(0, dots));
            hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw CliError("bad quantum-number range '" + text + "' (use N or LO..HI)");
    }
    if (lo < 0 || hi < lo) throw CliError("empty quantum-number range");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    if (out.empty()) throw CliError("empty method list");
    return out;
}

// --- subcommand payloads ------------------------------------------------------

struct CommonOpts {
    std::string potential;
    std::string params;
    std::string format = "csv";
    std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--potential", o.potential, "potential kind")->required();
    cmd->add_option("--params", o.params, "comma-separated key=value parameters");
    cmd->add_option("--format", o.format, "csv or json");
    cmd->add_option("--output,-o", o.output, "output path (default: stdout)");
}

int run_spectrum(const CommonOpts& common, const std::string& methods_text,
                 const std::string& n_text) {
    const auto pot = make_potential(common.potential, common.params);
    int n_lo, n_hi;
    parse_n_range(n_text, n_lo, n_hi);
    const auto names = split_list(methods_text);
    std::vector<Method> methods;
    for (const auto& name : names) {
        if (name == "exact") methods.push_back(Method::exact);
        else if (name == "wkb") methods.push_back(Method::wkb);
        else if (name == "improved") methods.push_back(Method::improved);
        else if (name == "numerov") methods.push_back(Method::numerov);
        else
            throw CliError("unknown spectrum method '" + name +
                           "' (valid: exact, wkb, improved, numerov)");
    }

    Artifact art;
    art.meta = base_meta(pot);
    if (names.size() == 1)
        art.meta["method"] = names[0];
    else
        art.meta["methods"] = names;
    art.columns = {"n", "method", "E"};
    for (const auto m : methods) {
        const auto r = spectrum_sweep_serial(pot, n_lo, n_hi, m);
        for (size_t i = 0; i < r.n.size(); ++i)
            art.rows.push_back({r.n[i], to_string(m), r.energy[i]});
    }
    write_artifact(art, common.format, common.output);
    return 0;
}

int run_transmit(const CommonOpts& common, const std::string& methods_text,
                 double emin, double emax, int steps, bool side_by_side) {
    const auto pot = make_potential(common.potential, common.params);
    if (!(steps >= 2) || !(emax > emin))
        throw CliError("need emax > emin and steps >= 2");
    const auto names = split_list(methods_text);
    std::vector<TransmitMethod> methods;
    for (const auto& name : names) {
        if (name == "improved") methods.push_back(TransmitMethod::improved);
        else if (name == "wkb") methods.push_back(TransmitMethod::wkb);
        else if (name == "exact-numeric")
            methods.push_back(TransmitMethod::exact_numeric);
        else if (name == "closed-form")
            methods.push_back(TransmitMethod::closed_form);
        else
            throw CliError(
                "unknown transmission method '" + name +
                "' (valid: improved, wkb, exact-numeric, closed-form)");
    }

    std::vector<double> energies(steps);
    for (int i = 0; i < steps; ++i)
        energies[i] = emin + (emax - emin) * i / (steps - 1.0);

    Artifact art;
    art.meta = base_meta(pot);
    if (names.size() == 1)
        art.meta["method"] = names[0];
    else
        art.meta["methods"] = names;
    std::vector<std::vector<double>> curves;
    for (const auto m : methods)
        curves.push_back(transmission_curve(pot, energies, m));

    if (side_by_side) {
        art.columns = {"E"};
        for (const auto& name : names) art.columns.push_back("T_" + name);
        for (int i = 0; i < steps; ++i) {
            std::vector<json> row{energies[i]};
            for (const auto& c : curves) row.push_back(c[i]);
            art.rows.push_back(row);
        }
    } else {
        art.columns = {"E", "method", "T"};
        for (size_t mi = 0; mi < methods.size(); ++mi)
            for (int i = 0; i < steps; ++i)
                art.rows.push_back({energies[i], names[mi], curves[mi][i]});
    }
    write_artifact(art, common.format, common.output);
    return 0;
}

int run_wavefunction(const CommonOpts& common, int n, double energy, bool has_n,
                     bool has_energy, const std::string& bc_name, double xmin,
                     double xmax, int samples) {
    const auto pot = make_potential(common.potential, common.params);
    if (has_n == has_energy)
        throw CliError("give exactly one of --n (bound state) or --energy");
    if (!(samples >= 2) || !(xmax > xmin))
        throw CliError("need xmax > xmin and samples >= 2");
    if (pot.domain() == Domain::half_line && xmin <= 0.0)
        throw CliError("xmin must be positive for a half-line potential");

    std::vector<double> grid(samples);
    for (int i = 0; i < samples; ++i)
        grid[i] = xmin + (xmax - xmin) * i / (samples - 1.0);

    Artifact art;
    art.meta = base_meta(pot);
    art.meta["method"] = "improved";
    art.columns = {"x", "psi", "region", "map"};
    auto region_name = [](Region r) {
        switch (r) {
            case Region::allowed: return "allowed";
            case Region::forbidden: return "forbidden";
            case Region::turning_neighborhood: return "turning-neighborhood";
        }
        return "?";
    };

    if (has_n) {
        const auto spec = solve_spectrum_improved(pot, n, n);
        const double en = spec.energy[0];
        art.meta["n"] = n;
        art.meta["energy"] = en;
        const auto s = build_splitting(pot, en);
        const auto tps = find_turning_points(s);
        const auto w = psi_well(s, tps, n, grid);
        for (const auto& ws : w)
            art.rows.push_back({ws.x, ws.psi * std::exp(ws.log_scale),
                                region_name(ws.region), ws.map});
    } else {
        art.meta["energy"] = energy;
        const auto s = build_splitting(pot, energy);
        const auto tps = find_turning_points(s);
        BoundaryCondition bc;
        if (bc_name == "incident-from-left") {
            bc.kind = BoundaryKind::incident_from_left;
            const auto bw = psi_barrier(s, tps, bc, grid);
            art.meta["transmission"] = bw.transmission;
            for (const auto& ws : bw.samples)
                art.rows.push_back({ws.x, ws.psi * std::exp(ws.log_scale),
                                    region_name(ws.region), ws.map});
        } else if (bc_name == "decay" || bc_name == "decay-at-+inf") {
            bc.kind = BoundaryKind::decay_at_plus_infinity;
            if (tps.kind != TurningPointKind::single_real)
                throw CliError(
                    "--bc decay applies to a single-turning-point topology; "
                    "use --n for bound states");
            const auto w = psi_single_tp(s, tps.x0, bc, grid);
            for (const auto& ws : w)
                art.rows.push_back({ws.x, ws.psi * std::exp(ws.log_scale),
                                    region_name(ws.region), ws.map});
        } else {
            throw CliError("unknown boundary condition '" + bc_name +
                           "' (valid: decay, incident-from-left)");
        }
    }
    write_artifact(art, common.format, common.output);
    return 0;
}

int run_error_control(const CommonOpts& common, int n, double energy, bool has_n,
                      bool has_energy, const std::string& use_q, double xmin,
                      double xmax, int samples, bool log_grid) {
    const auto pot = make_potential(common.potential, common.params);
    if (has_n == has_energy)
        throw CliError("give exactly one of --n or --energy");
    if (use_q != "selected" && use_q != "zero")
        throw CliError("unknown --use-q '" + use_q + "' (valid: selected, zero)");
    if (!(samples >= 2) || !(xmax > xmin) || (log_grid && xmin <= 0.0))
        throw CliError("bad x grid");

    double en = energy;
    if (has_n) en = solve_spectrum_improved(pot, n, n).energy[0];
    const Splitting s = (use_q == "selected") ? build_splitting(pot, en)
                                              : build_splitting_wkb(pot, en);
    const auto tps = find_turning_points(s);

    std::vector<double> grid(samples);
    for (int i = 0; i < samples; ++i) {
        const double t = i / (samples - 1.0);
        grid[i] = log_grid ? xmin * std::pow(xmax / xmin, t)
                           : xmin + (xmax - xmin) * t;
    }

    Artifact art;
    art.meta = base_meta(pot);
    art.meta["method"] = (use_q == "selected") ? "improved" : "wkb";
    art.meta["energy"] = en;
    art.meta["q"] = use_q;
    art.columns = {"x", "error_control", "wkb_condition"};
    const auto vals = error_control_sweep(s, tps, grid);
    for (int i = 0; i < samples; ++i)
        art.rows.push_back({grid[i], vals[i], wkb_condition_q(s, grid[i])});
    write_artifact(art, common.format, common.output);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"uniform asymptotic approximations for the 1-D Schrodinger "
                 "equation"};
    app.set_version_flag("--version", UAA_VERSION);
    app.require_subcommand(1);

    CommonOpts spec_o, trans_o, comp_o, wave_o, err_o;
    std::string spec_methods = "improved";
    std::string spec_n = "0..5";
    auto* spec = app.add_subcommand("spectrum", "bound-state energies");
    add_common(spec, spec_o);
    spec->add_option("--methods", spec_methods, "exact,wkb,improved,numerov");
    spec->add_option("--n", spec_n, "quantum numbers LO..HI");

    std::string trans_methods = "improved";
    double t_emin = 0.1, t_emax = 5.0;
    int t_steps = 100;
    auto* trans = app.add_subcommand("transmit", "transmission coefficients");
    add_common(trans, trans_o);
    trans->add_option("--methods", trans_methods,
                      "improved,wkb,exact-numeric,closed-form");
    trans->add_option("--emin", t_emin, "lowest energy");
    trans->add_option("--emax", t_emax, "highest energy");
    trans->add_option("--steps", t_steps, "number of energies");

    std::string comp_methods = "improved,wkb,exact-numeric";
    double c_emin = 0.1, c_emax = 5.0;
    int c_steps = 100;
    auto* comp = app.add_subcommand(
        "compare", "side-by-side transmission table over an energy grid");
    add_common(comp, comp_o);
    comp->add_option("--methods", comp_methods,
                     "improved,wkb,exact-numeric,closed-form");
    comp->add_option("--emin", c_emin, "lowest energy");
    comp->add_option("--emax", c_emax, "highest energy");
    comp->add_option("--steps", c_steps, "number of energies");

    int w_n = 0;
    double w_energy = 0.0, w_xmin = -5.0, w_xmax = 5.0;
    int w_samples = 201;
    std::string w_bc = "incident-from-left";
    auto* wave = app.add_subcommand("wavefunction", "uniform wave functions");
    add_common(wave, wave_o);
    auto* w_n_opt = wave->add_option("--n", w_n, "bound-state index");
    auto* w_e_opt = wave->add_option("--energy", w_energy, "scattering energy");
    wave->add_option("--bc", w_bc, "decay | incident-from-left");
    wave->add_option("--xmin", w_xmin, "grid start");
    wave->add_option("--xmax", w_xmax, "grid end");
    wave->add_option("--samples", w_samples, "grid size");

    int e_n = 0;
    double e_energy = 0.0, e_xmin = 1e-6, e_xmax = 1.0;
    int e_samples = 50;
    std::string e_use_q = "selected";
    bool e_log = false;
    auto* errc = app.add_subcommand("error-control",
                                    "error-control function diagnostics");
    add_common(errc, err_o);
    auto* e_n_opt = errc->add_option("--n", e_n, "bound-state index");
    auto* e_e_opt = errc->add_option("--energy", e_energy, "energy");
    errc->add_option("--use-q", e_use_q, "selected | zero");
    errc->add_option("--xmin", e_xmin, "grid start");
    errc->add_option("--xmax", e_xmax, "grid end");
    errc->add_option("--samples", e_samples, "grid size");
    errc->add_flag("--log-x", e_log, "logarithmic x grid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : EXIT_VALIDATION;
    }

    try {
        if (spec->parsed()) return run_spectrum(spec_o, spec_methods, spec_n);
        if (trans->parsed())
            return run_transmit(trans_o, trans_methods, t_emin, t_emax, t_steps,
                                false);
        if (comp->parsed())
            return run_transmit(comp_o, comp_methods, c_emin, c_emax, c_steps,
                                true);
        if (wave->parsed())
            return run_wavefunction(wave_o, w_n, w_energy, w_n_opt->count() > 0,
                                    w_e_opt->count() > 0, w_bc, w_xmin, w_xmax,
                                    w_samples);
        if (errc->parsed())
            return run_error_control(err_o, e_n, e_energy, e_n_opt->count() > 0,
                                     e_e_opt->count() > 0, e_use_q, e_xmin,
                                     e_xmax, e_samples, e_log);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_VALIDATION;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_VALIDATION;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return EXIT_NUMERICAL;
    }
    return EXIT_VALIDATION;
}
