#include "uaa/sweep.hpp"
#include "uaa/errors.hpp"

#include <cmath>
#include <limits>

namespace uaa {

namespace {

constexpr double NAN_V = std::numeric_limits<double>::quiet_NaN();

OracleConfig scatter_config(const Potential& pot, const OracleConfig* cfg) {
    if (cfg) return *cfg;
    OracleConfig c;
    const auto& p = pot.params();
    c.extent = 12.0 / p.alpha + 6.0;
    c.step = 2e-3;
    return c;
}

double transmit_one(const Potential& pot, double e, TransmitMethod method,
                    const OracleConfig& cfg) {
    try {
        switch (method) {
            case TransmitMethod::improved: return transmission_improved(pot, e);
            case TransmitMethod::wkb: return transmission_wkb(pot, e);
            case TransmitMethod::exact_numeric:
                return numerical_transmission(pot, e, cfg);
            case TransmitMethod::closed_form:
                return closed_form_transmission(pot, e);
        }
    } catch (const Error&) {
        return NAN_V;
    }
    return NAN_V;
}

double spectrum_one(const Potential& pot, int n, Method method,
                    const OracleConfig* cfg) {
    try {
        switch (method) {
            case Method::exact: return exact_spectrum(pot, n);
            case Method::wkb: return solve_spectrum_wkb(pot, n, n).energy.at(0);
            case Method::improved:
                return solve_spectrum_improved(pot, n, n).energy.at(0);
            case Method::numerov: {
                const OracleConfig c = cfg ? *cfg : default_oracle_config(pot, n);
                return numerov_eigenvalues(pot, n, c).energy.at(n);
            }
        }
    } catch (const Error&) {
        return NAN_V;
    }
    return NAN_V;
}

double errctl_one(const Splitting& s, const TurningPointSet& tps, double x) {
    try {
        if (tps.kind == TurningPointKind::single_real)
            return error_control_h(s, tps.x0, x);
        if (tps.kind == TurningPointKind::pair_real && !tps.coalesced) {
            const double anchor =
                (std::abs(x - tps.x1) <= std::abs(x - tps.x2)) ? tps.x1 : tps.x2;
            if (x > tps.x1 && x < tps.x2) return error_control_i(s, tps, x);
            return error_control_h(s, anchor, x);
        }
        return NAN_V;
    } catch (const Error&) {
        return NAN_V;
    }
}

} // namespace

std::string to_string(TransmitMethod m) {
    switch (m) {
        case TransmitMethod::improved: return "improved";
        case TransmitMethod::wkb: return "wkb";
        case TransmitMethod::exact_numeric: return "exact-numeric";
        case TransmitMethod::closed_form: return "closed-form";
    }
    return "?";
}

std::vector<double> transmission_curve(const Potential& pot,
                                       const std::vector<double>& energies,
                                       TransmitMethod method,
                                       const OracleConfig* oracle_cfg) {
    std::vector<double> out(energies.size());
    const OracleConfig cfg = scatter_config(pot, oracle_cfg);
    const long n = static_cast<long>(energies.size());
#ifdef UAA_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < n; ++i)
        out[i] = transmit_one(pot, energies[i], method, cfg);
    return out;
}

std::vector<double> transmission_curve_serial(const Potential& pot,
                                              const std::vector<double>& energies,
                                              TransmitMethod method,
                                              const OracleConfig* oracle_cfg) {
    std::vector<double> out(energies.size());
    const OracleConfig cfg = scatter_config(pot, oracle_cfg);
    for (size_t i = 0; i < energies.size(); ++i)
        out[i] = transmit_one(pot, energies[i], method, cfg);
    return out;
}

SpectrumResult spectrum_sweep(const Potential& pot, int n_lo, int n_hi,
                              Method method, const OracleConfig* oracle_cfg) {
    if (n_hi < n_lo) throw NoBoundStateError("spectrum_sweep: bad range");
    SpectrumResult out;
    out.method = method;
    const int cnt = n_hi - n_lo + 1;
    out.n.resize(cnt);
    out.energy.resize(cnt);
    out.diagnostics.resize(cnt);
#ifdef UAA_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < cnt; ++i) {
        out.n[i] = n_lo + i;
        out.energy[i] = spectrum_one(pot, n_lo + i, method, oracle_cfg);
    }
    return out;
}

SpectrumResult spectrum_sweep_serial(const Potential& pot, int n_lo, int n_hi,
                                     Method method,
                                     const OracleConfig* oracle_cfg) {
    if (n_hi < n_lo) throw NoBoundStateError("spectrum_sweep: bad range");
    SpectrumResult out;
    out.method = method;
    const int cnt = n_hi - n_lo + 1;
    out.n.resize(cnt);
    out.energy.resize(cnt);
    out.diagnostics.resize(cnt);
    for (int i = 0; i < cnt; ++i) {
        out.n[i] = n_lo + i;
        out.energy[i] = spectrum_one(pot, n_lo + i, method, oracle_cfg);
    }
    return out;
}

std::vector<double> error_control_sweep(const Splitting& s,
                                        const TurningPointSet& tps,
                                        const std::vector<double>& xs) {
    std::vector<double> out(xs.size());
    const long n = static_cast<long>(xs.size());
#ifdef UAA_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < n; ++i) out[i] = errctl_one(s, tps, xs[i]);
    return out;
}

std::vector<double> error_control_sweep_serial(const Splitting& s,
                                               const TurningPointSet& tps,
                                               const std::vector<double>& xs) {
    std::vector<double> out(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) out[i] = errctl_one(s, tps, xs[i]);
    return out;
}

} // namespace uaa
