#ifndef UAA_SWEEP_HPP
#define UAA_SWEEP_HPP

#include "uaa/oracle.hpp"
#include "uaa/potentials.hpp"
#include "uaa/semiclassical.hpp"

#include <string>
#include <vector>

namespace uaa {

enum class TransmitMethod { improved, wkb, exact_numeric, closed_form };
std::string to_string(TransmitMethod m);

// Data-parallel sweep kernels (OpenMP over independent elements) together
// with serial reference implementations used for testing and benchmarking.
// Points where a method is not applicable are reported as NaN.

std::vector<double> transmission_curve(const Potential& pot,
                                       const std::vector<double>& energies,
                                       TransmitMethod method,
                                       const OracleConfig* oracle_cfg = nullptr);
std::vector<double> transmission_curve_serial(const Potential& pot,
                                              const std::vector<double>& energies,
                                              TransmitMethod method,
                                              const OracleConfig* oracle_cfg = nullptr);

SpectrumResult spectrum_sweep(const Potential& pot, int n_lo, int n_hi,
                              Method method,
                              const OracleConfig* oracle_cfg = nullptr);
SpectrumResult spectrum_sweep_serial(const Potential& pot, int n_lo, int n_hi,
                                     Method method,
                                     const OracleConfig* oracle_cfg = nullptr);

/// Error-control function sampled over a grid of evaluation points,
/// anchored at the turning point nearest to each x.
std::vector<double> error_control_sweep(const Splitting& s,
                                        const TurningPointSet& tps,
                                        const std::vector<double>& xs);
std::vector<double> error_control_sweep_serial(const Splitting& s,
                                               const TurningPointSet& tps,
                                               const std::vector<double>& xs);

} // namespace uaa

#endif
