#ifndef UAA_ORACLE_HPP
#define UAA_ORACLE_HPP

#include "uaa/potentials.hpp"
#include "uaa/semiclassical.hpp"
#include "uaa/wavefunction.hpp"

#include <functional>
#include <vector>

namespace uaa {

/// Grid and tolerance settings for the Numerov reference solver.
struct OracleConfig {
    double extent = 40.0;    ///< right edge of the grid
    double left_extent = 0.0; ///< |left edge| for full-line grids (0: symmetric)
    double step = 1e-3;
    double x_min = 1e-6;     ///< first grid point on half-line domains
    double energy_tol = 1e-10;
    bool check_convergence = true; ///< redo at doubled step, record the drift
};

/// Grid sized from the closed-form spectrum of a catalog potential.
OracleConfig default_oracle_config(const Potential& pot, int n_max);

/// Bound states by fourth-order shooting with log-derivative matching;
/// diagnostics.residual records the grid-doubling drift of each eigenvalue.
SpectrumResult numerov_eigenvalues(const Potential& pot, int n_max,
                                   const OracleConfig& config);

/// Normalized matched eigenfunction sampled on `grid`.
std::vector<WaveSample> numerov_eigenfunction(const Potential& pot, int n,
                                              const OracleConfig& config,
                                              const std::vector<double>& grid);

struct ScatterResult {
    double transmission = 0.0;
    double reflection = 0.0;
    double step_used = 0.0;
};

/// Direct integration of the scattering problem with outgoing right-side
/// data; step halving until |Delta T| <= 1e-8.
ScatterResult numerical_scattering(const std::function<double(double)>& potential,
                                   double m, double hbar, double energy,
                                   const OracleConfig& config);

/// Transmission through a barrier potential (V -> constants at +-infinity).
double numerical_transmission(const Potential& pot, double energy,
                              const OracleConfig& config);

/// Analytic transmission for the sech^2 barrier, used as a second oracle.
double closed_form_transmission(const Potential& pot, double energy);

} // namespace uaa

#endif
