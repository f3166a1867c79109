#ifndef UAA_WAVEFUNCTION_HPP
#define UAA_WAVEFUNCTION_HPP

#include "uaa/potentials.hpp"
#include "uaa/semiclassical.hpp"

#include <complex>
#include <vector>

namespace uaa {

enum class Region { allowed, forbidden, turning_neighborhood };

struct WaveSample {
    double x = 0.0;
    double psi = 0.0;       ///< wave-function value (modulus for scattering)
    double log_scale = 0.0; ///< represented value is psi * exp(log_scale)
    Region region = Region::allowed;
    double map = 0.0;       ///< xi or zeta at x (0 when no map applies)
};

enum class BoundaryKind {
    decay_at_plus_infinity,
    decay_at_origin,
    incident_from_left,
    coefficients,
};

enum class Normalization { unit_l2, unit_incident_flux, raw };

struct BoundaryCondition {
    BoundaryKind kind = BoundaryKind::decay_at_plus_infinity;
    Normalization normalization = Normalization::raw;
    double a = 1.0, b = 0.0; ///< used by BoundaryKind::coefficients
};

/// Airy-type uniform wave function around a single turning point x0.
std::vector<WaveSample> psi_single_tp(const Splitting& s, double x0,
                                      const BoundaryCondition& bc,
                                      const std::vector<double>& grid);

/// Parabolic-cylinder uniform bound state for the n-th improved eigenvalue
/// (the splitting's energy must lie within the off-shell tolerance of it).
std::vector<WaveSample> psi_well(const Splitting& s, const TurningPointSet& tps,
                                 int n, const std::vector<double>& grid);

struct BarrierWave {
    std::vector<WaveSample> samples; ///< psi holds |Psi| for the scattering state
    std::complex<double> a2, b2;     ///< coefficients of W(b,sqrt2 zeta), W(b,-sqrt2 zeta)
    double transmission = 0.0;       ///< flux ratio of the assembled wave
};

/// Scattering state across a barrier with incident-from-left normalization.
BarrierWave psi_barrier(const Splitting& s, const TurningPointSet& tps,
                        const BoundaryCondition& bc,
                        const std::vector<double>& grid);

} // namespace uaa

#endif
