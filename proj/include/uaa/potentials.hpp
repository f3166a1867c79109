#ifndef UAA_POTENTIALS_HPP
#define UAA_POTENTIALS_HPP

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace uaa {

enum class PotentialKind {
    hydrogen,
    oscillator_d,
    morse,
    poschl_teller_well,
    poschl_teller_barrier,
    eckart,
    pure_oscillator_1d,
    user_defined,
};

std::string to_string(PotentialKind kind);
std::optional<PotentialKind> kind_from_string(const std::string& name);

enum class Domain { half_line, full_line };

enum class QProvenance { pole_rule, extreme_rule, zero, user };

struct PhysicalParams {
    double m = 1.0;
    double hbar = 1.0;
    double e = 1.0;     // charge (hydrogen)
    double omega = 1.0; // frequency (oscillators)
    int l = 0;          // angular momentum
    int D = 3;          // oscillator dimension
    double v0 = 0.0;
    double v1 = 0.0;
    double alpha = 1.0;
};

/// User-supplied potential description.
struct UserPotentialSpec {
    std::function<double(double)> V;
    Domain domain = Domain::full_line;
    int pole_order = 0;         // 0 or 2
    double pole_coefficient = 0; // lim x^2 V(x) for a second-order pole
    double x_extreme = 0;        // extreme point of V
    double sample_energy = 0;    // energy used to size the interpolation bump
    // analytic derivatives d^k V/dx^k (k = 1..4); finite differences otherwise
    std::function<double(double, int)> dV;
};

/// Immutable 1-D potential with its selected q(x). Cheap to copy.
class Potential {
public:
    static Potential make(PotentialKind kind, const PhysicalParams& p);
    static Potential user(const UserPotentialSpec& spec);

    PotentialKind kind() const;
    const PhysicalParams& params() const;
    Domain domain() const;
    int pole_order() const;
    /// L^2: centrifugal strength in units of hbar^2/(2 m x^2); the
    /// D-dimensional oscillator stores l(D+l-2) + (D-1)(D-3)/4 here so the
    /// radial pole handling shares one code path with hydrogen.
    double centrifugal_strength() const;
    /// Energy above which the spectrum is continuous (+inf for oscillators).
    double continuum_threshold() const;
    /// lim x^2 V(x) at the origin (0 unless the pole order is 2).
    double pole_coefficient() const;

    double v(double x) const;
    /// analytic d^k V/dx^k, k = 1..4
    double dv(double x, int order) const;
    bool has_complex_eval() const;
    std::complex<double> v_complex(std::complex<double> z) const;

    double q(double x) const;
    double dq(double x, int order) const;
    bool has_complex_q() const;
    std::complex<double> q_complex(std::complex<double> z) const;
    QProvenance q_provenance() const;

    /// V - (hbar^2/2m) q: the effective potential whose classical turning
    /// points are the zeros of g.
    double v_eff(double x) const;

    /// location of the interior extreme of V (well bottom / barrier top)
    double extreme_location() const;

    /// left edge usable for numerics (0+ for half-line, -inf for full line)
    double domain_left() const;

    struct Impl;

private:
    explicit Potential(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

/// g/q pair at fixed energy: g + q = -2m(E - V)/hbar^2 everywhere.
class Splitting {
public:
    Splitting(Potential pot, double energy, bool with_q);

    const Potential& potential() const { return pot_; }
    double energy() const { return energy_; }
    bool improved() const { return with_q_; }

    double g(double x) const;
    double dg(double x, int order) const; ///< analytic d^k g/dx^k, k = 1..4
    std::complex<double> g_complex(std::complex<double> z) const;
    double q(double x) const;
    double dq(double x, int order) const;

private:
    Potential pot_;
    double energy_;
    bool with_q_;
};

/// Splitting with the potential's selected q (the improved method).
Splitting build_splitting(const Potential& pot, double energy);
/// Splitting with q = 0 (the plain WKB method).
Splitting build_splitting_wkb(const Potential& pot, double energy);

/// Extreme-point value 7 g'''^2/(288 g''^2) - g''''/(32 g'') at x_m.
/// Derivatives are supplied analytically through `dg` when given, otherwise
/// by Richardson-extrapolated central differences of `g`.
double q0_from_extreme(const std::function<double(double)>& g, double x_m,
                       const std::function<double(double, int)>* dg = nullptr);
/// Same, using the potential's analytic derivatives (E-independent).
double q0_from_extreme(const Potential& pot);

/// Closed-form spectra for the catalog kinds.
double exact_spectrum(const Potential& pot, int n);
double wkb_spectrum_closed_form(const Potential& pot, int n);

/// Number of bound states (marginal threshold states included);
/// returns -1 when the spectrum is infinite.
int bound_state_count(const Potential& pot);

} // namespace uaa

#endif
