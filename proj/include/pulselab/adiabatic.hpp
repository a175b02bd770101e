#ifndef PULSELAB_ADIABATIC_HPP
#define PULSELAB_ADIABATIC_HPP

#include <span>
#include <vector>

#include "pulselab/models.hpp"
#include "pulselab/state.hpp"

namespace pulselab {

/// Adiabatic-frame quantities sampled at one scaled time.
struct AdiabaticSample {
    double tau = 0.0;
    double rho = 0.0;                 ///< quasienergy magnitude, E± = ±rho
    double theta = 0.0;               ///< mixing angle, continuous along the grid
    double gamma = 0.0;               ///< adiabatic coupling theta_dot/2
    double adiabaticity_ratio = 0.0;  ///< |eps V' - eps' V| / rho^3
};

/// Quasienergy magnitude sqrt(eps^2 + V^2) in scaled units.
double quasienergy(const PulseModel& model, double tau);

/// eps(tau)^2 + V(tau)^2 at complex scaled time; its zeros are the
/// transition points of the DDP analysis.
Complex quasienergy_squared(const PulseModel& model, Complex tau);

/// Principal mixing angle atan2(V, eps) at a single point. Throws
/// DegeneracyError where detuning and coupling vanish simultaneously.
double mixing_angle_at(const PulseModel& model, double tau);

/// Mixing angle along an ordered grid, unwrapped (shifted by multiples of
/// pi) to be continuous; the result is not folded to a principal branch.
std::vector<double> mixing_angle(const PulseModel& model,
                                 std::span<const double> tau_grid);

/// Adiabatic coupling gamma = (eps V' - eps' V) / (2 (eps^2 + V^2)).
/// Throws DegeneracyError at quasienergy zeros.
double adiabatic_coupling(const PulseModel& model, double tau);

/// Local adiabaticity measure |eps V' - eps' V| / (eps^2 + V^2)^(3/2);
/// evolution is adiabatic where this is much smaller than one.
double adiabaticity_ratio(const PulseModel& model, double tau);

/// Rotates a diabatic state into the adiabatic basis at time tau. The
/// rotation is orthogonal, so the norm is preserved exactly; c2 maps to the
/// amplitude of the upper (+rho) eigenstate.
StateVector to_adiabatic(const StateVector& state, const PulseModel& model,
                         double tau);

/// Convenience sampler for traces: all adiabatic-frame quantities over a
/// grid. Degenerate points yield NaN gamma/ratio instead of throwing.
std::vector<AdiabaticSample> sample_adiabatic(const PulseModel& model,
                                              std::span<const double> tau_grid);

}  // namespace pulselab

#endif  // PULSELAB_ADIABATIC_HPP
