#ifndef PULSELAB_DYNAMICS_HPP
#define PULSELAB_DYNAMICS_HPP

#include <cstddef>
#include <memory>
#include <vector>

#include "pulselab/models.hpp"
#include "pulselab/state.hpp"

namespace pulselab {

/// Tolerances and sampling of the Schrödinger propagator.
struct IntegratorConfig {
    double rtol = 1e-10;
    double atol = 1e-12;
    double tau_max = 20.0;  ///< integration span is [-tau_max, tau_max]
    std::size_t max_steps = 10'000'000;
    std::size_t dense_output_points = 2001;
};

/// Result of a propagation: states interpolated on a fixed sample grid.
struct Trajectory {
    std::vector<double> grid;          ///< ascending sample times
    std::vector<StateVector> states;   ///< state per grid point
    std::vector<double> p_of_t;        ///< |c2|^2 per grid point
    double final_p = 0.0;
    double norm_drift = 0.0;           ///< max | |psi|^2 - 1 | observed
    std::size_t steps = 0;             ///< accepted integrator steps
};

/// Propagation ran out of its step budget; carries the partial trajectory.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, Trajectory partial)
        : Error(what), partial_(std::make_shared<Trajectory>(std::move(partial))) {}

    const Trajectory& partial() const { return *partial_; }

private:
    std::shared_ptr<const Trajectory> partial_;
};

/// Final state and propagation diagnostics without dense output.
struct FinalState {
    StateVector state;
    double norm_drift = 0.0;
    std::size_t steps = 0;

    double P() const { return std::norm(state.c2); }
};

/// Integrates i d(psi)/d(tau) = H(tau) psi with H = [[eps, V], [V, -eps]]
/// (scaled units) over [-tau_max, tau_max] using an adaptive embedded
/// Runge-Kutta 5(4) pair, sampling the trajectory by dense-output
/// interpolation. The initial state must be normalized to 1e-12.
Trajectory propagate(const PulseModel& model, const IntegratorConfig& config = {},
                     const StateVector& initial_state = {});

/// Low-level propagation between two arbitrary times (either direction),
/// returning only the final state.
FinalState evolve(const PulseModel& model, const IntegratorConfig& config,
                  const StateVector& state, double tau_from, double tau_to);

/// Final |c2|^2 starting from (c2, c1) = (0, 1), with diagnostics.
FinalState final_state(const PulseModel& model, const IntegratorConfig& config = {});

/// Final transition probability P = |c2(tau_max)|^2 from (0, 1).
double final_transition_probability(const PulseModel& model,
                                    const IntegratorConfig& config = {});

/// Tail bound 2 * integral of |V T| over (tau_max, infinity), evaluated in
/// closed form; validates the truncation window choice. Throws
/// UnsupportedModelError for non-decaying couplings.
double truncation_check(const PulseModel& model, const IntegratorConfig& config = {});

}  // namespace pulselab

#endif  // PULSELAB_DYNAMICS_HPP
