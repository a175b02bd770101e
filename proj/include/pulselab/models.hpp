#ifndef PULSELAB_MODELS_HPP
#define PULSELAB_MODELS_HPP

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include "pulselab/errors.hpp"

namespace pulselab {

using Complex = std::complex<double>;

/// Amplitudes and timescale of a driven two-level model. Everything
/// downstream works in scaled time tau = t/T and in the dimensionless
/// products aT and bT.
struct ModelParams {
    double a = 0.0;  ///< detuning amplitude (angular frequency)
    double b = 0.0;  ///< coupling amplitude (angular frequency)
    double T = 1.0;  ///< pulse timescale

    double aT() const { return a * T; }
    double bT() const { return b * T; }
};

enum class ModelId { rabi, rosen_zener, landau_zener, sech_tanh, odd_odd };

enum class Parity { even, odd, none };

/// Maps a CLI-facing name ("sech-tanh", "rosen-zener", ...) to a ModelId.
/// Throws IdentifierError for unknown names.
ModelId model_id_from_string(std::string_view name);

std::string to_string(ModelId id);

/// A member of the fixed model catalogue. Exposes the scaled detuning
/// eps(tau)*T and coupling V(tau)*T at real and complex scaled time,
/// together with their analytic tau-derivatives and symmetry metadata.
/// Immutable after construction; all methods are safe to call concurrently.
///
/// Complex evaluation of the sech/tanh based models throws PoleError within
/// distance 1e-8 of the poles at tau = i(pi/2 + k pi).
class PulseModel {
public:
    ModelId id() const { return id_; }
    const ModelParams& params() const { return params_; }

    /// Scaled slope alpha*T^2 (landau-zener only, 0 otherwise).
    double slope() const { return slope_; }

    /// Half-width of the scaled-time working window. Used as the pulse
    /// extent for the non-decaying models (rabi, landau-zener) and as the
    /// default integration span elsewhere.
    double window() const { return window_; }

    double detuning(double tau) const;
    double coupling(double tau) const;
    double detuning_derivative(double tau) const;
    double coupling_derivative(double tau) const;

    Complex detuning(Complex tau) const;
    Complex coupling(Complex tau) const;
    Complex detuning_derivative(Complex tau) const;
    Complex coupling_derivative(Complex tau) const;

    Parity detuning_parity() const { return detuning_parity_; }
    Parity coupling_parity() const { return coupling_parity_; }

    /// True when the coupling decays at the window ends (sech tails).
    bool decaying_coupling() const;

    /// True when the model functions have poles in the complex plane.
    bool has_poles() const;

    /// Closed-form final transition probability, where one exists
    /// (rosen-zener; rabi over its window).
    std::optional<double> exact_P() const;

private:
    friend PulseModel make_model(ModelId, const ModelParams&);
    friend PulseModel make_model(ModelId, const ModelParams&, double, double);
    PulseModel() = default;

    ModelId id_ = ModelId::rabi;
    ModelParams params_{};
    double slope_ = 0.0;
    double window_ = 20.0;
    Parity detuning_parity_ = Parity::none;
    Parity coupling_parity_ = Parity::none;
};

/// Builds a catalogue model. Throws IdentifierError for an unknown id and
/// ParameterError for invalid parameters. The landau-zener model must be
/// built through the slope overload.
PulseModel make_model(ModelId id, const ModelParams& params);

/// Landau-Zener overload: slope is the detuning rate alpha (angular
/// frequency per time, > 0). window = 0 selects an automatic truncation
/// window wide enough for the propagated probability to converge.
PulseModel make_model(ModelId id, const ModelParams& params, double slope,
                      double window = 0.0);

/// Automatic Landau-Zener truncation half-window (scaled time) for scaled
/// slope alpha*T^2 and scaled coupling b*T.
double landau_zener_default_window(double slope_scaled, double bT);

/// Distance from tau to the nearest pole of sech/tanh, i.e. to the set
/// {i(pi/2 + k pi)}.
double sech_pole_distance(Complex tau);

/// P = sin^2(pi bT) sech^2(pi aT), the closed-form final probability of the
/// rosen-zener model.
double exact_P_rosen_zener(const ModelParams& params);

/// P = exp(-pi b^2 / alpha): the probability of remaining in the initial
/// diabatic state through a linear crossing with constant coupling
/// (equivalently, the nonadiabatic transition probability in the adiabatic
/// basis). slope must be > 0.
double exact_P_landau_zener(const ModelParams& params, double slope);

/// Pulse area A = 2 * integral of V(tau)*T over [tau_i, tau_f] in scaled
/// time. Infinite bounds are allowed. Throws AccuracyError when the
/// quadrature cannot reach the requested absolute tolerance.
double pulse_area(const PulseModel& model, double tau_i, double tau_f,
                  double quadrature_tolerance = 1e-10);

/// Area-theorem probability sin^2(A(tau, -window)/2) for a resonant model.
/// Throws PreconditionError when the detuning is not identically zero on
/// the real line.
double resonant_P(const PulseModel& model, double tau);

}  // namespace pulselab

#endif  // PULSELAB_MODELS_HPP
