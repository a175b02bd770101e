#include "pulselab/adiabatic.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pulselab {

namespace {

std::string at_tau(double tau) { return " at tau = " + std::to_string(tau); }

}  // namespace

double quasienergy(const PulseModel& model, double tau) {
    return std::hypot(model.detuning(tau), model.coupling(tau));
}

Complex quasienergy_squared(const PulseModel& model, Complex tau) {
    const Complex e = model.detuning(tau);
    const Complex v = model.coupling(tau);
    return e * e + v * v;
}

double mixing_angle_at(const PulseModel& model, double tau) {
    const double e = model.detuning(tau);
    const double v = model.coupling(tau);
    if (e == 0.0 && v == 0.0)
        throw DegeneracyError("mixing angle undefined: detuning and coupling both vanish" + at_tau(tau));
    return std::atan2(v, e);
}

std::vector<double> mixing_angle(const PulseModel& model,
                                 std::span<const double> tau_grid) {
    std::vector<double> theta;
    theta.reserve(tau_grid.size());
    double offset = 0.0;
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
        if (i > 0 && !(tau_grid[i] > tau_grid[i - 1]))
            throw PreconditionError("mixing_angle grid must be strictly increasing");
        double th = mixing_angle_at(model, tau_grid[i]) + offset;
        if (i > 0) {
            const double shift = M_PI * std::round((theta.back() - th) / M_PI);
            offset += shift;
            th += shift;
        }
        theta.push_back(th);
    }
    return theta;
}

double adiabatic_coupling(const PulseModel& model, double tau) {
    const double e = model.detuning(tau);
    const double v = model.coupling(tau);
    const double rho2 = e * e + v * v;
    if (rho2 == 0.0)
        throw DegeneracyError("adiabatic coupling singular: quasienergy vanishes" + at_tau(tau));
    return (e * model.coupling_derivative(tau) - model.detuning_derivative(tau) * v) /
           (2.0 * rho2);
}

double adiabaticity_ratio(const PulseModel& model, double tau) {
    const double e = model.detuning(tau);
    const double v = model.coupling(tau);
    const double rho = std::hypot(e, v);
    if (rho == 0.0)
        throw DegeneracyError("adiabaticity ratio singular: quasienergy vanishes" + at_tau(tau));
    const double num =
        std::abs(e * model.coupling_derivative(tau) - model.detuning_derivative(tau) * v);
    return num / (rho * rho * rho);
}

StateVector to_adiabatic(const StateVector& state, const PulseModel& model,
                         double tau) {
    const double half = mixing_angle_at(model, tau) / 2.0;
    const double c = std::cos(half);
    const double s = std::sin(half);
    StateVector out;
    out.c2 = c * state.c2 + s * state.c1;   // amplitude of chi_+
    out.c1 = -s * state.c2 + c * state.c1;  // amplitude of chi_-
    return out;
}

std::vector<AdiabaticSample> sample_adiabatic(const PulseModel& model,
                                              std::span<const double> tau_grid) {
    std::vector<AdiabaticSample> out;
    out.reserve(tau_grid.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::vector<double> regular;  // grid points with rho > 0
    regular.reserve(tau_grid.size());
    for (double tau : tau_grid)
        if (quasienergy(model, tau) > 0.0) regular.push_back(tau);
    std::vector<double> theta_regular;
    if (!regular.empty()) theta_regular = mixing_angle(model, regular);

    std::size_t j = 0;
    for (double tau : tau_grid) {
        AdiabaticSample s;
        s.tau = tau;
        s.rho = quasienergy(model, tau);
        if (s.rho > 0.0) {
            s.theta = theta_regular[j++];
            s.gamma = adiabatic_coupling(model, tau);
            s.adiabaticity_ratio = adiabaticity_ratio(model, tau);
        } else {
            s.theta = nan;
            s.gamma = nan;
            s.adiabaticity_ratio = nan;
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace pulselab
