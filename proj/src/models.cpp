#include "pulselab/models.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace pulselab {

namespace {

constexpr double kPoleGuard = 1e-8;
// |Re tau| beyond which sech underflows and tanh saturates; evaluating
// through cosh there risks overflow for nothing.
constexpr double kSaturationRe = 350.0;

double real_sech(double x) {
    if (std::abs(x) > 700.0) return 0.0;
    return 1.0 / std::cosh(x);
}

Complex csech(Complex tau) {
    if (std::abs(tau.real()) > kSaturationRe) return {0.0, 0.0};
    return 1.0 / std::cosh(tau);
}

Complex ctanh(Complex tau) {
    if (std::abs(tau.real()) > kSaturationRe)
        return {tau.real() > 0 ? 1.0 : -1.0, 0.0};
    return std::tanh(tau);
}

}  // namespace

double sech_pole_distance(Complex tau) {
    // poles at i(pi/2 + k pi): remainder folds Im tau onto the nearest one
    const double dy = std::remainder(tau.imag() - M_PI_2, M_PI);
    return std::hypot(tau.real(), dy);
}

ModelId model_id_from_string(std::string_view name) {
    if (name == "rabi") return ModelId::rabi;
    if (name == "rosen-zener") return ModelId::rosen_zener;
    if (name == "landau-zener") return ModelId::landau_zener;
    if (name == "sech-tanh") return ModelId::sech_tanh;
    if (name == "odd-odd") return ModelId::odd_odd;
    throw IdentifierError("unknown model id: '" + std::string(name) + "'");
}

std::string to_string(ModelId id) {
    switch (id) {
        case ModelId::rabi: return "rabi";
        case ModelId::rosen_zener: return "rosen-zener";
        case ModelId::landau_zener: return "landau-zener";
        case ModelId::sech_tanh: return "sech-tanh";
        case ModelId::odd_odd: return "odd-odd";
    }
    throw IdentifierError("invalid model id value");
}

double landau_zener_default_window(double slope_scaled, double bT) {
    // Calibrated against exp(-pi b^2/alpha): the post-crossing corrections
    // to the adiabatic-basis probability fall off as sqrt(lambda)/(4 u^3)
    // with u = tau sqrt(alpha) and lambda = b^2/alpha; u ~ 70 lambda^(1/6)
    // brings them below 1e-6.
    const double lambda = bT * bT / slope_scaled;
    const double u = std::max({70.0 * std::pow(std::max(lambda, 1e-6), 1.0 / 6.0),
                               4.0 * std::sqrt(lambda), 20.0});
    return u / std::sqrt(slope_scaled);
}

PulseModel make_model(ModelId id, const ModelParams& params) {
    if (id == ModelId::landau_zener)
        throw ParameterError("landau-zener requires a slope; use the slope overload");
    if (!(params.T > 0.0) || !std::isfinite(params.T))
        throw ParameterError("model timescale T must be positive and finite");
    if (params.a < 0.0 || params.b < 0.0)
        throw ParameterError("amplitudes a, b must be non-negative");
    if (!std::isfinite(params.aT()) || !std::isfinite(params.bT()))
        throw ParameterError("dimensionless products aT, bT must be finite");

    PulseModel m;
    m.id_ = id;
    m.params_ = params;
    switch (id) {
        case ModelId::rabi:
        case ModelId::rosen_zener:
        case ModelId::sech_tanh:
            m.detuning_parity_ = Parity::even;  // constant
            break;
        case ModelId::odd_odd:
            m.detuning_parity_ = Parity::odd;
            break;
        case ModelId::landau_zener:
            break;  // unreachable
    }
    switch (id) {
        case ModelId::rabi:
            m.coupling_parity_ = Parity::even;
            break;
        case ModelId::rosen_zener:
            m.coupling_parity_ = Parity::even;
            break;
        case ModelId::sech_tanh:
        case ModelId::odd_odd:
            m.coupling_parity_ = Parity::odd;
            break;
        case ModelId::landau_zener:
            break;
    }
    return m;
}

PulseModel make_model(ModelId id, const ModelParams& params, double slope,
                      double window) {
    if (id != ModelId::landau_zener)
        throw ParameterError("slope is only meaningful for the landau-zener model");
    if (!(slope > 0.0) || !std::isfinite(slope))
        throw ParameterError("landau-zener slope must be positive and finite");
    if (!(params.T > 0.0) || !std::isfinite(params.T))
        throw ParameterError("model timescale T must be positive and finite");
    if (params.b < 0.0)
        throw ParameterError("coupling amplitude b must be non-negative");

    PulseModel m;
    m.id_ = id;
    m.params_ = params;
    m.slope_ = slope * params.T * params.T;
    if (window == 0.0)
        window = landau_zener_default_window(m.slope_, params.bT());
    if (!(window > 0.0) || !std::isfinite(window))
        throw ParameterError("landau-zener needs a finite positive truncation window");
    m.window_ = window;
    m.detuning_parity_ = Parity::odd;
    m.coupling_parity_ = Parity::even;
    return m;
}

bool PulseModel::decaying_coupling() const {
    return id_ == ModelId::rosen_zener || id_ == ModelId::sech_tanh ||
           id_ == ModelId::odd_odd;
}

bool PulseModel::has_poles() const { return decaying_coupling(); }

double PulseModel::detuning(double tau) const {
    switch (id_) {
        case ModelId::rabi:
        case ModelId::rosen_zener:
        case ModelId::sech_tanh:
            return params_.aT();
        case ModelId::landau_zener:
            return slope_ * tau;
        case ModelId::odd_odd:
            return params_.aT() * std::tanh(tau);
    }
    return 0.0;
}

double PulseModel::coupling(double tau) const {
    switch (id_) {
        case ModelId::rabi:
        case ModelId::landau_zener:
            return params_.bT();
        case ModelId::rosen_zener:
            return params_.bT() * real_sech(tau);
        case ModelId::sech_tanh:
        case ModelId::odd_odd:
            return params_.bT() * real_sech(tau) * std::tanh(tau);
    }
    return 0.0;
}

double PulseModel::detuning_derivative(double tau) const {
    switch (id_) {
        case ModelId::rabi:
        case ModelId::rosen_zener:
        case ModelId::sech_tanh:
            return 0.0;
        case ModelId::landau_zener:
            return slope_;
        case ModelId::odd_odd: {
            const double s = real_sech(tau);
            return params_.aT() * s * s;
        }
    }
    return 0.0;
}

double PulseModel::coupling_derivative(double tau) const {
    switch (id_) {
        case ModelId::rabi:
        case ModelId::landau_zener:
            return 0.0;
        case ModelId::rosen_zener: {
            const double s = real_sech(tau);
            return -params_.bT() * s * std::tanh(tau);
        }
        case ModelId::sech_tanh:
        case ModelId::odd_odd: {
            const double s = real_sech(tau);
            const double t = std::tanh(tau);
            return params_.bT() * s * (s * s - t * t);
        }
    }
    return 0.0;
}

namespace {

void check_pole(const PulseModel& m, Complex tau) {
    if (m.has_poles() && sech_pole_distance(tau) < kPoleGuard)
        throw PoleError("complex evaluation within 1e-8 of a sech pole at tau = i(pi/2 + k pi)");
}

}  // namespace

Complex PulseModel::detuning(Complex tau) const {
    check_pole(*this, tau);
    switch (id_) {
        case ModelId::rabi:
        case ModelId::rosen_zener:
        case ModelId::sech_tanh:
            return {params_.aT(), 0.0};
        case ModelId::landau_zener:
            return slope_ * tau;
        case ModelId::odd_odd:
            return params_.aT() * ctanh(tau);
    }
    return {};
}

Complex PulseModel::coupling(Complex tau) const {
    check_pole(*this, tau);
    switch (id_) {
        case ModelId::rabi:
        case ModelId::landau_zener:
            return {params_.bT(), 0.0};
        case ModelId::rosen_zener:
            return params_.bT() * csech(tau);
        case ModelId::sech_tanh:
        case ModelId::odd_odd:
            return params_.bT() * csech(tau) * ctanh(tau);
    }
    return {};
}

Complex PulseModel::detuning_derivative(Complex tau) const {
    check_pole(*this, tau);
    switch (id_) {
        case ModelId::rabi:
        case ModelId::rosen_zener:
        case ModelId::sech_tanh:
            return {0.0, 0.0};
        case ModelId::landau_zener:
            return {slope_, 0.0};
        case ModelId::odd_odd: {
            const Complex s = csech(tau);
            return params_.aT() * s * s;
        }
    }
    return {};
}

Complex PulseModel::coupling_derivative(Complex tau) const {
    check_pole(*this, tau);
    switch (id_) {
        case ModelId::rabi:
        case ModelId::landau_zener:
            return {0.0, 0.0};
        case ModelId::rosen_zener: {
            const Complex s = csech(tau);
            return -params_.bT() * s * ctanh(tau);
        }
        case ModelId::sech_tanh:
        case ModelId::odd_odd: {
            const Complex s = csech(tau);
            const Complex t = ctanh(tau);
            return params_.bT() * s * (s * s - t * t);
        }
    }
    return {};
}

std::optional<double> PulseModel::exact_P() const {
    switch (id_) {
        case ModelId::rosen_zener:
            return exact_P_rosen_zener(params_);
        case ModelId::rabi: {
            const double v = params_.bT();
            const double rho = std::hypot(params_.aT(), v);
            if (rho == 0.0) return 0.0;
            const double s = std::sin(rho * 2.0 * window_);
            return (v * v) / (rho * rho) * s * s;
        }
        default:
            return std::nullopt;
    }
}

double exact_P_rosen_zener(const ModelParams& params) {
    const double s = std::sin(M_PI * params.bT());
    const double c = real_sech(M_PI * params.aT());
    return s * s * c * c;
}

double exact_P_landau_zener(const ModelParams& params, double slope) {
    if (!(slope > 0.0))
        throw ParameterError("landau-zener slope must be positive");
    const double bT = params.bT();
    const double slope_scaled = slope * params.T * params.T;
    return std::exp(-M_PI * bT * bT / slope_scaled);
}

double pulse_area(const PulseModel& model, double tau_i, double tau_f,
                  double quadrature_tolerance) {
    if (tau_i == tau_f) return 0.0;
    if (!(tau_i < tau_f))
        throw PreconditionError("pulse_area requires tau_i <= tau_f");
    if (!(quadrature_tolerance > 0.0))
        throw ParameterError("quadrature tolerance must be positive");

    const auto f = [&](double tau) { return model.coupling(tau); };
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, tau_i, tau_f, 15, 1e-13, &error);
    if (!(error <= quadrature_tolerance)) {
        throw AccuracyError(
            "pulse_area quadrature did not reach the requested tolerance "
            "(achieved " + std::to_string(error) + ")",
            error);
    }
    return 2.0 * value;
}

double resonant_P(const PulseModel& model, double tau) {
    const double w = model.window();
    const int n = 1001;
    for (int i = 0; i < n; ++i) {
        const double t = -w + 2.0 * w * i / (n - 1);
        if (std::abs(model.detuning(t)) > 1e-12)
            throw PreconditionError("resonant_P requires an identically zero detuning");
    }
    if (tau <= -w) return 0.0;
    const double area = pulse_area(model, -w, tau);
    const double s = std::sin(area / 2.0);
    return s * s;
}

}  // namespace pulselab
