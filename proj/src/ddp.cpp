#include "pulselab/ddp.hpp"

#include "pulselab/adiabatic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace pulselab {

namespace {

std::string fmt(Complex z) {
    return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

// 16-point Gauss-Legendre rule on [-1, 1], nodes ascending. Computed once
// by Newton iteration on the Legendre polynomial.
struct GlRule {
    std::array<double, 16> x{};
    std::array<double, 16> w{};
};

const GlRule& gl16() {
    static const GlRule rule = [] {
        GlRule g;
        const int n = 16;
        for (int i = 0; i < n / 2; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 64; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            g.x[i] = -x;
            g.w[i] = w;
            g.x[n - 1 - i] = x;
            g.w[n - 1 - i] = w;
        }
        return g;
    }();
    return rule;
}

double amplitude_scale_sq(const PulseModel& m) {
    const double s = std::max({m.params().aT(), m.params().bT(), 1e-12});
    return s * s;
}

// Distance from the segment [0, tip] to the nearest sech pole i(pi/2 + k pi).
double segment_pole_distance(Complex tip) {
    const double len2 = std::norm(tip);
    double best = std::numeric_limits<double>::infinity();
    const int k_hi = static_cast<int>(std::ceil((std::abs(tip) + M_PI) / M_PI));
    for (int k = -k_hi; k <= k_hi; ++k) {
        const Complex pole{0.0, M_PI_2 + k * M_PI};
        double t = len2 > 0.0 ? (pole.real() * tip.real() + pole.imag() * tip.imag()) / len2
                              : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, std::abs(pole - t * tip));
    }
    return best;
}

// One composite Gauss-Legendre pass over the contour with branch tracking.
// The contour [0, tau_c] is parametrized as s(v) = tau_c (1 - (1-v)^2),
// v in [0, 1]: the node clustering at the tip removes the square-root
// endpoint singularity when tau_c is a zero of rho^2.
struct PassResult {
    Complex integral;
    bool rotation_ok;
};

PassResult phase_pass(const PulseModel& model, Complex tau_c, Complex root0,
                      int panels) {
    const GlRule& g = gl16();
    Complex prev = root0;
    Complex sum{0.0, 0.0};
    bool rotation_ok = true;
    for (int p = 0; p < panels; ++p) {
        const double lo = static_cast<double>(p) / panels;
        const double hi = static_cast<double>(p + 1) / panels;
        const double half = (hi - lo) / 2.0;
        const double mid = (hi + lo) / 2.0;
        for (int j = 0; j < 16; ++j) {
            const double v = mid + half * g.x[j];
            const double u = 1.0 - v;
            const Complex s = tau_c * (1.0 - u * u);
            const Complex jac = 2.0 * tau_c * u;
            const Complex w2 = quasienergy_squared(model, s);
            Complex w = std::sqrt(w2);
            if (std::abs(w - prev) > std::abs(-w - prev)) w = -w;
            if (w != Complex{0.0, 0.0}) {
                // consecutive branch values may not rotate by pi/2 or more
                const Complex dot = std::conj(prev) * w;
                if (dot.real() <= 0.0 && prev != Complex{0.0, 0.0}) rotation_ok = false;
                prev = w;
            }
            sum += (half * g.w[j]) * w * jac;
        }
    }
    return {sum, rotation_ok};
}

}  // namespace

std::string to_string(ZeroBranch branch) {
    switch (branch) {
        case ZeroBranch::x_plus: return "X+";
        case ZeroBranch::x_minus: return "X-";
        case ZeroBranch::generic: return "generic";
    }
    return "?";
}

SechTanhBranches st_branch_values(double b_over_a) {
    if (!(b_over_a >= 0.0) || !std::isfinite(b_over_a))
        throw ParameterError("b/a must be non-negative and finite");
    if (b_over_a == 0.0) return {0.0, 0.0};
    const double r2 = b_over_a * b_over_a;
    const double s = b_over_a * std::sqrt(r2 + 4.0);
    const double x_minus = -(r2 + s) / 2.0;
    // X+ X- = -r^2 exactly; dividing avoids the cancellation in -r^2 + s
    const double x_plus = -r2 / x_minus;
    return {x_plus, x_minus};
}

std::vector<DdpZero> st_zero_points(double b_over_a, int k_max) {
    if (k_max < 0) throw ParameterError("k_max must be non-negative");
    const SechTanhBranches x = st_branch_values(b_over_a);

    std::vector<DdpZero> zeros;
    const auto add_branch = [&](double x_value, ZeroBranch branch) {
        // cosh is even and 2 pi i periodic, so all four sign combinations of
        // ±Re(w) ± i Im(w) solve cosh(2 tau) = 2X - 1; emitting them all
        // keeps the ladder closed under both reflections.
        const Complex w = std::acosh(Complex{2.0 * x_value - 1.0, 0.0});
        for (int k = -k_max; k <= k_max; ++k) {
            for (double s_re : {1.0, -1.0}) {
                for (double s_im : {1.0, -1.0}) {
                    const Complex half{s_re * w.real() / 2.0, s_im * w.imag() / 2.0};
                    const Complex tau = half + Complex{0.0, M_PI * k};
                    zeros.push_back({tau, branch, k, std::nullopt, std::nullopt});
                }
            }
        }
    };
    add_branch(x.x_plus, ZeroBranch::x_plus);
    add_branch(x.x_minus, ZeroBranch::x_minus);

    const auto before = [](const DdpZero& l, const DdpZero& r) {
        if (l.tau_c.imag() != r.tau_c.imag()) return l.tau_c.imag() < r.tau_c.imag();
        const double la = std::abs(l.tau_c.real());
        const double ra = std::abs(r.tau_c.real());
        if (la != ra) return la < ra;
        return l.tau_c.real() < r.tau_c.real();
    };
    std::stable_sort(zeros.begin(), zeros.end(), before);

    std::vector<DdpZero> unique;
    for (const DdpZero& z : zeros) {
        const bool dup = !unique.empty() &&
                         std::abs(z.tau_c - unique.back().tau_c) <
                             1e-9 * std::max(1.0, std::abs(z.tau_c));
        if (!dup) unique.push_back(z);
    }
    return unique;
}

Complex refine_zero(const PulseModel& model, Complex seed) {
    const double target = 1e-12 * amplitude_scale_sq(model);
    Complex tau = seed;
    for (int it = 0; it < 50; ++it) {
        if (model.has_poles() && sech_pole_distance(tau) < 1e-7)
            throw RefinementError("zero refinement ran into a pole near tau = " + fmt(tau),
                                  tau);
        const Complex f = quasienergy_squared(model, tau);
        if (std::abs(f) < target) return tau;
        const Complex df = 2.0 * (model.detuning(tau) * model.detuning_derivative(tau) +
                                  model.coupling(tau) * model.coupling_derivative(tau));
        if (df == Complex{0.0, 0.0})
            throw RefinementError("zero refinement stalled: vanishing derivative at tau = " +
                                      fmt(tau),
                                  tau);
        const Complex step = f / df;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
            throw RefinementError("zero refinement diverged at tau = " + fmt(tau), tau);
        tau -= step;
    }
    throw RefinementError("zero refinement did not converge from seed " + fmt(seed), tau);
}

PhaseIntegral ddp_phase(const PulseModel& model, Complex tau_c,
                        const QuadratureConfig& config) {
    if (tau_c == Complex{0.0, 0.0}) return {Complex{0.0, 0.0}, 0.0, 1};

    if (model.has_poles()) {
        const double d = segment_pole_distance(tau_c);
        if (d < config.pole_min_distance)
            throw ContourError("phase-integral contour passes within " + std::to_string(d) +
                               " of an integrand pole");
    }

    const Complex rho2_0 = quasienergy_squared(model, Complex{0.0, 0.0});
    if (std::abs(rho2_0) < 1e-14 * amplitude_scale_sq(model))
        throw PreconditionError("phase integral anchored at a quasienergy zero at tau = 0");
    Complex root0 = std::sqrt(rho2_0);
    if (root0.real() < 0.0) root0 = -root0;

    Complex previous{0.0, 0.0};
    bool have_previous = false;
    int panels = 1;
    for (int refinement = 0; refinement <= config.max_refinements;
         ++refinement, panels *= 2) {
        const PassResult pass = phase_pass(model, tau_c, root0, panels);
        if (!pass.rotation_ok) continue;  // too coarse for branch tracking
        if (have_previous) {
            const double diff = std::abs(pass.integral - previous);
            const double scale = std::max(std::abs(pass.integral), 1e-30);
            if (diff <= config.rel_tol * scale) {
                return {2.0 * pass.integral, diff / scale, panels};
            }
        }
        previous = pass.integral;
        have_previous = true;
    }
    throw AccuracyError(
        "phase-integral refinement did not converge: last estimates " + fmt(2.0 * previous) +
            " at " + std::to_string(panels / 2) + " panels",
        std::abs(previous));
}

Complex gamma_factor(const PulseModel& model, Complex tau_c, double radius) {
    if (!(radius > 0.0)) throw ParameterError("gamma_factor radius must be positive");

    const auto circle_average = [&](double r) {
        const int n = 32;
        Complex sum{0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            const double phi = 2.0 * M_PI * j / n;
            const Complex delta = r * Complex{std::cos(phi), std::sin(phi)};
            const Complex tau = tau_c + delta;
            const Complex e = model.detuning(tau);
            const Complex v = model.coupling(tau);
            const Complex num =
                e * model.coupling_derivative(tau) - model.detuning_derivative(tau) * v;
            const Complex gamma = num / (2.0 * (e * e + v * v));
            sum += Complex{0.0, 4.0} * delta * gamma;
        }
        return sum / static_cast<double>(n);
    };

    const Complex coarse = circle_average(radius);
    const Complex fine = circle_average(radius / 2.0);
    if (std::abs(fine - coarse) > 1e-4)
        throw LimitError("residue limit unstable under radius halving near tau = " +
                         fmt(tau_c));
    return fine;
}

namespace {

// Closed-form zero seeds of eps^2 + V^2 per catalogue model.
std::vector<DdpZero> model_zero_seeds(const PulseModel& model, int k_max) {
    const double aT = model.params().aT();
    const double bT = model.params().bT();
    switch (model.id()) {
        case ModelId::rabi:
            throw UnsupportedModelError("rabi has a constant quasienergy without zeros");
        case ModelId::sech_tanh:
            if (!(aT > 0.0))
                throw ParameterError("sech-tanh transition points need a > 0");
            return st_zero_points(bT / aT, k_max);
        case ModelId::landau_zener: {
            if (!(bT > 0.0))
                throw ParameterError("landau-zener transition points need b > 0");
            const double y = bT / model.slope();
            return {{Complex{0.0, y}, ZeroBranch::generic, 0, {}, {}},
                    {Complex{0.0, -y}, ZeroBranch::generic, 0, {}, {}}};
        }
        case ModelId::rosen_zener:
        case ModelId::odd_odd: {
            // a^2 + b^2 sech^2 = 0 at tau = ±arcsinh(b/a) + i(pi/2 + k pi);
            // the odd-odd double zeros at tanh = 0 are not simple and are
            // not usable transition points.
            if (!(aT > 0.0) || !(bT > 0.0))
                throw ParameterError("transition points need a > 0 and b > 0");
            const double re = std::asinh(bT / aT);
            std::vector<DdpZero> zeros;
            for (int k = -k_max - 1; k <= k_max; ++k) {
                const double im = M_PI_2 + M_PI * k;
                zeros.push_back({Complex{re, im}, ZeroBranch::generic, k, {}, {}});
                zeros.push_back({Complex{-re, im}, ZeroBranch::generic, k, {}, {}});
            }
            return zeros;
        }
    }
    throw IdentifierError("invalid model id value");
}

bool upper_before(const DdpZero& l, const DdpZero& r) {
    if (l.tau_c.imag() != r.tau_c.imag()) return l.tau_c.imag() < r.tau_c.imag();
    const double la = std::abs(l.tau_c.real());
    const double ra = std::abs(r.tau_c.real());
    if (la != ra) return la < ra;
    return l.tau_c.real() < r.tau_c.real();
}

std::vector<DdpZero> upper_half_sorted(std::vector<DdpZero> zeros) {
    std::erase_if(zeros, [](const DdpZero& z) { return !(z.tau_c.imag() > 0.0); });
    std::stable_sort(zeros.begin(), zeros.end(), upper_before);
    return zeros;
}

}  // namespace

std::vector<DdpZero> nearest_upper_zeros(const PulseModel& model, int count) {
    if (count < 0) throw ParameterError("zero count must be non-negative");
    if (count == 0) return {};
    std::vector<DdpZero> zeros = upper_half_sorted(model_zero_seeds(model, count + 1));
    if (static_cast<int>(zeros.size()) < count)
        zeros = upper_half_sorted(model_zero_seeds(model, 2 * count + 2));
    if (static_cast<int>(zeros.size()) < count)
        throw ParameterError("model does not expose enough upper-half-plane zeros");
    zeros.resize(count);
    return zeros;
}

DdpEstimate ddp_single(const PulseModel& model, const QuadratureConfig& config) {
    std::vector<DdpZero> zeros = upper_half_sorted(model_zero_seeds(model, 1));
    if (zeros.empty())
        throw UnsupportedModelError("no upper-half-plane transition point found");
    if (zeros.size() >= 2) {
        const double gap = zeros[1].tau_c.imag() - zeros[0].tau_c.imag();
        if (gap < 1e-12 && std::abs(zeros[1].tau_c - zeros[0].tau_c) > 1e-9)
            throw AmbiguityError("multiple zeros tie for the smallest imaginary part",
                                 {zeros[0].tau_c, zeros[1].tau_c});
    }

    DdpZero zero = zeros.front();
    zero.tau_c = refine_zero(model, zero.tau_c);
    const PhaseIntegral phase = ddp_phase(model, zero.tau_c, config);
    zero.D = phase.D;

    DdpEstimate est;
    est.method = DdpMethod::ddp1;
    est.P = std::exp(-2.0 * phase.D.imag());
    est.exceeds_one = est.P > 1.0;
    est.zeros_used = {zero};
    est.quadrature_residuals = {phase.rel_residual};
    return est;
}

DdpEstimate ddp_multi(const PulseModel& model, std::span<const DdpZero> zero_selection,
                      const QuadratureConfig& config) {
    DdpEstimate est;
    est.method = DdpMethod::ddpN;

    for (std::size_t i = 0; i < zero_selection.size(); ++i) {
        if (!(zero_selection[i].tau_c.imag() > 0.0))
            throw PreconditionError("ddp_multi accepts upper-half-plane zeros only");
        for (std::size_t j = i + 1; j < zero_selection.size(); ++j)
            if (std::abs(zero_selection[i].tau_c - zero_selection[j].tau_c) < 1e-12)
                throw PreconditionError("ddp_multi zero selection must be distinct");
    }

    Complex amplitude{0.0, 0.0};
    for (const DdpZero& selected : zero_selection) {
        DdpZero zero = selected;
        const PhaseIntegral phase = ddp_phase(model, zero.tau_c, config);
        zero.D = phase.D;
        zero.Gamma = gamma_factor(model, zero.tau_c, config.gamma_radius);
        amplitude += *zero.Gamma * std::exp(Complex{0.0, 1.0} * phase.D);
        est.zeros_used.push_back(zero);
        est.quadrature_residuals.push_back(phase.rel_residual);
    }

    est.P = std::norm(amplitude);
    est.exceeds_one = est.P > 1.0;
    return est;
}

double approx_closed_form(const ModelParams& params) {
    if (!(params.a > 0.0))
        throw ParameterError("closed-form approximation requires a > 0");
    const SechTanhBranches x = st_branch_values(params.b / params.a);
    const double arg = std::clamp(2.0 * x.x_plus - 1.0, -1.0, 1.0);
    const double im_arcosh = std::acos(arg);
    return std::exp(-M_PI * params.aT() * im_arcosh / 2.0);
}

double born_approx(const ModelParams& params) {
    const double aT = params.aT();
    const double bT = params.bT();
    const double sech = 1.0 / std::cosh(M_PI * aT);
    return 4.0 * aT * aT * bT * bT * M_PI * M_PI * sech * sech;
}

double cpt_estimate(const ModelParams& params) {
    if (!(params.a > 0.0)) throw ParameterError("CPT estimate requires a > 0");
    const double t = params.b / (2.0 * params.a);
    return t * t / (1.0 + t * t);  // sin^2(arctan(t))
}

}  // namespace pulselab
