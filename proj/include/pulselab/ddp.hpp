#ifndef PULSELAB_DDP_HPP
#define PULSELAB_DDP_HPP

#include <optional>
#include <span>
#include <vector>

#include "pulselab/models.hpp"

namespace pulselab {

/// Scaled time of the coupling peak of the sech*tanh pulse, arcsinh(1).
inline constexpr double kSechTanhPeakTau = 0.881373587019543;

/// Which family of transition points a zero belongs to. The sech-tanh
/// quasienergy zeros split into the X+ ladder (moving along the imaginary
/// axis) and the X- ladder (moving along Im = pi/2 + k pi lines); zeros of
/// other models are tagged generic.
enum class ZeroBranch { x_plus, x_minus, generic };

std::string to_string(ZeroBranch branch);

/// One complex transition point, i.e. a zero of eps^2 + V^2, with the
/// attached phase integral and residue factor once computed.
struct DdpZero {
    Complex tau_c;
    ZeroBranch branch = ZeroBranch::generic;
    int k = 0;                      ///< ladder integer
    std::optional<Complex> D;       ///< phase integral D(tau_c)
    std::optional<Complex> Gamma;   ///< residue factor Gamma_k
};

/// Controls the contour quadrature and the residue limit.
struct QuadratureConfig {
    double rel_tol = 1e-9;          ///< refinement stop: |D_2P - D_P| relative
    int points_per_panel = 16;      ///< Gauss-Legendre nodes per panel
    int max_refinements = 18;       ///< panel doublings before giving up
    double pole_min_distance = 1e-3;///< required contour clearance from poles
    double gamma_radius = 1e-4;     ///< circle radius for the residue limit
};

enum class DdpMethod { ddp1, ddpN, approx1, born, cpt };

/// A transition-probability estimate together with the zeros and
/// quadrature diagnostics behind it. Multi-zero sums may exceed one; the
/// value is reported as-is and flagged, never clamped.
struct DdpEstimate {
    DdpMethod method = DdpMethod::ddp1;
    double P = 0.0;
    bool exceeds_one = false;
    std::vector<DdpZero> zeros_used;
    std::vector<double> quadrature_residuals;  ///< relative, per zero
};

/// The two branch values X± of cosh^2(tau_c) for the sech-tanh model at
/// coupling-to-detuning ratio r = b/a.
struct SechTanhBranches {
    double x_plus;
    double x_minus;
};
SechTanhBranches st_branch_values(double b_over_a);

/// All sech-tanh transition points with ladder index |k| <= k_max, both
/// branches and both arcosh signs, deduplicated and sorted by ascending
/// imaginary part, then ascending |Re|, then Re. Positions only; D and
/// Gamma are left unset.
std::vector<DdpZero> st_zero_points(double b_over_a, int k_max);

/// Newton refinement of a simple zero of eps^2 + V^2 from a seed, using the
/// analytic derivative. Stops when |f| < 1e-12 * amplitude scale; at most
/// 50 iterations. Throws RefinementError on divergence or pole approach.
Complex refine_zero(const PulseModel& model, Complex seed);

/// Result of the contour phase integral.
struct PhaseIntegral {
    Complex D;
    double rel_residual = 0.0;  ///< |last refinement change| / |D|
    int panels = 0;
};

/// D(tau_c) = 2 * integral of rho(s) ds from 0 to tau_c along the straight
/// segment, with the square-root branch continued from the positive real
/// root at s = 0 (nearest-root continuation at the quadrature nodes).
/// Composite Gauss-Legendre panels are doubled until two successive
/// refinements agree to rel_tol. Throws ContourError when the segment
/// passes closer than pole_min_distance to a pole of the integrand.
PhaseIntegral ddp_phase(const PulseModel& model, Complex tau_c,
                        const QuadratureConfig& config = {});

/// Residue factor Gamma_k = 4i lim_{tau->tau_c} (tau - tau_c) gamma(tau),
/// evaluated as a circle average around tau_c and validated under radius
/// halving (must be stable to 1e-4). Throws LimitError otherwise.
Complex gamma_factor(const PulseModel& model, Complex tau_c, double radius = 1e-4);

/// Original single-point DDP estimate P = exp(-2 Im D(tau_c)) using the
/// upper-half-plane zero with the smallest imaginary part. Throws
/// AmbiguityError when two distinct zeros tie for nearest.
DdpEstimate ddp_single(const PulseModel& model, const QuadratureConfig& config = {});

/// Generalized DDP estimate P = |sum_k Gamma_k exp(i D(tau_c_k))|^2 over a
/// caller-selected set of distinct upper-half-plane zeros.
DdpEstimate ddp_multi(const PulseModel& model, std::span<const DdpZero> zero_selection,
                      const QuadratureConfig& config = {});

/// The count nearest upper-half-plane zeros of the model, ordered by
/// ascending imaginary part then |Re|.
std::vector<DdpZero> nearest_upper_zeros(const PulseModel& model, int count);

/// Closed-form approximation P = exp(-pi aT Im(arcosh(2 X+ - 1)) / 2)
/// (principal arcosh, imaginary part in [0, pi]). Requires a > 0.
double approx_closed_form(const ModelParams& params);

/// First Born approximation P = 4 (aT)^2 (bT)^2 pi^2 sech^2(pi aT),
/// valid for small bT; returned unclamped.
double born_approx(const ModelParams& params);

/// Area-theorem estimate P = sin^2(arctan(b / 2a)) of the strong-coupling
/// transfer. Requires a > 0.
double cpt_estimate(const ModelParams& params);

}  // namespace pulselab

#endif  // PULSELAB_DDP_HPP
