#include <doctest.h>

#include <cmath>

#include "pulselab/adiabatic.hpp"
#include "pulselab/dynamics.hpp"

using namespace pulselab;
using doctest::Approx;

TEST_SUITE("dynamics") {

TEST_CASE("rosen-zener propagation matches the closed form") {
    const ModelParams p{0.3, 1.2, 1.0};
    const auto rz = make_model(ModelId::rosen_zener, p);
    const Trajectory t = propagate(rz);
    CHECK(std::abs(t.final_p - exact_P_rosen_zener(p)) < 1e-6);
    CHECK(t.norm_drift < 1e-9);
    CHECK(t.grid.size() == 2001);
    CHECK(t.final_p == t.p_of_t.back());
    CHECK(t.grid.front() == -20.0);
    CHECK(t.grid.back() == 20.0);
}

TEST_CASE("no coupling means no transition") {
    const auto st = make_model(ModelId::sech_tanh, {1.0, 0.0, 1.0});
    CHECK(final_transition_probability(st) == Approx(0.0).scale(1.0).epsilon(1e-20));
}

TEST_CASE("odd-odd symmetry suppresses the final transition") {
    const auto oo = make_model(ModelId::odd_odd, {1.0, 2.0, 1.0});
    const Trajectory t = propagate(oo);
    CHECK(t.final_p < 1e-8);
    CHECK(t.norm_drift < 1e-9);
    // yet the transient population is substantial mid-pulse
    double max_p = 0.0;
    for (double p : t.p_of_t) max_p = std::max(max_p, p);
    CHECK(max_p > 1e-3);
}

TEST_CASE("propagation requires a normalized initial state") {
    const auto st = make_model(ModelId::sech_tanh, {1.0, 1.0, 1.0});
    StateVector bad;
    bad.c1 = {0.9, 0.0};
    CHECK_THROWS_AS(propagate(st, {}, bad), PreconditionError);
}

TEST_CASE("config validation") {
    const auto st = make_model(ModelId::sech_tanh, {1.0, 1.0, 1.0});
    IntegratorConfig cfg;
    cfg.rtol = 0.0;
    CHECK_THROWS_AS(propagate(st, cfg), ParameterError);
    cfg = {};
    cfg.dense_output_points = 1;
    CHECK_THROWS_AS(propagate(st, cfg), ParameterError);
    cfg = {};
    cfg.tau_max = -1.0;
    CHECK_THROWS_AS(propagate(st, cfg), ParameterError);
}

TEST_CASE("step budget exhaustion carries the partial trajectory") {
    const auto st = make_model(ModelId::sech_tanh, {1.0, 5.0, 1.0});
    IntegratorConfig cfg;
    cfg.max_steps = 10;
    try {
        propagate(st, cfg);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.partial().steps <= 10);
        CHECK_FALSE(e.partial().states.empty());
    }
}

TEST_CASE("resonant rabi oscillates as the area theorem dictates") {
    const auto rabi = make_model(ModelId::rabi, {0.0, 1.0, 1.0});
    const Trajectory t = propagate(rabi);
    for (std::size_t i = 0; i < t.grid.size(); i += 25) {
        const double half_area = t.grid[i] + 20.0;  // bT = 1
        const double expected = std::sin(half_area) * std::sin(half_area);
        CHECK(std::abs(t.p_of_t[i] - expected) < 1e-8);
    }
}

TEST_CASE("detuned rabi matches the closed form") {
    const auto rabi = make_model(ModelId::rabi, {0.7, 1.1, 1.0});
    const double p = final_transition_probability(rabi);
    CHECK(std::abs(p - *rabi.exact_P()) < 1e-8);
}

TEST_CASE("time reversal recovers the initial state") {
    const auto rz = make_model(ModelId::rosen_zener, {0.3, 1.2, 1.0});
    const IntegratorConfig cfg;
    const FinalState fwd = evolve(rz, cfg, StateVector{}, -20.0, 20.0);
    StateVector back_start = fwd.state;
    // renormalize the drifted state so evolve accepts it
    const double n = std::sqrt(back_start.norm_sq());
    back_start.c2 /= n;
    back_start.c1 /= n;
    const FinalState back = evolve(rz, cfg, back_start, 20.0, -20.0);
    CHECK(std::abs(back.state.c2 - Complex{0.0, 0.0}) < 1e-7);
    CHECK(std::abs(back.state.c1 - Complex{1.0, 0.0}) < 1e-7);
}

TEST_CASE("tolerance convergence") {
    const auto st = make_model(ModelId::sech_tanh, {0.5, 3.0, 1.0});
    IntegratorConfig coarse;
    IntegratorConfig fine;
    fine.rtol = coarse.rtol / 2.0;
    fine.atol = coarse.atol / 2.0;
    const double p_coarse = final_transition_probability(st, coarse);
    const double p_fine = final_transition_probability(st, fine);
    CHECK(std::abs(p_coarse - p_fine) < 10.0 * fine.rtol);
}

TEST_CASE("truncation bound") {
    const auto st = make_model(ModelId::sech_tanh, {1.0, 1.0, 1.0});
    IntegratorConfig cfg;
    CHECK(truncation_check(st, cfg) == Approx(8.2446144897542313e-9).epsilon(1e-12));
    CHECK(truncation_check(st, cfg) < 1e-8);
    cfg.tau_max = 1e-12;
    CHECK(truncation_check(st, cfg) == Approx(2.0).epsilon(1e-9));  // order bT

    const auto st0 = make_model(ModelId::sech_tanh, {1.0, 0.0, 1.0});
    cfg = {};
    CHECK(truncation_check(st0, cfg) == 0.0);

    const auto rz = make_model(ModelId::rosen_zener, {1.0, 1.0, 1.0});
    CHECK(truncation_check(rz, cfg) == Approx(4.0 * std::atan(std::exp(-20.0))).epsilon(1e-12));

    const auto rabi = make_model(ModelId::rabi, {0.0, 1.0, 1.0});
    CHECK_THROWS_AS(truncation_check(rabi, cfg), UnsupportedModelError);
    const auto lz = make_model(ModelId::landau_zener, {0.0, 1.0, 1.0}, 1.0);
    CHECK_THROWS_AS(truncation_check(lz, cfg), UnsupportedModelError);
}

TEST_CASE("landau-zener window converges the survival probability") {
    // propagate in the adiabatic frame (rotate at both ends) and compare
    // the survival probability against exp(-pi b^2 / alpha)
    for (double b : {0.5, 1.0, 1.5}) {
        const auto lz = make_model(ModelId::landau_zener, {0.0, b, 1.0}, 1.0);
        IntegratorConfig cfg;
        cfg.tau_max = lz.window();
        // chi_+(-w) expressed diabatically: theta(-w) is just below pi
        const double th = mixing_angle_at(lz, -cfg.tau_max);
        StateVector chi_plus{{std::cos(th / 2.0), 0.0}, {std::sin(th / 2.0), 0.0}};
        const FinalState fs = evolve(lz, cfg, chi_plus, -cfg.tau_max, cfg.tau_max);
        const StateVector ad = to_adiabatic(fs.state, lz, cfg.tau_max);
        // the nonadiabatic jump chi+ -> chi- is the diabatic survival
        const double jump = std::norm(ad.c1);
        CHECK(std::abs(jump - exact_P_landau_zener({0.0, b, 1.0}, 1.0)) < 2e-6);
    }
}

}  // TEST_SUITE
