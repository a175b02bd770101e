#ifndef PULSELAB_STATE_HPP
#define PULSELAB_STATE_HPP

#include <complex>

namespace pulselab {

/// Two-level state vector. c1 is the amplitude of the initially populated
/// state, c2 the amplitude of the target state; the default is the standard
/// initial condition (c2, c1) = (0, 1).
struct StateVector {
    std::complex<double> c2{0.0, 0.0};
    std::complex<double> c1{1.0, 0.0};

    double norm_sq() const { return std::norm(c2) + std::norm(c1); }
};

}  // namespace pulselab

#endif  // PULSELAB_STATE_HPP
