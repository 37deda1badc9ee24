#pragma once

#include <memory>
#include <vector>

#include "sta/frequency_profile.hpp"
#include "sta/oscillator.hpp"
#include "sta/scaling_law.hpp"

namespace sta {

/// omega^2(t) from a designed scaling law: omega0^2/b^4 - bddot/b.
InverseEngineeredProfile inverse_frequency(
    std::shared_ptr<const ScalingLaw> law, double omega0);

/// Integrates bddot = omega0^2/b^3 - omega^2(t) b with an adaptive
/// dormand-prince pair, restarting at profile breakpoints, and returns the
/// solution sampled at t_span (which must be increasing and start at 0).
/// Throws BlowUp if b leaves (1e-9, 1e9), StepUnderflow if the integrator
/// stalls.
NumericLaw ermakov_forward(const FrequencyProfile& profile, double b0,
                           double bdot0, double omega0,
                           const std::vector<double>& t_span,
                           double tol = 1e-10);

/// max over n_samples uniform times of |sqrt(2) omega-dot / (8 omega^2)|.
/// Closed-form omega-dot is used where the profile provides one, otherwise
/// a five-point central difference of sqrt(omega^2). Throws
/// NegativeFrequencyRegion if any sampled omega^2 <= 0.
double adiabaticity_margin(const FrequencyProfile& profile, int n_samples);

LinearRampProfile linear_ramp(const OscillatorSpec& spec);
UniformRampProfile uniform_ramp(const OscillatorSpec& spec);

} // namespace sta
