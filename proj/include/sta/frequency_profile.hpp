#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "sta/oscillator.hpp"
#include "sta/scaling_law.hpp"

namespace sta {

/// Signed squared trap frequency omega^2(t) on [0, duration()].
/// Negative values mean the potential is an expulsive parabola.
class FrequencyProfile {
public:
    virtual ~FrequencyProfile() = default;
    virtual double omega_sq(double t) const = 0;
    virtual double duration() const = 0;

    /// d(omega)/dt when a closed form exists (Linear / Uniform ramps).
    virtual std::optional<double> omega_dot(double t) const
    {
        (void)t;
        return std::nullopt;
    }

    /// Interior discontinuity times (bang-bang jumps). Integrators and the
    /// grid propagator align their steps to these.
    virtual std::vector<double> breakpoints() const { return {}; }
};

/// omega^2(t) = omega0^2 / b^4 - bddot / b, the Ermakov equation solved for
/// the frequency given a designed scaling law. The constructor asserts the
/// endpoint identities omega^2(0) = omega0^2 and omega^2(tf) = omega0^2 /
/// b(tf)^4, which hold for any boundary-compliant law.
class InverseEngineeredProfile final : public FrequencyProfile {
public:
    InverseEngineeredProfile(std::shared_ptr<const ScalingLaw> law,
                             double omega0);

    double omega_sq(double t) const override;
    double duration() const override { return law_->duration(); }

    const ScalingLaw& law() const { return *law_; }
    double omega0() const { return omega0_; }

private:
    std::shared_ptr<const ScalingLaw> law_;
    double omega0_;
};

/// omega(t) = omega0 + (omegaf - omega0) t / tf.
class LinearRampProfile final : public FrequencyProfile {
public:
    explicit LinearRampProfile(const OscillatorSpec& spec);

    double omega(double t) const;
    double omega_sq(double t) const override;
    double duration() const override { return tf_; }
    std::optional<double> omega_dot(double t) const override;

private:
    double omega0_, omegaf_, tf_;
};

/// Uniform-adiabaticity ramp: omega-dot / omega^2 constant, i.e.
/// omega(t) = omega0 / [1 - (omegaf - omega0) t / (tf omegaf)].
class UniformRampProfile final : public FrequencyProfile {
public:
    explicit UniformRampProfile(const OscillatorSpec& spec);

    double omega(double t) const;
    double omega_sq(double t) const override;
    double duration() const override { return tf_; }
    std::optional<double> omega_dot(double t) const override;

private:
    double omega0_, omegaf_, tf_;
};

} // namespace sta
