#include "sta/frequency_profile.hpp"

#include <cmath>
#include <string>

namespace sta {

InverseEngineeredProfile::InverseEngineeredProfile(
    std::shared_ptr<const ScalingLaw> law, double omega0)
    : law_(std::move(law)), omega0_(omega0)
{
    if (!law_) throw Error("InverseEngineeredProfile: null law");
    if (!(omega0_ > 0.0))
        throw NonPositiveParameter("InverseEngineeredProfile: omega0 <= 0");

    const double w0sq = omega0_ * omega0_;
    const double tf = law_->duration();
    const double start = omega_sq(0.0);
    if (std::abs(start - w0sq) > 1e-9 * w0sq)
        throw Error("InverseEngineeredProfile: omega^2(0) != omega0^2; "
                    "law does not satisfy b(0)=1, bddot(0)=0");
    const double bf = law_->b(tf);
    const double expected_end = w0sq / (bf * bf * bf * bf);
    const double end = omega_sq(tf);
    if (std::abs(end - expected_end) > 1e-9 * expected_end)
        throw Error("InverseEngineeredProfile: omega^2(tf) != omega0^2/b(tf)^4; "
                    "law does not satisfy bddot(tf)=0");
}

double InverseEngineeredProfile::omega_sq(double t) const
{
    const double b = law_->b(t);
    const double w0sq = omega0_ * omega0_;
    return w0sq / (b * b * b * b) - law_->bddot(t) / b;
}

LinearRampProfile::LinearRampProfile(const OscillatorSpec& spec)
    : omega0_(spec.omega0), omegaf_(spec.omegaf), tf_(spec.tf)
{
}

double LinearRampProfile::omega(double t) const
{
    return omega0_ + (omegaf_ - omega0_) * t / tf_;
}

double LinearRampProfile::omega_sq(double t) const
{
    const double w = omega(t);
    return w * w;
}

std::optional<double> LinearRampProfile::omega_dot(double t) const
{
    (void)t;
    return (omegaf_ - omega0_) / tf_;
}

UniformRampProfile::UniformRampProfile(const OscillatorSpec& spec)
    : omega0_(spec.omega0), omegaf_(spec.omegaf), tf_(spec.tf)
{
    if (!(omegaf_ < omega0_))
        throw Error("UniformRampProfile: requires omegaf < omega0 "
                    "(denominator must stay positive)");
}

double UniformRampProfile::omega(double t) const
{
    return omega0_ / (1.0 - (omegaf_ - omega0_) * t / (tf_ * omegaf_));
}

double UniformRampProfile::omega_sq(double t) const
{
    const double w = omega(t);
    return w * w;
}

std::optional<double> UniformRampProfile::omega_dot(double t) const
{
    // omega-dot / omega^2 is the constant (omegaf - omega0)/(tf omegaf omega0).
    const double w = omega(t);
    return (omegaf_ - omega0_) / (tf_ * omegaf_ * omega0_) * w * w;
}

} // namespace sta
