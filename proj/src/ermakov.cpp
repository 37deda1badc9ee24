#include "sta/ermakov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

namespace sta {

InverseEngineeredProfile inverse_frequency(
    std::shared_ptr<const ScalingLaw> law, double omega0)
{
    return InverseEngineeredProfile(std::move(law), omega0);
}

namespace {

using State = std::array<double, 2>; // (b, bdot)

struct ErmakovRhs {
    const FrequencyProfile& profile;
    double w0sq;

    void operator()(const State& y, State& dydt, double t) const
    {
        const double b = y[0];
        if (!(b > 1e-9 && b < 1e9))
            throw BlowUp("ermakov_forward: b left (1e-9, 1e9) at t = " +
                         std::to_string(t));
        dydt[0] = y[1];
        dydt[1] = w0sq / (b * b * b) - profile.omega_sq(t) * b;
    }
};

} // namespace

NumericLaw ermakov_forward(const FrequencyProfile& profile, double b0,
                           double bdot0, double omega0,
                           const std::vector<double>& t_span, double tol)
{
    if (!(b0 > 0.0)) throw NonPositiveParameter("ermakov_forward: b0 <= 0");
    if (!(tol > 0.0 && tol <= 1e-4))
        throw Error("ermakov_forward: tol must be in (0, 1e-4]");
    if (t_span.size() < 2 || t_span.front() != 0.0)
        throw Error("ermakov_forward: t_span must start at 0 and have >= 2 points");
    for (std::size_t i = 1; i < t_span.size(); ++i)
        if (!(t_span[i] > t_span[i - 1]))
            throw Error("ermakov_forward: t_span must be strictly increasing");

    const double tf = t_span.back();
    const double w0sq = omega0 * omega0;
    ErmakovRhs rhs{profile, w0sq};

    // Integration restarts at profile discontinuities so the error control
    // never sees a jump inside a step.
    std::vector<double> stops = profile.breakpoints();
    stops.push_back(tf);
    std::sort(stops.begin(), stops.end());
    stops.erase(std::remove_if(stops.begin(), stops.end(),
                               [tf](double t) { return t <= 0.0 || t > tf; }),
                stops.end());

    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_dense_output(
        tol, tol, ode::runge_kutta_dopri5<State>());

    std::vector<double> bs, bdots, bddots;
    bs.reserve(t_span.size());
    bdots.reserve(t_span.size());
    bddots.reserve(t_span.size());

    State y{b0, bdot0};
    auto record = [&](double t, const State& s) {
        bs.push_back(s[0]);
        bdots.push_back(s[1]);
        bddots.push_back(w0sq / (s[0] * s[0] * s[0]) -
                         profile.omega_sq(t) * s[0]);
    };

    std::size_t next_sample = 0;
    if (t_span[0] == 0.0) {
        record(0.0, y);
        next_sample = 1;
    }

    double t0 = 0.0;
    for (double t1 : stops) {
        if (t1 <= t0) continue;
        stepper.initialize(y, t0, std::min(t1 - t0, tf / 1000.0));
        while (stepper.current_time() < t1) {
            const double remaining = t1 - stepper.current_time();
            if (stepper.current_time_step() > remaining)
                stepper.initialize(stepper.current_state(),
                                   stepper.current_time(), remaining);
            const double before = stepper.current_time();
            stepper.do_step(rhs);
            if (stepper.current_time() <= before ||
                stepper.current_time() - before < 1e-16 * tf)
                throw StepUnderflow("ermakov_forward: integrator stalled at t = " +
                                    std::to_string(before));
            while (next_sample < t_span.size() &&
                   t_span[next_sample] <= stepper.current_time()) {
                State s;
                stepper.calc_state(t_span[next_sample], s);
                record(t_span[next_sample], s);
                ++next_sample;
            }
        }
        y = stepper.current_state();
        t0 = t1;
    }
    // Final point can be missed by floating comparison above.
    while (next_sample < t_span.size()) {
        record(t_span[next_sample], y);
        ++next_sample;
    }

    return NumericLaw(t_span, std::move(bs), std::move(bdots),
                      std::move(bddots));
}

double adiabaticity_margin(const FrequencyProfile& profile, int n_samples)
{
    if (n_samples < 2) throw Error("adiabaticity_margin: n_samples < 2");
    const double tf = profile.duration();
    const double h = tf / 1e6;

    auto omega_at = [&](double t) {
        const double w2 = profile.omega_sq(t);
        if (!(w2 > 0.0))
            throw NegativeFrequencyRegion(
                "adiabaticity_margin: omega^2 <= 0 at t = " + std::to_string(t));
        return std::sqrt(w2);
    };

    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double t = tf * static_cast<double>(i) / (n_samples - 1);
        const double w2 = profile.omega_sq(t);
        if (!(w2 > 0.0))
            throw NegativeFrequencyRegion(
                "adiabaticity_margin: omega^2 <= 0 at t = " + std::to_string(t));
        double wdot;
        if (auto d = profile.omega_dot(t)) {
            wdot = *d;
        } else {
            // 5-point central difference, stencil shifted inside [0, tf].
            const double tc = std::clamp(t, 2.0 * h, tf - 2.0 * h);
            wdot = (-omega_at(tc + 2 * h) + 8 * omega_at(tc + h) -
                    8 * omega_at(tc - h) + omega_at(tc - 2 * h)) /
                   (12.0 * h);
        }
        worst = std::max(worst, std::abs(std::sqrt(2.0) * wdot / (8.0 * w2)));
    }
    return worst;
}

LinearRampProfile linear_ramp(const OscillatorSpec& spec)
{
    return LinearRampProfile(spec);
}

UniformRampProfile uniform_ramp(const OscillatorSpec& spec)
{
    return UniformRampProfile(spec);
}

} // namespace sta
