#pragma once

#include <utility>
#include <vector>

#include "sta/frequency_profile.hpp"
#include "sta/oscillator.hpp"
#include "sta/scaling_law.hpp"

namespace sta {

/// Three-jump piecewise-constant frequency trajectory: omega = i*omegaI on
/// (0, tau1), omega2 on (tau1, tf), with omega0 / omegaf at the isolated
/// endpoints.
struct BangBangPlan {
    double omegaI = 0.0; // magnitude of the imaginary first-segment frequency
    double omega2 = 0.0; // real second-segment frequency
    double tau1 = 0.0;
    double tau2 = 0.0;
    double gamma = 1.0;

    double tf() const { return tau1 + tau2; }
};

/// First-segment scaling factor under constant omega^2 = -omegaI^2 from
/// (b, bdot)(0) = (1, 0):  b1 = sqrt(1 + ((omega0^2+omegaI^2)/omegaI^2)
/// sinh^2(omegaI t)). Returns (b, bdot).
std::pair<double, double> segment1_b(double omegaI, double omega0, double t);

/// Second-segment scaling factor under constant real omega2, pinned to
/// (b, bdot)(tf) = (gamma, 0):  b2 = sqrt(gamma^2 + (omega0^2/(omega2^2
/// gamma^2) - gamma^2) sin^2(omega2 (t - tf))). Returns (b, bdot).
/// Throws DomainError if the radicand is not positive at t.
std::pair<double, double> segment2_b(double omega2, double omega0,
                                     double gamma, double tf, double t);

/// Solves the continuity conditions b1(tau1) = b2(tau1), b1dot(tau1) =
/// b2dot(tau1) for (tau1, tf). Among the sine branches the solution with
/// the smallest positive tf is returned. Throws NoSolution if the scan over
/// tau1 in (0, 10/omegaI] finds no root.
BangBangPlan solve_matching(double omegaI, double omega2,
                            const OscillatorSpec& spec);

/// All matched plans found by the scan, sorted by tf.
std::vector<BangBangPlan> solve_matching_candidates(
    double omegaI, double omega2, const OscillatorSpec& spec);

/// Minimal time reachable by real-frequency three-jump trajectories,
/// sqrt(1 - omegaf/omega0) / sqrt(omegaf omega0). Imaginary first segments
/// undercut it.
double t_min(const OscillatorSpec& spec);

/// Piecewise-constant squared frequency of a plan. Right-continuous on
/// [0, tf); the isolated endpoint values are omega0^2 and omegaf^2.
class BangBangProfile final : public FrequencyProfile {
public:
    BangBangProfile(const BangBangPlan& plan, const OscillatorSpec& spec);

    double omega_sq(double t) const override;
    double duration() const override { return plan_.tf(); }
    std::vector<double> breakpoints() const override { return {plan_.tau1}; }

    const BangBangPlan& plan() const { return plan_; }

private:
    BangBangPlan plan_;
    double omega0_, omegaf_;
};

BangBangProfile bangbang_profile(const BangBangPlan& plan,
                                 const OscillatorSpec& spec);

/// Piecewise analytic scaling law of a matched plan.
class BangBangLaw final : public ScalingLaw {
public:
    BangBangLaw(const BangBangPlan& plan, double omega0);

    double b(double t) const override;
    double bdot(double t) const override;
    double bddot(double t) const override;
    double duration() const override { return plan_.tf(); }

private:
    BangBangPlan plan_;
    double omega0_;
};

} // namespace sta
