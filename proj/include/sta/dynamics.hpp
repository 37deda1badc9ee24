#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "sta/frequency_profile.hpp"
#include "sta/oscillator.hpp"
#include "sta/scaling_law.hpp"

namespace sta {

/// Complex wavefunction sampled on a uniform spatial grid.
struct GridState {
    double x_min = 0.0;
    double x_max = 0.0;
    std::vector<std::complex<double>> psi;
    double time = 0.0;

    double dx() const
    {
        return (x_max - x_min) / static_cast<double>(psi.size() - 1);
    }
    double x(std::size_t j) const { return x_min + dx() * static_cast<double>(j); }
};

/// Uniform grid positions, x_min..x_max inclusive.
std::vector<double> uniform_grid(double x_min, double x_max, int n_points);

/// Trapezoid-rule squared norm.
double norm_sq(const GridState& state);

/// Trapezoid-rule overlap <a|b>.
std::complex<double> overlap(const GridState& a, const GridState& b);

/// |<a|b>|^2; throws GridMismatch unless the grids are identical.
double fidelity(const GridState& a, const GridState& b);

/// Normalized harmonic-oscillator eigenfunction at frequency omega,
/// evaluated by the stable three-term recursion with the Gaussian folded in.
std::vector<double> instantaneous_eigenstate(int n, double omega,
                                             const OscillatorSpec& spec,
                                             std::span<const double> x);

/// |<u_n(omega)|psi>|^2 for n = 0..n_max.
std::vector<double> populations(const GridState& psi, double omega, int n_max,
                                const OscillatorSpec& spec);

/// Exact single-mode solution of the time-dependent Schroedinger equation
/// built on a scaling law; valid while omega0^2 > 0.
struct ExpandingMode {
    int n = 0;
    std::shared_ptr<const ScalingLaw> law;
    OscillatorSpec spec;
};

std::vector<std::complex<double>> expanding_mode_wavefunction(
    const ExpandingMode& mode, double t, std::span<const double> x);

/// Average energy (2n+1) hbar/(4 omega0) (bdot^2 + omega^2 b^2 + omega0^2/b^2).
/// Valid for negative omega^2 as well.
double mode_energy(const ExpandingMode& mode, const FrequencyProfile& profile,
                   double t);

/// Standard deviation of position: b sqrt((n+1/2) hbar / (m omega0)).
double mode_width(const ExpandingMode& mode, double t);

/// Grid expectation of H(t) = p^2/2m + m omega^2 x^2 / 2, with the kinetic
/// term evaluated by the propagator's stencil.
double grid_energy(const GridState& state, double omega_sq,
                   const OscillatorSpec& spec);

struct GridSettings {
    double half_width = 0.0; // x_max = -x_min
    int n_points = 16384;
    double dt = 0.0;
};

/// Defaults sized from the scaling law's target expansion: half-width
/// 8 * gamma * sqrt((n_max + 1/2) hbar / (m omega0)), dt capped both by the
/// trap period and by the step count needed for phase accuracy.
GridSettings default_grid(const OscillatorSpec& spec, int n_max);

/// Initial state u_n(omega0) sampled on the settings' grid.
GridState initial_eigenstate(int n, const OscillatorSpec& spec,
                             const GridSettings& grid);

/// Norm-preserving implicit propagation under H(t) with signed omega^2(t):
/// unitary Pade-approximant time step, high-order spatial stencil, banded
/// solves per step. Steps
/// align exactly with profile breakpoints. Throws GridTooSmall if boundary
/// probability density exceeds 1e-10, NormDrift if the trapezoid norm
/// drifts by more than 1e-6.
GridState propagate(const FrequencyProfile& profile, const GridState& psi0,
                    const OscillatorSpec& spec, double dt);

/// Same, invoking observer(state) whenever the propagation passes one of
/// sample_times (hit exactly). sample_times must be increasing, in [0, tf].
GridState propagate_sampled(
    const FrequencyProfile& profile, const GridState& psi0,
    const OscillatorSpec& spec, double dt,
    const std::vector<double>& sample_times,
    const std::function<void(const GridState&)>& observer);

} // namespace sta
