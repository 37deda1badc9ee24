// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "sta/ansatz.hpp"
#include "sta/bangbang.hpp"
#include "sta/dynamics.hpp"
#include "sta/ermakov.hpp"
#include "sta/oscillator.hpp"

using namespace sta;

namespace {

int g_failures = 0;

void run(int idx, const char* name, const std::function<bool(std::string&)>& fn)
{
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("%s criterion %d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL",
                idx, name, secs, detail.empty() ? "" : " -- ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

OscillatorSpec gamma10(double tf)
{
    return make_spec(hz_to_angular(250), hz_to_angular(2.5), tf);
}

std::vector<double> times(double tf, int n)
{
    std::vector<double> t(n + 1);
    for (int i = 0; i <= n; ++i) t[i] = tf * i / n;
    return t;
}

class ConstantProfile final : public FrequencyProfile {
public:
    ConstantProfile(double omega_sq, double tf) : w2_(omega_sq), tf_(tf) {}
    double omega_sq(double) const override { return w2_; }
    double duration() const override { return tf_; }

private:
    double w2_, tf_;
};

const std::vector<double> kTfValues = {0.002, 0.006, 0.010, 0.015, 0.025};

bool c1_closed_form(std::string& detail)
{
    auto law = design_polynomial(gamma10(0.025));
    const double expected[6] = {1.0, 0.0, 0.0, 90.0, -135.0, 54.0};
    if (law.coeffs().size() != 6) {
        detail = "coefficient count != 6";
        return false;
    }
    for (int j = 0; j < 6; ++j) {
        const double err = std::abs(law.coeffs()[j] - expected[j]);
        if (err > 1e-12 * std::max(1.0, std::abs(expected[j]))) {
            detail = "coefficient " + std::to_string(j) + " off by " +
                     std::to_string(err);
            return false;
        }
    }
    return true;
}

bool c2_endpoints(std::string& detail)
{
    for (double tf : kTfValues) {
        auto spec = gamma10(tf);
        const double w0sq = spec.omega0 * spec.omega0;
        const double wfsq = spec.omegaf * spec.omegaf;
        std::vector<std::shared_ptr<const ScalingLaw>> laws = {
            std::make_shared<PolynomialLaw>(design_polynomial(spec)),
            std::make_shared<ExpPolynomialLaw>(design_exp_polynomial(spec))};
        for (const auto& law : laws) {
            auto profile = inverse_frequency(law, spec.omega0);
            if (std::abs(profile.omega_sq(0.0) / w0sq - 1.0) > 1e-9 ||
                std::abs(profile.omega_sq(tf) / wfsq - 1.0) > 1e-9 ||
                std::abs(law->b(tf) - 10.0) > 1e-9 * 10.0) {
                detail = "endpoint violated at tf = " + std::to_string(tf);
                return false;
            }
        }
    }
    return true;
}

bool c3_frictionless_cooling(std::string& detail)
{
    auto spec = gamma10(0.002);
    auto law = std::make_shared<PolynomialLaw>(design_polynomial(spec));
    auto profile = inverse_frequency(law, spec.omega0);

    for (int n = 0; n <= 3; ++n) {
        const auto t0 = std::chrono::steady_clock::now();
        auto grid = default_grid(spec, n);
        auto psi0 = initial_eigenstate(n, spec, grid);
        auto psif = propagate(profile, psi0, spec, grid.dt);

        auto p = populations(psif, spec.omegaf, n + 2, spec);
        const double e = grid_energy(psif, spec.omegaf * spec.omegaf, spec);
        const double e_ad = (n + 0.5) * spec.hbar * spec.omegaf;

        ExpandingMode mode{n, law, spec};
        std::vector<double> x(psif.psi.size());
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = psif.x(j);
        auto analytic = expanding_mode_wavefunction(mode, spec.tf, x);
        double max_err = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j)
            max_err = std::max(max_err, std::abs(psif.psi[j] - analytic[j]));

        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "n=%d: p=%.6f dE=%.2e maxerr=%.2e (%.1f s); ", n, p[n],
                      std::abs(e / e_ad - 1.0), max_err, secs);
        detail += buf;
        if (p[n] < 0.999 || std::abs(e / e_ad - 1.0) > 0.005 ||
            max_err > 1e-4 || secs > 60.0)
            return false;
    }
    return true;
}

bool c4_round_trip(std::string& detail)
{
    for (double tf : kTfValues) {
        auto spec = gamma10(tf);
        auto law = std::make_shared<PolynomialLaw>(design_polynomial(spec));
        auto profile = inverse_frequency(law, spec.omega0);
        auto t = times(tf, 1000);
        auto numeric = ermakov_forward(profile, 1.0, 0.0, spec.omega0, t, 1e-12);
        double max_rel = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double exact = law->b(t[i]);
            max_rel = std::max(
                max_rel, std::abs(numeric.b_samples()[i] - exact) / exact);
        }
        if (max_rel > 1e-8) {
            detail = "tf = " + std::to_string(tf) +
                     ": max rel err = " + std::to_string(max_rel);
            return false;
        }
    }
    return true;
}

bool c5_t_min(std::string& detail)
{
    const double t = t_min(gamma10(0.025));
    detail = "t_min = " + std::to_string(t * 1e3) + " ms";
    return std::abs(t - 6.33e-3) <= 0.01e-3;
}

bool c6_bangbang(std::string& detail)
{
    auto spec = gamma10(0.002);
    auto plan = solve_matching(0.9 * spec.omega0, spec.omega0, spec);
    char buf[96];
    std::snprintf(buf, sizeof buf, "tf = %.4f ms; ", plan.tf() * 1e3);
    detail += buf;
    if (plan.tf() < 1.8e-3 || plan.tf() > 2.2e-3 || plan.tf() >= t_min(spec))
        return false;

    auto [b1, b1dot] = segment1_b(plan.omegaI, spec.omega0, plan.tau1);
    auto [b2, b2dot] =
        segment2_b(plan.omega2, spec.omega0, plan.gamma, plan.tf(), plan.tau1);
    const double r1 = std::abs(b1 - b2) / plan.gamma;
    const double r2 = std::abs(b1dot - b2dot) / (plan.gamma * spec.omega0);
    if (r1 > 1e-9 || r2 > 1e-9) {
        detail += "matching residuals " + std::to_string(r1) + ", " +
                  std::to_string(r2);
        return false;
    }

    auto profile = bangbang_profile(plan, spec);
    auto t = times(plan.tf(), 2000);
    auto numeric = ermakov_forward(profile, 1.0, 0.0, spec.omega0, t, 1e-12);
    BangBangLaw analytic(plan, spec.omega0);
    double max_rel = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i)
        max_rel = std::max(max_rel,
                           std::abs(numeric.b_samples()[i] - analytic.b(t[i])) /
                               analytic.b(t[i]));
    if (max_rel > 1e-6) {
        detail += "replay max rel err = " + std::to_string(max_rel);
        return false;
    }
    return true;
}

bool c7_expulsive(std::string& detail)
{
    for (double tf : {0.002, 0.006}) {
        auto spec = gamma10(tf);
        auto law = std::make_shared<PolynomialLaw>(design_polynomial(spec));
        auto profile = inverse_frequency(law, spec.omega0);
        double min_w2 = 1e300;
        for (int i = 0; i <= 4000; ++i)
            min_w2 = std::min(min_w2, profile.omega_sq(tf * i / 4000.0));
        if (!(min_w2 < 0.0)) {
            detail = "no expulsive interval at tf = " + std::to_string(tf);
            return false;
        }
    }
    return true;
}

bool c8_thresholds(std::string& detail)
{
    // Both reference margins scale as 1/tf, so the tf where margin = 1 is
    // tf_test * margin(tf_test).
    auto lin_spec = gamma10(1.0);
    const double lin_thr = 1.0 * adiabaticity_margin(linear_ramp(lin_spec), 4001);
    auto uni_spec = gamma10(0.1);
    const double uni_thr =
        0.1 * adiabaticity_margin(uniform_ramp(uni_spec), 4001);
    char buf[96];
    std::snprintf(buf, sizeof buf, "linear %.4f s, uniform %.4f ms", lin_thr,
                  uni_thr * 1e3);
    detail = buf;
    return std::abs(lin_thr / 1.11 - 1.0) <= 0.02 &&
           std::abs(uni_thr / 11.1e-3 - 1.0) <= 0.02;
}

bool c9_reference_errors(std::string& detail)
{
    auto excess = [](const FrequencyProfile& profile,
                     const OscillatorSpec& spec) {
        auto numeric = ermakov_forward(profile, 1.0, 0.0, spec.omega0,
                                       times(spec.tf, 400), 1e-12);
        const double bf = numeric.b_samples().back();
        const double bdf = numeric.bdot_samples().back();
        const double e =
            spec.hbar / (4.0 * spec.omega0) *
            (bdf * bdf + spec.omegaf * spec.omegaf * bf * bf +
             spec.omega0 * spec.omega0 / (bf * bf));
        return e / (0.5 * spec.hbar * spec.omegaf) - 1.0;
    };

    auto lin_spec = gamma10(6.0);
    const double lin_ex = excess(linear_ramp(lin_spec), lin_spec);
    auto uni_spec = gamma10(0.045);
    const double uni_ex = excess(uniform_ramp(uni_spec), uni_spec);
    char buf[96];
    std::snprintf(buf, sizeof buf, "linear %.3f%%, uniform %.3f%%",
                  lin_ex * 100, uni_ex * 100);
    detail = buf;
    return lin_ex >= 0.003 && lin_ex <= 0.03 && uni_ex >= 0.003 &&
           uni_ex <= 0.03;
}

bool c10_properties(std::string& detail)
{
    // (a) Unitarity: 1e5 constant-omega steps, norm drift <= 1e-8.
    {
        auto spec = gamma10(0.025);
        const double dt = 0.002 / spec.omega0;
        ConstantProfile profile(spec.omega0 * spec.omega0, 1e5 * dt);
        GridSettings grid;
        grid.half_width =
            8.0 * std::sqrt(spec.hbar / (spec.mass * spec.omega0));
        grid.n_points = 1024;
        grid.dt = dt;
        auto psi0 = initial_eigenstate(0, spec, grid);
        auto psif = propagate(profile, psi0, spec, dt);
        const double drift = std::abs(norm_sq(psif) / norm_sq(psi0) - 1.0);
        if (drift > 1e-8) {
            detail = "norm drift = " + std::to_string(drift);
            return false;
        }
    }

    // (b) Analytic mode energy vs grid energy at 50 times, rel err <= 1e-4.
    {
        auto spec = gamma10(0.002);
        auto law = std::make_shared<PolynomialLaw>(design_polynomial(spec));
        auto profile = inverse_frequency(law, spec.omega0);
        ExpandingMode mode{0, law, spec};
        GridSettings grid = default_grid(spec, 0);
        grid.n_points = 8192;
        auto psi0 = initial_eigenstate(0, spec, grid);
        std::vector<double> sample_times;
        for (int i = 1; i <= 50; ++i)
            sample_times.push_back(spec.tf * i / 50.0);
        double worst = 0.0;
        propagate_sampled(profile, psi0, spec, grid.dt, sample_times,
                          [&](const GridState& s) {
                              const double a = mode_energy(mode, profile, s.time);
                              const double g = grid_energy(
                                  s, profile.omega_sq(s.time), spec);
                              worst = std::max(worst, std::abs(g / a - 1.0));
                          });
        if (worst > 1e-4) {
            detail = "energy rel err = " + std::to_string(worst);
            return false;
        }
    }

    // (c) Analytic derivatives vs five-point finite differences, <= 1e-6.
    {
        auto spec = gamma10(0.025);
        auto poly = design_polynomial(spec);
        auto expp = design_exp_polynomial(spec);
        const double tau0 = phase_integral(poly, spec.tf);
        auto phase =
            design_phase_constrained(spec, tau0 * spec.omega0 / spec.omegaf);
        auto plan = solve_matching(0.9 * spec.omega0, spec.omega0, spec);
        BangBangLaw bb(plan, spec.omega0);
        auto profile = inverse_frequency(
            std::make_shared<PolynomialLaw>(poly), spec.omega0);
        auto numeric =
            ermakov_forward(profile, 1.0, 0.0, spec.omega0, times(spec.tf, 1000));

        std::mt19937 rng(0xACCE55);
        auto fd = [](const std::function<double(double)>& f, double t,
                     double h) {
            return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) /
                   (12.0 * h);
        };
        auto check = [&](const ScalingLaw& law, double lo, double hi) {
            const double h = 1e-6 * (hi - lo);
            std::uniform_real_distribution<double> dist(lo + 3 * h, hi - 3 * h);
            for (int i = 0; i < 50; ++i) {
                const double t = dist(rng);
                const double scale = 1.0 / law.duration();
                const double fb =
                    fd([&](double u) { return law.b(u); }, t, h);
                const double fbd =
                    fd([&](double u) { return law.bdot(u); }, t, h);
                if (std::abs(law.bdot(t) - fb) >
                        1e-6 * std::max(std::abs(fb), scale) ||
                    std::abs(law.bddot(t) - fbd) >
                        1e-6 * std::max(std::abs(fbd), scale * scale))
                    return false;
            }
            return true;
        };
        if (!check(poly, 0.0, spec.tf) || !check(expp, 0.0, spec.tf) ||
            !check(phase, 0.0, spec.tf) || !check(bb, 0.0, plan.tau1) ||
            !check(bb, plan.tau1, plan.tf()) || !check(numeric, 0.0, spec.tf)) {
            detail = "derivative mismatch";
            return false;
        }
    }

    // (d) Gaussian-overlap fidelity 0.8 to 1e-8.
    {
        auto spec = gamma10(0.025);
        const double w = spec.omega0;
        const double sigma = std::sqrt(spec.hbar / (spec.mass * w));
        auto x = uniform_grid(-10 * sigma, 10 * sigma, 4001);
        GridState a, b;
        a.x_min = b.x_min = x.front();
        a.x_max = b.x_max = x.back();
        auto ua = instantaneous_eigenstate(0, w, spec, x);
        auto ub = instantaneous_eigenstate(0, 4 * w, spec, x);
        a.psi.assign(ua.begin(), ua.end());
        b.psi.assign(ub.begin(), ub.end());
        const double f = fidelity(a, b);
        if (std::abs(f - 0.8) > 1e-8) {
            detail = "fidelity = " + std::to_string(f);
            return false;
        }
    }
    return true;
}

} // namespace

int main()
{
    run(1, "closed-form polynomial design", c1_closed_form);
    run(2, "endpoint exactness over tf sweep", c2_endpoints);
    run(3, "frictionless cooling n = 0..3", c3_frictionless_cooling);
    run(4, "Ermakov round trip", c4_round_trip);
    run(5, "minimal real-frequency time", c5_t_min);
    run(6, "bang-bang beats the bound", c6_bangbang);
    run(7, "expulsive interval", c7_expulsive);
    run(8, "adiabaticity thresholds", c8_thresholds);
    run(9, "reference-ramp error levels", c9_reference_errors);
    run(10, "property suites", c10_properties);
    std::printf("%d/10 criteria passed\n", 10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
