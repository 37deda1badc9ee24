#include "sta/bangbang.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

namespace sta {

std::pair<double, double> segment1_b(double omegaI, double omega0, double t)
{
    if (!(omegaI > 0.0))
        throw NonPositiveParameter("segment1_b: omegaI <= 0");
    const double A = (omega0 * omega0 + omegaI * omegaI) / (omegaI * omegaI);
    const double sh = std::sinh(omegaI * t);
    const double ch = std::cosh(omegaI * t);
    const double b = std::sqrt(1.0 + A * sh * sh);
    const double bdot = A * omegaI * sh * ch / b;
    return {b, bdot};
}

std::pair<double, double> segment2_b(double omega2, double omega0,
                                     double gamma, double tf, double t)
{
    if (!(omega2 > 0.0))
        throw NonPositiveParameter("segment2_b: omega2 <= 0");
    const double B =
        omega0 * omega0 / (omega2 * omega2 * gamma * gamma) - gamma * gamma;
    const double phi = omega2 * (t - tf);
    const double sn = std::sin(phi), cs = std::cos(phi);
    const double rad = gamma * gamma + B * sn * sn;
    if (!(rad > 0.0))
        throw DomainError("segment2_b: radicand <= 0 at t = " +
                          std::to_string(t));
    const double b = std::sqrt(rad);
    const double bdot = B * omega2 * sn * cs / b;
    return {b, bdot};
}

double t_min(const OscillatorSpec& spec)
{
    if (!(spec.omegaf < spec.omega0))
        throw Error("t_min: requires omegaf < omega0");
    return std::sqrt(1.0 - spec.omegaf / spec.omega0) /
           std::sqrt(spec.omegaf * spec.omega0);
}

namespace {

struct Branch {
    // theta = omega2 (tau1 - tf) in (-pi, 0); two sub-branches share
    // sin(theta) = -r but differ in the sign of cos(theta).
    static double theta(double r, bool reflected)
    {
        const double a = std::asin(std::min(r, 1.0));
        return reflected ? -M_PI + a : -a;
    }
};

// Residual of the bdot matching condition at fixed tau1, with the b
// matching condition already enforced through theta. NaN marks tau1 values
// where b1(tau1) cannot be reached by the second segment.
double matching_residual(double tau1, bool reflected, double omegaI,
                         double omega2, double omega0, double gamma)
{
    auto [b1, b1dot] = segment1_b(omegaI, omega0, tau1);
    const double B =
        omega0 * omega0 / (omega2 * omega2 * gamma * gamma) - gamma * gamma;
    const double r2 = (b1 * b1 - gamma * gamma) / B;
    if (!(r2 >= 0.0 && r2 <= 1.0))
        return std::numeric_limits<double>::quiet_NaN();
    const double th = Branch::theta(std::sqrt(r2), reflected);
    const double b2dot = B * omega2 * std::sin(th) * std::cos(th) / b1;
    return b2dot - b1dot;
}

BangBangPlan plan_from(double tau1, bool reflected, double omegaI,
                       double omega2, double omega0, double gamma)
{
    auto [b1, b1dot] = segment1_b(omegaI, omega0, tau1);
    const double B =
        omega0 * omega0 / (omega2 * omega2 * gamma * gamma) - gamma * gamma;
    const double r2 =
        std::clamp((b1 * b1 - gamma * gamma) / B, 0.0, 1.0);
    const double th = Branch::theta(std::sqrt(r2), reflected);
    BangBangPlan plan;
    plan.omegaI = omegaI;
    plan.omega2 = omega2;
    plan.tau1 = tau1;
    plan.tau2 = -th / omega2;
    plan.gamma = gamma;
    return plan;
}

// Newton polish of both continuity conditions in (tau1, tf), numeric
// Jacobian. Residuals are scaled by gamma and gamma*omega0.
BangBangPlan polish(BangBangPlan plan, double omega0)
{
    const double gamma = plan.gamma;
    auto residual = [&](double tau1, double tf, double& f1, double& f2) {
        auto [b1, b1dot] = segment1_b(plan.omegaI, omega0, tau1);
        auto [b2, b2dot] = segment2_b(plan.omega2, omega0, gamma, tf, tau1);
        f1 = (b1 - b2) / gamma;
        f2 = (b1dot - b2dot) / (gamma * omega0);
    };

    double tau1 = plan.tau1, tf = plan.tf();
    for (int it = 0; it < 50; ++it) {
        double f1, f2;
        residual(tau1, tf, f1, f2);
        if (std::abs(f1) < 1e-13 && std::abs(f2) < 1e-13) break;
        const double h1 = 1e-8 * std::max(tau1, tf * 1e-3);
        const double h2 = 1e-8 * tf;
        double a1, a2, b1r, b2r;
        residual(tau1 + h1, tf, a1, a2);
        residual(tau1, tf + h2, b1r, b2r);
        const double j11 = (a1 - f1) / h1, j12 = (b1r - f1) / h2;
        const double j21 = (a2 - f2) / h1, j22 = (b2r - f2) / h2;
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0) break;
        double dtau = (f1 * j22 - f2 * j12) / det;
        double dtf = (j11 * f2 - j21 * f1) / det;
        // Safeguard: never step past the segment boundaries.
        double scale = 1.0;
        while (scale > 1e-6 &&
               (tau1 - scale * dtau <= 0.0 || tf - scale * dtf <= tau1 - scale * dtau))
            scale *= 0.5;
        tau1 -= scale * dtau;
        tf -= scale * dtf;
    }
    plan.tau1 = tau1;
    plan.tau2 = tf - tau1;
    return plan;
}

} // namespace

std::vector<BangBangPlan> solve_matching_candidates(double omegaI,
                                                    double omega2,
                                                    const OscillatorSpec& spec)
{
    if (!(omegaI > 0.0))
        throw NonPositiveParameter("solve_matching: omegaI <= 0");
    if (!(omega2 > 0.0))
        throw NonPositiveParameter("solve_matching: omega2 <= 0");
    const double omega0 = spec.omega0;
    const double gamma = spec.gamma();

    const int n_scan = 2048;
    const double hi = 10.0 / omegaI;
    const double lo = hi * 1e-6;
    auto tau_at = [&](int k) {
        return lo * std::pow(hi / lo, static_cast<double>(k) / (n_scan - 1));
    };

    std::vector<BangBangPlan> found;
    for (bool reflected : {false, true}) {
        auto f = [&](double tau1) {
            return matching_residual(tau1, reflected, omegaI, omega2, omega0,
                                     gamma);
        };
        double prev_tau = tau_at(0), prev_f = f(prev_tau);
        for (int k = 1; k < n_scan; ++k) {
            const double tau = tau_at(k);
            const double fk = f(tau);
            if (std::isfinite(prev_f) && std::isfinite(fk) &&
                ((prev_f <= 0.0) != (fk <= 0.0))) {
                auto tol = [](double a, double b) {
                    return std::abs(b - a) <= 1e-14 * std::max(std::abs(a), 1e-30);
                };
                std::uintmax_t max_iter = 200;
                auto r = boost::math::tools::toms748_solve(f, prev_tau, tau,
                                                           tol, max_iter);
                const double root = 0.5 * (r.first + r.second);
                auto plan = polish(
                    plan_from(root, reflected, omegaI, omega2, omega0, gamma),
                    omega0);
                if (plan.tau1 > 0.0 && plan.tau2 > 0.0) found.push_back(plan);
            }
            prev_tau = tau;
            prev_f = fk;
        }
    }
    std::sort(found.begin(), found.end(),
              [](const BangBangPlan& a, const BangBangPlan& b) {
                  return a.tf() < b.tf();
              });
    return found;
}

BangBangPlan solve_matching(double omegaI, double omega2,
                            const OscillatorSpec& spec)
{
    auto candidates = solve_matching_candidates(omegaI, omega2, spec);
    if (candidates.empty())
        throw NoSolution("solve_matching: no (tau1, tf) root over the scan grid");
    return candidates.front();
}

BangBangProfile::BangBangProfile(const BangBangPlan& plan,
                                 const OscillatorSpec& spec)
    : plan_(plan), omega0_(spec.omega0), omegaf_(spec.omegaf)
{
    if (!(plan.omegaI >= 0.0 && plan.omega2 > 0.0 && plan.tau1 > 0.0 &&
          plan.tau2 > 0.0))
        throw Error("BangBangProfile: invalid plan");
}

double BangBangProfile::omega_sq(double t) const
{
    if (t <= 0.0) return omega0_ * omega0_;
    if (t >= plan_.tf()) return omegaf_ * omegaf_;
    if (t < plan_.tau1) return -plan_.omegaI * plan_.omegaI;
    return plan_.omega2 * plan_.omega2;
}

BangBangProfile bangbang_profile(const BangBangPlan& plan,
                                 const OscillatorSpec& spec)
{
    return BangBangProfile(plan, spec);
}

BangBangLaw::BangBangLaw(const BangBangPlan& plan, double omega0)
    : plan_(plan), omega0_(omega0)
{
}

double BangBangLaw::b(double t) const
{
    if (t <= plan_.tau1) return segment1_b(plan_.omegaI, omega0_, t).first;
    return segment2_b(plan_.omega2, omega0_, plan_.gamma, plan_.tf(), t).first;
}

double BangBangLaw::bdot(double t) const
{
    if (t <= plan_.tau1) return segment1_b(plan_.omegaI, omega0_, t).second;
    return segment2_b(plan_.omega2, omega0_, plan_.gamma, plan_.tf(), t).second;
}

double BangBangLaw::bddot(double t) const
{
    // From the Ermakov equation with the segment's constant omega^2.
    const double bv = b(t);
    const double w2 = (t < plan_.tau1) ? -plan_.omegaI * plan_.omegaI
                                       : plan_.omega2 * plan_.omega2;
    return omega0_ * omega0_ / (bv * bv * bv) - w2 * bv;
}

} // namespace sta
