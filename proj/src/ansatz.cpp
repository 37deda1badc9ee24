#include "sta/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

namespace sta {

namespace {

// Solve for a degree-5 polynomial q(s) with q(0)=q'(0)=q''(0)=0 and
// prescribed (value, first, second) derivatives at s=1. The first three
// coefficients are fixed by the s=0 conditions; rhs0 carries the s=0 values.
std::vector<double> solve_quintic(double v0, double d0, double dd0,
                                  double v1, double d1, double dd1)
{
    Eigen::Matrix<double, 6, 6> A = Eigen::Matrix<double, 6, 6>::Zero();
    Eigen::Matrix<double, 6, 1> rhs;
    // Rows: b(0), b'(0), b''(0), b(1), b'(1), b''(1) in s-powers.
    A(0, 0) = 1.0;
    A(1, 1) = 1.0;
    A(2, 2) = 2.0;
    for (int j = 0; j < 6; ++j) {
        A(3, j) = 1.0;
        A(4, j) = j;
        A(5, j) = j * (j - 1);
    }
    rhs << v0, d0, dd0, v1, d1, dd1;

    Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu(A);
    if (!lu.isInvertible())
        throw SingularSystem("boundary-condition system is singular");
    Eigen::Matrix<double, 6, 1> a = lu.solve(rhs);
    return {a(0), a(1), a(2), a(3), a(4), a(5)};
}

} // namespace

PolynomialLaw design_polynomial(const OscillatorSpec& spec)
{
    const double gamma = spec.gamma();
    auto coeffs = solve_quintic(1.0, 0.0, 0.0, gamma, 0.0, 0.0);
    return PolynomialLaw(std::move(coeffs), spec.tf);
}

ExpPolynomialLaw design_exp_polynomial(const OscillatorSpec& spec)
{
    // With pdot = 0 at both ends, bddot = 0 iff pddot = 0, so the exponent
    // satisfies the same reduced system with target ln(gamma).
    const double lg = std::log(spec.gamma());
    auto coeffs = solve_quintic(0.0, 0.0, 0.0, lg, 0.0, 0.0);
    return ExpPolynomialLaw(std::move(coeffs), spec.tf);
}

double phase_integral(const ScalingLaw& law, double tf)
{
    auto f = [&law](double t) {
        const double b = law.b(t);
        return 1.0 / (b * b);
    };
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, 0.0, tf, 15, 1e-11, &err);
}

namespace {

// Degree-6 law with the seventh coefficient fixed at c and the six boundary
// conditions re-imposed by moving c s^6 to the right-hand side.
std::vector<double> phase_family_coeffs(double gamma, double c)
{
    auto a = solve_quintic(1.0, 0.0, 0.0, gamma - c, -6.0 * c, -30.0 * c);
    a.push_back(c);
    return a;
}

bool positive_on_grid(const ScalingLaw& law, int n_grid = 10000)
{
    const double tf = law.duration();
    for (int i = 0; i <= n_grid; ++i)
        if (!(law.b(tf * static_cast<double>(i) / n_grid) > 0.0)) return false;
    return true;
}

} // namespace

PolynomialLaw design_phase_constrained(const OscillatorSpec& spec,
                                       double tprime)
{
    if (!(tprime > 0.0))
        throw NonPositiveParameter("design_phase_constrained: tprime <= 0");
    const double gamma = spec.gamma();
    const double tau_target = spec.omegaf / spec.omega0 * tprime;

    auto g = [&](double c) {
        auto law = PolynomialLaw::unchecked(phase_family_coeffs(gamma, c),
                                            spec.tf);
        if (!positive_on_grid(law, 2000))
            return std::numeric_limits<double>::quiet_NaN();
        return phase_integral(law, spec.tf) - tau_target;
    };

    // Bracket scan: generous range, explicit failure beats extrapolation.
    const double R = 1e3 * gamma;
    const int n_scan = 512;
    double c_lo = 0.0, c_hi = 0.0;
    bool bracketed = false;
    double prev_c = -R, prev_g = g(prev_c);
    for (int i = 1; i <= n_scan; ++i) {
        const double c = -R + 2.0 * R * i / n_scan;
        const double gc = g(c);
        if (std::isfinite(prev_g) && std::isfinite(gc) &&
            ((prev_g <= 0.0) != (gc <= 0.0))) {
            c_lo = prev_c;
            c_hi = c;
            bracketed = true;
            break;
        }
        prev_c = c;
        prev_g = gc;
    }
    if (!bracketed)
        throw NoBracket("design_phase_constrained: target phase integral " +
                        std::to_string(tau_target) +
                        " not reachable for |c| <= " + std::to_string(R));

    auto tol = [](double a, double b) {
        return std::abs(b - a) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    std::uintmax_t max_iter = 200;
    auto r = boost::math::tools::toms748_solve(g, c_lo, c_hi, tol, max_iter);
    const double c = 0.5 * (r.first + r.second);

    auto coeffs = phase_family_coeffs(gamma, c);
    return PolynomialLaw(std::move(coeffs), spec.tf); // validates b > 0
}

} // namespace sta
