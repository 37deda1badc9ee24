#pragma once

#include "sta/oscillator.hpp"
#include "sta/scaling_law.hpp"

namespace sta {

/// The six scalar conditions every designed scaling law must meet:
/// b, bdot, bddot pinned at both ends of the ramp.
struct BoundaryConditions {
    double b0 = 1.0, bdot0 = 0.0, bddot0 = 0.0;
    double bf = 1.0, bdotf = 0.0, bddotf = 0.0;

    static BoundaryConditions for_spec(const OscillatorSpec& spec)
    {
        BoundaryConditions bc;
        bc.bf = spec.gamma();
        return bc;
    }
};

/// Unique degree-5 polynomial through the six boundary conditions.
/// Equals 1 + (gamma-1)(10 s^3 - 15 s^4 + 6 s^5), s = t/tf.
PolynomialLaw design_polynomial(const OscillatorSpec& spec);

/// b = exp(p), p the unique degree-5 polynomial with p(0)=p'(0)=p''(0)=0,
/// p(1)=ln(gamma), p'(1)=p''(1)=0. Strictly positive for any gamma > 0.
ExpPolynomialLaw design_exp_polynomial(const OscillatorSpec& spec);

/// Degree-6 polynomial meeting the six boundary conditions with the extra
/// coefficient fixed so that the phase integral int dt/b^2 over [0,tf]
/// equals (omegaf/omega0) * tprime. Throws NoBracket if the target is
/// unreachable in the scanned coefficient range, PositivityViolated if the
/// root's polynomial dips to b <= 0.
PolynomialLaw design_phase_constrained(const OscillatorSpec& spec,
                                       double tprime);

/// int_0^tf dt / b(t)^2 by adaptive quadrature (relative error <= 1e-10).
double phase_integral(const ScalingLaw& law, double tf);

} // namespace sta
