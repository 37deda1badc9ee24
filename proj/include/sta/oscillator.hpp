#pragma once

#include <cmath>

#include "sta/errors.hpp"

namespace sta {

/// Physical parameters of one trap-expansion problem.
/// Angular frequencies are the canonical representation (rad/s);
/// convert Hz inputs with hz_to_angular().
struct OscillatorSpec {
    double mass = 1.0;
    double hbar = 1.0;
    double omega0 = 0.0;  // initial trap angular frequency, rad/s
    double omegaf = 0.0;  // final trap angular frequency, rad/s
    double tf = 0.0;      // expansion duration, s

    /// Expansion factor gamma = sqrt(omega0/omegaf); > 1 when cooling.
    double gamma() const { return std::sqrt(omega0 / omegaf); }
};

inline double hz_to_angular(double f) { return 2.0 * M_PI * f; }

/// Validates and builds a spec. Compression (omegaf > omega0) is allowed;
/// non-positive or non-finite inputs are not.
OscillatorSpec make_spec(double omega0, double omegaf, double tf,
                         double mass = 1.0, double hbar = 1.0);

} // namespace sta
