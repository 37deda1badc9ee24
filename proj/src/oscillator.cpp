#include "sta/oscillator.hpp"

#include <cmath>
#include <string>

namespace sta {

OscillatorSpec make_spec(double omega0, double omegaf, double tf,
                         double mass, double hbar)
{
    auto check = [](double v, const char* name) {
        if (!std::isfinite(v) || v <= 0.0)
            throw NonPositiveParameter(std::string(name) +
                                       " must be finite and positive, got " +
                                       std::to_string(v));
    };
    check(omega0, "omega0");
    check(omegaf, "omegaf");
    check(tf, "tf");
    check(mass, "mass");
    check(hbar, "hbar");
    return OscillatorSpec{mass, hbar, omega0, omegaf, tf};
}

} // namespace sta
