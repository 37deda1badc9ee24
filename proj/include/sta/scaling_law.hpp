#pragma once

#include <memory>
#include <vector>

#include "sta/errors.hpp"

namespace sta {

/// Dimensionless wavefunction scaling factor b(t) with its first two time
/// derivatives, defined on [0, duration()]. b must stay strictly positive;
/// the invariant construction is ill-defined where b vanishes.
class ScalingLaw {
public:
    virtual ~ScalingLaw() = default;
    virtual double b(double t) const = 0;
    virtual double bdot(double t) const = 0;
    virtual double bddot(double t) const = 0;
    virtual double duration() const = 0;
};

/// Throws PositivityViolated if b(t) <= 0 anywhere on a uniform grid of
/// n_grid + 1 points covering [0, duration].
void validate_positive(const ScalingLaw& law, int n_grid = 10000);

/// b(t) = sum_j c_j s^j with s = t/tf. Coefficients are stored in the
/// scaled variable to keep the design linear systems well conditioned.
class PolynomialLaw final : public ScalingLaw {
public:
    PolynomialLaw(std::vector<double> s_coeffs, double tf);

    double b(double t) const override;
    double bdot(double t) const override;
    double bddot(double t) const override;
    double duration() const override { return tf_; }

    const std::vector<double>& coeffs() const { return coeffs_; }

    /// Construction without the positivity scan; used by root solvers that
    /// probe candidate coefficient sets which may be invalid.
    static PolynomialLaw unchecked(std::vector<double> s_coeffs, double tf);

private:
    PolynomialLaw() = default;
    std::vector<double> coeffs_;
    double tf_ = 0.0;
};

/// b(t) = exp(p(s)), p a polynomial in s = t/tf. Positive by construction.
class ExpPolynomialLaw final : public ScalingLaw {
public:
    ExpPolynomialLaw(std::vector<double> s_coeffs, double tf);

    double b(double t) const override;
    double bdot(double t) const override;
    double bddot(double t) const override;
    double duration() const override { return tf_; }

    const std::vector<double>& exponent_coeffs() const { return coeffs_; }

private:
    std::vector<double> coeffs_;
    double tf_;
};

/// Tabulated solution of the Ermakov equation (from ermakov_forward).
/// Between nodes b is a cubic Hermite interpolant of (b, bdot); bdot is
/// interpolated the same way from (bdot, bddot).
class NumericLaw final : public ScalingLaw {
public:
    NumericLaw(std::vector<double> t, std::vector<double> b,
               std::vector<double> bdot, std::vector<double> bddot);

    double b(double t) const override;
    double bdot(double t) const override;
    double bddot(double t) const override;
    double duration() const override { return t_.back(); }

    const std::vector<double>& times() const { return t_; }
    const std::vector<double>& b_samples() const { return b_; }
    const std::vector<double>& bdot_samples() const { return bdot_; }

private:
    std::size_t segment(double t) const;
    std::vector<double> t_, b_, bdot_, bddot_;
};

} // namespace sta
