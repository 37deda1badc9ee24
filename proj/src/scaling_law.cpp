#include "sta/scaling_law.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sta {

void validate_positive(const ScalingLaw& law, int n_grid)
{
    const double tf = law.duration();
    for (int i = 0; i <= n_grid; ++i) {
        const double t = tf * static_cast<double>(i) / n_grid;
        const double v = law.b(t);
        if (!(v > 0.0))
            throw PositivityViolated("b(t) <= 0 at t = " + std::to_string(t));
    }
}

namespace {

double horner(const std::vector<double>& c, double s)
{
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * s + *it;
    return v;
}

double horner_d1(const std::vector<double>& c, double s)
{
    double v = 0.0;
    for (std::size_t j = c.size(); j-- > 1;) v = v * s + static_cast<double>(j) * c[j];
    return v;
}

double horner_d2(const std::vector<double>& c, double s)
{
    double v = 0.0;
    for (std::size_t j = c.size(); j-- > 2;)
        v = v * s + static_cast<double>(j) * static_cast<double>(j - 1) * c[j];
    return v;
}

} // namespace

PolynomialLaw::PolynomialLaw(std::vector<double> s_coeffs, double tf)
{
    if (!(tf > 0.0)) throw NonPositiveParameter("PolynomialLaw: tf <= 0");
    coeffs_ = std::move(s_coeffs);
    tf_ = tf;
    validate_positive(*this);
}

PolynomialLaw PolynomialLaw::unchecked(std::vector<double> s_coeffs, double tf)
{
    PolynomialLaw law;
    law.coeffs_ = std::move(s_coeffs);
    law.tf_ = tf;
    return law;
}

double PolynomialLaw::b(double t) const { return horner(coeffs_, t / tf_); }

double PolynomialLaw::bdot(double t) const
{
    return horner_d1(coeffs_, t / tf_) / tf_;
}

double PolynomialLaw::bddot(double t) const
{
    return horner_d2(coeffs_, t / tf_) / (tf_ * tf_);
}

ExpPolynomialLaw::ExpPolynomialLaw(std::vector<double> s_coeffs, double tf)
    : coeffs_(std::move(s_coeffs)), tf_(tf)
{
    if (!(tf > 0.0)) throw NonPositiveParameter("ExpPolynomialLaw: tf <= 0");
}

double ExpPolynomialLaw::b(double t) const
{
    return std::exp(horner(coeffs_, t / tf_));
}

double ExpPolynomialLaw::bdot(double t) const
{
    const double s = t / tf_;
    return horner_d1(coeffs_, s) / tf_ * b(t);
}

double ExpPolynomialLaw::bddot(double t) const
{
    const double s = t / tf_;
    const double pd = horner_d1(coeffs_, s) / tf_;
    const double pdd = horner_d2(coeffs_, s) / (tf_ * tf_);
    return (pdd + pd * pd) * b(t);
}

NumericLaw::NumericLaw(std::vector<double> t, std::vector<double> b,
                       std::vector<double> bdot, std::vector<double> bddot)
    : t_(std::move(t)), b_(std::move(b)), bdot_(std::move(bdot)),
      bddot_(std::move(bddot))
{
    if (t_.size() < 2 || b_.size() != t_.size() || bdot_.size() != t_.size() ||
        bddot_.size() != t_.size())
        throw Error("NumericLaw: inconsistent sample arrays");
    if (t_.front() != 0.0)
        throw Error("NumericLaw: time grid must start at 0");
    for (std::size_t i = 1; i < t_.size(); ++i)
        if (!(t_[i] > t_[i - 1]))
            throw Error("NumericLaw: time grid must be strictly increasing");
    for (double v : b_)
        if (!(v > 0.0)) throw PositivityViolated("NumericLaw: sampled b <= 0");
}

std::size_t NumericLaw::segment(double t) const
{
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - t_.begin());
    if (i == 0) return 0;
    if (i >= t_.size()) return t_.size() - 2;
    return i - 1;
}

namespace {

// Cubic Hermite on [t0, t1] with values (y0, y1) and slopes (m0, m1).
double hermite(double t, double t0, double t1, double y0, double y1,
               double m0, double m1)
{
    const double h = t1 - t0;
    const double u = (t - t0) / h;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * m0 +
           (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * h * m1;
}

} // namespace

double NumericLaw::b(double t) const
{
    const std::size_t i = segment(t);
    return hermite(t, t_[i], t_[i + 1], b_[i], b_[i + 1], bdot_[i], bdot_[i + 1]);
}

double NumericLaw::bdot(double t) const
{
    const std::size_t i = segment(t);
    return hermite(t, t_[i], t_[i + 1], bdot_[i], bdot_[i + 1], bddot_[i],
                   bddot_[i + 1]);
}

double NumericLaw::bddot(double t) const
{
    // Slope of the bdot interpolant.
    const std::size_t i = segment(t);
    const double h = t_[i + 1] - t_[i];
    const double u = (t - t_[i]) / h;
    const double y0 = bdot_[i], y1 = bdot_[i + 1];
    const double m0 = bddot_[i], m1 = bddot_[i + 1];
    return ((6 * u * u - 6 * u) * (y0 - y1)) / h +
           (3 * u * u - 4 * u + 1) * m0 + (3 * u * u - 2 * u) * m1;
}

} // namespace sta
