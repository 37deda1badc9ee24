#include "sta/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

// LAPACK banded solver; the Crank-Nicolson matrices are complex banded with
// bandwidth 3 on each side.
extern "C" void zgbsv_(const int* n, const int* kl, const int* ku,
                       const int* nrhs, std::complex<double>* ab,
                       const int* ldab, int* ipiv, std::complex<double>* b,
                       const int* ldb, int* info);

namespace sta {

namespace {

using cplx = std::complex<double>;

// 6th-order 7-point second-derivative stencil (times dx^2).
constexpr double kS0 = -49.0 / 18.0;
constexpr double kS1 = 3.0 / 2.0;
constexpr double kS2 = -3.0 / 20.0;
constexpr double kS3 = 1.0 / 90.0;

// Normalized oscillator function phi_n(y) = H_n(y) e^{-y^2/2} /
// sqrt(2^n n! sqrt(pi)), by upward recursion with the Gaussian folded in.
double ho_phi(int n, double y)
{
    double prev = 0.0;
    double cur = std::pow(M_PI, -0.25) * std::exp(-0.5 * y * y);
    for (int k = 1; k <= n; ++k) {
        const double next =
            std::sqrt(2.0 / k) * y * cur - std::sqrt((k - 1.0) / k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace

std::vector<double> uniform_grid(double x_min, double x_max, int n_points)
{
    if (n_points < 2 || !(x_max > x_min))
        throw Error("uniform_grid: bad grid parameters");
    std::vector<double> x(n_points);
    const double dx = (x_max - x_min) / (n_points - 1);
    for (int j = 0; j < n_points; ++j) x[j] = x_min + dx * j;
    return x;
}

double norm_sq(const GridState& state)
{
    const std::size_t n = state.psi.size();
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        s += w * std::norm(state.psi[j]);
    }
    return s * state.dx();
}

std::complex<double> overlap(const GridState& a, const GridState& b)
{
    if (a.psi.size() != b.psi.size() || a.x_min != b.x_min ||
        a.x_max != b.x_max)
        throw GridMismatch("overlap: states live on different grids");
    const std::size_t n = a.psi.size();
    cplx s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        s += w * std::conj(a.psi[j]) * b.psi[j];
    }
    return s * a.dx();
}

double fidelity(const GridState& a, const GridState& b)
{
    return std::norm(overlap(a, b));
}

std::vector<double> instantaneous_eigenstate(int n, double omega,
                                             const OscillatorSpec& spec,
                                             std::span<const double> x)
{
    if (n < 0) throw Error("instantaneous_eigenstate: n < 0");
    if (!(omega > 0.0))
        throw NonPositiveParameter("instantaneous_eigenstate: omega <= 0");
    const double scale = std::sqrt(spec.mass * omega / spec.hbar);
    std::vector<double> u(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        u[j] = std::sqrt(scale) * ho_phi(n, scale * x[j]);
    return u;
}

std::vector<double> populations(const GridState& psi, double omega, int n_max,
                                const OscillatorSpec& spec)
{
    const std::size_t np = psi.psi.size();
    std::vector<double> x(np);
    for (std::size_t j = 0; j < np; ++j) x[j] = psi.x(j);
    std::vector<double> p(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        auto u = instantaneous_eigenstate(n, omega, spec, x);
        cplx s = 0.0;
        for (std::size_t j = 0; j < np; ++j) {
            const double w = (j == 0 || j == np - 1) ? 0.5 : 1.0;
            s += w * u[j] * psi.psi[j];
        }
        p[n] = std::norm(s * psi.dx());
    }
    return p;
}

std::vector<std::complex<double>> expanding_mode_wavefunction(
    const ExpandingMode& mode, double t, std::span<const double> x)
{
    if (mode.n < 0 || !mode.law)
        throw InvalidMode("expanding_mode_wavefunction: bad mode");
    if (!(mode.spec.omega0 > 0.0))
        throw InvalidMode("expanding_mode_wavefunction: omega0^2 <= 0");

    const auto& law = *mode.law;
    const double b = law.b(t);
    const double bdot = law.bdot(t);
    const double m = mode.spec.mass, hbar = mode.spec.hbar;
    const double omega0 = mode.spec.omega0;
    const double scale = std::sqrt(m * omega0 / hbar);

    double alpha = 0.0;
    if (t != 0.0) {
        auto f = [&law](double tp) {
            const double bv = law.b(tp);
            return 1.0 / (bv * bv);
        };
        double err = 0.0;
        const double tau =
            boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
                f, 0.0, t, 15, 1e-12, &err);
        alpha = -(mode.n + 0.5) * omega0 * tau;
    }

    const double chirp = m * bdot / (2.0 * hbar * b);
    std::vector<cplx> psi(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double xj = x[j];
        const double y = scale * xj / b;
        const double envelope = std::sqrt(scale / b) * ho_phi(mode.n, y);
        const double phase = alpha + chirp * xj * xj;
        psi[j] = envelope * cplx(std::cos(phase), std::sin(phase));
    }
    return psi;
}

double mode_energy(const ExpandingMode& mode, const FrequencyProfile& profile,
                   double t)
{
    const auto& law = *mode.law;
    const double b = law.b(t);
    const double bdot = law.bdot(t);
    const double w0 = mode.spec.omega0;
    return (2.0 * mode.n + 1.0) * mode.spec.hbar / (4.0 * w0) *
           (bdot * bdot + profile.omega_sq(t) * b * b + w0 * w0 / (b * b));
}

double mode_width(const ExpandingMode& mode, double t)
{
    const double b = mode.law->b(t);
    return b * std::sqrt((mode.n + 0.5) * mode.spec.hbar /
                         (mode.spec.mass * mode.spec.omega0));
}

double grid_energy(const GridState& state, double omega_sq,
                   const OscillatorSpec& spec)
{
    const std::size_t n = state.psi.size();
    const double dx = state.dx();
    const double kin = -spec.hbar * spec.hbar / (2.0 * spec.mass * dx * dx);
    const auto& psi = state.psi;

    auto at = [&](std::ptrdiff_t j) -> cplx {
        return (j < 0 || j >= static_cast<std::ptrdiff_t>(n)) ? cplx(0.0)
                                                              : psi[j];
    };

    double e = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::ptrdiff_t i = static_cast<std::ptrdiff_t>(j);
        const cplx lap = kS0 * psi[j] + kS1 * (at(i - 1) + at(i + 1)) +
                         kS2 * (at(i - 2) + at(i + 2)) +
                         kS3 * (at(i - 3) + at(i + 3));
        const double xj = state.x(j);
        const cplx h_psi =
            kin * lap + 0.5 * spec.mass * omega_sq * xj * xj * psi[j];
        const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        e += w * std::real(std::conj(psi[j]) * h_psi);
    }
    return e * dx / norm_sq(state);
}

GridSettings default_grid(const OscillatorSpec& spec, int n_max)
{
    GridSettings g;
    g.half_width = 8.0 * spec.gamma() *
                   std::sqrt((n_max + 0.5) * spec.hbar /
                             (spec.mass * spec.omega0));
    g.n_points = 16384;
    g.dt = std::min(spec.tf / 2e4, 0.002 / spec.omega0);
    return g;
}

GridState initial_eigenstate(int n, const OscillatorSpec& spec,
                             const GridSettings& grid)
{
    GridState state;
    state.x_min = -grid.half_width;
    state.x_max = grid.half_width;
    state.time = 0.0;
    auto x = uniform_grid(state.x_min, state.x_max, grid.n_points);
    auto u = instantaneous_eigenstate(n, spec.omega0, spec, x);
    state.psi.assign(u.begin(), u.end());
    return state;
}

namespace {

// One implicit step via the diagonal Pade (2,2) approximant of
// exp(-i dt H/hbar): with M = dt H(t_mid)/hbar,
//   (I + iM/2 - M^2/12) psi' = (I - iM/2 - M^2/12) psi.
// M is real symmetric (7-point stencil plus diagonal potential), so the
// two matrices are Hermitian conjugates and the step is exactly unitary.
// Fourth order in dt, sixth order in dx.
class PadeStepper {
public:
    PadeStepper(const GridState& state, const OscillatorSpec& spec)
        : n_(static_cast<int>(state.psi.size())), dx_(state.dx()),
          spec_(spec), ab_(19 * n_), ipiv_(n_), rhs_(n_), xsq_(n_),
          v_(n_), msq_(7 * n_)
    {
        for (int j = 0; j < n_; ++j) {
            const double x = state.x(j);
            xsq_[j] = x * x;
        }
    }

    void step(std::vector<cplx>& psi, double dt, double omega_sq_mid)
    {
        const double hbar = spec_.hbar, m = spec_.mass;
        // Kinetic off-diagonals of M are constant; the diagonal carries
        // the potential.
        const double kfac = -dt * hbar / (2.0 * m * dx_ * dx_);
        const double a[4] = {kfac * kS0, kfac * kS1, kfac * kS2, kfac * kS3};
        const double vfac = dt * m * omega_sq_mid / (2.0 * hbar);
        for (int j = 0; j < n_; ++j) v_[j] = a[0] + vfac * xsq_[j];

        auto m_at = [&](int i, int j) -> double {
            const int d = std::abs(i - j);
            if (d > 3) return 0.0;
            return d == 0 ? v_[i] : a[d];
        };

        // Upper band of M^2 (half-bandwidth 6), msq_[7*i + d] = M^2(i, i+d).
        for (int i = 0; i < n_; ++i)
            for (int d = 0; d <= 6; ++d) {
                const int j = i + d;
                if (j >= n_) {
                    msq_[7 * i + d] = 0.0;
                    continue;
                }
                const int lo = std::max({i - 3, j - 3, 0});
                const int hi = std::min({i + 3, j + 3, n_ - 1});
                double s = 0.0;
                for (int k = lo; k <= hi; ++k) s += m_at(i, k) * m_at(k, j);
                msq_[7 * i + d] = s;
            }

        auto msq_at = [&](int i, int j) -> double {
            const int d = std::abs(i - j);
            return d > 6 ? 0.0 : msq_[7 * std::min(i, j) + d];
        };

        // rhs = (I - iM/2 - M^2/12) psi
        for (int i = 0; i < n_; ++i) {
            cplx s = psi[i];
            for (int j = std::max(0, i - 6); j <= std::min(n_ - 1, i + 6);
                 ++j)
                s += (cplx(0.0, -0.5) * m_at(i, j) -
                      cplx(msq_at(i, j) / 12.0)) *
                     psi[j];
            rhs_[i] = s;
        }

        // A = I + iM/2 - M^2/12, LAPACK banded, kl = ku = 6, ldab = 19.
        std::fill(ab_.begin(), ab_.end(), cplx(0.0));
        for (int j = 0; j < n_; ++j) {
            cplx* col = ab_.data() + 19 * j;
            // AB(kl + ku + i - j, j) = A(i, j), 0-based row 12 + (i - j).
            for (int i = std::max(0, j - 6); i <= std::min(n_ - 1, j + 6);
                 ++i) {
                cplx val = cplx(0.0, 0.5) * m_at(i, j) -
                           cplx(msq_at(i, j) / 12.0);
                if (i == j) val += 1.0;
                col[12 + i - j] = val;
            }
        }

        int info = 0;
        const int kl = 6, ku = 6, nrhs = 1, ldab = 19;
        zgbsv_(&n_, &kl, &ku, &nrhs, ab_.data(), &ldab, ipiv_.data(),
               rhs_.data(), &n_, &info);
        if (info != 0)
            throw Error("propagate: zgbsv failed, info = " +
                        std::to_string(info));
        psi = rhs_;
    }

private:
    int n_;
    double dx_;
    OscillatorSpec spec_;
    std::vector<cplx> ab_;
    std::vector<int> ipiv_;
    std::vector<cplx> rhs_;
    std::vector<double> xsq_;
    std::vector<double> v_;
    std::vector<double> msq_;
};

} // namespace

GridState propagate_sampled(
    const FrequencyProfile& profile, const GridState& psi0,
    const OscillatorSpec& spec, double dt,
    const std::vector<double>& sample_times,
    const std::function<void(const GridState&)>& observer)
{
    if (psi0.psi.size() < 8) throw Error("propagate: grid too coarse");
    if (!(dt > 0.0)) throw NonPositiveParameter("propagate: dt <= 0");
    const double tf = profile.duration();

    // Event times: discontinuities and requested samples, hit exactly.
    std::vector<double> events = profile.breakpoints();
    events.insert(events.end(), sample_times.begin(), sample_times.end());
    events.push_back(tf);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    events.erase(std::remove_if(events.begin(), events.end(),
                                [tf](double t) { return t <= 0.0 || t > tf; }),
                 events.end());

    GridState state = psi0;
    state.time = 0.0;
    const double norm0 = norm_sq(state);
    PadeStepper stepper(state, spec);

    auto check = [&](double t) {
        if (std::norm(state.psi.front()) > 1e-10 ||
            std::norm(state.psi.back()) > 1e-10)
            throw GridTooSmall("propagate: boundary density > 1e-10 at t = " +
                               std::to_string(t));
        if (std::abs(norm_sq(state) / norm0 - 1.0) > 1e-6)
            throw NormDrift("propagate: norm drifted > 1e-6 at t = " +
                            std::to_string(t));
    };

    auto maybe_observe = [&](double t) {
        if (!observer) return;
        if (std::binary_search(sample_times.begin(), sample_times.end(), t))
            observer(state);
    };
    if (observer &&
        std::binary_search(sample_times.begin(), sample_times.end(), 0.0))
        observer(state);

    double t = 0.0;
    for (double te : events) {
        const double len = te - t;
        const int n_steps = std::max(1, static_cast<int>(std::ceil(len / dt)));
        const double h = len / n_steps;
        for (int s = 0; s < n_steps; ++s) {
            const double t_mid = t + (s + 0.5) * h;
            stepper.step(state.psi, h, profile.omega_sq(t_mid));
        }
        t = te;
        state.time = t;
        check(t);
        maybe_observe(t);
    }
    return state;
}

GridState propagate(const FrequencyProfile& profile, const GridState& psi0,
                    const OscillatorSpec& spec, double dt)
{
    return propagate_sampled(profile, psi0, spec, dt, {}, nullptr);
}

} // namespace sta
