// Command-line front end: designs, simulations, bang-bang plans, reference
// ramps, and sweeps, all emitted as deterministic CSV.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sta/ansatz.hpp"
#include "sta/bangbang.hpp"
#include "sta/dynamics.hpp"
#include "sta/ermakov.hpp"
#include "sta/oscillator.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

/// Flag/validation problems discovered after parsing; mapped to exit code 2.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Shared {
    double omega0_hz = 250.0;
    double omega0_rad = 0.0;
    double omegaf_hz = 2.5;
    double omegaf_rad = 0.0;
    double tf_ms = 25.0;
    int samples = 1000;
    std::string out;
    std::string config;

    CLI::Option* omega0_rad_opt = nullptr;
    CLI::Option* omegaf_rad_opt = nullptr;

    double omega0() const
    {
        return omega0_rad_opt->count() ? omega0_rad
                                       : sta::hz_to_angular(omega0_hz);
    }
    double omegaf() const
    {
        return omegaf_rad_opt->count() ? omegaf_rad
                                       : sta::hz_to_angular(omegaf_hz);
    }
    sta::OscillatorSpec spec() const
    {
        return sta::make_spec(omega0(), omegaf(), tf_ms * 1e-3);
    }
    std::string describe() const
    {
        return "omega0_rad=" + g17(omega0()) + " omegaf_rad=" + g17(omegaf()) +
               " tf_ms=" + g17(tf_ms) + " samples=" + std::to_string(samples);
    }
};

void add_shared(CLI::App* cmd, Shared& s)
{
    auto* o0hz = cmd->add_option("--omega0-hz", s.omega0_hz,
                                 "Initial trap frequency in Hz");
    s.omega0_rad_opt = cmd->add_option("--omega0-rad", s.omega0_rad,
                                       "Initial trap frequency in rad/s");
    auto* ofhz = cmd->add_option("--omegaf-hz", s.omegaf_hz,
                                 "Final trap frequency in Hz");
    s.omegaf_rad_opt = cmd->add_option("--omegaf-rad", s.omegaf_rad,
                                       "Final trap frequency in rad/s");
    o0hz->excludes(s.omega0_rad_opt);
    s.omega0_rad_opt->excludes(o0hz);
    ofhz->excludes(s.omegaf_rad_opt);
    s.omegaf_rad_opt->excludes(ofhz);
    cmd->add_option("--tf-ms", s.tf_ms, "Expansion duration in ms");
    cmd->add_option("--samples", s.samples, "Number of CSV rows")
        ->check(CLI::Range(2, 10000000));
    cmd->add_option("--out", s.out, "Output path (default stdout)");
    cmd->add_option("--config", s.config,
                    "Flat key=value config file; flags override");
}

std::string trim(const std::string& in)
{
    const auto a = in.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = in.find_last_not_of(" \t\r");
    return in.substr(a, b - a + 1);
}

/// Expands --config files into --key=value tokens for keys not already on
/// the command line, so explicit flags win.
std::vector<std::string> apply_config(std::vector<std::string> args)
{
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty()) return args;

    std::ifstream f(path);
    if (!f) throw ValidationError("cannot read config file " + path);
    std::string line;
    while (std::getline(f, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line is not key=value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ValidationError("empty config key");
        const std::string flag = "--" + key;
        bool present = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        if (!present) args.push_back(flag + "=" + value);
    }
    return args;
}

struct AnsatzFlags {
    std::string ansatz = "poly";
    double tprime_ms = 0.0;
    CLI::Option* tprime_opt = nullptr;
};

void add_ansatz(CLI::App* cmd, AnsatzFlags& a)
{
    cmd->add_option("--ansatz", a.ansatz, "Scaling-law ansatz")
        ->check(CLI::IsMember({"poly", "exppoly", "phase"}));
    a.tprime_opt = cmd->add_option(
        "--tprime-ms", a.tprime_ms,
        "Virtual adiabatic duration for the phase-constrained ansatz, ms");
}

std::shared_ptr<const sta::ScalingLaw> make_law(const AnsatzFlags& a,
                                                const sta::OscillatorSpec& spec)
{
    if (a.ansatz == "poly")
        return std::make_shared<sta::PolynomialLaw>(
            sta::design_polynomial(spec));
    if (a.ansatz == "exppoly")
        return std::make_shared<sta::ExpPolynomialLaw>(
            sta::design_exp_polynomial(spec));
    if (!a.tprime_opt->count())
        throw ValidationError("--ansatz phase requires --tprime-ms");
    return std::make_shared<sta::PolynomialLaw>(
        sta::design_phase_constrained(spec, a.tprime_ms * 1e-3));
}

struct GridFlags {
    int points = 0;
    double half_width = 0.0;
    double dt_ns = 0.0;
};

void add_grid(CLI::App* cmd, GridFlags& g)
{
    cmd->add_option("--grid-points", g.points, "Spatial grid points")
        ->check(CLI::Range(8, 1 << 22));
    cmd->add_option("--grid-halfwidth", g.half_width,
                    "Half-width of the spatial grid");
    cmd->add_option("--dt-ns", g.dt_ns, "Propagator time step in ns");
}

sta::GridSettings resolve_grid(const GridFlags& g,
                               const sta::OscillatorSpec& spec, int n_max)
{
    auto grid = sta::default_grid(spec, n_max);
    if (g.points > 0) grid.n_points = g.points;
    if (g.half_width > 0.0) grid.half_width = g.half_width;
    if (g.dt_ns > 0.0) grid.dt = g.dt_ns * 1e-9;
    return grid;
}

void emit(const Shared& s, const std::string& body)
{
    if (s.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(s.out);
    if (!f) throw ValidationError("cannot open output file " + s.out);
    f << body;
}

std::vector<double> sample_times(double tf, int n_samples)
{
    std::vector<double> t(n_samples);
    for (int i = 0; i < n_samples; ++i)
        t[i] = tf * i / (n_samples - 1);
    return t;
}

// --- design ---------------------------------------------------------------

int cmd_design(const Shared& s, const AnsatzFlags& a)
{
    auto spec = s.spec();
    auto law = make_law(a, spec);
    auto profile = sta::inverse_frequency(law, spec.omega0);

    std::ostringstream os;
    os << "# sta design " << s.describe() << " ansatz=" << a.ansatz;
    if (a.tprime_opt->count()) os << " tprime_ms=" << g17(a.tprime_ms);
    os << " version=" << kVersion << "\n";
    os << "t_s,s,b,bdot,bddot,omega_sq_rad2_s2\n";
    for (double t : sample_times(spec.tf, s.samples))
        os << g17(t) << ',' << g17(t / spec.tf) << ',' << g17(law->b(t)) << ','
           << g17(law->bdot(t)) << ',' << g17(law->bddot(t)) << ','
           << g17(profile.omega_sq(t)) << '\n';
    emit(s, os.str());
    return 0;
}

// --- simulate -------------------------------------------------------------

int cmd_simulate(const Shared& s, const AnsatzFlags& a,
                 const std::vector<int>& levels_in, bool verify,
                 const GridFlags& gf)
{
    std::vector<int> levels = levels_in;
    if (levels.empty()) levels = {0};
    for (int n : levels)
        if (n < 0) throw ValidationError("--n must be >= 0");

    auto spec = s.spec();
    auto law = make_law(a, spec);
    auto profile = sta::inverse_frequency(law, spec.omega0);

    std::ostringstream os;
    os << "# sta simulate " << s.describe() << " ansatz=" << a.ansatz;
    for (int n : levels) os << " n=" << n;
    os << " verify=" << (verify ? 1 : 0) << " version=" << kVersion << "\n";
    os << "t_s";
    for (int n : levels) os << ",energy_n" << n << "_over_hbar_omega0";
    os << "\n";
    for (double t : sample_times(spec.tf, s.samples)) {
        os << g17(t);
        for (int n : levels) {
            sta::ExpandingMode mode{n, law, spec};
            os << ','
               << g17(sta::mode_energy(mode, profile, t) /
                      (spec.hbar * spec.omega0));
        }
        os << '\n';
    }

    if (verify) {
        const int n_max = *std::max_element(levels.begin(), levels.end());
        for (int n : levels) {
            auto grid = resolve_grid(gf, spec, n);
            auto psi0 = sta::initial_eigenstate(n, spec, grid);
            auto psif = sta::propagate(profile, psi0, spec, grid.dt);

            sta::ExpandingMode mode{n, law, spec};
            std::vector<double> x(psif.psi.size());
            for (std::size_t j = 0; j < x.size(); ++j) x[j] = psif.x(j);
            sta::GridState analytic = psif;
            analytic.psi = sta::expanding_mode_wavefunction(mode, spec.tf, x);

            os << "# verify_n=" << n
               << " fidelity_final=" << g17(sta::fidelity(psif, analytic));
            auto p = sta::populations(psif, spec.omegaf, n_max, spec);
            for (int k = 0; k <= n_max; ++k)
                os << " p_" << k << '=' << g17(p[k]);
            os << '\n';
        }
    }
    emit(s, os.str());
    return 0;
}

// --- bangbang -------------------------------------------------------------

int cmd_bangbang(const Shared& s, double omegaI_frac, double omega2_frac)
{
    auto spec = s.spec();
    auto plan = sta::solve_matching(omegaI_frac * spec.omega0,
                                    omega2_frac * spec.omega0, spec);
    auto profile = sta::bangbang_profile(plan, spec);
    sta::BangBangLaw law(plan, spec.omega0);
    const double tmin = sta::t_min(spec);

    std::ostringstream os;
    os << "# sta bangbang " << s.describe()
       << " omegaI_frac=" << g17(omegaI_frac)
       << " omega2_frac=" << g17(omega2_frac) << " version=" << kVersion
       << "\n";
    os << "# tau1_ms=" << g17(plan.tau1 * 1e3)
       << " tf_ms=" << g17(plan.tf() * 1e3) << " t_min_ms=" << g17(tmin * 1e3)
       << " tf_over_t_min=" << g17(plan.tf() / tmin) << "\n";
    os << "t_s,b,bdot,omega_sq_rad2_s2\n";
    for (double t : sample_times(plan.tf(), s.samples))
        os << g17(t) << ',' << g17(law.b(t)) << ',' << g17(law.bdot(t)) << ','
           << g17(profile.omega_sq(t)) << '\n';
    emit(s, os.str());
    return 0;
}

// --- reference ------------------------------------------------------------

int cmd_reference(const Shared& s, const std::string& ramp, double tf_min_ms,
                  double tf_max_ms, int tf_steps)
{
    if (!(tf_min_ms > 0.0) || !(tf_max_ms >= tf_min_ms) || tf_steps < 1)
        throw ValidationError("invalid --tf-min-ms/--tf-max-ms/--tf-steps");

    std::ostringstream os;
    os << "# sta reference " << s.describe() << " ramp=" << ramp
       << " tf_min_ms=" << g17(tf_min_ms) << " tf_max_ms=" << g17(tf_max_ms)
       << " tf_steps=" << tf_steps << " version=" << kVersion << "\n";
    os << "tf_s,energy_over_hbar_omegaf,excess_rel,adiabaticity_margin\n";

    for (int i = 0; i < tf_steps; ++i) {
        const double frac =
            tf_steps == 1 ? 0.0 : static_cast<double>(i) / (tf_steps - 1);
        const double tf =
            1e-3 * tf_min_ms * std::pow(tf_max_ms / tf_min_ms, frac);
        auto spec = sta::make_spec(s.omega0(), s.omegaf(), tf);

        std::unique_ptr<sta::FrequencyProfile> profile;
        if (ramp == "linear")
            profile = std::make_unique<sta::LinearRampProfile>(
                sta::linear_ramp(spec));
        else
            profile = std::make_unique<sta::UniformRampProfile>(
                sta::uniform_ramp(spec));

        std::vector<double> t{0.0, tf};
        auto numeric =
            sta::ermakov_forward(*profile, 1.0, 0.0, spec.omega0, t);
        const double bf = numeric.b_samples().back();
        const double bdf = numeric.bdot_samples().back();
        const double e = spec.hbar / (4.0 * spec.omega0) *
                         (bdf * bdf + spec.omegaf * spec.omegaf * bf * bf +
                          spec.omega0 * spec.omega0 / (bf * bf));
        const double excess = e / (0.5 * spec.hbar * spec.omegaf) - 1.0;
        const double margin = sta::adiabaticity_margin(*profile, 2001);
        os << g17(tf) << ',' << g17(e / (spec.hbar * spec.omegaf)) << ','
           << g17(excess) << ',' << g17(margin) << '\n';
    }
    emit(s, os.str());
    return 0;
}

// --- sweep ----------------------------------------------------------------

int cmd_sweep(const Shared& s, const AnsatzFlags& a,
              const std::string& tf_list_ms, const std::vector<int>& levels_in,
              bool verify, const GridFlags& gf)
{
    std::vector<double> tfs;
    std::stringstream ss(tf_list_ms);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size() || !(v > 0.0))
            throw ValidationError("bad --tf-list-ms entry: " + tok);
        tfs.push_back(v * 1e-3);
    }
    if (tfs.empty()) throw ValidationError("--tf-list-ms is empty");
    std::vector<int> levels = levels_in;
    if (levels.empty()) levels = {0};

    auto row = [&](double tf, int n) {
        auto spec = sta::make_spec(s.omega0(), s.omegaf(), tf);
        auto law = make_law(a, spec);
        auto profile = sta::inverse_frequency(law, spec.omega0);

        sta::ExpandingMode mode{n, law, spec};
        const double e_final = sta::mode_energy(mode, profile, tf) /
                               (spec.hbar * spec.omega0);
        double min_w2 = 1e300, max_abs = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            const double w2 = profile.omega_sq(tf * i / 2000.0);
            min_w2 = std::min(min_w2, w2);
            max_abs = std::max(max_abs, std::abs(w2));
        }
        double margin = std::nan("");
        if (min_w2 > 0.0) margin = sta::adiabaticity_margin(profile, 2001);

        double fid = std::nan("");
        if (verify) {
            auto grid = resolve_grid(gf, spec, n);
            auto psi0 = sta::initial_eigenstate(n, spec, grid);
            auto psif = sta::propagate(profile, psi0, spec, grid.dt);
            std::vector<double> x(psif.psi.size());
            for (std::size_t j = 0; j < x.size(); ++j) x[j] = psif.x(j);
            sta::GridState analytic = psif;
            analytic.psi = sta::expanding_mode_wavefunction(mode, tf, x);
            fid = sta::fidelity(psif, analytic);
        }
        std::ostringstream os;
        os << g17(tf) << ',' << n << ',' << g17(e_final) << ',' << g17(fid)
           << ',' << g17(min_w2) << ',' << g17(max_abs) << ',' << g17(margin)
           << '\n';
        return os.str();
    };

    // Rows computed in parallel, assembled in flag order.
    std::vector<std::future<std::string>> futures;
    for (double tf : tfs)
        for (int n : levels)
            futures.push_back(
                std::async(std::launch::async, row, tf, n));

    std::ostringstream os;
    os << "# sta sweep " << s.describe() << " ansatz=" << a.ansatz
       << " tf_list_ms=" << tf_list_ms;
    for (int n : levels) os << " n=" << n;
    os << " verify=" << (verify ? 1 : 0) << " version=" << kVersion << "\n";
    os << "tf_s,n,final_energy_over_hbar_omega0,fidelity_final,"
          "min_omega_sq,max_abs_omega_sq,peak_adiabaticity_margin\n";
    for (auto& f : futures) os << f.get();
    emit(s, os.str());
    return 0;
}

int guarded(const std::function<int()>& body)
{
    try {
        return body();
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sta::NonPositiveParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sta::GridTooSmall& e) {
        std::cerr << "propagation error: " << e.what() << "\n";
        return 4;
    } catch (const sta::NormDrift& e) {
        std::cerr << "propagation error: " << e.what() << "\n";
        return 4;
    } catch (const sta::Error& e) {
        std::cerr << "solve error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Invariant-based trap-expansion design and simulation"};
    app.require_subcommand(1);

    // design
    auto* design = app.add_subcommand("design", "Emit b(t) and omega^2(t)");
    Shared design_shared;
    AnsatzFlags design_ansatz;
    add_shared(design, design_shared);
    add_ansatz(design, design_ansatz);

    // simulate
    auto* simulate =
        app.add_subcommand("simulate", "Emit mode energies, optional oracle");
    Shared sim_shared;
    AnsatzFlags sim_ansatz;
    GridFlags sim_grid;
    std::vector<int> sim_levels;
    bool sim_verify = false;
    add_shared(simulate, sim_shared);
    add_ansatz(simulate, sim_ansatz);
    add_grid(simulate, sim_grid);
    simulate->add_option("--n", sim_levels, "Mode index (repeatable)");
    simulate->add_flag("--verify", sim_verify,
                       "Run the grid-propagator oracle");

    // bangbang
    auto* bangbang =
        app.add_subcommand("bangbang", "Solve a three-jump trajectory");
    Shared bb_shared;
    double omegaI_frac = 0.0, omega2_frac = 0.0;
    add_shared(bangbang, bb_shared);
    bangbang
        ->add_option("--omegaI-frac", omegaI_frac,
                     "Imaginary first-segment frequency as a fraction of omega0")
        ->required();
    bangbang
        ->add_option("--omega2-frac", omega2_frac,
                     "Second-segment frequency as a fraction of omega0")
        ->required();

    // reference
    auto* reference =
        app.add_subcommand("reference", "Sweep a reference ramp over tf");
    Shared ref_shared;
    std::string ramp = "linear";
    double tf_min_ms = 10.0, tf_max_ms = 1000.0;
    int tf_steps = 20;
    add_shared(reference, ref_shared);
    reference->add_option("--ramp", ramp, "Ramp family")
        ->check(CLI::IsMember({"linear", "uniform"}));
    reference->add_option("--tf-min-ms", tf_min_ms, "Smallest tf, ms");
    reference->add_option("--tf-max-ms", tf_max_ms, "Largest tf, ms");
    reference->add_option("--tf-steps", tf_steps, "Number of tf values");

    // sweep
    auto* sweep =
        app.add_subcommand("sweep", "One row per (tf, n) designed trajectory");
    Shared sweep_shared;
    AnsatzFlags sweep_ansatz;
    GridFlags sweep_grid;
    std::string tf_list_ms;
    std::vector<int> sweep_levels;
    bool sweep_verify = false;
    add_shared(sweep, sweep_shared);
    add_ansatz(sweep, sweep_ansatz);
    add_grid(sweep, sweep_grid);
    sweep->add_option("--tf-list-ms", tf_list_ms,
                      "Comma-separated tf values in ms")
        ->required();
    sweep->add_option("--n", sweep_levels, "Mode index (repeatable)");
    sweep->add_flag("--verify", sweep_verify,
                    "Run the grid-propagator oracle per row");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = apply_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "flag error: " << e.what() << "\n";
        return 2;
    }

    if (design->parsed())
        return guarded([&] { return cmd_design(design_shared, design_ansatz); });
    if (simulate->parsed())
        return guarded([&] {
            return cmd_simulate(sim_shared, sim_ansatz, sim_levels, sim_verify,
                                sim_grid);
        });
    if (bangbang->parsed())
        return guarded(
            [&] { return cmd_bangbang(bb_shared, omegaI_frac, omega2_frac); });
    if (reference->parsed())
        return guarded([&] {
            return cmd_reference(ref_shared, ramp, tf_min_ms, tf_max_ms,
                                 tf_steps);
        });
    return guarded([&] {
        return cmd_sweep(sweep_shared, sweep_ansatz, tf_list_ms, sweep_levels,
                         sweep_verify, sweep_grid);
    });
}
