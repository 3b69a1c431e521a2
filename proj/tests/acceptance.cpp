#include "optoent/errors.hpp"
#include "optoent/response.hpp"
#include "optoent/spectra.hpp"
#include "optoent/sweep.hpp"
#include "optoent/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace optoent;

namespace
{

int failures = 0;

constexpr int kParallelThreads = 8;

void report(bool pass, const std::string& name, const std::string& detail)
{
    if (!pass) ++failures;
    std::printf("%s  %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
}

void note(const std::string& text) { std::printf("      %s\n", text.c_str()); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

class Stopwatch
{
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double conj_error(cplx plus, cplx minus)
{
    const double scale = std::max(std::abs(plus), std::abs(minus));
    return scale == 0.0 ? 0.0 : std::abs(minus - std::conj(plus)) / scale;
}

// Largest distance of the argmin from `target`, in grid steps, over temperatures with min E < 1.
double argmin_offset(const SweepResult& s, double target)
{
    const double step = s.omegas[1] - s.omegas[0];
    double worst = 0.0;
    for (std::size_t it = 0; it < s.temperatures.size(); ++it) {
        if (s.min_e[it] < 1.0) worst = std::max(worst, std::abs(s.argmin_omega[it] - target) / step);
    }
    return worst;
}

double min_e_at(const SystemConfig& c, double t)
{
    const OmegaWindow w;
    return min_entanglement(c, steady_state(c), w.grid(c), t);
}

std::string tc_text(const std::optional<double>& tc)
{
    return tc ? fmt("%.3f K", *tc) : std::string("none in grid");
}

void coupling()
{
    const SystemConfig c = reference_config();
    const double g = derive_coupling(c.mirror1, c.cavity, c.constants);
    report(std::abs(g - 2.5) <= 0.15, "coupling", fmt("G = %.6f rad/s, target 2.5 +/- 0.15", g));
}

bool oracle_equivalence()
{
    VerifyOptions o;
    o.draws = 1000;
    o.threshold = 1.0e-9;
    const Stopwatch clock;
    const VerifyReport r = run_verification(reference_config(), o);
    const double t = clock.seconds();
    const double worst = std::max({r.errors.at("var_u").max_rel_error, r.errors.at("var_v").max_rel_error,
                                   r.errors.at("comm_abs").max_rel_error});
    const bool pass = r.evaluated >= 1000 && worst <= 1.0e-9 && t < 10.0;
    report(pass, "oracle equivalence",
           fmt("%.0f draws, worst relative error %.2e (limit 1e-9), %.2f s (limit 10 s)", r.evaluated, worst, t));
    return pass;
}

void decoupled_boundary()
{
    SystemConfig c = reference_config(0.0, 0.0);
    c.cavity.input_power = 0.0;
    const SpectralPoint p = entanglement_degree(c, steady_state(c), c.mirror1.omega_m, 0.0);
    const double err = std::abs(p.entanglement_degree - 1.0);
    report(err <= 1.0e-6, "decoupled boundary", fmt("E = %.15f, |E - 1| = %.2e (limit 1e-6)", p.entanglement_degree, err));
}

struct Figures
{
    SweepResult fig2;
    SweepResult fig3;
    SweepResult fig4;
    double fig2_seconds = 0.0;
};

void figure2(const Figures& f)
{
    const SweepResult& s = f.fig2;
    const double offset = argmin_offset(s, s.config.mirror1.omega_m);
    double best_cold = 1.0e300;
    for (std::size_t it = 0; it < s.temperatures.size(); ++it) {
        if (s.temperatures[it] <= 0.5) best_cold = std::min(best_cold, s.min_e[it]);
    }
    const bool argmin_ok = offset <= 1.0;
    const bool tc_ok = s.critical_temperature && *s.critical_temperature >= 3.0 && *s.critical_temperature <= 5.0;
    const bool epr_ok = best_cold < 0.25;
    const bool time_ok = f.fig2_seconds < 60.0;
    report(argmin_ok && tc_ok && epr_ok && time_ok, "figure 2 (identical mirrors)",
           "argmin offset " + fmt("%.2f", offset) + " steps (limit 1), Tc " + tc_text(s.critical_temperature) +
               " (target 3-5 K), min E at T <= 0.5 K " + fmt("%.4f", best_cold) + " (limit 0.25), sweep " +
               fmt("%.2f s", f.fig2_seconds) + " (limit 60 s)");
    if (!tc_ok) {
        note("Tc is computed, not fitted. The reference parameters give a radiation-pressure");
        note("coupling too weak for entanglement to survive to 3 K; see README, Known deviations.");
    }
}

void figure3(const Figures& f)
{
    const SweepResult& s = f.fig3;
    const double center = 0.5 * (s.config.mirror1.omega_m + s.config.mirror2.omega_m);
    const double offset = argmin_offset(s, center);
    const double e2 = min_e_at(s.config, 2.0);
    report(e2 < 1.0 && offset <= 1.0, "figure 3 (mismatch 10 rad/s)",
           "min E(2 K) " + fmt("%.4f", e2) + " (limit < 1), argmin offset " + fmt("%.2f", offset) +
               " steps (limit 1), Tc " + tc_text(s.critical_temperature));
}

void figure4(const Figures& f)
{
    const SweepResult& s = f.fig4;
    const double e2 = min_e_at(s.config, 2.0);
    std::optional<double> tc = s.critical_temperature;
    if (!tc) {
        try {
            tc = find_critical_temperature(s.config, OmegaWindow{});
        } catch (const ConvergenceError&) {
        }
    }
    report(e2 >= 1.0 && tc && *tc < 2.0, "figure 4 (mismatch 20 rad/s)",
           "min E(2 K) " + fmt("%.4f", e2) + " (limit >= 1), Tc " + tc_text(tc) + " (limit < 2 K)");
}

bool property_suite(const Figures& f)
{
    std::vector<std::string> broken;

    // Conjugation symmetries over random systems.
    VerifyOptions o;
    o.draws = 500;
    o.anchor_draws = 0;
    o.seed = 7;
    double conj_worst = 0.0;
    for (const Draw& d : make_draws(reference_config(), o)) {
        const SteadyState ss = steady_state(d.config);
        const TransferSet ts = assemble_transfer(ss, d.config, d.omega);
        for (int j = 0; j < 2; ++j) {
            conj_worst = std::max(conj_worst, conj_error(ts.plus.chi[j], ts.minus.chi[j]));
            for (int k = 0; k < 2; ++k) {
                conj_worst = std::max(conj_worst, conj_error(ts.plus.xi[j][k], ts.minus.xi[j][k]));
            }
        }
        conj_worst = std::max(conj_worst, conj_error(ts.plus.big_d, ts.minus.big_d));
    }
    if (conj_worst > 1.0e-12) broken.push_back("conjugation " + fmt("%.1e", conj_worst));

    // Kernel limits.
    const SystemConfig ref = reference_config();
    const MechanicalMode& m = ref.mirror1;
    const double ratio = m.gamma_m / m.omega_m;
    double kernel_worst = 0.0;
    for (double w : {1.0e5, 1.0e6, 1.0e7}) {
        const double cold = thermal_kernel(m, w, 1.0e-9);
        kernel_worst = std::max(kernel_worst, std::abs(cold - ratio * w) / (ratio * w));
        const double t = 1.0e4;
        const double classical = ratio * 2.0 * ref.constants.k_boltzmann * t / ref.constants.hbar;
        kernel_worst = std::max(kernel_worst, std::abs(thermal_kernel(m, w, t) - classical) / classical);
    }
    if (kernel_worst > 1.0e-6) broken.push_back("kernel limits " + fmt("%.1e", kernel_worst));

    // Global phase of the intracavity amplitude.
    double phase_worst = 0.0;
    for (const SystemConfig& c : {reference_config(0.0, 0.5), reference_config(10.0, 1.0)}) {
        const SteadyState ss = steady_state(c);
        SteadyState rotated = ss;
        rotated.beta *= std::polar(1.0, 2.1);
        for (double w : {1.0e6 - 30.0, 1.0e6, 1.0e6 + 7.0}) {
            const double e0 = entanglement_degree(c, ss, w, c.temperature).entanglement_degree;
            const double e1 = entanglement_degree(c, rotated, w, c.temperature).entanglement_degree;
            phase_worst = std::max(phase_worst, std::abs(e1 - e0) / e0);
        }
    }
    if (phase_worst > 1.0e-12) broken.push_back("global phase " + fmt("%.1e", phase_worst));

    // Sum criterion implies product criterion on every evaluated point.
    std::size_t sum_points = 0;
    std::size_t violations = 0;
    for (const SweepResult* s : {&f.fig2, &f.fig3, &f.fig4}) {
        for (const SpectralPoint& p : s->points) {
            if (p.flags.sum_entangled) {
                ++sum_points;
                if (!p.flags.product_entangled) ++violations;
            }
        }
    }
    if (violations > 0) broken.push_back("sum => product violated at " + std::to_string(violations) + " points");

    // Bandwidth nonincreasing in T.
    for (const SweepResult* s : {&f.fig2, &f.fig3, &f.fig4}) {
        for (std::size_t it = 1; it < s->bandwidth.size(); ++it) {
            if (s->bandwidth[it] > s->bandwidth[it - 1]) {
                broken.push_back("bandwidth increases at T = " + fmt("%.3f", s->temperatures[it]));
                break;
            }
        }
    }

    // Parallel sweeps are deterministic.
    const SweepResult serial = run_sweep(f.fig2.config, GridSpec{}, 1);
    bool same = serial.points.size() == f.fig2.points.size();
    for (std::size_t i = 0; same && i < serial.points.size(); ++i) {
        const SpectralPoint& a = serial.points[i];
        const SpectralPoint& b = f.fig2.points[i];
        same = a.var_u == b.var_u && a.var_v == b.var_v && a.comm_abs == b.comm_abs &&
               a.entanglement_degree == b.entanglement_degree;
    }
    if (!same) broken.push_back("serial and parallel sweeps differ");

    std::string detail = "conjugation " + fmt("%.1e", conj_worst) + ", kernel " + fmt("%.1e", kernel_worst) +
                         ", phase " + fmt("%.1e", phase_worst) + ", sum-criterion points " +
                         std::to_string(sum_points) + ", bandwidth monotone, sweeps deterministic across " +
                         std::to_string(kParallelThreads) + " threads";
    if (!broken.empty()) {
        detail = "broken:";
        for (const auto& b : broken) detail += " [" + b + "]";
    }
    report(broken.empty(), "property suite", detail);
    return broken.empty();
}

void magnitudes(const Figures& f, bool oracle_ok, bool properties_ok)
{
    report(oracle_ok && properties_ok, "figure magnitudes",
           "no published tables to compare against; computed values recorded below, acceptance rests on the "
           "oracle and property lines");
    for (const SweepResult* s : {&f.fig2, &f.fig3, &f.fig4}) {
        const double mismatch = s->config.mirror2.omega_m - s->config.mirror1.omega_m;
        std::string line = fmt("mismatch %2.0f rad/s: min E", mismatch);
        for (double t : {0.05, 0.5, 1.0, 2.0, 4.0}) line += fmt("  %.2f K %.4g", t, min_e_at(s->config, t));
        note(line);
    }
}

} // namespace

int main()
{
    coupling();
    const bool oracle_ok = oracle_equivalence();
    decoupled_boundary();

    Figures f;
    const GridSpec grid;
    {
        const Stopwatch clock;
        f.fig2 = run_sweep(with_mismatch(reference_config(), 0.0), grid, kParallelThreads);
        f.fig2_seconds = clock.seconds();
    }
    f.fig3 = run_sweep(with_mismatch(reference_config(), 10.0), grid);
    f.fig4 = run_sweep(with_mismatch(reference_config(), 20.0), grid);

    figure2(f);
    figure3(f);
    figure4(f);
    const bool properties_ok = property_suite(f);
    magnitudes(f, oracle_ok, properties_ok);

    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
