#include "optoent/verify.hpp"

#include "optoent/errors.hpp"
#include "optoent/oracle.hpp"
#include "optoent/spectra.hpp"

#include <algorithm>
#include <cmath>

namespace optoent
{

namespace
{

double log_uniform(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) { return uniform(rng, 0.0, 1.0) < p; }

double random_temperature(std::mt19937_64& rng)
{
    return coin(rng, 0.1) ? 0.0 : log_uniform(rng, 1e-3, 300.0);
}

// Near a resonance most of the time, where the interesting structure sits.
double random_omega(std::mt19937_64& rng, const SystemConfig& c)
{
    const auto& mode = coin(rng, 0.5) ? c.mirror1 : c.mirror2;
    const double sign = coin(rng, 0.5) ? 1.0 : -1.0;
    const double offset = coin(rng, 0.6) ? log_uniform(rng, 1e-3, 30.0) * mode.gamma_m
                                         : log_uniform(rng, 1e-4, 0.5) * mode.omega_m;
    const double w = mode.omega_m + sign * offset;
    return w > 0.0 ? w : mode.omega_m * 0.5;
}

} // namespace

Draw random_draw(std::mt19937_64& rng)
{
    Draw d;
    SystemConfig& c = d.config;
    c.mirror1.mass = log_uniform(rng, 1e-6, 1e-1);
    c.mirror1.omega_m = log_uniform(rng, 1e5, 1e7);
    c.mirror1.gamma_m = log_uniform(rng, 0.1, 1e3);
    if (coin(rng, 0.5)) {
        c.mirror2.mass = log_uniform(rng, 1e-6, 1e-1);
        c.mirror2.omega_m = log_uniform(rng, 1e5, 1e7);
        c.mirror2.gamma_m = log_uniform(rng, 0.1, 1e3);
    } else {
        // Nearly identical mirrors, the regime where q1 - q2 is squeezed.
        c.mirror2 = c.mirror1;
        c.mirror2.omega_m += (coin(rng, 0.5) ? 1.0 : -1.0) * log_uniform(rng, 1e-3, 1e2);
    }
    c.cavity.wavelength = uniform(rng, 400e-9, 1600e-9);
    c.cavity.path_length = log_uniform(rng, 1e-4, 1e-1);
    c.cavity.kappa = log_uniform(rng, 1e5, 1e8);
    c.cavity.detuning = (coin(rng, 0.5) ? 1.0 : -1.0) * log_uniform(rng, 1e4, 1e8);
    c.cavity.input_power = coin(rng, 0.05) ? 0.0 : log_uniform(rng, 1e-6, 10.0);
    c.temperature = random_temperature(rng);

    d.temperature = c.temperature;
    d.omega = random_omega(rng, c);
    return d;
}

Draw anchored_draw(const SystemConfig& config, std::mt19937_64& rng)
{
    Draw d;
    d.config = config;
    const OmegaWindow window;
    const double center = 0.5 * (config.mirror1.omega_m + config.mirror2.omega_m);
    d.omega = center + uniform(rng, -window.halfwidth, window.halfwidth);
    d.temperature = random_temperature(rng);
    d.config.temperature = d.temperature;
    return d;
}

std::vector<Draw> make_draws(const SystemConfig& anchor, const VerifyOptions& options)
{
    std::mt19937_64 rng(options.seed);
    std::vector<Draw> draws;
    draws.reserve(static_cast<std::size_t>(std::max(0, options.draws) + std::max(0, options.anchor_draws)));
    for (int i = 0; i < options.anchor_draws; ++i) draws.push_back(anchored_draw(anchor, rng));
    for (int i = 0; i < options.draws; ++i) draws.push_back(random_draw(rng));
    return draws;
}

double relative_error(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

VerifyReport run_verification(const SystemConfig& anchor, const VerifyOptions& options)
{
    if (options.draws < 1) throw InvalidParameter("verify: draws must be at least 1");

    VerifyReport report;
    report.options = options;
    report.draws = make_draws(anchor, options);
    for (const char* q : {"var_u", "var_v", "comm_abs", "E"}) report.errors[q] = {};

    constexpr double fault_scale = 1.0 + 1.0e-6;
    auto record = [&](const char* name, int index, double closed, double reference) {
        QuantityError& e = report.errors[name];
        const double err = relative_error(closed, reference);
        if (err > e.max_rel_error || e.worst_index < 0) {
            e.max_rel_error = err;
            e.worst_index = index;
            e.closed_form = closed;
            e.oracle = reference;
        }
    };

    for (std::size_t i = 0; i < report.draws.size(); ++i) {
        const Draw& d = report.draws[i];
        const SteadyState ss = steady_state(d.config);
        SpectralPoint pt = entanglement_degree(d.config, ss, d.omega, d.temperature);
        oracle::Densities ref;
        try {
            ref = oracle::oracle_densities(oracle::build_system(d.config, ss), d.omega, d.temperature);
        } catch (const SingularSystem&) {
            ++report.skipped;
            continue;
        }
        switch (options.fault) {
        case InjectedFault::var_u: pt.var_u *= fault_scale; break;
        case InjectedFault::var_v: pt.var_v *= fault_scale; break;
        case InjectedFault::comm_abs: pt.comm_abs *= fault_scale; break;
        case InjectedFault::none: break;
        }
        ++report.evaluated;
        const int idx = static_cast<int>(i);
        record("var_u", idx, pt.var_u, ref.var_u);
        record("var_v", idx, pt.var_v, ref.var_v);
        record("comm_abs", idx, pt.comm_abs, ref.comm_abs);
        if (pt.comm_abs > 1e-12 && ref.comm_abs > 1e-12) {
            const double e_closed = pt.var_u * pt.var_v / (pt.comm_abs * pt.comm_abs);
            const double e_ref = ref.var_u * ref.var_v / (ref.comm_abs * ref.comm_abs);
            record("E", idx, e_closed, e_ref);
        }
    }

    report.pass = report.evaluated > 0;
    for (const auto& [name, e] : report.errors) {
        report.worst = std::max(report.worst, e.max_rel_error);
        if (e.max_rel_error > options.threshold) {
            report.pass = false;
            report.failed.push_back(name);
        }
    }
    return report;
}

} // namespace optoent
