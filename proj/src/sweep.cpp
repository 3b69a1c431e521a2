#include "optoent/sweep.hpp"

#include "optoent/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace optoent
{

namespace
{

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        v[i] = (i == n - 1) ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    }
    return v;
}

// Runs body(i) for i in [0, count) across `threads` workers; results are written by index.
template <class Body>
void parallel_for(std::size_t count, int threads, Body body)
{
    const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                constexpr std::size_t chunk = 64;
                for (;;) {
                    const std::size_t start = next.fetch_add(chunk);
                    if (start >= count) return;
                    const std::size_t stop = std::min(count, start + chunk);
                    try {
                        for (std::size_t i = start; i < stop; ++i) body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next.store(count);
                        return;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

std::optional<double> bisect_crossing(const SystemConfig& config, const SteadyState& ss,
                                      const std::vector<double>& omegas, double lo, double hi,
                                      double tolerance)
{
    // Invariant: min E(lo) < 1 <= min E(hi).
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (min_entanglement(config, ss, omegas, mid) < 1.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::vector<double> OmegaWindow::grid(const SystemConfig& config) const
{
    const double c = center.value_or(0.5 * (config.mirror1.omega_m + config.mirror2.omega_m));
    return linspace(c - halfwidth, c + halfwidth, points);
}

std::vector<double> GridSpec::temperatures() const { return linspace(t_min, t_max, t_points); }

void GridSpec::validate(const SystemConfig& config) const
{
    if (omega.points < 2) throw InvalidParameter("grid: omega_points must be at least 2");
    if (t_points < 2) throw InvalidParameter("grid: t_points must be at least 2");
    if (!(omega.halfwidth > 0.0)) throw InvalidParameter("grid: omega_halfwidth must be positive");
    const double c = omega.center.value_or(0.5 * (config.mirror1.omega_m + config.mirror2.omega_m));
    if (!(c - omega.halfwidth > 0.0)) {
        throw InvalidParameter("grid: omega window must stay above 0 (E is undefined at omega = 0)");
    }
    if (!(t_min >= 0.0) || !(t_max > t_min)) {
        throw InvalidParameter("grid: need 0 <= t_min < t_max");
    }
}

int resolve_threads(int threads)
{
    if (threads > 0) return threads;
    if (const char* env = std::getenv("OPTOENT_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return n;
        } catch (const std::exception&) {
        }
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

double entangled_bandwidth(const std::vector<double>& omegas, const std::vector<double>& e)
{
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < omegas.size(); ++i) {
        const double step = omegas[i + 1] - omegas[i];
        const double a = e[i];
        const double b = e[i + 1];
        const bool in_a = a < 1.0;
        const bool in_b = b < 1.0;
        if (in_a && in_b) {
            total += step;
        } else if (in_a != in_b) {
            const double inside = in_a ? a : b;
            const double outside = in_a ? b : a;
            const double frac = std::isfinite(outside) ? (1.0 - inside) / (outside - inside) : 0.0;
            total += step * frac;
        }
    }
    return total;
}

double min_entanglement(const SystemConfig& config, const SteadyState& ss,
                        const std::vector<double>& omegas, double temperature, double* argmin)
{
    double best = std::numeric_limits<double>::infinity();
    double where = omegas.empty() ? 0.0 : omegas.front();
    for (double w : omegas) {
        const double e = entanglement_degree(config, ss, w, temperature).entanglement_degree;
        if (e < best) {
            best = e;
            where = w;
        }
    }
    if (argmin) *argmin = where;
    return best;
}

SweepResult run_sweep(const SystemConfig& config, const GridSpec& grid, int threads)
{
    validate(config);
    grid.validate(config);

    SweepResult r;
    r.config = config;
    r.omegas = grid.omega.grid(config);
    r.temperatures = grid.temperatures();
    const std::size_t nw = r.omegas.size();
    const std::size_t nt = r.temperatures.size();
    r.points.resize(nw * nt);

    const SteadyState ss = steady_state(config);
    parallel_for(nw * nt, resolve_threads(threads), [&](std::size_t i) {
        r.points[i] = entanglement_degree(config, ss, r.omegas[i % nw], r.temperatures[i / nw]);
    });

    r.min_e.resize(nt);
    r.argmin_omega.resize(nt);
    r.bandwidth.resize(nt);
    std::vector<double> row(nw);
    for (std::size_t it = 0; it < nt; ++it) {
        double best = std::numeric_limits<double>::infinity();
        double where = r.omegas.front();
        for (std::size_t iw = 0; iw < nw; ++iw) {
            const SpectralPoint& p = r.at(it, iw);
            row[iw] = p.entanglement_degree;
            if (p.near_singular) ++r.near_singular_count;
            if (p.entanglement_degree < best) {
                best = p.entanglement_degree;
                where = p.omega;
            }
        }
        r.min_e[it] = best;
        r.argmin_omega[it] = where;
        r.bandwidth[it] = entangled_bandwidth(r.omegas, row);
    }

    for (std::size_t it = 0; it + 1 < nt; ++it) {
        if (r.min_e[it] < 1.0 && r.min_e[it + 1] >= 1.0) {
            r.critical_temperature = bisect_crossing(config, ss, r.omegas, r.temperatures[it],
                                                     r.temperatures[it + 1], 1.0e-3);
            break;
        }
    }
    return r;
}

SystemConfig with_mismatch(SystemConfig config, double mismatch)
{
    config.mirror2.omega_m = config.mirror1.omega_m + mismatch;
    return config;
}

std::vector<SweepResult> run_mismatch_sweeps(const SystemConfig& config, const GridSpec& grid,
                                             int threads)
{
    std::vector<SweepResult> out;
    if (grid.mismatch_list.empty()) {
        out.push_back(run_sweep(config, grid, threads));
        return out;
    }
    for (double m : grid.mismatch_list) out.push_back(run_sweep(with_mismatch(config, m), grid, threads));
    return out;
}

double find_critical_temperature(const SystemConfig& config, const OmegaWindow& window, double t_lo,
                                 double t_hi, double tolerance)
{
    if (!(t_lo > 0.0) || !(t_hi > t_lo)) {
        throw InvalidParameter("critical temperature: need 0 < t_lo < t_hi");
    }
    validate(config);
    const SteadyState ss = steady_state(config);
    const std::vector<double> omegas = window.grid(config);

    constexpr int probes = 48;
    const double ratio = std::pow(t_hi / t_lo, 1.0 / (probes - 1));
    double prev_t = t_lo;
    bool prev_in = min_entanglement(config, ss, omegas, prev_t) < 1.0;
    for (int i = 1; i < probes; ++i) {
        const double t = (i == probes - 1) ? t_hi : t_lo * std::pow(ratio, i);
        const bool in = min_entanglement(config, ss, omegas, t) < 1.0;
        if (prev_in && !in) {
            return *bisect_crossing(config, ss, omegas, prev_t, t, tolerance);
        }
        prev_t = t;
        prev_in = in;
    }
    throw ConvergenceError("critical temperature: min E never crosses 1", t_lo, t_hi);
}

std::vector<ScalingRow> coupling_scaling_study(const SystemConfig& config,
                                               const std::vector<double>& power_multipliers,
                                               const OmegaWindow& window, double temperature)
{
    std::vector<ScalingRow> rows;
    for (double mult : power_multipliers) {
        if (!(mult >= 0.0)) throw InvalidParameter("scaling study: multipliers must be non-negative");
        SystemConfig c = config;
        c.cavity.input_power = config.cavity.input_power * mult;
        const SteadyState ss = steady_state(c);
        const std::vector<double> omegas = window.grid(c);

        ScalingRow row;
        row.multiplier = mult;
        row.min_e = std::numeric_limits<double>::infinity();
        std::vector<double> e(omegas.size());
        for (std::size_t i = 0; i < omegas.size(); ++i) {
            const SpectralPoint p = entanglement_degree(c, ss, omegas[i], temperature);
            e[i] = p.entanglement_degree;
            row.near_singular = row.near_singular || p.near_singular;
            if (e[i] < row.min_e) {
                row.min_e = e[i];
                row.argmin_omega = omegas[i];
            }
        }
        row.bandwidth = entangled_bandwidth(omegas, e);
        rows.push_back(row);
    }
    return rows;
}

} // namespace optoent
