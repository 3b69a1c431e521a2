#ifndef OPTOENT_SWEEP_HPP
#define OPTOENT_SWEEP_HPP

#include "optoent/params.hpp"
#include "optoent/spectra.hpp"

#include <optional>
#include <vector>

namespace optoent
{

// Frequency window; the center defaults to (Omega1 + Omega2)/2.
struct OmegaWindow
{
    std::optional<double> center;
    double halfwidth = 100.0; // rad/s
    int points = 401;

    std::vector<double> grid(const SystemConfig& config) const;
};

struct GridSpec
{
    OmegaWindow omega;
    double t_min = 0.05; // K
    double t_max = 5.0;  // K
    int t_points = 100;
    std::vector<double> mismatch_list; // Omega2 - Omega1 values, rad/s

    std::vector<double> temperatures() const;
    void validate(const SystemConfig& config) const;
};

struct SweepResult
{
    SystemConfig config;
    std::vector<double> omegas;
    std::vector<double> temperatures;
    // Row-major: points[it * omegas.size() + iw].
    std::vector<SpectralPoint> points;

    std::vector<double> min_e;        // per temperature
    std::vector<double> argmin_omega; // per temperature
    std::vector<double> bandwidth;    // per temperature, measure of {omega : E < 1}
    std::optional<double> critical_temperature;
    int near_singular_count = 0;

    const SpectralPoint& at(std::size_t it, std::size_t iw) const
    {
        return points[it * omegas.size() + iw];
    }
};

// Thread count: `threads` if positive, else $OPTOENT_THREADS, else hardware concurrency.
int resolve_threads(int threads);

// Measure of {omega : E < 1}, linearly interpolating E across each crossing.
double entangled_bandwidth(const std::vector<double>& omegas, const std::vector<double>& e);

SweepResult run_sweep(const SystemConfig& config, const GridSpec& grid, int threads = 0);

// One sweep per entry of grid.mismatch_list (mirror2 frequency = mirror1 + mismatch).
std::vector<SweepResult> run_mismatch_sweeps(const SystemConfig& config, const GridSpec& grid,
                                             int threads = 0);

SystemConfig with_mismatch(SystemConfig config, double mismatch);

// min over the window grid of E(omega, T).
double min_entanglement(const SystemConfig& config, const SteadyState& ss,
                        const std::vector<double>& omegas, double temperature,
                        double* argmin = nullptr);

// Temperature at which min_omega E crosses 1, bisected to `tolerance` K.
// Probes [t_lo, t_hi] on a log grid for the first sign change; throws
// ConvergenceError when there is none.
double find_critical_temperature(const SystemConfig& config, const OmegaWindow& window,
                                 double t_lo = 0.01, double t_hi = 100.0,
                                 double tolerance = 1.0e-3);

struct ScalingRow
{
    double multiplier = 0.0;
    double min_e = 0.0;
    double argmin_omega = 0.0;
    double bandwidth = 0.0;
    bool near_singular = false;
};

// Rescales the input power by each multiplier and reports min E and bandwidth at `temperature`.
std::vector<ScalingRow> coupling_scaling_study(const SystemConfig& config,
                                               const std::vector<double>& power_multipliers,
                                               const OmegaWindow& window, double temperature);

} // namespace optoent

#endif
