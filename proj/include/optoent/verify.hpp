#ifndef OPTOENT_VERIFY_HPP
#define OPTOENT_VERIFY_HPP

#include "optoent/params.hpp"
#include "optoent/sweep.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace optoent
{

// Deliberate perturbation of one closed-form quantity, used to prove the
// comparison actually detects errors.
enum class InjectedFault { none, var_u, var_v, comm_abs };

struct VerifyOptions
{
    int draws = 1000;
    std::uint64_t seed = 20030101;
    int anchor_draws = 64;    // extra draws on the supplied config itself
    double threshold = 1.0e-8;
    InjectedFault fault = InjectedFault::none;
};

struct Draw
{
    SystemConfig config;
    double omega = 0.0;
    double temperature = 0.0;
};

struct QuantityError
{
    double max_rel_error = 0.0;
    int worst_index = -1;
    double closed_form = 0.0;
    double oracle = 0.0;
};

struct VerifyReport
{
    VerifyOptions options;
    int evaluated = 0;
    int skipped = 0; // singular systems
    std::map<std::string, QuantityError> errors; // var_u, var_v, comm_abs, E
    std::vector<Draw> draws;
    double worst = 0.0;
    bool pass = false;
    std::vector<std::string> failed;
};

// Random system drawn log-uniformly over: masses 1e-6..1e-1 kg, Omega 1e5..1e7 rad/s,
// Gamma 0.1..1e3 rad/s, power 0..10 W, T 0..300 K; plus wavelength 400..1600 nm,
// length 1e-4..1e-1 m, kappa 1e5..1e8 rad/s, |detuning| 1e4..1e8 rad/s.
Draw random_draw(std::mt19937_64& rng);

// Draw at the supplied config with random omega in its default window and random T.
Draw anchored_draw(const SystemConfig& config, std::mt19937_64& rng);

std::vector<Draw> make_draws(const SystemConfig& anchor, const VerifyOptions& options);

double relative_error(double a, double b);

VerifyReport run_verification(const SystemConfig& anchor, const VerifyOptions& options);

} // namespace optoent

#endif
