#ifndef OPTOENT_CLI_HPP
#define OPTOENT_CLI_HPP

#include "optoent/sweep.hpp"
#include "optoent/verify.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace optoent::cli
{

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,           // bad command-line input (e.g. omega <= 0)
    kConfigError = 2,
    kNumericalError = 3,  // convergence failure, singular system
    kVerificationFailed = 4,
    kIoError = 5,
};

// An empty config path selects the built-in reference parameter set.
struct EvalOptions
{
    std::string config_path;
    double omega = 0.0;
    std::optional<double> temperature; // overrides the config temperature
};

struct FigureOptions
{
    std::string config_path;
    int figure_id = 2;
    std::string out_path;
    GridSpec grid;
    int threads = 0;
};

struct SweepOptions
{
    std::string config_path;
    std::string out_path; // CSV of all points; empty to skip
    GridSpec grid;
    int threads = 0;
};

struct VerifyCommandOptions
{
    std::string config_path;
    VerifyOptions verify;
    std::string out_path; // JSON report; empty for stdout only
};

struct SteadyStateOptions
{
    std::string config_path;
    std::optional<double> bare_detuning;
};

// Mismatch Omega2 - Omega1 in rad/s for figure 2, 3, 4.
double figure_mismatch(int figure_id);

int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& err);
int cmd_figure(const FigureOptions& o, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyCommandOptions& o, std::ostream& out, std::ostream& err);
int cmd_steady_state(const SteadyStateOptions& o, std::ostream& out, std::ostream& err);

} // namespace optoent::cli

#endif
