// Command-line front end: eval, figure, sweep, verify, steady-state.

#include "optoent/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace
{

void add_grid_options(CLI::App& cmd, optoent::GridSpec& grid, double& center)
{
    cmd.add_option("--omega-center", center, "Window center, rad/s (default: mean mirror frequency)");
    cmd.add_option("--omega-halfwidth", grid.omega.halfwidth, "Window half-width, rad/s")->capture_default_str();
    cmd.add_option("--omega-points", grid.omega.points, "Frequency samples")->capture_default_str();
    cmd.add_option("--t-min", grid.t_min, "Lowest temperature, K")->capture_default_str();
    cmd.add_option("--t-max", grid.t_max, "Highest temperature, K")->capture_default_str();
    cmd.add_option("--t-points", grid.t_points, "Temperature samples")->capture_default_str();
}

} // namespace

int main(int argc, char** argv)
{
    using namespace optoent::cli;

    CLI::App app{"Stationary entanglement of two radiation-pressure-coupled mirror modes"};
    app.require_subcommand(1);

    EvalOptions eval;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate spectra and E at one (omega, T)");
    eval_cmd->add_option("--config", eval.config_path, "Config file (default: built-in reference set)");
    eval_cmd->add_option("--omega", eval.omega, "Frequency, rad/s")->required();
    eval_cmd->add_option("--temp", eval.temperature, "Temperature, K (overrides config)");

    FigureOptions fig;
    double fig_center = 0.0;
    auto* fig_cmd = app.add_subcommand("figure", "Write the E(omega, T) grid for figure 2, 3 or 4");
    fig_cmd->add_option("--config", fig.config_path, "Config file");
    fig_cmd->add_option("--id", fig.figure_id, "Figure id: 2 (no mismatch), 3 (10 rad/s), 4 (20 rad/s)")
        ->required()
        ->check(CLI::IsMember({2, 3, 4}));
    fig_cmd->add_option("--out", fig.out_path, "Output CSV")->required();
    fig_cmd->add_option("--threads", fig.threads, "Worker threads (default: $OPTOENT_THREADS or all cores)");
    add_grid_options(*fig_cmd, fig.grid, fig_center);

    SweepOptions sweep;
    double sweep_center = 0.0;
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep E over (omega, T), optionally over several mismatches");
    sweep_cmd->add_option("--config", sweep.config_path, "Config file");
    sweep_cmd->add_option("--out", sweep.out_path, "Output CSV (all points)");
    sweep_cmd->add_option("--threads", sweep.threads, "Worker threads");
    sweep_cmd->add_option("--mismatch", sweep.grid.mismatch_list, "Omega2 - Omega1 values, rad/s")->delimiter(',');
    add_grid_options(*sweep_cmd, sweep.grid, sweep_center);

    VerifyCommandOptions verify;
    std::string fault = "none";
    auto* verify_cmd = app.add_subcommand("verify", "Compare closed forms against the matrix-inversion oracle");
    verify_cmd->add_option("--config", verify.config_path, "Config file used for anchored draws");
    verify_cmd->add_option("--draws", verify.verify.draws, "Random draws")->capture_default_str()->check(CLI::PositiveNumber);
    verify_cmd->add_option("--anchor-draws", verify.verify.anchor_draws, "Draws on the supplied config")->capture_default_str();
    verify_cmd->add_option("--seed", verify.verify.seed, "RNG seed")->capture_default_str();
    verify_cmd->add_option("--threshold", verify.verify.threshold, "Max relative error")->capture_default_str();
    verify_cmd->add_option("--out", verify.out_path, "Also write the JSON report here");
    verify_cmd->add_option("--inject-fault", fault, "Test hook: perturb one closed-form quantity")
        ->check(CLI::IsMember({"none", "var_u", "var_v", "comm_abs"}))
        ->group("");

    SteadyStateOptions steady;
    auto* steady_cmd = app.add_subcommand("steady-state", "Print the semiclassical steady state and couplings");
    steady_cmd->add_option("--config", steady.config_path, "Config file");
    steady_cmd->add_option("--bare-detuning", steady.bare_detuning,
                           "Also solve the self-consistent detuning from this bare value, rad/s");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    if (*eval_cmd) return cmd_eval(eval, std::cout, std::cerr);
    if (*fig_cmd) {
        if (fig_cmd->count("--omega-center")) fig.grid.omega.center = fig_center;
        return cmd_figure(fig, std::cout, std::cerr);
    }
    if (*sweep_cmd) {
        if (sweep_cmd->count("--omega-center")) sweep.grid.omega.center = sweep_center;
        return cmd_sweep(sweep, std::cout, std::cerr);
    }
    if (*verify_cmd) {
        static const std::map<std::string, optoent::InjectedFault> faults{
            {"none", optoent::InjectedFault::none},
            {"var_u", optoent::InjectedFault::var_u},
            {"var_v", optoent::InjectedFault::var_v},
            {"comm_abs", optoent::InjectedFault::comm_abs},
        };
        verify.verify.fault = faults.at(fault);
        return cmd_verify(verify, std::cout, std::cerr);
    }
    if (*steady_cmd) return cmd_steady_state(steady, std::cout, std::cerr);
    return kUsage;
}
