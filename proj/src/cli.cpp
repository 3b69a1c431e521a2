#include "optoent/cli.hpp"

#include "optoent/config_io.hpp"
#include "optoent/errors.hpp"
#include "optoent/report.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

namespace optoent::cli
{

using nlohmann::json;

namespace
{

SystemConfig load(const std::string& path, std::ostream& err)
{
    if (path.empty()) return reference_config();
    std::vector<std::string> warnings;
    SystemConfig c = load_config(path, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    return c;
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

// Maps library exceptions onto exit codes.
template <class Fn>
int guarded(std::ostream& err, Fn fn)
{
    try {
        return fn();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InvalidParameter& e) {
        err << "invalid input: " << e.what() << '\n';
        return kUsage;
    } catch (const ConvergenceError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kNumericalError;
    } catch (const SingularSystem& e) {
        err << "numerical error: " << e.what() << '\n';
        return kNumericalError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
}

} // namespace

double figure_mismatch(int figure_id)
{
    switch (figure_id) {
    case 2: return 0.0;
    case 3: return 10.0;
    case 4: return 20.0;
    default: throw InvalidParameter("figure id must be 2, 3 or 4");
    }
}

int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Stopwatch clock;
        if (!(o.omega > 0.0)) {
            throw InvalidParameter("--omega must be > 0: at omega = 0 the momentum variance and the "
                                   "commutator in the denominator of E both vanish");
        }
        SystemConfig config = load(o.config_path, err);
        if (o.temperature) config.temperature = *o.temperature;
        validate(config);

        const SteadyState ss = steady_state(config);
        const SpectralPoint p = entanglement_degree(config, ss, o.omega, config.temperature);

        RunManifest m;
        m.config = config;
        m.command = "eval";
        m.duration_s = clock.seconds();
        json j = to_json(p);
        j["manifest"] = to_json(m);
        out << j.dump(2) << '\n';
        return kOk;
    });
}

int cmd_figure(const FigureOptions& o, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Stopwatch clock;
        const double mismatch = figure_mismatch(o.figure_id);
        if (o.out_path.empty()) throw InvalidParameter("figure: --out is required");
        const SystemConfig config = with_mismatch(load(o.config_path, err), mismatch);

        GridSpec grid = o.grid;
        grid.mismatch_list = {mismatch};
        const SweepResult sweep = run_sweep(config, grid, o.threads);

        RunManifest m;
        m.config = config;
        m.grid = grid;
        m.command = "figure " + std::to_string(o.figure_id);
        m.duration_s = clock.seconds();
        write_figure_csv(o.out_path, sweep, m);

        json j = sweep_summary(sweep);
        j.erase("per_temperature");
        j["rows"] = sweep.points.size();
        j["out"] = o.out_path;
        out << j.dump(2) << '\n';
        return kOk;
    });
}

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Stopwatch clock;
        const SystemConfig config = load(o.config_path, err);
        const std::vector<SweepResult> sweeps = run_mismatch_sweeps(config, o.grid, o.threads);

        RunManifest m;
        m.config = config;
        m.grid = o.grid;
        m.command = "sweep";
        m.duration_s = clock.seconds();

        if (!o.out_path.empty()) {
            std::ofstream f(o.out_path);
            if (!f) throw Error("cannot open output file: " + o.out_path);
            std::vector<const SweepResult*> ptrs;
            for (const auto& s : sweeps) ptrs.push_back(&s);
            write_points_csv(f, ptrs, m, true);
            if (!f) throw Error("error writing output file: " + o.out_path);
        }

        json j;
        j["manifest"] = to_json(m);
        j["sweeps"] = json::array();
        for (const auto& s : sweeps) j["sweeps"].push_back(sweep_summary(s));
        out << j.dump(2) << '\n';
        return kOk;
    });
}

int cmd_verify(const VerifyCommandOptions& o, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Stopwatch clock;
        const SystemConfig config = load(o.config_path, err);
        const VerifyReport report = run_verification(config, o.verify);

        RunManifest m;
        m.config = config;
        m.command = "verify";
        m.worst_oracle_error = report.worst;
        m.extra["draw_ranges"] = {
            {"mass_kg", {1e-6, 1e-1}},          {"omega_rad_s", {1e5, 1e7}},
            {"gamma_rad_s", {0.1, 1e3}},        {"temperature_K", {0.0, 300.0}},
            {"power_W", {0.0, 10.0}},           {"wavelength_m", {400e-9, 1600e-9}},
            {"length_m", {1e-4, 1e-1}},         {"kappa_rad_s", {1e5, 1e8}},
            {"abs_detuning_rad_s", {1e4, 1e8}}, {"sampling", "log-uniform (wavelength uniform)"},
        };
        m.duration_s = clock.seconds();

        json j = to_json(report);
        j["manifest"] = to_json(m);
        if (!o.out_path.empty()) {
            std::ofstream f(o.out_path);
            if (!f) throw Error("cannot open output file: " + o.out_path);
            f << j.dump(2) << '\n';
        }
        out << j.dump(2) << '\n';
        if (!report.pass) {
            err << "verification failed:";
            for (const auto& q : report.failed) err << ' ' << q;
            err << '\n';
            return kVerificationFailed;
        }
        return kOk;
    });
}

int cmd_steady_state(const SteadyStateOptions& o, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const SystemConfig config = load(o.config_path, err);
        const SteadyState ss = steady_state(config);
        json j = to_json(ss);
        j["input_amplitude"] = input_amplitude(config.cavity, config.constants);
        j["optical_frequency_rad_s"] = config.cavity.optical_frequency(config.constants);
        if (o.bare_detuning) {
            j["bare_detuning_rad_s"] = *o.bare_detuning;
            j["self_consistent_detuning_rad_s"] = self_consistent_detuning(config, *o.bare_detuning);
        }
        RunManifest m;
        m.config = config;
        m.command = "steady-state";
        j["manifest"] = to_json(m);
        out << j.dump(2) << '\n';
        return kOk;
    });
}

} // namespace optoent::cli
