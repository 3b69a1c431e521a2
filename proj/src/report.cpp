#include "optoent/report.hpp"

#include "optoent/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace optoent
{

using nlohmann::json;

namespace
{

json number(double x)
{
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

json mode_json(const MechanicalMode& m)
{
    return {{"mass_kg", m.mass}, {"omega_rad_s", m.omega_m}, {"gamma_rad_s", m.gamma_m}};
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const std::string& path, int line)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error(path + ":" + std::to_string(line) + ": bad number '" + s + "'");
    }
    return v;
}

} // namespace

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

json to_json(const SystemConfig& c)
{
    return {
        {"mirror1", mode_json(c.mirror1)},
        {"mirror2", mode_json(c.mirror2)},
        {"cavity",
         {{"wavelength_m", c.cavity.wavelength},
          {"length_m", c.cavity.path_length},
          {"kappa_rad_s", c.cavity.kappa},
          {"detuning_rad_s", c.cavity.detuning},
          {"power_W", c.cavity.input_power}}},
        {"temperature_K", c.temperature},
        {"constants",
         {{"hbar", c.constants.hbar}, {"k_boltzmann", c.constants.k_boltzmann}, {"c_light", c.constants.c_light}}},
    };
}

json to_json(const GridSpec& g)
{
    json j = {
        {"omega_halfwidth_rad_s", g.omega.halfwidth},
        {"omega_points", g.omega.points},
        {"t_min_K", g.t_min},
        {"t_max_K", g.t_max},
        {"t_points", g.t_points},
        {"mismatch_rad_s", g.mismatch_list},
    };
    j["omega_center_rad_s"] = g.omega.center ? json(*g.omega.center) : json("mean of mirror frequencies");
    return j;
}

json to_json(const RunManifest& m)
{
    json j = {
        {"tool", "optoent"},
        {"version", m.version},
        {"command", m.command},
        {"config", to_json(m.config)},
        {"duration_s", m.duration_s},
    };
    if (m.grid) j["grid"] = to_json(*m.grid);
    if (m.worst_oracle_error) j["worst_oracle_error"] = *m.worst_oracle_error;
    if (!m.extra.empty()) j["extra"] = m.extra;
    return j;
}

json to_json(const SteadyState& ss)
{
    return {
        {"beta_re", ss.beta.real()},
        {"beta_im", ss.beta.imag()},
        {"photon_number", ss.photon_number},
        {"q_ss", ss.q_ss},
        {"couplings_rad_s", ss.couplings},
        {"effective_couplings_rad_s", ss.effective_couplings},
    };
}

json to_json(const SpectralPoint& p)
{
    return {
        {"omega_rad_s", p.omega},
        {"temperature_K", p.temperature},
        {"var_u", number(p.var_u)},
        {"var_v", number(p.var_v)},
        {"comm_abs", number(p.comm_abs)},
        {"E", number(p.entanglement_degree)},
        {"product_entangled", p.flags.product_entangled},
        {"sum_entangled", p.flags.sum_entangled},
        {"epr", p.flags.epr},
        {"near_singular", p.near_singular},
        {"mirror2_labeling", {{"comm_abs", number(p.comm_abs_mirror2)}, {"E", number(p.entanglement_degree_mirror2)}}},
    };
}

json to_json(const VerifyReport& r)
{
    json quantities = json::object();
    for (const auto& [name, e] : r.errors) {
        json q = {{"max_rel_error", e.max_rel_error}, {"closed_form", number(e.closed_form)},
                  {"oracle", number(e.oracle)}};
        if (e.worst_index >= 0) {
            const Draw& d = r.draws[static_cast<std::size_t>(e.worst_index)];
            q["worst_draw"] = {{"index", e.worst_index},
                               {"omega_rad_s", d.omega},
                               {"temperature_K", d.temperature},
                               {"config", to_json(d.config)}};
        }
        quantities[name] = q;
    }
    return {
        {"pass", r.pass},
        {"threshold", r.options.threshold},
        {"seed", r.options.seed},
        {"random_draws", r.options.draws},
        {"anchor_draws", r.options.anchor_draws},
        {"evaluated", r.evaluated},
        {"skipped_singular", r.skipped},
        {"worst_rel_error", r.worst},
        {"failed_quantities", r.failed},
        {"quantities", quantities},
    };
}

json sweep_summary(const SweepResult& s)
{
    json per_t = json::array();
    for (std::size_t it = 0; it < s.temperatures.size(); ++it) {
        per_t.push_back({{"temperature_K", s.temperatures[it]},
                         {"min_E", number(s.min_e[it])},
                         {"argmin_omega_rad_s", s.argmin_omega[it]},
                         {"bandwidth_rad_s", s.bandwidth[it]}});
    }
    return {
        {"mismatch_rad_s", s.config.mirror2.omega_m - s.config.mirror1.omega_m},
        {"critical_temperature_K", s.critical_temperature ? json(*s.critical_temperature) : json(nullptr)},
        {"near_singular_points", s.near_singular_count},
        {"per_temperature", per_t},
    };
}

void write_points_csv(std::ostream& out, const std::vector<const SweepResult*>& sweeps,
                      const RunManifest& manifest, bool with_mismatch)
{
    out << "# manifest: " << to_json(manifest).dump() << '\n';
    if (with_mismatch) out << "mismatch_rad_s,";
    out << kFigureHeader << '\n';
    for (const SweepResult* s : sweeps) {
        const std::string mismatch = format_double(s->config.mirror2.omega_m - s->config.mirror1.omega_m);
        for (const SpectralPoint& p : s->points) {
            if (with_mismatch) out << mismatch << ',';
            out << format_double(p.omega) << ',' << format_double(p.temperature) << ','
                << format_double(p.var_u) << ',' << format_double(p.var_v) << ','
                << format_double(p.comm_abs) << ',' << format_double(p.entanglement_degree) << ','
                << (p.flags.product_entangled ? 1 : 0) << ',' << (p.flags.epr ? 1 : 0) << '\n';
        }
    }
}

void write_figure_csv(const std::string& path, const SweepResult& sweep, const RunManifest& manifest)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    write_points_csv(out, {&sweep}, manifest, false);
    if (!out) throw Error("error writing output file: " + path);
}

CsvTable read_points_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open CSV file: " + path);

    CsvTable table;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    bool has_mismatch = false;
    static const std::string manifest_tag = "# manifest: ";
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind(manifest_tag, 0) == 0) table.manifest = json::parse(line.substr(manifest_tag.size()));
            continue;
        }
        if (!header_seen) {
            has_mismatch = line.rfind("mismatch_rad_s,", 0) == 0;
            const std::string rest = has_mismatch ? line.substr(15) : line;
            if (rest != kFigureHeader) throw Error(path + ": unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        const auto f = split(line, ',');
        const std::size_t off = has_mismatch ? 1 : 0;
        if (f.size() != 8 + off) throw Error(path + ":" + std::to_string(line_no) + ": wrong column count");
        CsvRow r;
        if (has_mismatch) r.mismatch = parse_double(f[0], path, line_no);
        r.omega = parse_double(f[off + 0], path, line_no);
        r.temperature = parse_double(f[off + 1], path, line_no);
        r.var_u = parse_double(f[off + 2], path, line_no);
        r.var_v = parse_double(f[off + 3], path, line_no);
        r.comm_abs = parse_double(f[off + 4], path, line_no);
        r.e = parse_double(f[off + 5], path, line_no);
        r.entangled = f[off + 6] == "1";
        r.epr = f[off + 7] == "1";
        table.rows.push_back(r);
    }
    if (!header_seen) throw Error(path + ": missing header row");
    return table;
}

} // namespace optoent
