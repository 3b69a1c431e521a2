#ifndef OPTOENT_REPORT_HPP
#define OPTOENT_REPORT_HPP

#include "optoent/params.hpp"
#include "optoent/spectra.hpp"
#include "optoent/sweep.hpp"
#include "optoent/verify.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace optoent
{

inline constexpr const char* kVersion = "1.0.0";

// Provenance embedded in every output file.
struct RunManifest
{
    SystemConfig config;
    std::optional<GridSpec> grid;
    std::string command;
    std::string version = kVersion;
    double duration_s = 0.0;
    std::optional<double> worst_oracle_error;
    nlohmann::json extra = nlohmann::json::object();
};

nlohmann::json to_json(const SystemConfig& config);
nlohmann::json to_json(const GridSpec& grid);
nlohmann::json to_json(const RunManifest& manifest);
nlohmann::json to_json(const SteadyState& ss);
nlohmann::json to_json(const SpectralPoint& point);
nlohmann::json to_json(const VerifyReport& report);
nlohmann::json sweep_summary(const SweepResult& sweep);

// Full-precision, locale-independent number formatting.
std::string format_double(double x);

// Figure CSV: one `# manifest: {...}` line, then the header
//   omega_rad_s,temperature_K,var_u,var_v,comm_abs,E,entangled,epr
// then one row per grid point (temperature-major). When `with_mismatch`
// is set a leading mismatch_rad_s column is added.
inline constexpr const char* kFigureHeader = "omega_rad_s,temperature_K,var_u,var_v,comm_abs,E,entangled,epr";

void write_points_csv(std::ostream& out, const std::vector<const SweepResult*>& sweeps,
                      const RunManifest& manifest, bool with_mismatch);
void write_figure_csv(const std::string& path, const SweepResult& sweep, const RunManifest& manifest);

struct CsvRow
{
    double mismatch = 0.0;
    double omega = 0.0;
    double temperature = 0.0;
    double var_u = 0.0;
    double var_v = 0.0;
    double comm_abs = 0.0;
    double e = 0.0;
    bool entangled = false;
    bool epr = false;
};

struct CsvTable
{
    nlohmann::json manifest; // null when the file has none
    std::vector<CsvRow> rows;
};

// Reads files produced by write_points_csv / write_figure_csv.
CsvTable read_points_csv(const std::string& path);

} // namespace optoent

#endif
