#include "optoent/config_io.hpp"

#include "optoent/errors.hpp"

#include <charconv>
#include <fstream>
#include <locale>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace optoent
{

namespace
{

enum class Dimension { mass, rate, length, power, temperature };

const std::map<std::string, double>& units_for(Dimension d)
{
    static const std::map<std::string, double> mass{{"kg", 1.0}, {"g", 1e-3}, {"mg", 1e-6}, {"ug", 1e-9}};
    static const std::map<std::string, double> rate{
        {"rad_s", 1.0},
        {"krad_s", 1e3},
        {"Mrad_s", 1e6},
        {"Hz", 2.0 * std::numbers::pi},
        {"kHz", 2.0 * std::numbers::pi * 1e3},
        {"MHz", 2.0 * std::numbers::pi * 1e6},
    };
    static const std::map<std::string, double> length{
        {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}};
    static const std::map<std::string, double> power{{"W", 1.0}, {"mW", 1e-3}, {"uW", 1e-6}};
    static const std::map<std::string, double> temperature{{"K", 1.0}, {"mK", 1e-3}};
    switch (d) {
    case Dimension::mass: return mass;
    case Dimension::rate: return rate;
    case Dimension::length: return length;
    case Dimension::power: return power;
    case Dimension::temperature: return temperature;
    }
    return mass;
}

struct KeySpec
{
    Dimension dim;
    std::function<double&(SystemConfig&)> field;
};

const std::map<std::string, KeySpec>& key_table()
{
    static const std::map<std::string, KeySpec> table{
        {"mirror1.mass", {Dimension::mass, [](SystemConfig& c) -> double& { return c.mirror1.mass; }}},
        {"mirror1.omega", {Dimension::rate, [](SystemConfig& c) -> double& { return c.mirror1.omega_m; }}},
        {"mirror1.gamma", {Dimension::rate, [](SystemConfig& c) -> double& { return c.mirror1.gamma_m; }}},
        {"mirror2.mass", {Dimension::mass, [](SystemConfig& c) -> double& { return c.mirror2.mass; }}},
        {"mirror2.omega", {Dimension::rate, [](SystemConfig& c) -> double& { return c.mirror2.omega_m; }}},
        {"mirror2.gamma", {Dimension::rate, [](SystemConfig& c) -> double& { return c.mirror2.gamma_m; }}},
        {"cavity.wavelength",
         {Dimension::length, [](SystemConfig& c) -> double& { return c.cavity.wavelength; }}},
        {"cavity.length",
         {Dimension::length, [](SystemConfig& c) -> double& { return c.cavity.path_length; }}},
        {"cavity.kappa", {Dimension::rate, [](SystemConfig& c) -> double& { return c.cavity.kappa; }}},
        {"cavity.detuning",
         {Dimension::rate, [](SystemConfig& c) -> double& { return c.cavity.detuning; }}},
        {"cavity.power", {Dimension::power, [](SystemConfig& c) -> double& { return c.cavity.input_power; }}},
        {"temperature", {Dimension::temperature, [](SystemConfig& c) -> double& { return c.temperature; }}},
    };
    return table;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& what)
{
    throw ConfigError(source + ":" + std::to_string(line) + ": " + what);
}

std::string canonical_unit(Dimension d)
{
    switch (d) {
    case Dimension::mass: return "kg";
    case Dimension::rate: return "rad_s";
    case Dimension::length: return "m";
    case Dimension::power: return "W";
    case Dimension::temperature: return "K";
    }
    return {};
}

} // namespace

SystemConfig parse_config(std::istream& in, const std::string& source, std::vector<std::string>* warnings)
{
    SystemConfig config;
    std::set<std::string> seen;
    const auto& table = key_table();

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(source, line_no, "expected `key = value unit`");
        const std::string key = trim(line.substr(0, eq));
        const std::string rhs = trim(line.substr(eq + 1));

        const auto spec = table.find(key);
        if (spec == table.end()) fail(source, line_no, "unknown key '" + key + "'");
        if (!seen.insert(key).second) fail(source, line_no, "duplicate key '" + key + "'");

        std::istringstream fields(rhs);
        std::string number;
        std::string unit;
        std::string extra;
        fields >> number >> unit >> extra;
        if (number.empty()) fail(source, line_no, "key '" + key + "': missing value");
        if (unit.empty()) {
            fail(source, line_no, "key '" + key + "': missing unit (expected e.g. " +
                                      canonical_unit(spec->second.dim) + ")");
        }
        if (!extra.empty()) fail(source, line_no, "key '" + key + "': trailing text '" + extra + "'");

        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
        if (ec != std::errc{} || ptr != number.data() + number.size()) {
            fail(source, line_no, "key '" + key + "': cannot parse number '" + number + "'");
        }

        const auto& units = units_for(spec->second.dim);
        const auto u = units.find(unit);
        if (u == units.end()) {
            std::string allowed;
            for (const auto& [name, _] : units) allowed += (allowed.empty() ? "" : ", ") + name;
            fail(source, line_no, "key '" + key + "': unit '" + unit + "' not one of " + allowed);
        }
        spec->second.field(config) = value * u->second;
    }

    for (const auto& [key, _] : table) {
        if (!seen.count(key)) throw ConfigError(source + ": missing key '" + key + "'");
    }

    try {
        auto w = validate(config);
        if (warnings) *warnings = std::move(w);
    } catch (const InvalidParameter& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return config;
}

SystemConfig load_config(const std::string& path, std::vector<std::string>* warnings)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config(in, path, warnings);
}

std::string format_config(const SystemConfig& config)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    SystemConfig copy = config;
    for (const auto& [key, spec] : key_table()) {
        os << key << " = " << spec.field(copy) << ' ' << canonical_unit(spec.dim) << '\n';
    }
    return os.str();
}

} // namespace optoent
