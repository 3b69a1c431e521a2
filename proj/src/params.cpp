#include "optoent/params.hpp"

#include "optoent/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace optoent
{

namespace
{

void require(bool ok, const std::string& what)
{
    if (!ok) throw InvalidParameter(what);
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

void check_mode(const MechanicalMode& m, const char* label, std::vector<std::string>& warnings)
{
    const std::string l(label);
    require(positive(m.mass), l + ".mass must be positive and finite");
    require(positive(m.omega_m), l + ".omega must be positive and finite");
    require(positive(m.gamma_m), l + ".gamma must be positive and finite");
    if (m.quality_factor() < 1.0) {
        std::ostringstream os;
        os << l << ": mechanical quality factor " << m.quality_factor() << " is below 1";
        warnings.push_back(os.str());
    }
}

} // namespace

double CavityParams::optical_frequency(const PhysicalConstants& k) const
{
    return 2.0 * std::numbers::pi * k.c_light / wavelength;
}

double CavityParams::drive_frequency(const PhysicalConstants& k) const
{
    return optical_frequency(k) + detuning;
}

std::vector<std::string> validate(const SystemConfig& config)
{
    std::vector<std::string> warnings;
    const auto& k = config.constants;
    require(positive(k.hbar) && positive(k.k_boltzmann) && positive(k.c_light),
            "physical constants must be positive");
    check_mode(config.mirror1, "mirror1", warnings);
    check_mode(config.mirror2, "mirror2", warnings);

    const auto& c = config.cavity;
    require(positive(c.wavelength), "cavity.wavelength must be positive and finite");
    require(positive(c.path_length), "cavity.length must be positive and finite");
    require(positive(c.kappa), "cavity.kappa must be positive and finite");
    require(std::isfinite(c.detuning), "cavity.detuning must be finite");
    require(std::isfinite(c.input_power) && c.input_power >= 0.0,
            "cavity.power must be non-negative and finite");
    require(c.drive_frequency(k) > 0.0, "drive frequency omega_b + detuning must be positive");
    require(std::isfinite(config.temperature) && config.temperature >= 0.0,
            "temperature must be non-negative and finite");
    return warnings;
}

SystemConfig reference_config(double mismatch, double temperature)
{
    SystemConfig c;
    c.mirror1 = {23.0e-6, 1.0e6, 1.0};
    c.mirror2 = {23.0e-6, 1.0e6 + mismatch, 1.0};
    c.cavity.wavelength = 810.0e-9;
    c.cavity.path_length = 1.0e-3;
    c.cavity.kappa = 6.0e6;
    c.cavity.detuning = 6.0e6;
    c.cavity.input_power = 1.0;
    c.temperature = temperature;
    return c;
}

double derive_coupling(const MechanicalMode& mode, const CavityParams& cavity,
                       const PhysicalConstants& constants)
{
    require(positive(mode.mass) && positive(mode.omega_m), "coupling: mass and omega must be positive");
    require(positive(cavity.wavelength) && positive(cavity.path_length),
            "coupling: wavelength and length must be positive");
    const double omega_b = cavity.optical_frequency(constants);
    const double g = omega_b / (2.0 * cavity.path_length) *
                     std::sqrt(constants.hbar / (mode.mass * mode.omega_m));
    if (!std::isfinite(g) || g <= 0.0) {
        throw InvalidParameter("coupling constant is not a finite positive number");
    }
    return g;
}

double input_amplitude(const CavityParams& cavity, const PhysicalConstants& constants)
{
    require(std::isfinite(cavity.input_power) && cavity.input_power >= 0.0,
            "input power must be non-negative and finite");
    const double omega_drive = cavity.drive_frequency(constants);
    require(positive(omega_drive), "drive frequency must be positive");
    const double amp = std::sqrt(cavity.input_power / (constants.hbar * omega_drive));
    if (!std::isfinite(amp)) throw InvalidParameter("input amplitude is not finite");
    return amp;
}

SteadyState steady_state(const SystemConfig& config)
{
    const auto& cav = config.cavity;
    const double beta_in = input_amplitude(cav, config.constants);

    SteadyState ss;
    ss.beta = std::sqrt(cav.kappa) * beta_in / cplx(cav.kappa / 2.0, -cav.detuning);
    ss.photon_number = std::norm(ss.beta);

    for (int j = 1; j <= 2; ++j) {
        const auto& mode = config.mirror(j);
        const double g = derive_coupling(mode, cav, config.constants);
        const double sign = (j == 1) ? -1.0 : 1.0;
        ss.couplings[j - 1] = g;
        ss.effective_couplings[j - 1] = std::abs(ss.beta) * g;
        ss.q_ss[j - 1] = sign * g * ss.photon_number / mode.omega_m;
    }
    return ss;
}

double self_consistent_detuning(const SystemConfig& config, double bare_detuning)
{
    const auto& cav = config.cavity;
    require(positive(cav.kappa), "self-consistent detuning needs kappa > 0");

    CavityParams bare = cav;
    bare.detuning = bare_detuning;
    const double beta_in = input_amplitude(bare, config.constants);

    double shift = 0.0;
    for (int j = 1; j <= 2; ++j) {
        const auto& mode = config.mirror(j);
        const double g = derive_coupling(mode, cav, config.constants);
        shift += g * g / mode.omega_m;
    }

    // g(x) = (x - x0)(1/4 + x^2) in units of kappa; roots of g(x) = a lie above x0.
    const double k = cav.kappa;
    const double x0 = bare_detuning / k;
    const double a = shift * k * beta_in * beta_in / (k * k * k);
    if (a == 0.0) return bare_detuning;

    auto g = [x0](double x) { return (x - x0) * (0.25 + x * x); };

    double lo = x0;
    double hi = x0 + 4.0 * a;
    // Shift below one ulp of the bare detuning.
    if (hi == lo) return bare_detuning;
    // g'(x) = 3x^2 - 2 x0 x + 1/4; its first zero above x0 is a local maximum.
    // If the drive exceeds that maximum the branch grown from zero power has folded away.
    const double disc = x0 * x0 - 0.75;
    if (disc >= 0.0) {
        const double r1 = (x0 - std::sqrt(disc)) / 3.0;
        const double r2 = (x0 + std::sqrt(disc)) / 3.0;
        for (double r : {r1, r2}) {
            if (r > x0) {
                if (g(r) < a) {
                    throw ConvergenceError("self-consistent detuning: low-power branch has folded",
                                           lo * k, hi * k);
                }
                hi = std::min(hi, r);
                break;
            }
        }
    }
    if (!(g(hi) >= a)) {
        throw ConvergenceError("self-consistent detuning: no real root", lo * k, hi * k);
    }

    for (int it = 0; it < 400 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (g(mid) < a) lo = mid;
        else hi = mid;
    }
    const double x = 0.5 * (lo + hi);
    return x * k;
}

} // namespace optoent
