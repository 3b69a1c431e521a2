#ifndef OPTOENT_PARAMS_HPP
#define OPTOENT_PARAMS_HPP

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace optoent
{

using cplx = std::complex<double>;

// CODATA 2018 exact/recommended values, SI units.
struct PhysicalConstants
{
    double hbar = 1.054571817e-34;  // J s
    double k_boltzmann = 1.380649e-23; // J/K
    double c_light = 299792458.0;   // m/s
};

// One oscillation mode of one movable mirror. Rates in rad/s.
struct MechanicalMode
{
    double mass = 0.0;    // kg (effective)
    double omega_m = 0.0; // resonance frequency
    double gamma_m = 0.0; // damping rate

    double quality_factor() const { return omega_m / gamma_m; }
};

// Driven cavity mode. Rates and detuning in rad/s.
struct CavityParams
{
    double wavelength = 0.0;  // m
    double path_length = 0.0; // m
    double kappa = 0.0;       // field linewidth gamma_b
    double detuning = 0.0;    // effective detuning Delta_b, any sign
    double input_power = 0.0; // W

    double optical_frequency(const PhysicalConstants& k) const;
    // Laser frequency, taken as cavity frequency plus detuning.
    double drive_frequency(const PhysicalConstants& k) const;
};

struct SystemConfig
{
    PhysicalConstants constants;
    MechanicalMode mirror1;
    MechanicalMode mirror2;
    CavityParams cavity;
    double temperature = 0.0; // K

    const MechanicalMode& mirror(int j) const { return j == 1 ? mirror1 : mirror2; }
};

// Semiclassical operating point around which the dynamics is linearized.
struct SteadyState
{
    cplx beta;                                // intracavity amplitude
    double photon_number = 0.0;               // |beta|^2
    std::array<double, 2> q_ss{};             // displaced mirror positions (dimensionless)
    std::array<double, 2> couplings{};        // G_j, rad/s
    std::array<double, 2> effective_couplings{}; // |beta| G_j, rad/s
};

// Throws InvalidParameter on a violated invariant. Returns soft warnings
// (e.g. a mechanical quality factor below one).
std::vector<std::string> validate(const SystemConfig& config);

// Parameter set of the two-mirror ring-cavity experiment: 810 nm, 1 W,
// L = 1 mm, Delta_b = gamma_b = 6e6 rad/s, 23 mg mirrors with
// Omega = 1e6 rad/s and Gamma = 1 rad/s. `mismatch` sets Omega_2 - Omega_1.
SystemConfig reference_config(double mismatch = 0.0, double temperature = 1.0);

// G = (omega_b / 2L) sqrt(hbar / (m Omega)).
double derive_coupling(const MechanicalMode& mode, const CavityParams& cavity,
                       const PhysicalConstants& constants);

// |beta_in| = sqrt(P / hbar omega_b0), in sqrt(photons/s).
double input_amplitude(const CavityParams& cavity, const PhysicalConstants& constants);

SteadyState steady_state(const SystemConfig& config);

// Solves Delta = Delta_bare + (G1^2/Omega1 + G2^2/Omega2) gamma |beta_in|^2 / (gamma^2/4 + Delta^2)
// on the branch connected to Delta_bare at vanishing drive power.
double self_consistent_detuning(const SystemConfig& config, double bare_detuning);

} // namespace optoent

#endif
