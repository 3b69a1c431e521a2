#ifndef OPTOENT_SPECTRA_HPP
#define OPTOENT_SPECTRA_HPP

#include "optoent/params.hpp"
#include "optoent/response.hpp"

namespace optoent
{

// Spectral densities carry the 2 pi delta(omega + omega') factor stripped.

struct CriterionFlags
{
    bool product_entangled = false; // E < 1
    bool sum_entangled = false;     // var_u + var_v < 2 comm_abs^2
    bool epr = false;               // E < 1/4
};

struct SpectralPoint
{
    double omega = 0.0;       // rad/s
    double temperature = 0.0; // K
    double var_u = 0.0;       // <R^2_{q1-q2}>
    double var_v = 0.0;       // <R^2_{p1+p2}>
    double comm_abs = 0.0;    // |<[R_q1, R_p1]>|
    double entanglement_degree = 0.0;
    CriterionFlags flags;
    bool near_singular = false;

    // Same quantities with mirror 2's commutator in the denominator.
    double comm_abs_mirror2 = 0.0;
    double entanglement_degree_mirror2 = 0.0;
};

// N_j(omega) = omega (Gamma_j/Omega_j) coth(hbar omega / 2 k_B T); even in omega.
// T = 0 uses coth -> sign(omega).
double thermal_kernel(const MechanicalMode& mode, double omega, double temperature,
                      const PhysicalConstants& constants = {});

double variance_u(const TransferSet& ts, const SystemConfig& config, double temperature);
double variance_v(const TransferSet& ts, const SystemConfig& config, double temperature);

// |<[R_q_j, R_p_j]>| for mirror j (1 or 2). Temperature-independent.
double commutator_density(const TransferSet& ts, const SystemConfig& config, int mirror = 1);

// Rejects omega <= 0: both var_v and the commutator vanish at omega = 0.
SpectralPoint entanglement_degree(const SystemConfig& config, const SteadyState& ss, double omega,
                                  double temperature);

// Literal squared form var_u + var_v < 2 comm_abs^2.
bool sum_criterion(double var_u, double var_v, double comm_abs);
bool product_criterion(const SpectralPoint& point);
bool epr_criterion(const SpectralPoint& point);

} // namespace optoent

#endif
