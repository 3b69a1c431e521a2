#ifndef OPTOENT_RESPONSE_HPP
#define OPTOENT_RESPONSE_HPP

#include "optoent/params.hpp"

#include <array>

namespace optoent
{

// Fourier convention: O(omega) = int dt exp(i omega t) O(t), so d/dt -> -i omega.

using Pair = std::array<cplx, 2>;
using Matrix2 = std::array<std::array<cplx, 2>, 2>;

// The two cavity factors of the closed-form solution:
// first  = gamma_b/2 - i(Delta_b + omega)
// second = gamma_b/2 + i(Delta_b - omega)
struct CavityFactors
{
    cplx first;
    cplx second;
};

// Near-singular threshold relative to the uncoupled denominator.
inline constexpr double kDefaultInstabilityRatio = 1.0e-6;

// Response functions at a single signed frequency.
struct TransferAt
{
    double omega = 0.0;
    Pair chi{};            // mechanical susceptibilities chi_1, chi_2
    CavityFactors cavity{};
    cplx big_d;            // D(omega)
    Pair b_coef{};         // B_1, B_2: vacuum-noise transfer to q_j
    Matrix2 xi{};          // Xi_{j,k}: Brownian noise xi_k transfer to q_j
    // Combinations entering q1 - q2 and q1/Omega1 + q2/Omega2, with the
    // common-mode terms cancelled algebraically rather than numerically.
    cplx b_rel;            // B_1 - B_2
    Pair xi_rel{};         // Xi_{1,k} - Xi_{2,k}
    cplx b_sum;            // B_1/Omega_1 + B_2/Omega_2
    Pair xi_sum{};         // Xi_{1,k}/Omega_1 + Xi_{2,k}/Omega_2
    bool near_singular = false;
};

// Evaluation at +omega and -omega, as consumed by the spectral densities.
struct TransferSet
{
    double omega = 0.0;
    TransferAt plus;
    TransferAt minus;
    bool near_singular = false;
};

// chi(omega) = 1 / (Omega^2 - omega^2 - i omega Gamma)
cplx susceptibility(const MechanicalMode& mode, double omega);

CavityFactors cavity_lorentzians(const CavityParams& cavity, double omega);

// D(omega). When `near_singular` is non-null it is set if |D| drops below
// `instability_ratio` times the field-free value 1/(Omega1 Omega2 chi1 chi2).
cplx denominator_d(const SteadyState& ss, const SystemConfig& config, double omega,
                   bool* near_singular = nullptr,
                   double instability_ratio = kDefaultInstabilityRatio);

Pair radiation_transfer(const SteadyState& ss, const SystemConfig& config, double omega,
                        bool* near_singular = nullptr);

Matrix2 brownian_transfer(const SteadyState& ss, const SystemConfig& config, double omega,
                          bool* near_singular = nullptr);

TransferAt transfer_at(const SteadyState& ss, const SystemConfig& config, double omega,
                       double instability_ratio = kDefaultInstabilityRatio);

TransferSet assemble_transfer(const SteadyState& ss, const SystemConfig& config, double omega,
                              double instability_ratio = kDefaultInstabilityRatio);

} // namespace optoent

#endif
