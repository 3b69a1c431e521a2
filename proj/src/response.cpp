#include "optoent/response.hpp"

#include <cmath>

namespace optoent
{

namespace
{

constexpr cplx kI{0.0, 1.0};

// 1/chi, with Omega^2 - omega^2 factored to keep precision near resonance.
cplx inverse_susceptibility(const MechanicalMode& mode, double omega)
{
    const double w = mode.omega_m;
    return cplx((w - omega) * (w + omega), -omega * mode.gamma_m);
}

// Every closed-form quantity at one frequency, from one set of shared subexpressions.
TransferAt evaluate(const SteadyState& ss, const SystemConfig& config, double omega,
                    double instability_ratio)
{
    TransferAt t;
    t.omega = omega;

    const std::array<const MechanicalMode*, 2> modes{&config.mirror1, &config.mirror2};
    std::array<cplx, 2> inv_chi{};
    std::array<cplx, 2> inv_omega_chi{}; // 1 / (Omega_j chi_j)
    for (int j = 0; j < 2; ++j) {
        inv_chi[j] = inverse_susceptibility(*modes[j], omega);
        inv_omega_chi[j] = inv_chi[j] / modes[j]->omega_m;
        t.chi[j] = 1.0 / inv_chi[j];
    }

    t.cavity = cavity_lorentzians(config.cavity, omega);
    const cplx lorentz_diff = 1.0 / t.cavity.first - 1.0 / t.cavity.second;

    const auto& g = ss.couplings;
    const double n = ss.photon_number;

    const cplx d_free = inv_omega_chi[0] * inv_omega_chi[1];
    t.big_d = d_free - kI * n * (g[0] * g[0] * inv_omega_chi[1] + g[1] * g[1] * inv_omega_chi[0]) *
                           lorentz_diff;
    t.near_singular = std::abs(t.big_d) < instability_ratio * std::abs(d_free);

    const cplx inv_d = 1.0 / t.big_d;
    const cplx drive = std::sqrt(config.cavity.kappa) * std::conj(ss.beta) / t.cavity.first;
    for (int j = 0; j < 2; ++j) {
        const int other = 1 - j;
        const double sign = (j == 0) ? -1.0 : 1.0;
        t.b_coef[j] = sign * inv_d * inv_omega_chi[other] * (g[j] * drive);
        for (int k = 0; k < 2; ++k) {
            const cplx diag = (j == k) ? inv_omega_chi[other] : cplx{};
            t.xi[j][k] = inv_d * (diag - kI * (g[other] * g[1 - k] * n) * lorentz_diff);
        }
    }

    // c_j = Omega_j / chi_j
    const double w1 = config.mirror1.omega_m;
    const double w2 = config.mirror2.omega_m;
    const cplx c1 = inv_chi[0];
    const cplx c2 = inv_chi[1];
    const double dg = g[1] - g[0];
    const cplx nk = n * lorentz_diff;
    t.b_rel = -inv_d * drive * (inv_omega_chi[1] * g[0] + inv_omega_chi[0] * g[1]);
    t.xi_rel[0] = inv_d * (inv_omega_chi[1] - kI * nk * (g[1] * dg));
    t.xi_rel[1] = -inv_d * (inv_omega_chi[0] + kI * nk * (g[0] * dg));

    const cplx dc((w1 - w2) * (w1 + w2), -omega * (config.mirror1.gamma_m - config.mirror2.gamma_m));
    const double w12 = w1 * w2;
    const double mixed = g[1] * w2 + g[0] * w1;
    t.b_sum = inv_d * drive * (g[1] * dc + c2 * dg) / w12;
    t.xi_sum[0] = inv_d * (c2 - kI * nk * (g[1] * mixed)) / w12;
    t.xi_sum[1] = inv_d * (c1 - kI * nk * (g[0] * mixed)) / w12;
    return t;
}

} // namespace

cplx susceptibility(const MechanicalMode& mode, double omega)
{
    return 1.0 / inverse_susceptibility(mode, omega);
}

CavityFactors cavity_lorentzians(const CavityParams& cavity, double omega)
{
    const double half = cavity.kappa / 2.0;
    return {cplx(half, -(cavity.detuning + omega)), cplx(half, cavity.detuning - omega)};
}

cplx denominator_d(const SteadyState& ss, const SystemConfig& config, double omega,
                   bool* near_singular, double instability_ratio)
{
    const TransferAt t = evaluate(ss, config, omega, instability_ratio);
    if (near_singular) *near_singular = t.near_singular;
    return t.big_d;
}

Pair radiation_transfer(const SteadyState& ss, const SystemConfig& config, double omega,
                        bool* near_singular)
{
    const TransferAt t = evaluate(ss, config, omega, kDefaultInstabilityRatio);
    if (near_singular) *near_singular = t.near_singular;
    return t.b_coef;
}

Matrix2 brownian_transfer(const SteadyState& ss, const SystemConfig& config, double omega,
                          bool* near_singular)
{
    const TransferAt t = evaluate(ss, config, omega, kDefaultInstabilityRatio);
    if (near_singular) *near_singular = t.near_singular;
    return t.xi;
}

TransferAt transfer_at(const SteadyState& ss, const SystemConfig& config, double omega,
                       double instability_ratio)
{
    return evaluate(ss, config, omega, instability_ratio);
}

TransferSet assemble_transfer(const SteadyState& ss, const SystemConfig& config, double omega,
                              double instability_ratio)
{
    TransferSet ts;
    ts.omega = omega;
    ts.plus = evaluate(ss, config, omega, instability_ratio);
    ts.minus = evaluate(ss, config, -omega, instability_ratio);
    ts.near_singular = ts.plus.near_singular || ts.minus.near_singular;
    return ts;
}

} // namespace optoent
