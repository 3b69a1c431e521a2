#include "optoent/spectra.hpp"

#include "optoent/errors.hpp"

#include <cmath>
#include <limits>

namespace optoent
{

namespace
{

double thermal_weight(const SystemConfig& config, int k, double omega, double temperature)
{
    return thermal_kernel(config.mirror(k), omega, temperature, config.constants);
}

} // namespace

double thermal_kernel(const MechanicalMode& mode, double omega, double temperature,
                      const PhysicalConstants& constants)
{
    const double ratio = mode.gamma_m / mode.omega_m;
    const double w = std::abs(omega);
    if (temperature <= 0.0) return w * ratio;
    if (w == 0.0) {
        return 2.0 * constants.k_boltzmann * temperature * ratio / constants.hbar;
    }
    const double x = constants.hbar * w / (2.0 * constants.k_boltzmann * temperature);
    return w * ratio / std::tanh(x);
}

double variance_u(const TransferSet& ts, const SystemConfig& config, double temperature)
{
    const auto& p = ts.plus;
    const auto& m = ts.minus;
    const double n1 = thermal_weight(config, 1, ts.omega, temperature);
    const double n2 = thermal_weight(config, 2, ts.omega, temperature);
    return 0.25 * (std::norm(p.b_rel) + std::norm(m.b_rel) + n1 * std::norm(p.xi_rel[0]) +
                   n2 * std::norm(p.xi_rel[1]));
}

// p_j = -i (omega/Omega_j) q_j, so p1 + p2 = -i omega (q1/Omega1 + q2/Omega2).
double variance_v(const TransferSet& ts, const SystemConfig& config, double temperature)
{
    const auto& p = ts.plus;
    const auto& m = ts.minus;
    const double w = ts.omega;
    const double n1 = thermal_weight(config, 1, w, temperature);
    const double n2 = thermal_weight(config, 2, w, temperature);
    return 0.25 * w * w *
           (std::norm(p.b_sum) + std::norm(m.b_sum) + n1 * std::norm(p.xi_sum[0]) +
            n2 * std::norm(p.xi_sum[1]));
}

double commutator_density(const TransferSet& ts, const SystemConfig& config, int mirror)
{
    const int j = (mirror == 2) ? 1 : 0;
    const auto& p = ts.plus;
    const auto& m = ts.minus;
    const double w = ts.omega;
    const double ratio1 = config.mirror1.gamma_m / config.mirror1.omega_m;
    const double ratio2 = config.mirror2.gamma_m / config.mirror2.omega_m;

    const double vacuum = std::norm(p.b_coef[j]) - std::norm(m.b_coef[j]);
    const double thermal = w * (ratio1 * std::norm(p.xi[j][0]) + ratio2 * std::norm(p.xi[j][1]));
    return std::abs(0.5 * (w / config.mirror(j + 1).omega_m) * (vacuum + thermal));
}

SpectralPoint entanglement_degree(const SystemConfig& config, const SteadyState& ss, double omega,
                                  double temperature)
{
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw InvalidParameter("omega must be positive: at omega = 0 the momentum variance and the "
                               "commutator both vanish and E is a degenerate 0/0");
    }
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
        throw InvalidParameter("temperature must be non-negative");
    }

    const TransferSet ts = assemble_transfer(ss, config, omega);

    SpectralPoint pt;
    pt.omega = omega;
    pt.temperature = temperature;
    pt.var_u = variance_u(ts, config, temperature);
    pt.var_v = variance_v(ts, config, temperature);
    pt.comm_abs = commutator_density(ts, config, 1);
    pt.comm_abs_mirror2 = commutator_density(ts, config, 2);
    pt.near_singular = ts.near_singular;

    const double product = pt.var_u * pt.var_v;
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (pt.comm_abs > 0.0) {
        pt.entanglement_degree = product / (pt.comm_abs * pt.comm_abs);
    } else {
        pt.entanglement_degree = inf;
        pt.near_singular = true;
    }
    pt.entanglement_degree_mirror2 =
        pt.comm_abs_mirror2 > 0.0 ? product / (pt.comm_abs_mirror2 * pt.comm_abs_mirror2) : inf;

    pt.flags.product_entangled = product_criterion(pt);
    pt.flags.sum_entangled = sum_criterion(pt.var_u, pt.var_v, pt.comm_abs);
    pt.flags.epr = epr_criterion(pt);
    return pt;
}

bool sum_criterion(double var_u, double var_v, double comm_abs)
{
    return var_u + var_v < 2.0 * comm_abs * comm_abs;
}

bool product_criterion(const SpectralPoint& point) { return point.entanglement_degree < 1.0; }

bool epr_criterion(const SpectralPoint& point) { return point.entanglement_degree < 0.25; }

} // namespace optoent
