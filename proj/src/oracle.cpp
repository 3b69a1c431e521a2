#include "optoent/oracle.hpp"

#include "optoent/errors.hpp"

#include <string>

namespace optoent::oracle
{

namespace
{

using Lu = Eigen::PartialPivLU<SystemMatrix>;
using Row6 = Eigen::Matrix<Scalar, 1, 6>;
using Row4 = Eigen::Matrix<Scalar, 1, 4>;

const Scalar kI{Real(0), Real(1)};

Real real_of(double x) { return Real(x); }

Real brownian_ratio(const MechanicalMode& m)
{
    return real_of(m.gamma_m) / real_of(m.omega_m);
}

// omega coth(hbar omega / 2 k_B T), even in omega; |omega| at T = 0.
Real omega_coth(const PhysicalConstants& k, double omega, double temperature)
{
    const Real w = abs(real_of(omega));
    if (temperature <= 0.0) return w;
    const Real kt2 = 2 * real_of(k.k_boltzmann) * real_of(temperature);
    if (w == 0) return kt2 / real_of(k.hbar);
    return w / tanh(real_of(k.hbar) * w / kt2);
}

Lu factor(const SystemMatrix& m, double omega)
{
    Lu lu(m);
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
    if (!(pivots.minCoeff() > Real(1e-30) * pivots.maxCoeff())) {
        throw SingularSystem("oracle: system matrix is singular at omega = " + std::to_string(omega));
    }
    return lu;
}

// x M^-1 N via the transposed system M^T r = x^T.
Row4 observable_transfer(const LinearSystem& sys, const Lu& lu_t, const Row6& x)
{
    const Eigen::Matrix<Scalar, 6, 1> r = lu_t.solve(x.transpose());
    return r.transpose() * sys.noise_map();
}

// a A b^T
Scalar pair_density(const Row4& a, const Row4& b, const NoiseMatrix& noise)
{
    return (a * noise * b.transpose())(0, 0);
}

Row6 unit(int i)
{
    Row6 r = Row6::Zero();
    r(0, i) = Scalar(1);
    return r;
}

} // namespace

SystemMatrix LinearSystem::system_matrix(double omega) const
{
    const auto& cav = config.cavity;
    const Real kappa = real_of(cav.kappa);
    const Real delta = real_of(cav.detuning);
    const Scalar beta(real_of(ss.beta.real()), real_of(ss.beta.imag()));
    const Scalar beta_c = conj(beta);
    const Real g[2] = {real_of(ss.couplings[0]), real_of(ss.couplings[1])};

    // Drift matrix of dv/dt = A v + N n.
    SystemMatrix a = SystemMatrix::Zero();
    a(kB, kB) = Scalar(-kappa / 2, delta);
    a(kB, kQ1) = -kI * beta * Scalar(g[0]);
    a(kB, kQ2) = kI * beta * Scalar(g[1]);
    a(kBdag, kBdag) = Scalar(-kappa / 2, -delta);
    a(kBdag, kQ1) = kI * beta_c * Scalar(g[0]);
    a(kBdag, kQ2) = -kI * beta_c * Scalar(g[1]);

    const int q_rows[2] = {kQ1, kQ2};
    const int p_rows[2] = {kP1, kP2};
    for (int j = 0; j < 2; ++j) {
        const auto& mode = config.mirror(j + 1);
        const Real sign = (j == 0) ? Real(-1) : Real(1);
        const int q = q_rows[j];
        const int p = p_rows[j];
        a(q, p) = Scalar(real_of(mode.omega_m));
        a(p, q) = Scalar(-real_of(mode.omega_m));
        a(p, p) = Scalar(-real_of(mode.gamma_m));
        a(p, kB) = Scalar(sign * g[j]) * beta_c;
        a(p, kBdag) = Scalar(sign * g[j]) * beta;
    }

    SystemMatrix m = -a;
    for (int i = 0; i < 6; ++i) m(i, i) += Scalar(Real(0), -real_of(omega));
    return m;
}

NoiseMap LinearSystem::noise_map() const
{
    const Scalar root_kappa(sqrt(real_of(config.cavity.kappa)));
    NoiseMap n = NoiseMap::Zero();
    n(kB, kBin) = root_kappa;
    n(kBdag, kBinDag) = root_kappa;
    n(kP1, kXi1) = Scalar(1);
    n(kP2, kXi2) = Scalar(1);
    return n;
}

Real LinearSystem::noise_spectrum(Channel channel, double omega, double temperature) const
{
    switch (channel) {
    case kBin: return Real(1);
    case kBinDag: return Real(0);
    case kXi1:
    case kXi2: {
        const auto& mode = config.mirror(channel == kXi1 ? 1 : 2);
        const Real w = real_of(omega);
        const Real half_ratio = brownian_ratio(mode) / 2;
        if (temperature <= 0.0) return half_ratio * (w + abs(w));
        const Real kt2 = 2 * real_of(config.constants.k_boltzmann) * real_of(temperature);
        if (w == 0) return half_ratio * kt2 / real_of(config.constants.hbar);
        const Real coth = 1 / tanh(real_of(config.constants.hbar) * w / kt2);
        return half_ratio * w * (coth + 1);
    }
    }
    return Real(0);
}

NoiseMatrix LinearSystem::noise_correlation(double omega, double temperature) const
{
    // Only b_in(omega) pairs with b_in^dag(-omega); the mirror baths are diagonal.
    NoiseMatrix c = NoiseMatrix::Zero();
    c(kBin, kBinDag) = Scalar(noise_spectrum(kBin, omega, temperature));
    c(kBinDag, kBin) = Scalar(noise_spectrum(kBinDag, omega, temperature));
    c(kXi1, kXi1) = Scalar(noise_spectrum(kXi1, omega, temperature));
    c(kXi2, kXi2) = Scalar(noise_spectrum(kXi2, omega, temperature));
    return c;
}

NoiseMatrix LinearSystem::noise_anticommutator(double omega, double temperature) const
{
    const Real w_coth = omega_coth(config.constants, omega, temperature);
    NoiseMatrix s = NoiseMatrix::Zero();
    s(kBin, kBinDag) = Scalar(1);
    s(kBinDag, kBin) = Scalar(1);
    s(kXi1, kXi1) = Scalar(brownian_ratio(config.mirror1) * w_coth);
    s(kXi2, kXi2) = Scalar(brownian_ratio(config.mirror2) * w_coth);
    return s;
}

NoiseMatrix LinearSystem::noise_commutator(double omega) const
{
    const Real w = real_of(omega);
    NoiseMatrix k = NoiseMatrix::Zero();
    k(kBin, kBinDag) = Scalar(1);
    k(kBinDag, kBin) = Scalar(-1);
    k(kXi1, kXi1) = Scalar(brownian_ratio(config.mirror1) * w);
    k(kXi2, kXi2) = Scalar(brownian_ratio(config.mirror2) * w);
    return k;
}

LinearSystem build_system(const SystemConfig& config, const SteadyState& ss)
{
    return LinearSystem{config, ss};
}

TransferMatrix solve_transfer(const LinearSystem& sys, double omega)
{
    return factor(sys.system_matrix(omega), omega).solve(sys.noise_map());
}

double transfer_residual(const LinearSystem& sys, double omega)
{
    const TransferMatrix t = solve_transfer(sys, omega);
    const NoiseMap n = sys.noise_map();
    return static_cast<double>(Real((sys.system_matrix(omega) * t - n).norm() / n.norm()));
}

std::complex<double> denominator_from_determinant(const LinearSystem& sys, double omega)
{
    const SystemMatrix m = sys.system_matrix(omega);
    const Scalar det = factor(m, omega).determinant();
    const Scalar d = det / (m(kB, kB) * m(kBdag, kBdag) * Scalar(real_of(sys.config.mirror1.omega_m)) *
                            Scalar(real_of(sys.config.mirror2.omega_m)));
    return {static_cast<double>(d.real()), static_cast<double>(d.imag())};
}

Densities oracle_densities(const LinearSystem& sys, double omega, double temperature)
{
    const Lu lu_p = factor(sys.system_matrix(omega).transpose(), omega);
    const Lu lu_m = factor(sys.system_matrix(-omega).transpose(), -omega);
    const NoiseMatrix sym_p = sys.noise_anticommutator(omega, temperature);
    const NoiseMatrix com_p = sys.noise_commutator(omega);
    const NoiseMatrix com_m = sys.noise_commutator(-omega);

    const Row6 u = unit(kQ1) - unit(kQ2);
    const Row6 v = unit(kP1) + unit(kP2);

    // <R_X^2> = (1/4) <{X(omega), X(-omega)}>
    auto variance = [&](const Row6& x) {
        const Scalar s = pair_density(observable_transfer(sys, lu_p, x), observable_transfer(sys, lu_m, x), sym_p);
        return static_cast<double>(s.real() / 4);
    };

    // <[R_q, R_p]> = (1/4) (<[q(omega), p(-omega)]> + <[q(-omega), p(omega)]>)
    auto commutator = [&](int q, int p) {
        const Scalar c =
            pair_density(observable_transfer(sys, lu_p, unit(q)), observable_transfer(sys, lu_m, unit(p)), com_p) +
            pair_density(observable_transfer(sys, lu_m, unit(q)), observable_transfer(sys, lu_p, unit(p)), com_m);
        return static_cast<double>(Real(abs(c) / 4));
    };

    Densities d;
    d.var_u = variance(u);
    d.var_v = variance(v);
    d.comm_abs = commutator(kQ1, kP1);
    d.comm_abs_mirror2 = commutator(kQ2, kP2);
    return d;
}

} // namespace optoent::oracle
