#ifndef OPTOENT_ORACLE_HPP
#define OPTOENT_ORACLE_HPP

// Brute-force reference: builds the linearized Langevin system as a dense
// 6x6 frequency-domain matrix and inverts it numerically. Shares no code
// with the closed-form response or spectra modules.

#include "optoent/params.hpp"

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>
#include <Eigen/Dense>

#include <complex>

namespace optoent::oracle
{

// Quad precision throughout.
using Real = boost::multiprecision::float128;
using Scalar = boost::multiprecision::complex128;
using SystemMatrix = Eigen::Matrix<Scalar, 6, 6>;
using NoiseMap = Eigen::Matrix<Scalar, 6, 4>;
using TransferMatrix = Eigen::Matrix<Scalar, 6, 4>;
using NoiseMatrix = Eigen::Matrix<Scalar, 4, 4>;

// Unknowns, in row order of the system matrix.
enum Row : int { kB = 0, kBdag = 1, kQ1 = 2, kP1 = 3, kQ2 = 4, kP2 = 5 };
// Noise inputs, in column order of the noise map.
enum Channel : int { kBin = 0, kBinDag = 1, kXi1 = 2, kXi2 = 3 };

struct LinearSystem
{
    SystemConfig config;
    SteadyState ss;

    // M(omega) with M(omega) v(omega) = N n(omega), from d/dt -> -i omega.
    SystemMatrix system_matrix(double omega) const;
    NoiseMap noise_map() const;

    // Density of <n_c(omega) n_c^dag(omega)>, where n^dag(omega) = [n(-omega)]^dag:
    // 1 for the vacuum input, 0 for its adjoint, and the Brownian spectrum
    // (Gamma/2 Omega) omega [coth(hbar omega / 2 k_B T) + 1] for the mirrors.
    Real noise_spectrum(Channel channel, double omega, double temperature) const;

    // <n_a(omega) n_b(-omega)> densities as a matrix.
    NoiseMatrix noise_correlation(double omega, double temperature) const;
    // Symmetrized and commutator parts of the same pairing, in closed form.
    NoiseMatrix noise_anticommutator(double omega, double temperature) const;
    NoiseMatrix noise_commutator(double omega) const;
};

struct Densities
{
    double var_u = 0.0;
    double var_v = 0.0;
    double comm_abs = 0.0;
    double comm_abs_mirror2 = 0.0;
};

LinearSystem build_system(const SystemConfig& config, const SteadyState& ss);

// T(omega) = M(omega)^-1 N via partial-pivot LU. Throws SingularSystem when the
// smallest LU pivot is below 1e-30 of the largest.
TransferMatrix solve_transfer(const LinearSystem& sys, double omega);

// ||M T - N|| / ||N||.
double transfer_residual(const LinearSystem& sys, double omega);

// D(omega) recovered from det M(omega) / (cavity factors * Omega1 Omega2).
std::complex<double> denominator_from_determinant(const LinearSystem& sys, double omega);

Densities oracle_densities(const LinearSystem& sys, double omega, double temperature);

} // namespace optoent::oracle

#endif
