#include "optoent/oracle.hpp"
#include "optoent/response.hpp"
#include "optoent/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace optoent;

namespace
{

// tests/reference/mp_reference.py: D(omega = 1e6) for the reference configuration.
const cplx kRefD{246104.90945688637, -1804776.6693505};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

cplx to_double(const oracle::Scalar& z)
{
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

std::vector<Draw> draws(int n, std::uint64_t seed)
{
    VerifyOptions o;
    o.draws = n;
    o.anchor_draws = 0;
    o.seed = seed;
    return make_draws(reference_config(), o);
}

} // namespace

TEST_CASE("susceptibility")
{
    const MechanicalMode m{23e-6, 1.0e6, 1.0};
    const cplx static_response = susceptibility(m, 0.0);
    CHECK(static_response.imag() == 0.0);
    CHECK(static_response.real() == doctest::Approx(1e-12).epsilon(1e-15));

    const cplx on_resonance = susceptibility(m, 1.0e6);
    CHECK(on_resonance.real() == 0.0);
    CHECK(on_resonance.imag() == doctest::Approx(1e-6).epsilon(1e-15));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3e6, 3e6);
    for (int i = 0; i < 1000; ++i) {
        const double w = u(rng);
        CHECK(susceptibility(m, -w) == std::conj(susceptibility(m, w)));
    }
}

TEST_CASE("susceptibility keeps its precision a few rad/s from a 1e6 carrier")
{
    const MechanicalMode m{23e-6, 1.0e6, 1.0};
    // 1/chi = 10 (2e6 - 10) - i (1e6 - 10)
    const cplx inv = 1.0 / susceptibility(m, 1.0e6 - 10.0);
    CHECK(inv.real() == doctest::Approx(19999900.0).epsilon(1e-15));
    CHECK(inv.imag() == doctest::Approx(-999990.0).epsilon(1e-15));
}

TEST_CASE("cavity factors")
{
    CavityParams c;
    c.kappa = 6.0e6;
    c.detuning = 2.0e6;
    const CavityFactors at_zero = cavity_lorentzians(c, 0.0);
    CHECK(at_zero.first == cplx(3.0e6, -2.0e6));
    CHECK(at_zero.second == std::conj(at_zero.first));

    c.detuning = 0.0;
    const CavityFactors half = cavity_lorentzians(c, 3.0e6);
    CHECK(half.first == cplx(3.0e6, -3.0e6));
    CHECK(half.second == cplx(3.0e6, -3.0e6));

    for (double w : {0.0, 1.0e5, 2.5e6, -7.0e6}) {
        const CavityFactors f = cavity_lorentzians(c, w);
        CHECK(f.first == f.second);
        CHECK(std::norm(f.first) == doctest::Approx(c.kappa * c.kappa / 4.0 + w * w).epsilon(1e-15));
    }
}

TEST_CASE("denominator")
{
    const SystemConfig c = reference_config();
    const SteadyState ss = steady_state(c);

    SUBCASE("frozen reference value and oracle determinant")
    {
        const cplx d = denominator_d(ss, c, 1.0e6);
        CHECK(rel(d, kRefD) < 1e-9);
        const cplx det = oracle::denominator_from_determinant(oracle::build_system(c, ss), 1.0e6);
        CHECK(rel(d, det) < 1e-9);
    }

    SUBCASE("free oscillators without light")
    {
        SystemConfig dark = c;
        dark.cavity.input_power = 0.0;
        dark.mirror2.omega_m += 10.0;
        const SteadyState s0 = steady_state(dark);
        for (double w : {0.9e6, 1.0e6, 1.0e6 + 5.0}) {
            const cplx expect = 1.0 / (dark.mirror1.omega_m * dark.mirror2.omega_m *
                                       susceptibility(dark.mirror1, w) * susceptibility(dark.mirror2, w));
            CHECK(rel(denominator_d(s0, dark, w), expect) < 1e-14);
        }
    }

    SUBCASE("conjugation symmetry at 1e4 frequencies")
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(1.0, 2.0e7);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double w = u(rng);
            worst = std::max(worst, rel(denominator_d(ss, c, -w), std::conj(denominator_d(ss, c, w))));
        }
        CHECK(worst < 1e-12);
    }

    SUBCASE("instability flag")
    {
        bool flag = true;
        denominator_d(ss, c, 1.0e6, &flag);
        CHECK_FALSE(flag);
        denominator_d(ss, c, 1.0e6, &flag, 1e300);
        CHECK(flag);
    }
}

TEST_CASE("conjugation symmetries on random configurations")
{
    double worst_chi = 0.0;
    double worst_d = 0.0;
    double worst_xi = 0.0;
    for (const Draw& d : draws(500, 3)) {
        const SteadyState ss = steady_state(d.config);
        const TransferAt p = transfer_at(ss, d.config, d.omega);
        const TransferAt m = transfer_at(ss, d.config, -d.omega);
        for (int j = 0; j < 2; ++j) {
            worst_chi = std::max(worst_chi, rel(m.chi[j], std::conj(p.chi[j])));
            for (int k = 0; k < 2; ++k) worst_xi = std::max(worst_xi, rel(m.xi[j][k], std::conj(p.xi[j][k])));
        }
        worst_d = std::max(worst_d, rel(m.big_d, std::conj(p.big_d)));
    }
    CHECK(worst_chi < 1e-12);
    CHECK(worst_d < 1e-12);
    CHECK(worst_xi < 1e-12);
}

TEST_CASE("radiation transfer")
{
    const SystemConfig c = reference_config();
    const SteadyState ss = steady_state(c);

    SUBCASE("no drive, no transduction")
    {
        SystemConfig dark = c;
        dark.cavity.input_power = 0.0;
        const Pair b = radiation_transfer(steady_state(dark), dark, 1.0e6);
        CHECK(b[0] == cplx{});
        CHECK(b[1] == cplx{});
    }

    SUBCASE("opposite signs for identical mirrors")
    {
        const Pair b = radiation_transfer(ss, c, 1.0e6 + 3.0);
        CHECK(b[0] == -b[1]);
    }

    SUBCASE("B is not conjugation symmetric")
    {
        const Pair bp = radiation_transfer(ss, c, 1.0e6);
        const Pair bm = radiation_transfer(ss, c, -1.0e6);
        CHECK(rel(bm[0], std::conj(bp[0])) > 1e-3);
    }

    SUBCASE("matches the oracle q rows at omega = Omega1")
    {
        const auto sys = oracle::build_system(c, ss);
        const double w = c.mirror1.omega_m;
        const auto t = oracle::solve_transfer(sys, w);
        const TransferAt p = transfer_at(ss, c, w);
        const TransferAt m = transfer_at(ss, c, -w);
        const int rows[2] = {oracle::kQ1, oracle::kQ2};
        for (int j = 0; j < 2; ++j) {
            CHECK(rel(p.b_coef[j], to_double(t(rows[j], oracle::kBin))) < 1e-9);
            CHECK(rel(std::conj(m.b_coef[j]), to_double(t(rows[j], oracle::kBinDag))) < 1e-9);
            for (int k = 0; k < 2; ++k) {
                CHECK(rel(p.xi[j][k], to_double(t(rows[j], oracle::kXi1 + k))) < 1e-9);
            }
        }
    }
}

TEST_CASE("brownian transfer")
{
    const SystemConfig base = reference_config(10.0);

    SUBCASE("free oscillators without light")
    {
        SystemConfig dark = base;
        dark.cavity.input_power = 0.0;
        const SteadyState s0 = steady_state(dark);
        for (double w : {0.99e6, 1.0e6, 1.0e6 + 10.0}) {
            const Matrix2 xi = brownian_transfer(s0, dark, w);
            for (int j = 0; j < 2; ++j) {
                const auto& mode = dark.mirror(j + 1);
                CHECK(rel(xi[j][j], mode.omega_m * susceptibility(mode, w)) < 1e-14);
                CHECK(xi[j][1 - j] == cplx{});
            }
        }
    }

    SUBCASE("cross terms are linear in the photon number at weak drive")
    {
        SystemConfig weak = base;
        weak.cavity.input_power = 1e-12;
        const cplx x1 = brownian_transfer(steady_state(weak), weak, 1.0e6 + 2.0)[0][1];
        weak.cavity.input_power = 2e-12;
        const cplx x2 = brownian_transfer(steady_state(weak), weak, 1.0e6 + 2.0)[0][1];
        CHECK(std::abs(x2 / x1 - 2.0) < 1e-6);
    }
}

TEST_CASE("global phase of the cavity amplitude")
{
    const SystemConfig c = reference_config(10.0);
    const SteadyState ss = steady_state(c);
    SteadyState rotated = ss;
    const cplx phase = std::polar(1.0, 0.7);
    rotated.beta *= phase;

    for (double w : {1.0e6 - 20.0, 1.0e6 + 5.0, 1.0e6 + 40.0}) {
        const TransferAt a = transfer_at(ss, c, w);
        const TransferAt b = transfer_at(rotated, c, w);
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(b.b_coef[j]) == doctest::Approx(std::abs(a.b_coef[j])).epsilon(1e-14));
            CHECK(rel(b.b_coef[j], a.b_coef[j] * std::conj(phase)) < 1e-14);
            for (int k = 0; k < 2; ++k) CHECK(b.xi[j][k] == a.xi[j][k]);
        }
    }
}

TEST_CASE("assembled transfer set")
{
    const SystemConfig c = reference_config(10.0);
    const SteadyState ss = steady_state(c);
    const double w = 1.0e6 + 4.0;
    const TransferSet ts = assemble_transfer(ss, c, w);

    CHECK(ts.plus.big_d == denominator_d(ss, c, w));
    CHECK(ts.minus.big_d == denominator_d(ss, c, -w));
    for (int j = 0; j < 2; ++j) {
        CHECK(ts.plus.b_coef[j] == radiation_transfer(ss, c, w)[j]);
        CHECK(ts.minus.b_coef[j] == radiation_transfer(ss, c, -w)[j]);
        for (int k = 0; k < 2; ++k) {
            CHECK(ts.plus.xi[j][k] == brownian_transfer(ss, c, w)[j][k]);
            CHECK(ts.minus.xi[j][k] == brownian_transfer(ss, c, -w)[j][k]);
        }
    }

    const TransferSet mirrored = assemble_transfer(ss, c, -w);
    CHECK(mirrored.plus.big_d == ts.minus.big_d);
    CHECK(mirrored.minus.big_d == ts.plus.big_d);
    CHECK(mirrored.plus.b_coef[0] == ts.minus.b_coef[0]);

    const TransferSet again = assemble_transfer(ss, c, w);
    CHECK(again.plus.big_d == ts.plus.big_d);
    CHECK(again.minus.xi[1][0] == ts.minus.xi[1][0]);
}

TEST_CASE("differences and sums agree with the individual coefficients")
{
    for (const Draw& d : draws(200, 5)) {
        const SteadyState ss = steady_state(d.config);
        const TransferAt t = transfer_at(ss, d.config, d.omega);
        const double w1 = d.config.mirror1.omega_m;
        const double w2 = d.config.mirror2.omega_m;
        const double scale_b = std::abs(t.b_coef[0]) + std::abs(t.b_coef[1]);
        if (scale_b > 0.0) {
            CHECK(std::abs(t.b_rel - (t.b_coef[0] - t.b_coef[1])) <= 1e-12 * scale_b);
            CHECK(std::abs(t.b_sum - (t.b_coef[0] / w1 + t.b_coef[1] / w2)) <= 1e-12 * scale_b / std::min(w1, w2));
        }
        for (int k = 0; k < 2; ++k) {
            const double scale = std::abs(t.xi[0][k]) + std::abs(t.xi[1][k]);
            CHECK(std::abs(t.xi_rel[k] - (t.xi[0][k] - t.xi[1][k])) <= 1e-12 * scale);
            CHECK(std::abs(t.xi_sum[k] - (t.xi[0][k] / w1 + t.xi[1][k] / w2)) <= 1e-12 * scale / std::min(w1, w2));
        }
    }
}

TEST_CASE("closed-form coefficients solve the linear system")
{
    using oracle::Scalar;
    using oracle::Real;
    double worst = 0.0;
    for (const Draw& d : draws(300, 9)) {
        const SteadyState ss = steady_state(d.config);
        const auto sys = oracle::build_system(d.config, ss);
        const double w = d.omega;
        const TransferAt p = transfer_at(ss, d.config, w);
        const TransferAt m = transfer_at(ss, d.config, -w);

        oracle::TransferMatrix t = oracle::TransferMatrix::Zero();
        auto q = [](cplx z) { return Scalar(Real(z.real()), Real(z.imag())); };
        const int q_rows[2] = {oracle::kQ1, oracle::kQ2};
        const int p_rows[2] = {oracle::kP1, oracle::kP2};
        for (int j = 0; j < 2; ++j) {
            t(q_rows[j], oracle::kBin) = q(p.b_coef[j]);
            t(q_rows[j], oracle::kBinDag) = q(std::conj(m.b_coef[j]));
            t(q_rows[j], oracle::kXi1) = q(p.xi[j][0]);
            t(q_rows[j], oracle::kXi2) = q(p.xi[j][1]);
            const Scalar factor(Real(0), Real(-w / d.config.mirror(j + 1).omega_m));
            t.row(p_rows[j]) = factor * t.row(q_rows[j]);
        }
        // Cavity rows from the b equation: L1 b = sqrt(kappa) b_in - i beta (G1 q1 - G2 q2).
        const cplx l1 = p.cavity.first;
        const cplx l2 = p.cavity.second;
        const cplx beta = ss.beta;
        const double rk = std::sqrt(d.config.cavity.kappa);
        for (int col = 0; col < 4; ++col) {
            const Scalar x = Scalar(Real(ss.couplings[0])) * t(oracle::kQ1, col) -
                             Scalar(Real(ss.couplings[1])) * t(oracle::kQ2, col);
            const Scalar in_b = col == oracle::kBin ? q(rk) : Scalar(0);
            const Scalar in_bd = col == oracle::kBinDag ? q(rk) : Scalar(0);
            t(oracle::kB, col) = (in_b - q(cplx(0, 1) * beta) * x) / q(l1);
            t(oracle::kBdag, col) = (in_bd + q(cplx(0, 1) * std::conj(beta)) * x) / q(l2);
        }

        const oracle::SystemMatrix mat = sys.system_matrix(w);
        const oracle::NoiseMap n = sys.noise_map();
        const auto res = (mat * t - n).eval();
        Real largest = 0;
        Real err = 0;
        for (int i = 0; i < 6; ++i) {
            for (int col = 0; col < 4; ++col) {
                Real terms = abs(n(i, col));
                for (int k = 0; k < 6; ++k) terms += abs(mat(i, k) * t(k, col));
                largest = std::max(largest, terms);
                err = std::max(err, Real(abs(res(i, col))));
            }
        }
        worst = std::max(worst, static_cast<double>(err / largest));
    }
    CHECK(worst < 1e-9);
}
