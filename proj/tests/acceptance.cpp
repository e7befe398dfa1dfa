// Acceptance report: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "abdirac.hpp"
#include "oracles.hpp"

using namespace abdirac;

namespace
{
int failures = 0;

void report(int id, std::string const& name, bool pass, std::string const& detail)
{
    std::printf("%s %2d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    if (!pass)
        ++failures;
}

std::string fmt(char const* f, double a, double b = 0, double c = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

void saturation_constant()
{
    double worst = 0;
    for (double mu : {0.5, 1.0, 10.0, 3495.0})
        for (double s : {1.0, -1.0})
            worst = std::max(worst, std::abs(std::abs(chi(mu, s * 5 * mu)) - 0.98058));
    report(1, "saturation constant |chi(mu, +-5mu)| = 0.98058", worst <= 5e-6,
           fmt("max deviation %.3e (bound 5e-6)", worst));
}

void linear_regime()
{
    double worst = 0, at_mu = 0, at_nu = 0;
    int const points = 10000;
    for (double mu : {1.0, 10.0, 100.0})
        for (int i = 0; i < points; ++i)
        {
            double nu = -0.5 * mu + (i + 0.5) * mu / points;
            double d = std::abs(chi(mu, nu) - nu / mu);
            if (d > worst)
            {
                worst = d;
                at_mu = mu;
                at_nu = nu;
            }
        }
    report(2, "linear-regime bound |chi - nu/mu| < 0.05 on |nu| < mu/2", worst < 0.05,
           fmt("max %.6f at mu=%g, nu=%.4f (sup is 1/2 - 1/sqrt5 = 0.052786)", worst, at_mu, at_nu));
}

void j_maximum()
{
    double best = 0, arg = 0;
    int const points = 50001;
    for (int i = 0; i < points; ++i)
    {
        double mu = 0.5 + 0.5 * i / (points - 1);
        double v = j_ring(mu, 0.5);
        if (v > best)
        {
            best = v;
            arg = mu;
        }
    }
    bool pass = std::abs(best - 0.7698) <= 1e-4 && std::abs(arg - 1 / std::sqrt(2.0)) <= 0.01;
    report(3, "j maximum 0.7698 at mu = 1/sqrt2", pass, fmt("max %.10f at mu=%.6f", best, arg));
}

void ring_approximation()
{
    double worst = 0;
    for (double mu : {200.0, 1000.0, 3495.0})
    {
        auto f = FermiFillingRing::nearest(0.5 * mu);
        double exact = persistent_ring_exact(mu, f, 0).c_linearized;
        worst = std::max(worst, std::abs(exact - persistent_ring_approx(mu, f)));
    }
    report(4, "ring approximation |c - k/sqrt(1+k^2)| < 1e-5", worst < 1e-5,
           fmt("max gap %.3e over mu in {200, 1000, 3495}", worst));
}

void fig1b_narrowness()
{
    double lo = INFINITY, hi = -INFINITY;
    for (int mu = 100; mu <= 1000; ++mu)
    {
        double c = persistent_ring_exact(mu, FermiFillingRing::nearest(5.0 * mu), 0).c_linearized;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    report(5, "ring c(mu) narrowness max(c) - min(c) <= 5e-5", hi - lo <= 5e-5,
           fmt("spread %.3e over integer mu in [100, 1000]", hi - lo));
}

void physical_mu()
{
    double mu = mu_from_physical(Mass::electron_masses(0.0135), 100e-9);
    report(6, "physical mu(0.0135 m_e, 100 nm) in [3494, 3496]", mu >= 3494 && mu <= 3496, fmt("mu = %.4f", mu));
}

void derivative_identity()
{
    std::mt19937_64 rng{101};
    std::uniform_real_distribution<double> mu_d(0.5, 20), beta_d(-0.25, 0.25), asp_d(0.1, 3);
    std::uniform_int_distribution<int> m_d(-10, 9), n_d(1, 6);
    double worst = 0;
    for (int i = 0; i < 100; ++i)
    {
        double mu = mu_d(rng), beta = beta_d(rng);
        auto lam = HalfInteger::half_odd(m_d(rng));
        double fd = oracle::derivative5([&](double b) { return ring_energy(mu, b, lam); }, beta, 1e-3);
        double cur = partial_current_ring(mu, beta, lam);
        worst = std::max(worst, std::abs(cur - fd) / std::abs(cur));

        double aspect = asp_d(rng);
        int n = n_d(rng);
        fd = oracle::derivative5([&](double b) { return energy_finite(mu, aspect, n, b, lam); }, beta, 1e-3);
        cur = chi_finite(mu, aspect, n, beta, lam);
        worst = std::max(worst, std::abs(cur - fd) / std::abs(cur));
    }
    report(7, "derivative identity 2pi I = dE/dbeta", worst < 1e-8,
           fmt("max relative error %.3e over 100 ring + 100 cylinder samples", worst));
}

void orthonormality()
{
    std::vector<SpinorField> ring;
    for (auto kappa : {Polarization::up, Polarization::down})
        for (std::int64_t t = -7; t <= 7; t += 2)
            ring.push_back(field(RingState{1.3, 0.07, HalfInteger::from_twice(t), kappa}));
    double e_ring = (gram_matrix(ring) - Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff();

    std::vector<SpinorField> finite;
    for (auto sigma : {Polarization::up, Polarization::down})
        for (int n = 1; n <= 3; ++n)
            for (std::int64_t t = -5; t <= 5; t += 2)
                finite.push_back(field(FiniteMode{1.3, 0.07, 0.8, n, HalfInteger::from_twice(t), sigma}));
    double e_fin = (gram_matrix(finite) - Eigen::MatrixXcd::Identity(36, 36)).cwiseAbs().maxCoeff();
    report(8, "orthonormality of ring and finite-cylinder states", std::max(e_ring, e_fin) <= 1e-10,
           fmt("max |G - I|: ring %.3e (16 states), finite %.3e (36 states)", e_ring, e_fin));
}

void dirac_residual()
{
    std::mt19937_64 rng{202};
    std::uniform_real_distribution<double> u(0, 1);
    double worst = 0;
    for (int i = 0; i < 100; ++i)
    {
        auto pol = i % 2 ? Polarization::up : Polarization::down;
        auto lam = HalfInteger::half_odd(static_cast<int>(20 * u(rng)) - 10);
        double mu = 10 * u(rng), beta = u(rng) - 0.5;
        worst = std::max(worst, dirac_system_residual(RingState{mu, beta, lam, pol}));
        worst = std::max(worst, dirac_system_residual(FiniteMode{mu, beta, 0.2 + 2 * u(rng), 1 + i % 4, lam, pol}));
        worst = std::max(worst, dirac_system_residual(InfiniteMode{mu, beta, 6 * u(rng) - 3, lam, pol}));
    }
    report(9, "Dirac residual of constructed eigenstates < 1e-12", worst < 1e-12,
           fmt("max residual %.3e over 100 samples x 3 geometries", worst));
}

void enumeration_oracle()
{
    std::mt19937_64 rng{303};
    std::uniform_real_distribution<double> asp_d(0.05, 3), alpha_d(0, 60);
    int mismatches = 0, identity_breaks = 0;
    for (int i = 0; i < 50; ++i)
    {
        double aspect = asp_d(rng), alpha = alpha_d(rng);
        auto occ = enumerate_occupied(aspect, alpha);
        auto scan = oracle::occupation_scan(aspect, alpha, static_cast<int>(alpha / aspect) + 2,
                                            static_cast<int>(alpha) + 2);
        bool same = occ.n_f == scan.n_f && occ.n_electrons == scan.n_electrons;
        for (int n = 0; same && n < occ.n_f; ++n)
            same = occ.lambda_n[n].value() == static_cast<double>(scan.lambda_n[n]);
        mismatches += !same;
        identity_breaks += occ.n_electrons != occ.n_f + occ.lambda_sum().twice();
    }
    report(10, "enumeration equals brute-force scan; N_e = n_F + 2 sum lambda_n",
           mismatches == 0 && identity_breaks == 0,
           fmt("%g mismatches, %g identity failures over 50 cases", mismatches, identity_breaks));
}

void shell_sum()
{
    auto s = lambda_shell_sum(0.1, 200);
    double integral = oracle::shell_integral(0.1, 200);
    double gap = std::abs(s.direct_sum / integral - 1);
    report(11, "shell sum vs integral within 0.5%", gap < 5e-3,
           fmt("direct %.4f, integral %.4f, gap %.3e", s.direct_sum, integral, gap)
               + fmt("; closed form %.2f (not asserted)", s.closed_form));
}

void short_cylinder()
{
    double mu = 500, aspect = 40, alpha = 60, beta = 1e-6;
    auto exact = persistent_finite_exact(mu, aspect, alpha, beta);
    double approx = persistent_short_cylinder(mu, aspect, alpha).value;
    double gap = std::abs(approx / exact.c_linearized - 1);
    report(12, "short-cylinder formula within 5% of the exact sum", gap < 0.05,
           fmt("formula %.8f, exact %.8f, relative gap %.3e", approx, exact.c_linearized, gap));
}

void packet_properties()
{
    auto g = gaussian_packet(0.7, 0.4);
    double norm_err = std::abs(packet_norm(g) - 1);
    double sat = circular_current_packet(1, HalfInteger::half_odd(10000), gaussian_packet(0, 1), 0);
    auto mixed = gaussian_packet(0.7, 0.4, 513, PolarizationMix::make({0.6, 0.3}, {0, std::sqrt(0.55)}));
    double imag = 0;
    for (double t : {0.0, 1.0, 3.0})
        for (double z : {-1.0, 0.5, 2.0})
            imag = std::max(imag, std::abs(longitudinal_current_complex(1, HalfInteger::half_odd(1), mixed, 0.1, t, z).imag()));
    auto sym = gaussian_packet(0, 0.5);
    double rest = 0;
    for (double z : {-2.0, 0.0, 0.3, 1.0})
        rest = std::max(rest, std::abs(longitudinal_current(1, HalfInteger::half_odd(1), sym, 0, 0, z)));
    bool pass = norm_err <= 1e-8 && sat > 1 - 1e-6 && imag < 1e-10 && rest < 1e-10;
    report(13, "packet norm, saturation, Hermiticity, symmetric packet", pass,
           fmt("|norm-1| %.2e, 1-2piRI^c %.2e, max |Im I3| %.2e", norm_err, 1 - sat, imag)
               + fmt(", symmetric |I3| %.2e", rest));
}

void cubic_pairing()
{
    auto exponent = [](double m2, double lambda, double j) {
        auto rem = [&](double b) { return std::abs(pair_chi_sum(m2, lambda, b) - 2 * b * j); };
        return std::log10(rem(1e-4) / rem(1e-5));
    };
    double worst = 0;
    for (double mu : {0.5, 2.0, 10.0})
        for (double lambda : {0.5, 2.5, 7.5})
        {
            worst = std::max(worst, std::abs(exponent(mu * mu, lambda, j_ring(mu, lambda)) - 3));
            double m2 = mu * mu + 0.36 * 4;
            worst = std::max(worst, std::abs(exponent(m2, lambda, j_finite(mu, 0.6, 2, lambda)) - 3));
        }
    report(14, "cubic pairing expansion exponent 3 +- 0.1", worst <= 0.1,
           fmt("max |exponent - 3| = %.3e (ring and cylinder, 9 cases each)", worst));
}
} // namespace

int main()
{
    saturation_constant();
    linear_regime();
    j_maximum();
    ring_approximation();
    fig1b_narrowness();
    physical_mu();
    derivative_identity();
    orthonormality();
    dirac_residual();
    enumeration_oracle();
    shell_sum();
    short_cylinder();
    packet_properties();
    cubic_pairing();
    std::printf("%d of 14 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
