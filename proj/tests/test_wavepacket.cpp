#include <cmath>
#include <fstream>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "abdirac/spinor.hpp"
#include "abdirac/wavepacket.hpp"
#include "oracles.hpp"

using namespace abdirac;

namespace
{
HalfInteger half(std::int64_t twice)
{
    return HalfInteger::from_twice(twice);
}

/// psi(t, phi, z) assembled from the mode spinors by Simpson in k.
Spinor assemble(double mu, HalfInteger lambda, PacketSpec const& spec, double beta, double t, double phi,
                double z)
{
    auto w = simpson_weights(spec.k);
    Spinor psi = Spinor::Zero();
    for (std::size_t i = 0; i < spec.k.size(); ++i)
    {
        InfiniteMode up{mu, beta, spec.k[i], lambda, Polarization::up};
        InfiniteMode down{mu, beta, spec.k[i], lambda, Polarization::down};
        psi += w[i] * (spec.a_plus[i] * eval_infinite_spinor(up, t, phi, z).components
                       + spec.a_minus[i] * eval_infinite_spinor(down, t, phi, z).components);
    }
    return psi;
}

/// R int dphi psibar gamma^3 psi with the oracle gamma table.
oracle::cplx longitudinal_oracle(double mu, HalfInteger lambda, PacketSpec const& spec, double beta,
                                 double t, double z)
{
    static oracle::Gamma const g;
    oracle::cplx g3[4][4];
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            g3[r][c] = g.m[3][r][c];
    oracle::cplx acc = 0;
    int const nodes = 16;
    for (int i = 0; i < nodes; ++i)
    {
        Spinor psi = assemble(mu, lambda, spec, beta, t, 2 * M_PI * i / nodes, z);
        std::array<oracle::cplx, 4> v{psi[0], psi[1], psi[2], psi[3]};
        acc += oracle::bilinear(v, g3, v);
    }
    return acc * (2 * M_PI / nodes);
}

double density_oracle(double mu, HalfInteger lambda, PacketSpec const& spec, double beta, double t, double z)
{
    double acc = 0;
    for (int i = 0; i < 16; ++i)
        acc += assemble(mu, lambda, spec, beta, t, 2 * M_PI * i / 16, z).squaredNorm();
    return acc * (2 * M_PI / 16);
}

/// int dk |g(k)|^2 f(k) for the normalized Gaussian, adaptively.
double gaussian_average(double k0, double s, std::function<double(double)> const& f)
{
    auto integrand = [&](double k) {
        double x = (k - k0) / s;
        return std::exp(-x * x) / (std::sqrt(M_PI) * s) * f(k);
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    return GK::integrate(integrand, k0 - 12 * s, k0 + 12 * s, 15, 1e-14);
}
} // namespace

TEST(Packet, Normalization)
{
    auto g = gaussian_packet(0.5, 0.3);
    EXPECT_NEAR(packet_norm(g), 1, 1e-10);
    auto same = normalize_packet(g);
    for (std::size_t i = 0; i < g.k.size(); i += 97)
        EXPECT_NEAR(std::abs(same.a_plus[i] - g.a_plus[i]), 0, 1e-12);

    auto doubled = g;
    for (auto& a : doubled.a_plus)
        a *= 2.0;
    auto back = normalize_packet(doubled);
    for (std::size_t i = 0; i < g.k.size(); i += 97)
        EXPECT_NEAR(std::abs(back.a_plus[i] - g.a_plus[i]), 0, 1e-14);

    auto zero = g;
    for (auto& a : zero.a_plus)
        a = 0;
    EXPECT_THROW(normalize_packet(zero), DomainError);

    auto ragged = g;
    ragged.a_minus.pop_back();
    EXPECT_THROW(packet_norm(ragged), UsageError);
    EXPECT_THROW(gaussian_packet(0, 0), DomainError);
}

TEST(Packet, CircularCurrent)
{
    auto g = gaussian_packet(0.4, 0.5);
    EXPECT_EQ(circular_current_packet(1, half(1), g, -0.5), 0);

    double mu = 1.2, beta = 0.05;
    auto lam = half(3);
    double nu = lam.value() + beta;
    double expected = gaussian_average(0.4, 0.5, [&](double k) { return nu / std::sqrt(mu * mu + k * k + nu * nu); });
    EXPECT_NEAR(circular_current_packet(mu, lam, g, beta), expected, 1e-10);

    auto narrow = gaussian_packet(2, 1e-4);
    EXPECT_NEAR(circular_current_packet(mu, lam, narrow, beta), nu / std::sqrt(mu * mu + 4 + nu * nu), 1e-8);

    auto sat = gaussian_packet(0, 1);
    double c = circular_current_packet(1, HalfInteger::half_odd(10000), sat, 0);
    EXPECT_GT(c, 1 - 1e-8);
    EXPECT_LE(c, 1);

    auto unnorm = g;
    for (auto& a : unnorm.a_plus)
        a *= 1.1;
    EXPECT_THROW(circular_current_packet(mu, lam, unnorm, beta), UsageError);
}

TEST(Packet, CurrentIgnoresCrossCorrelation)
{
    // a+ and a- correlated vs the same weights with a- phase-scrambled
    auto mixed = gaussian_packet(0.3, 0.4, 513, PolarizationMix::make(std::sqrt(0.5), std::sqrt(0.5)));
    auto scrambled = mixed;
    for (std::size_t i = 0; i < scrambled.k.size(); ++i)
        scrambled.a_minus[i] *= std::polar(1.0, 0.37 * static_cast<double>(i));
    EXPECT_NEAR(circular_current_packet(1, half(1), mixed, 0.1),
                circular_current_packet(1, half(1), scrambled, 0.1), 1e-14);
}

TEST(Packet, CircularCurrentIsEnergyDerivative)
{
    auto g = gaussian_packet(-0.7, 0.6, 1025, PolarizationMix::make({0.8, 0}, {0, 0.6}));
    double mu = 0.8;
    auto lam = half(-3);
    auto e = [&](double b) { return packet_energy(mu, lam, g, b); };
    EXPECT_NEAR(oracle::derivative5(e, 0.02, 1e-3), circular_current_packet(mu, lam, g, 0.02), 1e-9);
}

TEST(Packet, CircularCurrentFromSpinors)
{
    // stationary: same value from psibar gamma^phi psi at several (t, z)
    auto g = gaussian_packet(0.5, 0.4, 257, PolarizationMix::make(std::sqrt(0.7), std::sqrt(0.3)));
    double mu = 1, beta = 0.1;
    auto lam = half(1);
    double expected = circular_current_packet(mu, lam, g, beta);
    std::mt19937_64 rng{17};
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 5; ++i)
    {
        double t = u(rng), z = u(rng);
        // flux through the half plane phi = const: 2 pi R I^c = 2 pi int dz psibar gamma^phi psi
        double phi = 2 * M_PI * (u(rng) + 2) / 4;
        auto line = [&](double zz) {
            Spinor psi = assemble(mu, lam, g, beta, t, phi, zz);
            return current_bilinear(psi, psi, Direction::phi, phi).real();
        };
        using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
        double total = GK::integrate(line, z - 30, z + 30, 10, 1e-11);
        EXPECT_NEAR(2 * M_PI * total, expected, 1e-6);
    }
}

TEST(Packet, Energy)
{
    auto narrow = gaussian_packet(1.5, 1e-4);
    EXPECT_NEAR(packet_energy(2, half(1), narrow, 0.1), std::sqrt(4 + 2.25 + 0.36), 1e-7);

    auto g = gaussian_packet(2, 0.1);
    double expected = gaussian_average(2, 0.1, [](double k) { return std::sqrt(1 + k * k + 0.25); });
    double e = packet_energy(1, half(1), g, 0);
    EXPECT_NEAR(e, expected, 1e-10);
    EXPECT_NEAR(e, 2.291548, 1e-6);
    EXPECT_GE(e, std::sqrt(1.25));
}

TEST(Packet, Polarization)
{
    EXPECT_NEAR(polarization_degree(half(-5), gaussian_packet(0, 1)), -2.5, 1e-10);
    auto equal = gaussian_packet(0, 1, 1025, PolarizationMix::make(std::sqrt(0.5), {0, std::sqrt(0.5)}));
    EXPECT_NEAR(polarization_degree(half(3), equal), 0, 1e-12);
    auto split = gaussian_packet(1, 0.3, 1025, PolarizationMix::make(std::sqrt(0.7), std::sqrt(0.3)));
    EXPECT_NEAR(polarization_degree(half(3), split), 0.6, 1e-10);
    auto obs = observables(1, half(3), split, 0);
    EXPECT_NEAR(obs.polarization, 0.6, 1e-10);
    EXPECT_LT(std::abs(obs.circular_current_scaled), 1);
}

TEST(Longitudinal, MatchesSpinorOracle)
{
    auto g = gaussian_packet(0.8, 0.4, 129, PolarizationMix::make({0.6, 0.2}, {0.0, std::sqrt(0.6)}));
    double mu = 1.1, beta = 0.07;
    auto lam = half(3);
    for (auto [t, z] : {std::pair{0.0, 0.0}, {0.5, -0.3}, {2.0, 1.0}})
    {
        auto got = longitudinal_current_complex(mu, lam, g, beta, t, z);
        auto ref = longitudinal_oracle(mu, lam, g, beta, t, z);
        EXPECT_NEAR(std::abs(got - ref), 0, 1e-10 * std::max(1.0, std::abs(ref))) << t << " " << z;
        EXPECT_LT(std::abs(got.imag()), 1e-10);
        EXPECT_NEAR(packet_density(mu, lam, g, beta, t, z), density_oracle(mu, lam, g, beta, t, z), 1e-10);
    }
}

TEST(Longitudinal, SymmetricPacketAtRest)
{
    auto g = gaussian_packet(0, 0.5);
    for (double z : {-1.0, 0.0, 0.4, 2.0})
        EXPECT_LT(std::abs(longitudinal_current(1, half(1), g, 0, 0, z)), 1e-10);
}

TEST(Longitudinal, NarrowPacket)
{
    // single-mode limit: I^3 / density = k0 / E, constant in time
    double k0 = 1.3, mu = 0.9;
    auto lam = half(1);
    auto g = gaussian_packet(k0, 1e-3, 257);
    double v = k0 / std::sqrt(mu * mu + k0 * k0 + 0.25);
    for (double t : {0.0, 1.0, 3.0})
    {
        double z = v * t;
        double ratio = longitudinal_current(mu, lam, g, 0, t, z) / packet_density(mu, lam, g, 0, t, z);
        EXPECT_NEAR(ratio, v, 1e-6);
    }
}

TEST(Longitudinal, RidesAtGroupVelocity)
{
    double mu = 1, k0 = 2, s = 0.2;
    auto lam = half(1);
    double e0 = std::sqrt(mu * mu + k0 * k0 + 0.25);
    double t = 10, z = t * k0 / e0;
    auto coarse = gaussian_packet(k0, s, 1025);
    auto fine = gaussian_packet(k0, s, 2049);
    double start = longitudinal_current(mu, lam, coarse, 0, 0, 0);
    double later = longitudinal_current(mu, lam, coarse, 0, t, z);
    EXPECT_NEAR(later, longitudinal_current(mu, lam, fine, 0, t, z), 1e-9);
    EXPECT_LT(std::abs(later / start - 1), 0.05);
}

TEST(Longitudinal, CoarseGridRejected)
{
    auto g = normalize_packet(gaussian_packet(0, 1, 33));
    EXPECT_THROW(longitudinal_current(1, half(1), g, 0, 0, 100), AccuracyError);
    EXPECT_THROW(longitudinal_current(1, half(1), g, 0, INFINITY, 0), DomainError);
}

TEST(PacketCsv, ParseAndLoad)
{
    auto p = parse_packet_csv("# packet\nk,re_a_plus,im_a_plus,re_a_minus,im_a_minus\n"
                              "-1,0.5,0,0,0\n0,1,0.25,0,-0.5\n1,0.5,0,0,0\n");
    ASSERT_EQ(p.k.size(), 3u);
    EXPECT_EQ(p.a_plus[1], Complex(1, 0.25));
    EXPECT_EQ(p.a_minus[1], Complex(0, -0.5));
    EXPECT_THROW(parse_packet_csv("k,a\n0,1\n"), UsageError);
    EXPECT_THROW(parse_packet_csv("0,1,0,0,x\n"), UsageError);

    auto path = testing::TempDir() + "abdirac_packet.csv";
    {
        std::ofstream f{path};
        f << "0,1,0,0,0\n0.5,1,0,0,0\n1,1,0,0,0\n";
    }
    auto loaded = normalize_packet(load_packet_csv(path));
    EXPECT_NEAR(packet_norm(loaded), 1, 1e-15);
    EXPECT_THROW(load_packet_csv("/nonexistent/packet.csv"), UsageError);
}
