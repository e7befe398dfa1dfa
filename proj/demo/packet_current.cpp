// A Gaussian packet on an infinite cylinder: stationary circular current and
// a longitudinal current that travels at the group velocity.

#include <cmath>
#include <cstdio>

#include "abdirac.hpp"

using namespace abdirac;

int main()
{
    double mu = 1, k0 = 2, width = 0.2;
    auto lam = HalfInteger::half_odd(0);
    auto spec = gaussian_packet(k0, width, 1025, PolarizationMix::make(std::sqrt(0.7), std::sqrt(0.3)));
    auto obs = observables(mu, lam, spec, 0);
    std::printf("<E> R = %.8f, 2 pi R I^c = %.8f, polarization = %.4f\n", obs.energy_scaled,
                obs.circular_current_scaled, obs.polarization);

    double v = k0 / energy_infinite(mu, k0, 0, lam);
    std::printf("group velocity k0 / E = %.6f\n", v);
    std::printf("%6s %10s %14s %14s\n", "t", "z", "I3 R", "density R");
    for (double t : {0.0, 2.5, 5.0, 10.0})
    {
        double z = v * t;
        std::printf("%6g %10.5f %14.8f %14.8f\n", t, z, longitudinal_current(mu, lam, spec, 0, t, z),
                    packet_density(mu, lam, spec, 0, t, z));
    }
}
