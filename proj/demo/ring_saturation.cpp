// Partial currents on a ring saturate at +-1/(2 pi R) instead of growing
// linearly with lambda; the persistent current follows k / sqrt(1 + k^2).

#include <cstdio>

#include "abdirac.hpp"

using namespace abdirac;

int main()
{
    double mu = 3495;  // InAs-like ring, R = 100 nm
    std::printf("# partial currents, mu = %g\n", mu);
    std::printf("%10s %14s %14s\n", "lambda", "relativistic", "nonrel");
    for (double x : {0.5, 349.5, 1747.5, 3494.5, 17474.5, 349499.5})
    {
        auto lam = HalfInteger::nearest_half_odd(x);
        std::printf("%10s %14.8f %14.8f\n", lam.str().c_str(), partial_current_ring(mu, 0, lam),
                    nonrel_energy_and_current(mu, 0, lam).current);
    }

    std::printf("\n# persistent current I/Imax, lambda_F = 0.5 mu\n");
    std::printf("%8s %14s %14s %12s\n", "mu", "exact", "k/sqrt(1+k^2)", "gap");
    for (double m : {10.0, 100.0, 1000.0, 3495.0})
    {
        auto f = FermiFillingRing::nearest(0.5 * m);
        double exact = persistent_ring_exact(m, f, 0).c_linearized;
        double approx = persistent_ring_approx(m, f);
        std::printf("%8g %14.10f %14.10f %12.3e\n", m, exact, approx, approx - exact);
    }
}
