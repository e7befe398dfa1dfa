// Fermi filling of a finite cylinder and the persistent current against
// its closed-form estimates.

#include <cstdio>

#include "abdirac.hpp"

using namespace abdirac;

int main()
{
    double mu = 400, aspect = 2;
    double alpha = alpha_from_fermi(mu, 0.5).exact;
    auto occ = enumerate_occupied(aspect, alpha);
    std::printf("mu = %g, aspect = %g, alpha = %.6f\n", mu, aspect, alpha);
    std::printf("n_F = %d, N_e = %lld, lambda_F = %s\n", occ.n_f, static_cast<long long>(occ.n_electrons),
                occ.lambda_f().str().c_str());
    for (int n = 1; n <= occ.n_f; ++n)
        std::printf("  n = %2d  lambda_n = %s\n", n, occ.lambda_n[n - 1].str().c_str());

    auto exact = persistent_finite_exact(mu, occ, 1e-9);
    double approx = persistent_finite_approx(mu, occ);
    std::printf("c exact  = %.10f\n", exact.c_linearized);
    std::printf("c approx = %.10f (relative gap %.3e)\n", approx, approx / exact.c_linearized - 1);

    auto shells = lambda_shell_sum(aspect, occ.n_f);
    std::printf("sum lambda_n: exact %.1f, direct %.4f, integral %.4f, closed form %.4f\n",
                occ.lambda_sum().value(), shells.direct_sum, shells.integral_value, shells.closed_form);

    double short_alpha = 60;
    auto one = enumerate_occupied(40, short_alpha);
    double c_short = persistent_finite_exact(500, one, 0).c_linearized;
    std::printf("short cylinder (mu 500, aspect 40, alpha 60): exact %.8f, formula %.8f\n", c_short,
                persistent_short_cylinder(500, 40, short_alpha).value);
}
