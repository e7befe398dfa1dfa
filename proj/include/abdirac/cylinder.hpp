#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "abdirac/errors.hpp"
#include "abdirac/half_integer.hpp"
#include "abdirac/quadrature.hpp"
#include "abdirac/ring.hpp"

//---------------------------------------------------------------------------//
// Scalar formulas for Aharonov-Bohm cylinders. aspect = pi R / L; energies
// are E*R, circular currents I*2piR, persistent currents I/I_max.
//---------------------------------------------------------------------------//
namespace abdirac
{
/// sqrt(mu^2 + k^2 + nu^2) with nu = beta + lambda.
inline double dispersion(double mu, double k, double nu)
{
    return std::sqrt(mu * mu + k * k + nu * nu);
}

inline double energy_infinite(double mu, double k, double beta, HalfInteger lambda)
{
    if (!(mu >= 0))
        throw DomainError("energy_infinite: mu must be >= 0");
    return dispersion(mu, k, beta + lambda.value());
}

namespace detail
{
inline void check_finite_args(double mu, double aspect, int n)
{
    if (!(mu >= 0))
        throw DomainError("mu must be >= 0");
    if (!(aspect > 0))
        throw DomainError("aspect must be > 0");
    if (n < 1)
        throw DomainError("longitudinal quantum number n must be >= 1");
}

/// mu^2 + aspect^2 n^2
inline double transverse_mass2(double mu, double aspect, int n)
{
    double kn = aspect * n;
    return mu * mu + kn * kn;
}
} // namespace detail

inline double energy_finite(double mu, double aspect, int n, double beta, HalfInteger lambda)
{
    detail::check_finite_args(mu, aspect, n);
    double nu = beta + lambda.value();
    return std::sqrt(detail::transverse_mass2(mu, aspect, n) + nu * nu);
}

/// chi_{mu,nu}(n, lambda) = 2 pi R I^c_{n,lambda}.
inline double chi_finite(double mu, double aspect, int n, double beta, HalfInteger lambda)
{
    return (beta + lambda.value()) / energy_finite(mu, aspect, n, beta, lambda);
}

/// j_{mu,nu}(n, lambda) = (mu^2 + nu^2 n^2) / (mu^2 + nu^2 n^2 + lambda^2)^{3/2}.
inline double j_finite(double mu, double aspect, int n, double lambda)
{
    if (!(mu >= 0) || !(aspect >= 0) || n < 0)
        throw DomainError("j_finite: negative argument");
    double m2 = mu * mu + aspect * aspect * n * n;
    if (m2 == 0 && lambda == 0)
        throw DomainError("j_finite: undefined at zero arguments");
    double s = m2 + lambda * lambda;
    return m2 / (s * std::sqrt(s));
}

//---------------------------------------------------------------------------//
// Occupation below the Fermi level
//---------------------------------------------------------------------------//

/// Relative slack on alpha^2 so that Fermi ties survive binary rounding.
inline constexpr double fermi_tie_tolerance = 8 * std::numeric_limits<double>::epsilon();

/// aspect^2 n^2 + lambda^2 <= alpha^2, ties included.
inline bool below_fermi(double aspect, int n, double lambda, double alpha)
{
    double kn = aspect * n;
    return kn * kn + lambda * lambda <= alpha * alpha * (1 + fermi_tie_tolerance);
}

struct OccupationSet
{
    double aspect{0};
    double alpha{0};
    int n_f{0};                            //!< largest occupied n (0 if empty)
    std::vector<HalfInteger> lambda_n;     //!< max |lambda| per shell n = 1..n_f
    std::int64_t n_electrons{0};           //!< sum_n (2 lambda_n + 1)

    bool empty() const { return n_f == 0; }
    HalfInteger lambda_f() const
    {
        if (empty())
            throw DomainError("empty occupation has no lambda_F");
        return lambda_n.front();
    }
    /// sum_n lambda_n as an exact half-integer.
    HalfInteger lambda_sum() const
    {
        auto s = HalfInteger::from_twice(0);
        for (auto l : lambda_n)
            s = s + l;
        return s;
    }
    bool odd_count() const { return n_electrons % 2 != 0; }
};

/*!
 * Enumerate the states with aspect^2 n^2 + lambda^2 <= alpha^2.
 *
 * Each shell n holds lambda = -lambda_n ... lambda_n; equality with the
 * Fermi radius counts as occupied.
 */
inline OccupationSet enumerate_occupied(double aspect, double alpha)
{
    if (!(aspect > 0) || !std::isfinite(aspect))
        throw DomainError("enumerate_occupied: aspect must be finite and > 0");
    if (!(alpha >= 0) || !std::isfinite(alpha))
        throw DomainError("enumerate_occupied: alpha must be finite and >= 0");

    OccupationSet occ;
    occ.aspect = aspect;
    occ.alpha = alpha;

    if (!below_fermi(aspect, 1, 0.5, alpha))
        return occ;

    auto n_top = static_cast<int>(std::floor(std::sqrt(std::max(0.0, alpha * alpha - 0.25)) / aspect));
    n_top = std::max(n_top, 1);
    while (below_fermi(aspect, n_top + 1, 0.5, alpha))
        ++n_top;
    while (!below_fermi(aspect, n_top, 0.5, alpha))
        --n_top;
    occ.n_f = n_top;

    for (int n = 1; n <= occ.n_f; ++n)
    {
        double kn = aspect * n;
        double room = std::sqrt(std::max(0.0, alpha * alpha - kn * kn));
        auto lam = HalfInteger::nearest_half_odd(std::max(0.0, room - 0.5));
        while (below_fermi(aspect, n, lam.shifted(1).value(), alpha))
            lam = lam.shifted(1);
        while (lam.twice() > 1 && !below_fermi(aspect, n, lam.value(), alpha))
            lam = lam.shifted(-1);
        occ.lambda_n.push_back(lam);
        occ.n_electrons += lam.twice() + 1;
    }
    return occ;
}

struct CylinderPersistent
{
    double c_linearized;  //!< c(mu, nu) = sum over occupied n, lambda > 0 of j
    double full_sum;      //!< sum over occupied n, lambda of chi_{mu,nu}(n, lambda + beta)
};

/// Exact sums over the occupation; shells summed with compensation, then combined in n order.
inline CylinderPersistent persistent_finite_exact(double mu, OccupationSet const& occ, double beta)
{
    if (!(mu >= 0))
        throw DomainError("persistent_finite_exact: mu must be >= 0");
    CompensatedSum<> c_total;
    CompensatedSum<> full_total;
    for (int n = 1; n <= occ.n_f; ++n)
    {
        double m2 = detail::transverse_mass2(mu, occ.aspect, n);
        CompensatedSum<> c_shell;
        CompensatedSum<> full_shell;
        for (std::int64_t twice = 1; twice <= occ.lambda_n[n - 1].twice(); twice += 2)
        {
            double lambda = 0.5 * static_cast<double>(twice);
            c_shell += j_finite(mu, occ.aspect, n, lambda);
            full_shell += pair_chi_sum(m2, lambda, beta);
        }
        c_total += c_shell.value();
        full_total += full_shell.value();
    }
    return {c_total.value(), full_total.value()};
}

inline CylinderPersistent persistent_finite_exact(double mu, double aspect, double alpha, double beta)
{
    return persistent_finite_exact(mu, enumerate_occupied(aspect, alpha), beta);
}

/// c ~ (sum_n lambda_n) / sqrt(mu^2 + alpha^2); good for mu > 200.
inline double persistent_finite_approx(double mu, OccupationSet const& occ)
{
    if (occ.empty())
        throw DomainError("persistent_finite_approx: empty occupation");
    if (!(mu >= 0))
        throw DomainError("persistent_finite_approx: mu must be >= 0");
    return occ.lambda_sum().value() / std::hypot(mu, occ.alpha);
}

struct ShellSum
{
    double direct_sum;         //!< sum_{n=1}^{n_F} sqrt(nu^2 (n_F^2 - n^2) + 1/4)
    double integral_value;     //!< int_0^{n_F} dx sqrt(nu^2 (n_F^2 - x^2) + 1/4)
    double closed_form;        //!< (1/4) n_F (1 + pi n_F / nu), not a valid approximation
};

/*!
 * The three estimates of sum_n lambda_n used for long cylinders.
 *
 * The published closed form is dimensionally inconsistent with its
 * integrand and is reported only for comparison.
 */
inline ShellSum lambda_shell_sum(double aspect, int n_f)
{
    if (n_f < 1)
        throw DomainError("lambda_shell_sum: n_F must be >= 1");
    if (!(aspect > 0))
        throw DomainError("lambda_shell_sum: aspect must be > 0");

    double nf = n_f;
    CompensatedSum<> direct;
    for (int n = 1; n <= n_f; ++n)
        direct += std::sqrt(aspect * aspect * (nf * nf - double(n) * n) + 0.25);

    // int_0^X sqrt(a^2 - v^2 x^2) dx at X = n_F with a^2 = v^2 n_F^2 + 1/4
    double a2 = aspect * aspect * nf * nf + 0.25;
    double integral = (aspect * nf * 0.5 + a2 * std::asin(aspect * nf / std::sqrt(a2))) / (2 * aspect);

    return {direct.value(), integral, 0.25 * nf * (1 + M_PI * nf / aspect)};
}

struct ShortCylinder
{
    double value;          //!< I/I_max = sqrt((alpha^2 - nu^2) / (alpha^2 + mu^2))
    bool single_shell;     //!< aspect < alpha < 2 aspect: only n = 1 is occupied
    bool aspect_large;     //!< aspect >= 10, the "1 << nu" side of the regime
};

/// Threshold taken as "much larger than one" for the aspect ratio.
inline constexpr double large_aspect_threshold = 10.0;

inline ShortCylinder persistent_short_cylinder(double mu, double aspect, double alpha)
{
    if (!(mu >= 0) || !(aspect >= 0))
        throw DomainError("persistent_short_cylinder: negative argument");
    if (alpha < aspect)
        throw DomainError("persistent_short_cylinder: alpha < aspect leaves no occupied state");
    double value = std::sqrt((alpha * alpha - aspect * aspect) / (alpha * alpha + mu * mu));
    return {value, aspect < alpha && alpha < 2 * aspect, aspect >= large_aspect_threshold};
}

/// Non-relativistic limit I/I_max = N_e / (2 mu).
inline double nonrel_short_limit(double mu, std::int64_t n_electrons)
{
    if (!(mu > 0))
        throw DomainError("nonrel_short_limit needs mu > 0");
    if (n_electrons < 0)
        throw DomainError("nonrel_short_limit: negative electron count");
    return static_cast<double>(n_electrons) / (2 * mu);
}

struct CylinderSpectrumRow
{
    int n;
    HalfInteger lambda;
    double energy_scaled;
    double current_scaled;  //!< independent of sigma
};

inline std::vector<CylinderSpectrumRow>
cylinder_spectrum(double mu, double aspect, double beta, int n_max, double lambda_max)
{
    if (n_max < 0)
        throw DomainError("n_max must be >= 0");
    if (!(lambda_max >= 0))
        throw DomainError("lambda_max must be >= 0");
    std::vector<CylinderSpectrumRow> rows;
    if (lambda_max < 0.5)
        return rows;
    auto top = HalfInteger::nearest_half_odd(lambda_max - 0.5);
    for (int n = 1; n <= n_max; ++n)
        for (auto l = -top; l <= top; l = l.shifted(1))
            rows.push_back({n, l, energy_finite(mu, aspect, n, beta, l),
                            chi_finite(mu, aspect, n, beta, l)});
    return rows;
}

} // namespace abdirac
