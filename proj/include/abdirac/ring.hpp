#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "abdirac/errors.hpp"
#include "abdirac/half_integer.hpp"
#include "abdirac/quadrature.hpp"

//---------------------------------------------------------------------------//
// Scalar formulas for an ideal Aharonov-Bohm ring. Energies are E*R,
// currents are I*2piR, persistent currents are I/I_max with I_max = beta/(pi R).
//---------------------------------------------------------------------------//
namespace abdirac
{
/// E R = sqrt(mu^2 + (beta + lambda)^2).
inline double ring_energy(double mu, double beta, HalfInteger lambda)
{
    if (!(mu >= 0))
        throw DomainError("ring_energy: mu must be >= 0");
    return std::hypot(mu, beta + lambda.value());
}

/*!
 * Saturation function chi(mu, nu) = nu / sqrt(mu^2 + nu^2).
 *
 * Odd and increasing in nu, bounded by +-1. For mu = 0 it is sign(nu).
 */
inline double chi(double mu, double nu)
{
    if (!(mu >= 0))
        throw DomainError("chi: mu must be >= 0");
    if (mu == 0 && nu == 0)
        throw DomainError("chi: undefined at mu = nu = 0");
    return nu / std::hypot(mu, nu);
}

/// 2 pi R I_lambda, the current of one occupied ring state.
inline double partial_current_ring(double mu, double beta, HalfInteger lambda)
{
    return chi(mu, beta + lambda.value());
}

struct NonrelativisticPair
{
    double energy;   //!< (E - M) R -> nu^2 / (2 mu)
    double current;  //!< 2 pi R I -> nu / mu
};

inline NonrelativisticPair nonrel_energy_and_current(double mu, double beta, HalfInteger lambda)
{
    if (!(mu > 0))
        throw DomainError("non-relativistic limit needs mu > 0");
    double nu = beta + lambda.value();
    return {nu * nu / (2 * mu), nu / mu};
}

/// j(mu, lambda) = mu^2 / (mu^2 + lambda^2)^{3/2}.
inline double j_ring(double mu, double lambda)
{
    if (!(mu >= 0))
        throw DomainError("j_ring: mu must be >= 0");
    if (mu == 0 && lambda == 0)
        throw DomainError("j_ring: undefined at mu = lambda = 0");
    double s = mu * mu + lambda * lambda;
    return mu * mu / (s * std::sqrt(s));
}

/*!
 * chi(m, lambda + beta) + chi(m, -lambda + beta) without cancellation.
 *
 * \c m2 is the squared effective mass term (mu^2 on rings,
 * mu^2 + aspect^2 n^2 on finite cylinders). When the two arguments have
 * opposite signs the sum is rewritten as
 *   4 m^2 lambda beta / (sqrt(A) sqrt(B) (a sqrt(B) - b sqrt(A)))
 * with a = lambda + beta, b = beta - lambda, A = m^2 + a^2, B = m^2 + b^2,
 * which keeps full relative precision for tiny beta.
 */
inline double pair_chi_sum(double m2, double lambda, double beta)
{
    double a = lambda + beta;
    double b = beta - lambda;
    if (m2 == 0 && (a == 0 || b == 0))
        throw DomainError("pair_chi_sum: chi undefined at zero mass and zero argument");
    double sa = std::sqrt(m2 + a * a);
    double sb = std::sqrt(m2 + b * b);
    if (a * b > 0)
        return a / sa + b / sb;
    double denom = a * sb - b * sa;
    if (denom == 0)
        return 0;
    return 4 * m2 * lambda * beta / (sa * sb * denom);
}

//---------------------------------------------------------------------------//
/*!
 * Even filling of a ring: N_e electrons on lambda = +-1/2 ... +-lambda_F.
 */
class FermiFillingRing
{
  public:
    static FermiFillingRing from_electrons(std::int64_t n_electrons)
    {
        if (n_electrons < 2 || n_electrons % 2 != 0)
            throw DomainError("ring filling needs an even N_e >= 2, got "
                              + std::to_string(n_electrons));
        return FermiFillingRing{n_electrons};
    }

    static FermiFillingRing from_lambda_f(HalfInteger lambda_f)
    {
        require_angular(lambda_f);
        if (lambda_f.twice() < 1)
            throw DomainError("lambda_F must be >= 1/2");
        return FermiFillingRing{lambda_f.twice() + 1};
    }

    /// Even filling with N_e / 2 nearest to \c lambda_target (at least 2 electrons).
    static FermiFillingRing nearest(double lambda_target)
    {
        if (!(lambda_target >= 0) || !std::isfinite(lambda_target))
            throw DomainError("target lambda_F must be finite and >= 0");
        auto half = std::max<std::int64_t>(1, std::llround(lambda_target));
        return FermiFillingRing{2 * half};
    }

    std::int64_t n_electrons() const { return n_electrons_; }
    HalfInteger lambda_f() const { return HalfInteger::from_twice(n_electrons_ - 1); }

    /// k = N_e / (2 mu) = (lambda_F + 1/2) / mu.
    double k(double mu) const
    {
        if (!(mu > 0))
            throw DomainError("k = N_e / 2mu needs mu > 0");
        return static_cast<double>(n_electrons_) / (2 * mu);
    }

  private:
    explicit FermiFillingRing(std::int64_t n) : n_electrons_{n} {}
    std::int64_t n_electrons_;
};

struct RingPersistent
{
    double c_linearized;  //!< c(mu) = sum_{lambda=1/2}^{lambda_F} j(mu, lambda)
    double full_sum;      //!< sum over occupied lambda of chi(mu, lambda + beta)
};

/// Exact T=0 persistent current sums, ascending lambda with compensated accumulation.
inline RingPersistent persistent_ring_exact(double mu, FermiFillingRing filling, double beta)
{
    if (!(mu >= 0))
        throw DomainError("persistent_ring_exact: mu must be >= 0");
    CompensatedSum<> c;
    CompensatedSum<> full;
    for (std::int64_t twice = 1; twice <= filling.lambda_f().twice(); twice += 2)
    {
        double lambda = 0.5 * static_cast<double>(twice);
        c += j_ring(mu, lambda);
        full += pair_chi_sum(mu * mu, lambda, beta);
    }
    return {c.value(), full.value()};
}

/// c ~ k / sqrt(1 + k^2), k = N_e / (2 mu).
inline double persistent_ring_approx(double mu, FermiFillingRing filling)
{
    double k = filling.k(mu);
    return k / std::sqrt(1 + k * k);
}

inline double persistent_ring_approx(double mu, HalfInteger lambda_f)
{
    return persistent_ring_approx(mu, FermiFillingRing::from_lambda_f(lambda_f));
}

/// Non-relativistic persistent current I/I_max = k.
inline double persistent_ring_nonrel(double mu, FermiFillingRing filling)
{
    return filling.k(mu);
}

struct RingSpectrumRow
{
    HalfInteger lambda;
    double energy_scaled;
    double current_scaled;
};

/// All states with |lambda| <= lambda_max, ascending lambda.
inline std::vector<RingSpectrumRow> ring_spectrum(double mu, double beta, double lambda_max)
{
    if (!(lambda_max >= 0))
        throw DomainError("lambda_max must be >= 0");
    std::vector<RingSpectrumRow> rows;
    if (lambda_max < 0.5)
        return rows;
    // largest half-odd integer <= lambda_max
    auto top = HalfInteger::nearest_half_odd(lambda_max - 0.5);
    for (auto l = -top; l <= top; l = l.shifted(1))
        rows.push_back({l, ring_energy(mu, beta, l), partial_current_ring(mu, beta, l)});
    return rows;
}

} // namespace abdirac
