#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "abdirac/constants.hpp"
#include "abdirac/errors.hpp"

//---------------------------------------------------------------------------//
// Dimensionless parameters. Internally hbar = c = e = 1 and lengths are
// measured in units of the radius R; SI quantities only enter here.
//---------------------------------------------------------------------------//
namespace abdirac
{
/// Flux magnitudes at or below this are the linear-response regime of the
/// persistent-current formulas.
inline constexpr double perturbative_beta = 1e-8;

struct RingConfig
{
    double mu{0};    //!< M R (M R c / hbar in SI)
    double beta{0};  //!< e B R^2 / 2

    static RingConfig make(double mu, double beta)
    {
        if (!(mu >= 0) || !std::isfinite(mu))
            throw DomainError("mu must be finite and >= 0");
        if (!std::isfinite(beta))
            throw DomainError("beta must be finite");
        return {mu, beta};
    }

    bool perturbative() const { return std::abs(beta) <= perturbative_beta; }
};

struct CylinderConfig
{
    double mu{0};
    double beta{0};
    std::optional<double> aspect;  //!< pi R / L; empty for an infinite cylinder

    static CylinderConfig make(double mu, double beta, std::optional<double> aspect = {})
    {
        auto ring = RingConfig::make(mu, beta);
        if (aspect && (!(*aspect > 0) || !std::isfinite(*aspect)))
            throw DomainError("aspect ratio pi R / L must be finite and > 0");
        return {ring.mu, ring.beta, aspect};
    }

    bool finite() const { return aspect.has_value(); }

    /// Cylinder length in units of R.
    double length() const
    {
        if (!aspect)
            throw UsageError("infinite cylinder has no length");
        return M_PI / *aspect;
    }
};

/// Particle mass, stored in kilograms.
class Mass
{
  public:
    static Mass kilograms(double kg) { return Mass{kg}; }
    static Mass electron_masses(double m) { return Mass{m * codata::electron_mass}; }

    double kg() const { return kg_; }

  private:
    explicit Mass(double kg) : kg_{kg} {}
    double kg_;
};

/// mu = M c R / hbar.
inline double mu_from_physical(Mass mass, double radius_m)
{
    if (!(mass.kg() > 0))
        throw DomainError("mass must be > 0");
    if (!(radius_m > 0))
        throw DomainError("radius must be > 0");
    return mass.kg() * codata::speed_of_light * radius_m / codata::reduced_planck;
}

/// beta = e B R^2 / (2 hbar).
inline double beta_from_field(double field_T, double radius_m)
{
    if (!(radius_m > 0))
        throw DomainError("radius must be > 0");
    if (!std::isfinite(field_T))
        throw DomainError("field must be finite");
    return codata::elementary_charge * field_T * radius_m * radius_m
           / (2 * codata::reduced_planck);
}

/// E_F R / (hbar c), the Fermi energy in units of 1/R.
inline double fermi_scaled(double fermi_eV, double radius_m)
{
    if (!(fermi_eV >= 0))
        throw DomainError("Fermi energy must be >= 0");
    if (!(radius_m > 0))
        throw DomainError("radius must be > 0");
    return fermi_eV * codata::electron_volt * radius_m
           / (codata::reduced_planck * codata::speed_of_light);
}

struct FermiRadius
{
    double exact;   //!< sqrt(eps (eps + 2 mu))
    double approx;  //!< sqrt(2 mu eps), the E_F << M form
};

/*!
 * Radius alpha of the occupied region in (aspect*n, lambda) space.
 *
 * \c eps is E_F R (dimensionless); the exact value follows from
 * E_{n,lambda} <= E_F + M.
 */
inline FermiRadius alpha_from_fermi(double mu, double eps)
{
    if (!(mu >= 0))
        throw DomainError("mu must be >= 0");
    if (!(eps >= 0))
        throw DomainError("scaled Fermi energy must be >= 0");
    return {std::sqrt(eps * (eps + 2 * mu)), std::sqrt(2 * mu * eps)};
}

/// Raw physical inputs, as read from a config file.
struct PhysicalInput
{
    double mass_me{0};   //!< mass in electron masses
    double radius_m{0};
    std::optional<double> field_T;
    std::optional<double> fermi_eV;

    void validate() const
    {
        if (!(mass_me > 0))
            throw DomainError("mass_me must be > 0");
        if (!(radius_m > 0))
            throw DomainError("radius_m must be > 0");
        if (field_T && !(*field_T > 0))
            throw DomainError("field_T must be > 0");
        if (fermi_eV && !(*fermi_eV > 0))
            throw DomainError("fermi_eV must be > 0");
    }

    double mu() const { return mu_from_physical(Mass::electron_masses(mass_me), radius_m); }
    double beta() const { return field_T ? beta_from_field(*field_T, radius_m) : 0.0; }

    RingConfig ring() const
    {
        validate();
        return RingConfig::make(mu(), beta());
    }

    /// Exact Fermi radius alpha, if a Fermi energy was given.
    std::optional<double> alpha() const
    {
        validate();
        if (!fermi_eV)
            return std::nullopt;
        return alpha_from_fermi(mu(), fermi_scaled(*fermi_eV, radius_m)).exact;
    }
};

} // namespace abdirac
