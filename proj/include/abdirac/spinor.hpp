#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "abdirac/errors.hpp"
#include "abdirac/gamma.hpp"
#include "abdirac/half_integer.hpp"
#include "abdirac/quadrature.hpp"

//---------------------------------------------------------------------------//
// Normalized eigenspinors on rings, finite cylinders and infinite cylinders.
//
// Units: hbar = c = 1 and R = 1, so energies are E*R, momenta k*R and
// lengths (z, L) are in units of R. Spinor amplitudes carry the matching
// powers of R.
//---------------------------------------------------------------------------//
namespace abdirac
{
/// kappa = +-1 on rings, sigma = +-1/2 on cylinders.
enum class Polarization
{
    up = 1,
    down = -1
};

inline int sign(Polarization p)
{
    return static_cast<int>(p);
}

struct RingState
{
    double mu{1};
    double beta{0};
    HalfInteger lambda{HalfInteger::half_odd(0)};
    Polarization kappa{Polarization::up};

    double nu() const { return beta + lambda.value(); }
    double energy() const { return std::hypot(mu, nu()); }
};

struct InfiniteMode
{
    double mu{1};
    double beta{0};
    double k{0};  //!< longitudinal momentum k R
    HalfInteger lambda{HalfInteger::half_odd(0)};
    Polarization sigma{Polarization::up};

    double nu() const { return beta + lambda.value(); }
    double energy() const { return std::sqrt(mu * mu + k * k + nu() * nu()); }
};

struct FiniteMode
{
    double mu{1};
    double beta{0};
    double aspect{1};  //!< pi R / L
    int n{1};
    HalfInteger lambda{HalfInteger::half_odd(0)};
    Polarization sigma{Polarization::up};

    double nu() const { return beta + lambda.value(); }
    double k() const { return aspect * n; }
    double length() const { return M_PI / aspect; }
    double energy() const { return std::sqrt(mu * mu + k() * k() + nu() * nu()); }
};

using AnyMode = std::variant<RingState, FiniteMode, InfiniteMode>;

/// The four amplitudes of a spinor at (t, phi, z).
struct SpinorSample
{
    Spinor components;
    double t{0};
    double phi{0};
    double z{0};
};

namespace detail
{
/// How the longitudinal profile of each component is expanded.
enum class ZBasis
{
    constant,     //!< ring: (1, -)
    plane_wave,   //!< infinite cylinder: (e^{ikz}, -)
    standing      //!< finite cylinder: (sin kz, cos kz)
};

using Coefficients = Eigen::Matrix<Complex, 4, 2>;

/*!
 * Separated form of an eigenspinor:
 *   psi_j = norm * sum_b coeffs(j, b) basis_b(z) e^{i phi m_j} e^{-iEt},
 * with m_j = lambda -+ 1/2 and the upper pair (f1, f2) = xi_sigma.
 */
struct ModeForm
{
    double energy;
    double mass;
    double nu;
    double k;
    ZBasis basis;
    Coefficients coeffs;
    double norm;
    std::array<double, 4> phase_index;
};

inline void check_mode(double mu, HalfInteger lambda, double energy)
{
    if (!(mu >= 0))
        throw DomainError("spinor: mu must be >= 0");
    require_angular(lambda);
    if (!(energy > 0))
        throw DomainError("spinor: zero-energy state has no normalized spinor");
}

inline std::array<double, 4> phase_indices(HalfInteger lambda)
{
    double l = lambda.value();
    return {l - 0.5, l + 0.5, l - 0.5, l + 0.5};
}

inline ModeForm mode_form(RingState const& s)
{
    using namespace std::complex_literals;
    double e = s.energy();
    check_mode(s.mu, s.lambda, e);
    double small = s.nu() / (e + s.mu);
    Coefficients c = Coefficients::Zero();
    if (s.kappa == Polarization::up)
    {
        c(0, 0) = 1;
        c(3, 0) = 1i * small;
    }
    else
    {
        c(1, 0) = 1;
        c(2, 0) = -1i * small;
    }
    // R * 2pi * |N|^2 * 2E / (E + M) = 1
    double norm = std::sqrt((e + s.mu) / (4 * M_PI * e));
    return {e, s.mu, s.nu(), 0.0, ZBasis::constant, c, norm, phase_indices(s.lambda)};
}

inline ModeForm mode_form(InfiniteMode const& m)
{
    using namespace std::complex_literals;
    double e = m.energy();
    check_mode(m.mu, m.lambda, e);
    double den = e + m.mu;
    Coefficients c = Coefficients::Zero();
    if (m.sigma == Polarization::up)
    {
        c(0, 0) = 1;
        c(2, 0) = m.k / den;
        c(3, 0) = 1i * m.nu() / den;
    }
    else
    {
        c(1, 0) = 1;
        c(2, 0) = -1i * m.nu() / den;
        c(3, 0) = -m.k / den;
    }
    // N_{k,lambda} times the 1/sqrt(2pi) of the plane wave
    double norm = std::sqrt(den / (2 * e)) / std::sqrt(2 * M_PI) / std::sqrt(2 * M_PI);
    return {e, m.mu, m.nu(), m.k, ZBasis::plane_wave, c, norm, phase_indices(m.lambda)};
}

inline ModeForm mode_form(FiniteMode const& m)
{
    using namespace std::complex_literals;
    if (m.n < 1)
        throw DomainError("finite-cylinder mode needs n >= 1");
    if (!(m.aspect > 0))
        throw DomainError("finite-cylinder mode needs aspect > 0");
    double e = m.energy();
    check_mode(m.mu, m.lambda, e);
    double den = e + m.mu;
    Coefficients c = Coefficients::Zero();
    // column 0: sin(k z), column 1: cos(k z)
    if (m.sigma == Polarization::up)
    {
        c(0, 0) = 1;
        c(2, 1) = -1i * m.k() / den;
        c(3, 0) = 1i * m.nu() / den;
    }
    else
    {
        c(1, 0) = 1;
        c(2, 0) = -1i * m.nu() / den;
        c(3, 1) = 1i * m.k() / den;
    }
    double norm = std::sqrt(den / (2 * e)) / std::sqrt(M_PI * m.length());
    return {e, m.mu, m.nu(), m.k(), ZBasis::standing, c, norm, phase_indices(m.lambda)};
}

inline ModeForm mode_form(AnyMode const& m)
{
    return std::visit([](auto const& x) { return mode_form(x); }, m);
}

/// Basis functions evaluated at z.
inline Eigen::Vector2cd basis_values(ModeForm const& f, double z)
{
    switch (f.basis)
    {
        case ZBasis::constant:
            return {1.0, 0.0};
        case ZBasis::plane_wave:
            return {std::polar(1.0, f.k * z), 0.0};
        case ZBasis::standing:
            return {std::sin(f.k * z), std::cos(f.k * z)};
    }
    return {0.0, 0.0};
}

/// Matrix D with d/dz (C b(z)) = (C D) b(z).
inline Eigen::Matrix2cd basis_derivative(ModeForm const& f)
{
    using namespace std::complex_literals;
    Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
    switch (f.basis)
    {
        case ZBasis::constant:
            break;
        case ZBasis::plane_wave:
            d(0, 0) = 1i * f.k;
            break;
        case ZBasis::standing:
            // d/dz (s sin + c cos) = -k c sin + k s cos
            d(0, 1) = f.k;
            d(1, 0) = -f.k;
            break;
    }
    return d;
}

/// Un-normalized profile: sum_b C(j,b) b_b(z) e^{i phi m_j}, before e^{-iEt}.
inline Spinor profile(ModeForm const& f, Coefficients const& c, double phi, double z)
{
    Eigen::Vector2cd b = basis_values(f, z);
    Spinor out = c * b;
    for (int j = 0; j < 4; ++j)
        out[j] *= std::polar(1.0, f.phase_index[j] * phi);
    return out;
}

inline Spinor evaluate(ModeForm const& f, double t, double phi, double z)
{
    return f.norm * std::polar(1.0, -f.energy * t) * profile(f, f.coeffs, phi, z);
}
} // namespace detail

//---------------------------------------------------------------------------//
// Pointwise evaluation
//---------------------------------------------------------------------------//
inline SpinorSample eval_ring_spinor(RingState const& state, double t, double phi)
{
    return {detail::evaluate(detail::mode_form(state), t, phi, 0.0), t, phi, 0.0};
}

/// \c z_scaled is z / L in [0, 1].
inline SpinorSample eval_finite_spinor(FiniteMode const& mode, double t, double phi, double z_scaled)
{
    if (!(z_scaled >= 0 && z_scaled <= 1))
        throw DomainError("finite cylinder: z/L must lie in [0, 1]");
    double z = z_scaled * mode.length();
    return {detail::evaluate(detail::mode_form(mode), t, phi, z), t, phi, z};
}

inline SpinorSample eval_infinite_spinor(InfiniteMode const& mode, double t, double phi, double z)
{
    return {detail::evaluate(detail::mode_form(mode), t, phi, z), t, phi, z};
}

/// Normalized superposition c+ U^+ + c- U^-.
struct PolarizationMix
{
    Complex c_plus{1};
    Complex c_minus{0};

    static PolarizationMix make(Complex plus, Complex minus)
    {
        double n = std::norm(plus) + std::norm(minus);
        if (std::abs(n - 1) > 1e-12)
            throw DomainError("polarization mix must satisfy |c+|^2 + |c-|^2 = 1");
        return {plus, minus};
    }

    double degree() const { return std::norm(c_plus) - std::norm(c_minus); }
};

//---------------------------------------------------------------------------//
// Fields and scalar products
//---------------------------------------------------------------------------//
enum class Geometry
{
    ring,
    finite_cylinder,
    infinite_box  //!< infinite cylinder restricted to a z-window
};

/*!
 * Spinor field at fixed time on a geometry.
 *
 * \c eval takes (phi, z) with z in units of R (ignored on rings).
 * \c phase_index holds the orbital eigenvalues m_j of each component when
 * the field has a definite total angular momentum.
 */
struct SpinorField
{
    Geometry geometry{Geometry::ring};
    double z_min{0};
    double z_max{0};
    double max_wavenumber{0};
    std::optional<std::array<double, 4>> phase_index;
    std::function<Spinor(double, double)> eval;
};

inline SpinorField field(RingState const& s, double t = 0)
{
    auto form = detail::mode_form(s);
    return {Geometry::ring, 0, 0, 0, form.phase_index,
            [form, t](double phi, double) { return detail::evaluate(form, t, phi, 0.0); }};
}

inline SpinorField field(FiniteMode const& m, double t = 0)
{
    auto form = detail::mode_form(m);
    return {Geometry::finite_cylinder, 0, m.length(), form.k, form.phase_index,
            [form, t](double phi, double z) { return detail::evaluate(form, t, phi, z); }};
}

/// Infinite-cylinder mode on the window [-box/2, box/2].
inline SpinorField box_field(InfiniteMode const& m, double box_length, double t = 0)
{
    if (!(box_length > 0))
        throw DomainError("box length must be > 0");
    auto form = detail::mode_form(m);
    return {Geometry::infinite_box, -0.5 * box_length, 0.5 * box_length, std::abs(form.k),
            form.phase_index,
            [form, t](double phi, double z) { return detail::evaluate(form, t, phi, z); }};
}

namespace detail
{
inline void require_same_geometry(SpinorField const& a, SpinorField const& b)
{
    if (a.geometry != b.geometry || a.z_min != b.z_min || a.z_max != b.z_max)
        throw UsageError("spinor fields live on different geometries");
}
} // namespace detail

/// c+ a + c- b on a common geometry.
inline SpinorField mix(PolarizationMix const& w, SpinorField const& plus, SpinorField const& minus)
{
    detail::require_same_geometry(plus, minus);
    SpinorField out = plus;
    out.max_wavenumber = std::max(plus.max_wavenumber, minus.max_wavenumber);
    if (plus.phase_index != minus.phase_index)
        out.phase_index.reset();
    out.eval = [w, a = plus.eval, b = minus.eval](double phi, double z) {
        return Spinor(w.c_plus * a(phi, z) + w.c_minus * b(phi, z));
    };
    return out;
}

struct ScalarProductSettings
{
    int phi_nodes{default_phi_nodes};
};

/*!
 * Relativistic scalar product <a, b> = R int dphi int dz a^dagger b.
 *
 * phi: uniform periodic trapezoid. z: composite Gauss-Legendre with one
 * panel per half-wavelength of the fastest mode.
 */
inline Complex scalar_product(SpinorField const& a, SpinorField const& b,
                              ScalarProductSettings const& settings = {})
{
    detail::require_same_geometry(a, b);
    auto phi_rule = periodic_trapezoid(settings.phi_nodes);

    auto angular = [&](double z) {
        Complex acc = 0;
        for (std::size_t i = 0; i < phi_rule.size(); ++i)
            acc += phi_rule.weights[i] * a.eval(phi_rule.nodes[i], z).dot(b.eval(phi_rule.nodes[i], z));
        return acc;
    };

    if (a.geometry == Geometry::ring)
        return angular(0.0);

    double kmax = std::max(a.max_wavenumber, b.max_wavenumber);
    double span = a.z_max - a.z_min;
    int panels = std::max(1, static_cast<int>(std::ceil(kmax * span / M_PI - 1e-9)));
    auto z_rule = composite_gauss_legendre(a.z_min, a.z_max, panels);
    Complex acc = 0;
    for (std::size_t i = 0; i < z_rule.size(); ++i)
        acc += z_rule.weights[i] * angular(z_rule.nodes[i]);
    return acc;
}

/*!
 * Gram matrix G_ij = <f_i, f_j> on a shared quadrature grid.
 *
 * Each field is sampled once; the z rule resolves the fastest field.
 */
inline Eigen::MatrixXcd gram_matrix(std::vector<SpinorField> const& fields,
                                    ScalarProductSettings const& settings = {})
{
    auto n = static_cast<Eigen::Index>(fields.size());
    if (n == 0)
        return {};
    double kmax = 0;
    for (auto const& f : fields)
    {
        detail::require_same_geometry(fields.front(), f);
        kmax = std::max(kmax, f.max_wavenumber);
    }
    auto phi_rule = periodic_trapezoid(settings.phi_nodes);
    QuadratureRule z_rule{{0.0}, {1.0}};
    auto const& g = fields.front();
    if (g.geometry != Geometry::ring)
    {
        int panels = std::max(1, static_cast<int>(std::ceil(kmax * (g.z_max - g.z_min) / M_PI - 1e-9)));
        z_rule = composite_gauss_legendre(g.z_min, g.z_max, panels);
    }

    auto points = static_cast<Eigen::Index>(phi_rule.size() * z_rule.size());
    Eigen::MatrixXcd samples(4 * points, n);
    Eigen::VectorXd w(4 * points);
    for (Eigen::Index col = 0; col < n; ++col)
    {
        Eigen::Index p = 0;
        for (std::size_t iz = 0; iz < z_rule.size(); ++iz)
            for (std::size_t ip = 0; ip < phi_rule.size(); ++ip, ++p)
            {
                samples.block<4, 1>(4 * p, col) = fields[col].eval(phi_rule.nodes[ip], z_rule.nodes[iz]);
                if (col == 0)
                    w.segment<4>(4 * p).setConstant(phi_rule.weights[ip] * z_rule.weights[iz]);
            }
    }
    return samples.adjoint() * w.asDiagonal() * samples;
}

//---------------------------------------------------------------------------//
// Operators
//---------------------------------------------------------------------------//
struct KOptions
{
    bool finite_difference{false};  //!< L_3 by central differences instead of phase indices
    double step{1e-5};
    ScalarProductSettings quadrature{};
};

/*!
 * Apply the polarization operator K to a field.
 *
 * Rings: K = 2 gamma^0 S_3. Cylinders: K = gamma^0 (2 S_3 L_3 + 1/2) with
 * L_3 = -i d/dphi.
 */
inline SpinorField apply_K_field(SpinorField const& psi, KOptions const& opts = {},
                                 DiracMatrices const& g = DiracMatrices::standard())
{
    SpinorField out = psi;
    Matrix4 s3 = spin_z();
    if (psi.geometry == Geometry::ring)
    {
        Matrix4 k = 2 * g.gamma[0] * s3;
        out.eval = [k, f = psi.eval](double phi, double z) { return Spinor(k * f(phi, z)); };
        return out;
    }

    Matrix4 g0 = g.gamma[0];
    if (opts.finite_difference)
    {
        using namespace std::complex_literals;
        double h = opts.step;
        out.eval = [g0, s3, h, f = psi.eval](double phi, double z) {
            Spinor l3 = -1i * (f(phi + h, z) - f(phi - h, z)) / (2 * h);
            return Spinor(g0 * (2 * s3 * l3 + 0.5 * f(phi, z)));
        };
        return out;
    }
    if (!psi.phase_index)
        throw UsageError("analytic L_3 needs a field of definite angular momentum");
    auto m = *psi.phase_index;
    out.eval = [g0, s3, m, f = psi.eval](double phi, double z) {
        Spinor v = f(phi, z);
        Spinor l3 = v;
        for (int j = 0; j < 4; ++j)
            l3[j] *= m[j];
        return Spinor(g0 * (2 * s3 * l3 + 0.5 * v));
    };
    return out;
}

/// Rayleigh quotient <psi, K psi> / <psi, psi>.
inline double apply_K(SpinorField const& psi, KOptions const& opts = {},
                      DiracMatrices const& g = DiracMatrices::standard())
{
    auto kpsi = apply_K_field(psi, opts, g);
    Complex num = scalar_product(psi, kpsi, opts.quadrature);
    Complex den = scalar_product(psi, psi, opts.quadrature);
    return (num / den).real();
}

/// Rayleigh quotient of K for one mode; infinite modes use one unit of z.
inline double apply_K(AnyMode const& mode, KOptions const& opts = {})
{
    return std::visit(
        [&](auto const& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, InfiniteMode>)
                return apply_K(box_field(m, 1.0), opts);
            else
                return apply_K(field(m), opts);
        },
        mode);
}

/*!
 * Residual of the separated 4x4 Dirac system.
 *
 * Builds
 *   [[E-M, 0, i dz, i nu], [0, E-M, -i nu, -i dz],
 *    [-i dz, -i nu, -E-M, 0], [i nu, i dz, 0, -E-M]]
 * (R = 1) with dz acting analytically on the z-profile, applies it to the
 * un-normalized coefficients (f1, f2, g1, g2) and returns the Frobenius
 * norm. \c energy overrides the energy used in the matrix (the coefficients
 * always use the dispersion relation).
 */
inline double dirac_system_residual(AnyMode const& mode, std::optional<double> energy = {})
{
    using namespace std::complex_literals;
    auto f = detail::mode_form(mode);
    double e = energy.value_or(f.energy);
    double m = f.mass;
    Complex inu = 1i * f.nu;

    Matrix4 p = Matrix4::Zero();
    p(0, 0) = e - m;
    p(0, 3) = inu;
    p(1, 1) = e - m;
    p(1, 2) = -inu;
    p(2, 1) = -inu;
    p(2, 2) = -e - m;
    p(3, 0) = inu;
    p(3, 3) = -e - m;

    Matrix4 q = Matrix4::Zero();
    q(0, 2) = 1i;
    q(1, 3) = -1i;
    q(2, 0) = -1i;
    q(3, 1) = 1i;

    detail::Coefficients r = p * f.coeffs + q * f.coeffs * detail::basis_derivative(f);
    return r.norm();
}

/*!
 * Pointwise residual |(E_D - M) psi| of the restricted Dirac operator
 *   E_D = i g0 dt + g^phi (i dphi - beta) + (i/2) dphi(g^phi) + i g3 dz,
 * built from the supplied gamma matrices, on the un-normalized profile.
 */
inline double dirac_operator_residual(AnyMode const& mode, double beta, double t, double phi,
                                      double z, DiracMatrices const& g = DiracMatrices::standard())
{
    using namespace std::complex_literals;
    auto f = detail::mode_form(mode);
    Complex time = std::polar(1.0, -f.energy * t);
    Spinor psi = time * detail::profile(f, f.coeffs, phi, z);
    Spinor dz = time * detail::profile(f, f.coeffs * detail::basis_derivative(f), phi, z);
    Spinor dphi = psi;
    for (int j = 0; j < 4; ++j)
        dphi[j] *= 1i * f.phase_index[j];
    Spinor dt = -1i * f.energy * psi;

    Spinor lhs = 1i * g.gamma[0] * dt + g.gamma_phi(phi) * (1i * dphi - beta * psi)
                 + 0.5i * g.gamma_phi_derivative(phi) * psi + 1i * g.gamma[3] * dz - f.mass * psi;
    return lhs.norm();
}

enum class Direction
{
    phi,
    z
};

/// psibar gamma^phi psi' (R = 1) or psibar gamma^3 psi' at angle phi.
inline Complex current_bilinear(Spinor const& a, Spinor const& b, Direction dir, double phi,
                                DiracMatrices const& g = DiracMatrices::standard())
{
    Matrix4 op = dir == Direction::phi ? g.gamma_phi(phi) : g.gamma[3];
    return bilinear(a, g.gamma[0], op, b);
}

inline Complex current_bilinear(SpinorSample const& a, SpinorSample const& b, Direction dir,
                                DiracMatrices const& g = DiracMatrices::standard())
{
    if (a.phi != b.phi || a.z != b.z || a.t != b.t)
        throw UsageError("current bilinear needs both spinors at the same point");
    return current_bilinear(a.components, b.components, dir, a.phi, g);
}

} // namespace abdirac
