#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace abdirac
{
using Complex = std::complex<double>;
using Spinor = Eigen::Vector4cd;
using Matrix4 = Eigen::Matrix4cd;

//---------------------------------------------------------------------------//
/*!
 * Dirac matrices gamma^0..gamma^3.
 *
 * \c standard() is the Dirac representation with diagonal gamma^0:
 *   gamma^0 = diag(1, 1, -1, -1),  gamma^i = [[0, sigma_i], [-sigma_i, 0]].
 * The table is a value so that verification suites can run against a
 * deliberately perturbed copy.
 */
struct DiracMatrices
{
    std::array<Matrix4, 4> gamma;

    static DiracMatrices standard()
    {
        using namespace std::complex_literals;
        Eigen::Matrix2cd s1, s2, s3;
        s1 << 0, 1, 1, 0;
        s2 << 0, -1i, 1i, 0;
        s3 << 1, 0, 0, -1;

        DiracMatrices m;
        m.gamma[0] = Matrix4::Zero();
        m.gamma[0].diagonal() << 1, 1, -1, -1;
        std::array<Eigen::Matrix2cd, 3> sigma{s1, s2, s3};
        for (int i = 0; i < 3; ++i)
        {
            Matrix4 g = Matrix4::Zero();
            g.topRightCorner<2, 2>() = sigma[i];
            g.bottomLeftCorner<2, 2>() = -sigma[i];
            m.gamma[i + 1] = g;
        }
        return m;
    }

    /// gamma^phi = (-gamma^1 sin(phi) + gamma^2 cos(phi)) / R, R = 1.
    Matrix4 gamma_phi(double phi) const
    {
        return -gamma[1] * std::sin(phi) + gamma[2] * std::cos(phi);
    }

    /// d gamma^phi / d phi.
    Matrix4 gamma_phi_derivative(double phi) const
    {
        return -gamma[1] * std::cos(phi) - gamma[2] * std::sin(phi);
    }
};

/// S_3 = diag(sigma_3, sigma_3) / 2.
inline Matrix4 spin_z()
{
    Matrix4 s = Matrix4::Zero();
    s.diagonal() << 0.5, -0.5, 0.5, -0.5;
    return s;
}

/// psibar Gamma psi' = psi^dagger gamma^0 Gamma psi'.
inline Complex bilinear(Spinor const& a, Matrix4 const& gamma0, Matrix4 const& op, Spinor const& b)
{
    return a.dot(gamma0 * op * b);  // Eigen's dot conjugates the left operand
}

} // namespace abdirac
