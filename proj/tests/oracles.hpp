#pragma once

// Independent reference implementations used only by the tests. None of
// these call into the library's numerics.

#include <cmath>
#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle
{
using ld = long double;
using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Five-point central stencil for f'(x).
inline double derivative5(std::function<double(double)> const& f, double x, double h)
{
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

inline double derivative3(std::function<double(double)> const& f, double x, double h)
{
    return (f(x + h) - f(x - h)) / (2 * h);
}

inline ld energy(ld mu2, ld nu)
{
    return std::sqrt(mu2 + nu * nu);
}

/// chi in extended precision.
inline ld chi(ld mu2, ld nu)
{
    return nu / energy(mu2, nu);
}

/// Naive chi(lambda + beta) + chi(-lambda + beta) in long double.
inline ld pair_sum(ld mu2, ld lambda, ld beta)
{
    return chi(mu2, lambda + beta) + chi(mu2, -lambda + beta);
}

inline ld j(ld mu2, ld lambda)
{
    ld s = mu2 + lambda * lambda;
    return mu2 / (s * std::sqrt(s));
}

/// c(mu) = sum_{lambda=1/2}^{lambda_F} j, ascending, long double.
inline ld ring_c(ld mu, std::int64_t n_electrons)
{
    ld s = 0;
    for (std::int64_t twice = 1; twice < n_electrons; twice += 2)
        s += j(mu * mu, twice / 2.0L);
    return s;
}

struct Scan
{
    int n_f{0};
    std::vector<ld> lambda_n;  // max lambda per shell
    std::int64_t n_electrons{0};
};

/// Brute-force scan of all (n, lambda) in a bounding box, long double.
inline Scan occupation_scan(double aspect, double alpha, int n_box = 400, int m_box = 400)
{
    Scan out;
    ld a2 = static_cast<ld>(alpha) * alpha;
    for (int n = 1; n <= n_box; ++n)
    {
        ld kn = static_cast<ld>(aspect) * n;
        ld best = -1;
        for (int m = -m_box; m < m_box; ++m)
        {
            ld l = m + 0.5L;
            if (kn * kn + l * l <= a2)
            {
                ++out.n_electrons;
                best = std::max(best, l);
            }
        }
        if (best > 0)
        {
            out.n_f = n;
            out.lambda_n.push_back(best);
        }
    }
    return out;
}

/// Adaptive Gauss-Kronrod integral of sqrt(v^2 (n_F^2 - x^2) + 1/4) on [0, n_F].
inline double shell_integral(double aspect, int n_f)
{
    double nf = n_f;
    auto f = [&](double x) { return std::sqrt(aspect * aspect * (nf * nf - x * x) + 0.25); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, nf, 15, 1e-14);
}

/// Ring spinor with swapped magnitudes: (sqrt(E-M), 0, 0, i sqrt(E+M)) / (2 sqrt(pi E)).
inline std::array<cplx, 4> swapped_ring_spinor_up(double mu, double nu, double lambda, double phi)
{
    double e = std::sqrt(mu * mu + nu * nu);
    double n = 1 / (2 * std::sqrt(pi * e));
    return {n * std::sqrt(e - mu) * std::polar(1.0, phi * (lambda - 0.5)), 0.0, 0.0,
            n * cplx(0, std::sqrt(e + mu)) * std::polar(1.0, phi * (lambda + 0.5))};
}

/// 4x4 ring system (R = 1) applied to (f1, f2, g1, g2).
inline double ring_system_residual(double e, double mu, double nu, std::array<cplx, 4> const& v)
{
    cplx i(0, 1);
    cplx r0 = (e - mu) * v[0] + i * nu * v[3];
    cplx r1 = (e - mu) * v[1] - i * nu * v[2];
    cplx r2 = -i * nu * v[1] + (-e - mu) * v[2];
    cplx r3 = i * nu * v[0] + (-e - mu) * v[3];
    return std::sqrt(std::norm(r0) + std::norm(r1) + std::norm(r2) + std::norm(r3));
}

/// Standard-representation gamma matrices built entry by entry.
struct Gamma
{
    cplx m[4][4][4]{};

    Gamma()
    {
        cplx i(0, 1);
        m[0][0][0] = m[0][1][1] = 1;
        m[0][2][2] = m[0][3][3] = -1;
        // gamma^k = [[0, sigma_k], [-sigma_k, 0]]
        cplx s[3][2][2] = {{{0, 1}, {1, 0}}, {{0, -i}, {i, 0}}, {{1, 0}, {0, -1}}};
        for (int k = 0; k < 3; ++k)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                {
                    m[k + 1][a][b + 2] = s[k][a][b];
                    m[k + 1][a + 2][b] = -s[k][a][b];
                }
    }
};

/// psibar Gamma psi' with explicit loops.
inline cplx bilinear(std::array<cplx, 4> const& a, cplx const (&op)[4][4], std::array<cplx, 4> const& b)
{
    static Gamma const g;
    cplx s = 0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
        {
            cplx g0op = 0;
            for (int k = 0; k < 4; ++k)
                g0op += g.m[0][r][k] * op[k][c];
            s += std::conj(a[r]) * g0op * b[c];
        }
    return s;
}

} // namespace oracle
