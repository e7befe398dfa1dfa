#pragma once

#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "abdirac/cylinder.hpp"
#include "abdirac/errors.hpp"
#include "abdirac/half_integer.hpp"
#include "abdirac/quadrature.hpp"
#include "abdirac/spinor.hpp"

//---------------------------------------------------------------------------//
// Square-integrable packets psi_lambda = int dk [a+(k) U+_{k,lambda} + a-(k) U-_{k,lambda}]
// on an infinite cylinder. k is k*R on a uniform grid; integrals use
// composite Simpson. Energies E_{k,lambda} always follow the full dispersion.
//---------------------------------------------------------------------------//
namespace abdirac
{
struct PacketSpec
{
    std::vector<double> k;
    std::vector<Complex> a_plus;
    std::vector<Complex> a_minus;

    void validate() const
    {
        if (a_plus.size() != k.size() || a_minus.size() != k.size())
            throw UsageError("packet amplitudes must match the k grid");
        (void)simpson_weights(k);
    }
};

struct PacketObservables
{
    double energy_scaled;
    double circular_current_scaled;
    double polarization;
};

/// int dk (|a+|^2 + |a-|^2).
inline double packet_norm(PacketSpec const& spec)
{
    spec.validate();
    auto w = simpson_weights(spec.k);
    CompensatedSum<> s;
    for (std::size_t i = 0; i < spec.k.size(); ++i)
        s += w[i] * (std::norm(spec.a_plus[i]) + std::norm(spec.a_minus[i]));
    return s.value();
}

inline PacketSpec normalize_packet(PacketSpec spec)
{
    double n = packet_norm(spec);
    if (!(n > 0))
        throw DomainError("cannot normalize a zero packet");
    double scale = 1 / std::sqrt(n);
    for (auto& a : spec.a_plus)
        a *= scale;
    for (auto& a : spec.a_minus)
        a *= scale;
    return spec;
}

/*!
 * Gaussian packet a_pm(k) = c_pm (pi s^2)^{-1/4} exp(-(k-k0)^2 / 2s^2)
 * sampled on [k0 - span s, k0 + span s].
 */
inline PacketSpec gaussian_packet(double k0, double width, int nodes = 1025,
                                  PolarizationMix mix = {}, double span = 6)
{
    if (!(width > 0))
        throw DomainError("Gaussian packet width must be > 0");
    PacketSpec spec;
    spec.k = linspace(k0 - span * width, k0 + span * width, static_cast<std::size_t>(nodes));
    double amp = std::pow(M_PI * width * width, -0.25);
    for (double k : spec.k)
    {
        double x = (k - k0) / width;
        double g = amp * std::exp(-0.5 * x * x);
        spec.a_plus.push_back(mix.c_plus * g);
        spec.a_minus.push_back(mix.c_minus * g);
    }
    spec.validate();
    return spec;
}

/// Normalization tolerance accepted by the observables.
inline constexpr double packet_norm_tolerance = 1e-8;

namespace detail
{
inline std::vector<double> require_normalized(PacketSpec const& spec)
{
    double n = packet_norm(spec);
    if (std::abs(n - 1) > packet_norm_tolerance)
        throw UsageError("packet is not normalized (norm = " + std::to_string(n) + ")");
    return simpson_weights(spec.k);
}
} // namespace detail

/// 2 pi R I^c = (lambda + beta) int dk (|a+|^2 + |a-|^2) / E_{k,lambda}; time independent.
inline double circular_current_packet(double mu, HalfInteger lambda, PacketSpec const& spec, double beta)
{
    auto w = detail::require_normalized(spec);
    CompensatedSum<> s;
    for (std::size_t i = 0; i < spec.k.size(); ++i)
        s += w[i] * (std::norm(spec.a_plus[i]) + std::norm(spec.a_minus[i]))
             / dispersion(mu, spec.k[i], beta + lambda.value());
    return (beta + lambda.value()) * s.value();
}

/// <E> R = int dk E_{k,lambda} (|a+|^2 + |a-|^2).
inline double packet_energy(double mu, HalfInteger lambda, PacketSpec const& spec, double beta)
{
    auto w = detail::require_normalized(spec);
    CompensatedSum<> s;
    for (std::size_t i = 0; i < spec.k.size(); ++i)
        s += w[i] * (std::norm(spec.a_plus[i]) + std::norm(spec.a_minus[i]))
             * dispersion(mu, spec.k[i], beta + lambda.value());
    return s.value();
}

/// P = lambda int dk (|a+|^2 - |a-|^2).
inline double polarization_degree(HalfInteger lambda, PacketSpec const& spec)
{
    auto w = detail::require_normalized(spec);
    CompensatedSum<> s;
    for (std::size_t i = 0; i < spec.k.size(); ++i)
        s += w[i] * (std::norm(spec.a_plus[i]) - std::norm(spec.a_minus[i]));
    return lambda.value() * s.value();
}

inline PacketObservables observables(double mu, HalfInteger lambda, PacketSpec const& spec, double beta)
{
    return {packet_energy(mu, lambda, spec, beta), circular_current_packet(mu, lambda, spec, beta),
            polarization_degree(lambda, spec)};
}

namespace detail
{
/// Largest phase advance of e^{it E_k - i z k} between adjacent k nodes.
inline double phase_advance_per_cell(double mu, double nu, PacketSpec const& spec, double t, double z)
{
    double dk = (spec.k.back() - spec.k.front()) / static_cast<double>(spec.k.size() - 1);
    // group velocity k/E is monotone in k, so the extremes sit at the grid ends
    double v0 = spec.k.front() / dispersion(mu, spec.k.front(), nu);
    double v1 = spec.k.back() / dispersion(mu, spec.k.back(), nu);
    return std::max(std::abs(t * v0 - z), std::abs(t * v1 - z)) * dk;
}

enum class PacketKernel
{
    density,
    longitudinal
};

/*!
 * (1/4pi) sum_{k,k'} w w' e^{it(E-E') - iz(k-k')} / sqrt(E E' (E+M)(E'+M))
 *   * { D(k,k') (a+* a+' + a-* a-') + X(k,k') (a+* a-' + a-* a+') }
 *
 * longitudinal: D = k'(E+M) + k(E'+M),          X = -i nu (E - E')
 * density:      D = (E+M)(E'+M) + k k' + nu^2,  X = -i nu (k - k')
 */
inline Complex packet_double_integral(PacketKernel kernel, double mu, HalfInteger lambda,
                                      PacketSpec const& spec, double beta, double t, double z)
{
    using namespace std::complex_literals;
    auto w = require_normalized(spec);
    double nu = beta + lambda.value();
    if (!std::isfinite(t) || !std::isfinite(z))
        throw DomainError("packet current needs finite (t, z)");
    if (phase_advance_per_cell(mu, nu, spec, t, z) > M_PI / 2)
        throw AccuracyError("k grid too coarse for t = " + std::to_string(t) + ", z = "
                            + std::to_string(z) + " (phase advance per cell > pi/2)");

    auto n = spec.k.size();
    std::vector<double> e(n);
    std::vector<Complex> p(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        e[i] = dispersion(mu, spec.k[i], nu);
        // conj(p_k) p_k' carries the phase, the weights and 1/sqrt(E E' (E+M)(E'+M))
        p[i] = w[i] * std::polar(1.0, -t * e[i] + z * spec.k[i]) / std::sqrt(e[i] * (e[i] + mu));
    }

    Complex total = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        double k = spec.k[i];
        double ek = e[i];
        Complex left = std::conj(p[i]);
        Complex ap = std::conj(spec.a_plus[i]);
        Complex am = std::conj(spec.a_minus[i]);
        Complex row = 0;
        for (std::size_t j = 0; j < n; ++j)
        {
            double kp = spec.k[j];
            double ep = e[j];
            Complex same = ap * spec.a_plus[j] + am * spec.a_minus[j];
            Complex cross = ap * spec.a_minus[j] + am * spec.a_plus[j];
            double d;
            Complex x;
            if (kernel == PacketKernel::longitudinal)
            {
                d = kp * (ek + mu) + k * (ep + mu);
                x = -1i * nu * (ek - ep);
            }
            else
            {
                d = (ek + mu) * (ep + mu) + k * kp + nu * nu;
                x = -1i * nu * (k - kp);
            }
            row += p[j] * (d * same + x * cross);
        }
        total += left * row;
    }
    return total / (4 * M_PI);
}
} // namespace detail

/*!
 * Longitudinal current I^3 = R int dphi psibar gamma^3 psi at (t, z).
 *
 * Evaluated by the direct O(N^2) double sum over the k grid. Throws
 * AccuracyError when the phase advances by more than pi/2 per grid cell.
 */
inline Complex longitudinal_current_complex(double mu, HalfInteger lambda, PacketSpec const& spec,
                                            double beta, double t, double z)
{
    return detail::packet_double_integral(detail::PacketKernel::longitudinal, mu, lambda, spec,
                                          beta, t, z);
}

inline double longitudinal_current(double mu, HalfInteger lambda, PacketSpec const& spec,
                                   double beta, double t, double z)
{
    return longitudinal_current_complex(mu, lambda, spec, beta, t, z).real();
}

/// Probability density R int dphi psi^dagger psi at (t, z).
inline double packet_density(double mu, HalfInteger lambda, PacketSpec const& spec, double beta,
                             double t, double z)
{
    return detail::packet_double_integral(detail::PacketKernel::density, mu, lambda, spec, beta, t, z)
        .real();
}

/*!
 * Read a packet from CSV with columns k, re_a_plus, im_a_plus, re_a_minus,
 * im_a_minus. Blank lines, '#' comments and a non-numeric header are skipped.
 */
inline PacketSpec parse_packet_csv(std::string const& text)
{
    PacketSpec spec;
    std::istringstream lines{text};
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line))
    {
        ++lineno;
        if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::vector<double> cols;
        std::istringstream row{line};
        std::string cell;
        bool numeric = true;
        while (std::getline(row, cell, ','))
        {
            try
            {
                std::size_t used = 0;
                cols.push_back(std::stod(cell, &used));
            }
            catch (std::logic_error const&)
            {
                numeric = false;
                break;
            }
        }
        if (!numeric)
        {
            if (spec.k.empty())
                continue;  // header
            throw UsageError("packet CSV line " + std::to_string(lineno) + ": not numeric");
        }
        if (cols.size() != 5)
            throw UsageError("packet CSV line " + std::to_string(lineno) + ": expected 5 columns");
        spec.k.push_back(cols[0]);
        spec.a_plus.emplace_back(cols[1], cols[2]);
        spec.a_minus.emplace_back(cols[3], cols[4]);
    }
    spec.validate();
    return spec;
}

inline PacketSpec load_packet_csv(std::string const& path)
{
    std::ifstream file{path};
    if (!file)
        throw UsageError("cannot open packet file " + path);
    std::stringstream buf;
    buf << file.rdbuf();
    return parse_packet_csv(buf.str());
}

} // namespace abdirac
