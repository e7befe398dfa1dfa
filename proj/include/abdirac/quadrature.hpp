#pragma once

#include <cmath>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "abdirac/errors.hpp"

namespace abdirac
{
//---------------------------------------------------------------------------//
/*!
 * Neumaier-compensated running sum.
 *
 * Long persistent-current sums (lambda_F up to ~1e5) accumulate terms
 * spanning several decades; plain summation would eat into the 1e-5 budget.
 */
template<class T = double>
class CompensatedSum
{
  public:
    CompensatedSum& operator+=(T x)
    {
        T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }

    T value() const { return sum_ + comp_; }

  private:
    T sum_{0};
    T comp_{0};
};

/// Nodes/weights of a 1-D quadrature rule.
struct QuadratureRule
{
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

/// Default angular resolution of scalar products.
inline constexpr int default_phi_nodes = 256;

/// Uniform trapezoid on [0, 2pi): exact for trigonometric polynomials of degree < nodes.
inline QuadratureRule periodic_trapezoid(int nodes = default_phi_nodes)
{
    if (nodes < 1)
        throw UsageError("periodic trapezoid needs at least one node");
    QuadratureRule rule;
    double h = 2 * M_PI / nodes;
    for (int i = 0; i < nodes; ++i)
    {
        rule.nodes.push_back(i * h);
        rule.weights.push_back(h);
    }
    return rule;
}

/// Points per Gauss-Legendre panel.
inline constexpr int gauss_panel_points = 30;

/// Composite Gauss-Legendre on [a, b] with \c panels equal sub-intervals.
inline QuadratureRule composite_gauss_legendre(double a, double b, int panels)
{
    using Gauss = boost::math::quadrature::gauss<double, gauss_panel_points>;
    if (panels < 1)
        throw UsageError("composite Gauss-Legendre needs at least one panel");
    if (!(b > a))
        throw UsageError("composite Gauss-Legendre needs b > a");

    auto const& abscissa = Gauss::abscissa();
    auto const& weight = Gauss::weights();
    QuadratureRule rule;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
    {
        double mid = a + (p + 0.5) * h;
        double half = 0.5 * h;
        // Boost stores the non-negative half of a symmetric rule
        for (std::size_t i = 0; i < abscissa.size(); ++i)
        {
            if (abscissa[i] == 0)
            {
                rule.nodes.push_back(mid);
                rule.weights.push_back(half * weight[i]);
                continue;
            }
            rule.nodes.push_back(mid - half * abscissa[i]);
            rule.weights.push_back(half * weight[i]);
            rule.nodes.push_back(mid + half * abscissa[i]);
            rule.weights.push_back(half * weight[i]);
        }
    }
    return rule;
}

/*!
 * Composite Simpson weights for a uniform grid.
 *
 * The grid must be strictly increasing, uniform to 1e-9 relative, and have
 * an odd number (>= 3) of nodes.
 */
inline std::vector<double> simpson_weights(std::span<double const> grid)
{
    auto n = grid.size();
    if (n < 3 || n % 2 == 0)
        throw UsageError("Simpson rule needs an odd number (>= 3) of nodes, got "
                         + std::to_string(n));
    double h = (grid.back() - grid.front()) / static_cast<double>(n - 1);
    if (!(h > 0))
        throw UsageError("grid must be strictly increasing");
    for (std::size_t i = 1; i < n; ++i)
    {
        double step = grid[i] - grid[i - 1];
        if (std::abs(step - h) > 1e-9 * std::abs(h))
            throw UsageError("Simpson rule needs a uniform grid (node "
                             + std::to_string(i) + ")");
    }
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = (i == 0 || i == n - 1) ? h / 3 : (i % 2 ? 4 * h / 3 : 2 * h / 3);
    return w;
}

/// Uniform grid of \c count points from \c start to \c stop inclusive.
inline std::vector<double> linspace(double start, double stop, std::size_t count)
{
    if (count < 2)
        throw UsageError("linspace needs at least two points");
    std::vector<double> out(count);
    double h = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = start + h * static_cast<double>(i);
    out.back() = stop;
    return out;
}

} // namespace abdirac
