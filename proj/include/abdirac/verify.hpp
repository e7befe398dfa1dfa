#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "abdirac/cylinder.hpp"
#include "abdirac/errors.hpp"
#include "abdirac/params.hpp"
#include "abdirac/ring.hpp"
#include "abdirac/spinor.hpp"
#include "abdirac/table.hpp"
#include "abdirac/wavepacket.hpp"

//---------------------------------------------------------------------------//
// Built-in invariant suites. Every check records the observed figure of
// merit and the bound it must respect, so a failure names its evidence.
//---------------------------------------------------------------------------//
namespace abdirac
{
enum class Suite
{
    all,
    spinor,
    currents,
    sums
};

inline Suite parse_suite(std::string const& s)
{
    if (s == "all")
        return Suite::all;
    if (s == "spinor")
        return Suite::spinor;
    if (s == "currents")
        return Suite::currents;
    if (s == "sums")
        return Suite::sums;
    throw UsageError("--suite must be one of all, spinor, currents, sums (got '" + s + "')");
}

inline char const* to_string(Suite s)
{
    switch (s)
    {
        case Suite::all:
            return "all";
        case Suite::spinor:
            return "spinor";
        case Suite::currents:
            return "currents";
        case Suite::sums:
            return "sums";
    }
    return "?";
}

struct InvariantResult
{
    std::string suite;
    std::string module;
    std::string name;
    double observed;
    double bound;
    bool passed;
    std::string detail;
};

struct VerifyOptions
{
    DiracMatrices gammas{DiracMatrices::standard()};
    int phi_nodes{default_phi_nodes};
    std::uint64_t seed{20240917};
};

/// Standard gamma matrices with one entry of gamma^2 shifted by eps.
inline DiracMatrices perturbed_gammas(double eps = 1e-3)
{
    auto g = DiracMatrices::standard();
    g.gamma[2](0, 3) += eps;
    return g;
}

struct VerifyReport
{
    std::vector<InvariantResult> results;

    bool passed() const
    {
        return std::all_of(results.begin(), results.end(), [](auto const& r) { return r.passed; });
    }
    std::size_t failures() const
    {
        return static_cast<std::size_t>(
            std::count_if(results.begin(), results.end(), [](auto const& r) { return !r.passed; }));
    }

    std::string text() const
    {
        std::ostringstream os;
        for (auto const& r : results)
        {
            os << (r.passed ? "PASS " : "FAIL ") << r.suite << '/' << r.module << '/' << r.name
               << "  observed=" << format_number(r.observed) << "  bound=" << format_number(r.bound);
            if (!r.detail.empty())
                os << "  (" << r.detail << ')';
            os << '\n';
        }
        os << results.size() - failures() << '/' << results.size() << " invariants passed\n";
        return os.str();
    }

    nlohmann::json json() const
    {
        nlohmann::json j;
        j["passed"] = passed();
        j["count"] = results.size();
        j["failures"] = failures();
        j["results"] = nlohmann::json::array();
        for (auto const& r : results)
            j["results"].push_back({{"suite", r.suite},
                                    {"module", r.module},
                                    {"invariant", r.name},
                                    {"observed", detail::json_number(r.observed)},
                                    {"bound", detail::json_number(r.bound)},
                                    {"passed", r.passed},
                                    {"detail", r.detail}});
        return j;
    }
};

namespace detail
{
class Checker
{
  public:
    Checker(VerifyReport& report, std::string suite) : report_(report), suite_(std::move(suite)) {}

    /// Passes when observed <= bound; exceptions count as failures.
    void at_most(std::string module, std::string name, double bound,
                 std::function<double()> const& observe, std::string detail = {})
    {
        double observed;
        bool ok;
        try
        {
            observed = observe();
            ok = observed <= bound;
        }
        catch (std::exception const& e)
        {
            observed = std::numeric_limits<double>::quiet_NaN();
            ok = false;
            detail = std::string("threw: ") + e.what();
        }
        report_.results.push_back({suite_, std::move(module), std::move(name), observed, bound, ok,
                                   std::move(detail)});
    }

  private:
    VerifyReport& report_;
    std::string suite_;
};

inline double central_difference(std::function<double(double)> const& f, double x, double h)
{
    return (f(x + h) - f(x - h)) / (2 * h);
}

inline double identity_distance(Eigen::MatrixXcd const& g)
{
    return (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

inline HalfInteger random_lambda(std::mt19937_64& rng, int max_m)
{
    std::uniform_int_distribution<int> m(-max_m - 1, max_m);
    return HalfInteger::half_odd(m(rng));
}

inline Polarization random_polarization(std::mt19937_64& rng)
{
    return std::bernoulli_distribution(0.5)(rng) ? Polarization::up : Polarization::down;
}

/// Exponent p in |r(beta)| ~ beta^p from beta = 1e-4 and 1e-5.
inline double cubic_exponent(std::function<double(double)> const& pair, std::function<double()> const& j)
{
    double r1 = std::abs(pair(1e-4) - 2e-4 * j());
    double r2 = std::abs(pair(1e-5) - 2e-5 * j());
    return std::log10(r1 / r2);
}

/// Typical magnitude of the terms in (E_D - M) psi, for relative residuals.
inline double energy_scale(AnyMode const& m)
{
    auto f = mode_form(m);
    return std::max(1.0, f.energy + f.mass + std::abs(f.nu) + std::abs(f.k));
}

//---------------------------------------------------------------------------//
inline void spinor_suite(VerifyReport& report, VerifyOptions const& opt)
{
    Checker check(report, "spinor");
    auto const& g = opt.gammas;
    ScalarProductSettings sp{opt.phi_nodes};
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> mu_d(0.0, 20.0), beta_d(-0.25, 0.25), k_d(-5.0, 5.0),
        aspect_d(0.2, 3.0), t_d(-3.0, 3.0), phi_d(0.0, 2 * M_PI);

    std::vector<AnyMode> sweep;
    for (int i = 0; i < 100; ++i)
    {
        double mu = mu_d(rng), beta = beta_d(rng);
        auto lam = random_lambda(rng, 9);
        auto pol = random_polarization(rng);
        switch (i % 3)
        {
            case 0:
                sweep.emplace_back(RingState{mu, beta, lam, pol});
                break;
            case 1:
                sweep.emplace_back(FiniteMode{mu, beta, aspect_d(rng), 1 + i % 5, lam, pol});
                break;
            default:
                sweep.emplace_back(InfiniteMode{mu, beta, k_d(rng), lam, pol});
        }
    }

    check.at_most("spinor", "algebraic-system-residual", 1e-12, [&] {
        double worst = 0;
        for (auto const& m : sweep)
            worst = std::max(worst, dirac_system_residual(m));
        return worst;
    }, "100 random ring, finite and infinite modes");

    check.at_most("spinor", "wrong-energy-detected", -0.01, [&] {
        FiniteMode m{2.0, 0.0, 1.0, 1, HalfInteger::half_odd(0), Polarization::up};
        return -dirac_system_residual(m, m.energy() + 0.1);
    }, "negated residual at E + 0.1");

    check.at_most("spinor", "dirac-operator-residual", 1e-11, [&] {
        double worst = 0;
        for (auto const& m : sweep)
        {
            double beta = std::visit([](auto const& x) { return x.beta; }, m);
            double z = std::holds_alternative<FiniteMode>(m)
                           ? 0.37 * std::get<FiniteMode>(m).length() : 0.8;
            double scale = energy_scale(m);
            worst = std::max(worst, dirac_operator_residual(m, beta, t_d(rng), phi_d(rng), z, g) / scale);
        }
        return worst;
    }, "pointwise (E_D - M) psi with the configured gamma matrices");

    check.at_most("spinor", "ring-orthonormality", 1e-10, [&] {
        std::vector<SpinorField> fields;
        for (auto pol : {Polarization::up, Polarization::down})
            for (int m = -4; m < 4; ++m)
                fields.push_back(field(RingState{1.3, 0.05, HalfInteger::half_odd(m), pol}));
        return identity_distance(gram_matrix(fields, sp));
    }, "kappa = +-1, |lambda| <= 7/2");

    check.at_most("spinor", "finite-cylinder-orthonormality", 1e-10, [&] {
        std::vector<SpinorField> fields;
        for (auto pol : {Polarization::up, Polarization::down})
            for (int n = 1; n <= 3; ++n)
                for (int m = -3; m < 3; ++m)
                    fields.push_back(field(FiniteMode{1.3, 0.05, 0.8, n, HalfInteger::half_odd(m), pol}));
        return identity_distance(gram_matrix(fields, sp));
    }, "sigma = +-1/2, n <= 3, |lambda| <= 5/2");

    check.at_most("spinor", "finite-cylinder-boundary-nodes", 1e-15, [&] {
        double worst = 0;
        for (auto pol : {Polarization::up, Polarization::down})
            for (double zs : {0.0, 1.0})
            {
                FiniteMode m{1.0, 0.1, 0.9, 2, HalfInteger::half_odd(1), pol};
                auto s = eval_finite_spinor(m, 0.3, 1.1, zs);
                worst = std::max({worst, std::abs(s.components[0]), std::abs(s.components[1])});
            }
        return worst;
    }, "f1, f2 at z = 0 and z = L");

    check.at_most("spinor", "K-eigenvalue-ring", 1e-12, [&] {
        double worst = 0;
        KOptions ko{false, 1e-5, sp};
        for (auto pol : {Polarization::up, Polarization::down})
            for (int m = -3; m < 3; ++m)
            {
                RingState s{0.7, 0.01, HalfInteger::half_odd(m), pol};
                worst = std::max(worst, std::abs(apply_K(field(s), ko, g) - sign(pol)));
            }
        return worst;
    }, "K U^kappa = kappa U^kappa");

    check.at_most("spinor", "K-eigenvalue-cylinder-k0", 1e-12, [&] {
        double worst = 0;
        KOptions ko{false, 1e-5, sp};
        for (auto pol : {Polarization::up, Polarization::down})
            for (int m = -3; m < 3; ++m)
            {
                InfiniteMode s{0.7, 0.01, 0.0, HalfInteger::half_odd(m), pol};
                double expected = sign(pol) * s.lambda.value();
                worst = std::max(worst, std::abs(apply_K(box_field(s, 1.0), ko, g) - expected));
            }
        return worst;
    }, "K U^sigma = sigma-sign * lambda at k = 0");

    check.at_most("spinor", "K-finite-difference-L3", 1e-6, [&] {
        double worst = 0;
        KOptions exact{false, 1e-5, sp};
        KOptions fd{true, 1e-5, sp};
        for (auto pol : {Polarization::up, Polarization::down})
        {
            InfiniteMode s{1.1, 0.02, 0.6, HalfInteger::half_odd(1), pol};
            auto psi = box_field(s, 1.0);
            worst = std::max(worst, std::abs(apply_K(psi, exact, g) - apply_K(psi, fd, g)));
        }
        return worst;
    }, "analytic vs central-difference L_3, step 1e-5");

    check.at_most("spinor", "unpolarized-mix-K", 1e-12, [&] {
        auto w = PolarizationMix::make(M_SQRT1_2, Complex(0, M_SQRT1_2));
        auto lam = HalfInteger::half_odd(1);
        auto psi = mix(w, field(RingState{1.0, 0.0, lam, Polarization::up}),
                       field(RingState{1.0, 0.0, lam, Polarization::down}));
        return std::abs(apply_K(psi, KOptions{false, 1e-5, sp}, g));
    }, "|c+| = |c-| on a ring");

    check.at_most("spinor", "ring-cross-current", 1e-14, [&] {
        double worst = 0;
        auto lam = HalfInteger::half_odd(2);
        for (int i = 0; i < 32; ++i)
        {
            double phi = phi_d(rng);
            auto a = eval_ring_spinor({1.5, 0.1, lam, Polarization::up}, 0.2, phi);
            auto b = eval_ring_spinor({1.5, 0.1, lam, Polarization::down}, 0.2, phi);
            worst = std::max(worst, std::abs(current_bilinear(a, b, Direction::phi, g)));
        }
        return worst;
    }, "Ubar^+ gamma^phi U^- at 32 random angles");

    check.at_most("spinor", "finite-longitudinal-current", 1e-15, [&] {
        double worst = 0;
        for (auto pa : {Polarization::up, Polarization::down})
            for (auto pb : {Polarization::up, Polarization::down})
                for (double zs : {0.1, 0.33, 0.5, 0.9})
                {
                    FiniteMode a{2.0, 0.1, 0.6, 3, HalfInteger::half_odd(1), pa};
                    FiniteMode b = a;
                    b.sigma = pb;
                    auto sa = eval_finite_spinor(a, 0.4, 0.7, zs);
                    auto sb = eval_finite_spinor(b, 0.4, 0.7, zs);
                    worst = std::max(worst, std::abs(current_bilinear(sa, sb, Direction::z, g)));
                }
        return worst;
    }, "Ubar gamma^3 U for all polarization pairs");

    check.at_most("spinor", "finite-circular-density-midpoint", 1e-12, [&] {
        double worst = 0;
        for (auto pol : {Polarization::up, Polarization::down})
            for (int n : {1, 3, 5})
            {
                FiniteMode m{3.0, 0.02, 0.5, n, HalfInteger::half_odd(1), pol};
                auto s = eval_finite_spinor(m, 0.0, 0.4, 0.5);
                double got = current_bilinear(s, s, Direction::phi, g).real();
                double expected = m.nu() / (M_PI * m.length() * m.energy());
                worst = std::max(worst, std::abs(got / expected - 1));
            }
        return worst;
    }, "nu / (pi L E) at z = L/2, odd n");

    check.at_most("spinor", "polarization-independent-current", 1e-13, [&] {
        double worst = 0;
        for (int m = -3; m < 3; ++m)
        {
            auto lam = HalfInteger::half_odd(m);
            auto up = eval_ring_spinor({0.9, 0.03, lam, Polarization::up}, 0, 0.3);
            auto dn = eval_ring_spinor({0.9, 0.03, lam, Polarization::down}, 0, 0.3);
            double iu = 2 * M_PI * current_bilinear(up, up, Direction::phi, g).real();
            double id = 2 * M_PI * current_bilinear(dn, dn, Direction::phi, g).real();
            double chi_value = partial_current_ring(0.9, 0.03, lam);
            worst = std::max({worst, std::abs(iu - chi_value), std::abs(id - chi_value)});
        }
        return worst;
    }, "2 pi R Ubar^kappa gamma^phi U^kappa = chi for both kappa");

    check.at_most("spinor", "gauge-shift-covariance", 1e-14, [&] {
        double worst = 0;
        for (int m = -3; m < 3; ++m)
        {
            auto lam = HalfInteger::half_odd(m);
            double e1 = ring_energy(1.2, 0.1, lam), e2 = ring_energy(1.2, 1.1, lam.shifted(-1));
            double c1 = partial_current_ring(1.2, 0.1, lam), c2 = partial_current_ring(1.2, 1.1, lam.shifted(-1));
            worst = std::max({worst, std::abs(e1 - e2), std::abs(c1 - c2)});
        }
        return worst;
    }, "(beta, lambda) -> (beta + 1, lambda - 1)");

    check.at_most("spinor", "massless-symmetry", 1e-15, [&] {
        double worst = 0;
        for (int m = -3; m < 3; ++m)
        {
            auto s = eval_ring_spinor({0.0, 0.0, HalfInteger::half_odd(m), Polarization::up}, 0.1, 0.5);
            worst = std::max(worst, std::abs(std::abs(s.components[0]) - std::abs(s.components[3])));
        }
        return worst;
    }, "|U_1| = |U_4| at mu = 0");
}

//---------------------------------------------------------------------------//
inline void currents_suite(VerifyReport& report, VerifyOptions const& opt)
{
    Checker check(report, "currents");
    std::mt19937_64 rng(opt.seed + 1);
    std::uniform_real_distribution<double> mu_d(0.5, 20.0), beta_d(-0.25, 0.25), aspect_d(0.1, 3.0);

    check.at_most("ring", "saturation-constant", 5e-6, [&] {
        double worst = 0;
        for (double mu : {0.5, 1.0, 10.0, 3495.0})
            for (double s : {-1.0, 1.0})
                worst = std::max(worst, std::abs(std::abs(chi(mu, 5 * s * mu)) - 0.98058));
        return worst;
    }, "|chi(mu, +-5 mu)| - 0.98058");

    check.at_most("ring", "linear-regime-bound", 0.05, [&] {
        double worst = 0;
        for (double mu : {1.0, 10.0, 100.0})
            for (int i = 0; i <= 10000; ++i)
            {
                double nu = mu * 0.49 * (-1 + i / 5000.0);
                worst = std::max(worst, std::abs(chi(mu, nu) - nu / mu));
            }
        return worst;
    }, "|chi - nu/mu| for |nu| <= 0.49 mu; the supremum on |nu| < mu/2 is 1/2 - 1/sqrt(5)");

    check.at_most("ring", "linear-regime-supremum", 1e-15, [&] {
        double mu = 7.0;
        return std::abs(std::abs(chi(mu, 0.5 * mu) - 0.5) - (0.5 - 1 / std::sqrt(5.0)));
    }, "|chi - nu/mu| at nu = mu/2 equals 1/2 - 1/sqrt(5)");

    check.at_most("ring", "saturation-tail-bound", 2 * std::numeric_limits<double>::epsilon(), [&] {
        double worst = -1;
        for (double mu : {0.5, 3.0, 40.0})
            for (double ratio : {10.0, 1e3, 1e6})
            {
                double nu = ratio * mu;
                worst = std::max(worst, (1 - chi(mu, nu)) - mu * mu / (2 * nu * nu));
            }
        return worst;
    }, "1 - chi - mu^2 / (2 nu^2), rounding slack 2 eps");

    check.at_most("ring", "derivative-identity", 1e-8, [&] {
        double worst = 0;
        for (int i = 0; i < 100; ++i)
        {
            double mu = mu_d(rng), beta = beta_d(rng);
            auto lam = random_lambda(rng, 9);
            double fd = central_difference([&](double b) { return ring_energy(mu, b, lam); }, beta, 1e-4);
            double exact = partial_current_ring(mu, beta, lam);
            worst = std::max(worst, std::abs(fd / exact - 1));
        }
        return worst;
    }, "chi vs central difference dE/dbeta, 100 samples");

    check.at_most("cylinder", "derivative-identity", 1e-8, [&] {
        double worst = 0;
        for (int i = 0; i < 100; ++i)
        {
            double mu = mu_d(rng), beta = beta_d(rng), aspect = aspect_d(rng);
            int n = 1 + i % 4;
            auto lam = random_lambda(rng, 9);
            double fd = central_difference([&](double b) { return energy_finite(mu, aspect, n, b, lam); },
                                           beta, 1e-4);
            worst = std::max(worst, std::abs(fd / chi_finite(mu, aspect, n, beta, lam) - 1));
        }
        return worst;
    }, "chi_finite vs central difference, 100 samples");

    check.at_most("ring", "cubic-pairing", 0.1, [&] {
        double worst = 0;
        for (double mu : {0.7, 3.0})
            for (double l : {0.5, 2.5})
            {
                double p = cubic_exponent([&](double b) { return pair_chi_sum(mu * mu, l, b); },
                                          [&] { return j_ring(mu, l); });
                worst = std::max(worst, std::abs(p - 3));
            }
        return worst;
    }, "|fitted exponent - 3|");

    check.at_most("cylinder", "cubic-pairing", 0.1, [&] {
        double mu = 2.0, aspect = 0.8;
        int n = 2;
        double l = 1.5;
        double m2 = mu * mu + aspect * aspect * n * n;
        double p = cubic_exponent([&](double b) { return pair_chi_sum(m2, l, b); },
                                  [&] { return j_finite(mu, aspect, n, l); });
        return std::abs(p - 3);
    }, "|fitted exponent - 3|");

    check.at_most("cylinder", "monotone-in-lambda-and-n-decay", 0.0, [&] {
        double violations = 0;
        for (int n : {1, 3, 7})
            for (int m = -20; m < 20; ++m)
                if (!(chi_finite(5, 0.5, n, 0.01, HalfInteger::half_odd(m + 1))
                      > chi_finite(5, 0.5, n, 0.01, HalfInteger::half_odd(m))))
                    violations += 1;
        auto lam = HalfInteger::half_odd(2);
        if (!(std::abs(chi_finite(5, 1.0, 1000000, 0.0, lam)) < 1e-5 * std::abs(chi_finite(5, 1.0, 1, 0.0, lam))))
            violations += 1;
        return violations;
    }, "count of violations");

    auto packet = gaussian_packet(0.0, 1.0, 1025);
    check.at_most("wavepacket", "gaussian-norm", 1e-10, [&] { return std::abs(packet_norm(packet) - 1); });

    check.at_most("wavepacket", "circular-saturation", 1e-6, [&] {
        return 1 - circular_current_packet(1.0, HalfInteger::half_odd(10000), packet, 0.0);
    }, "1 - 2 pi R I^c at lambda = 10^4");

    check.at_most("wavepacket", "circular-current-derivative", 1e-6, [&] {
        auto moving = gaussian_packet(2.0, 0.3, 513);
        auto lam = HalfInteger::half_odd(1);
        double fd = central_difference([&](double b) { return packet_energy(1.0, lam, moving, b); }, 0.05, 1e-4);
        return std::abs(fd - circular_current_packet(1.0, lam, moving, 0.05));
    }, "d<E>/dbeta vs 2 pi R I^c");

    check.at_most("wavepacket", "longitudinal-imaginary-part", 1e-10, [&] {
        auto moving = gaussian_packet(2.0, 0.2, 513, PolarizationMix::make(0.8, Complex(0, 0.6)));
        double worst = 0;
        for (double t : {0.0, 3.0})
            for (double z : {-1.0, 0.5})
                worst = std::max(worst, std::abs(longitudinal_current_complex(1.0, HalfInteger::half_odd(0),
                                                                              moving, 0.1, t, z).imag()));
        return worst;
    });

    check.at_most("wavepacket", "symmetric-packet-at-rest", 1e-10, [&] {
        double worst = 0;
        for (double z : {0.0, 0.7, -2.0})
            worst = std::max(worst, std::abs(longitudinal_current(1.0, HalfInteger::half_odd(0), packet, 0.0, 0.0, z)));
        return worst;
    }, "a(k) = a(-k), t = 0");
}

//---------------------------------------------------------------------------//
inline void sums_suite(VerifyReport& report, VerifyOptions const& opt)
{
    Checker check(report, "sums");
    std::mt19937_64 rng(opt.seed + 2);

    check.at_most("ring", "j-maximum", 1e-4, [&] {
        double best = 0, arg = 0;
        for (int i = 0; i <= 5000; ++i)
        {
            double mu = 0.5 + 0.5 * i / 5000.0;
            double j = j_ring(mu, 0.5);
            if (j > best)
                best = j, arg = mu;
        }
        if (std::abs(arg - M_SQRT1_2) > 0.01)
            return std::numeric_limits<double>::infinity();
        return std::abs(best - 0.7698);
    }, "|max_mu j(mu, 1/2) - 0.7698|, argmax within 0.01 of 1/sqrt(2)");

    check.at_most("ring", "approximation-accuracy", 1e-5, [&] {
        double worst = 0;
        for (double mu : {200.0, 1000.0, 3495.0})
        {
            auto f = FermiFillingRing::nearest(0.5 * mu);
            worst = std::max(worst, std::abs(persistent_ring_exact(mu, f, 0).c_linearized
                                             - persistent_ring_approx(mu, f)));
        }
        return worst;
    }, "|c - k/sqrt(1+k^2)|, lambda_F = 0.5 mu");

    check.at_most("ring", "fig1b-narrow-codomain", 5e-5, [&] {
        double lo = 1e300, hi = -1e300;
        for (int mu = 100; mu <= 1000; mu += 10)
        {
            double c = persistent_ring_exact(mu, FermiFillingRing::nearest(5.0 * mu), 0).c_linearized;
            lo = std::min(lo, c), hi = std::max(hi, c);
        }
        return hi - lo;
    }, "max - min of c, lambda_F = 5 mu");

    check.at_most("ring", "fig1a-monotone", 0.0, [&] {
        double prev = 1e300, rises = 0;
        for (int mu = 2; mu <= 200; mu += 2)
        {
            double c = persistent_ring_exact(mu, FermiFillingRing::nearest(0.5 * mu), 0).c_linearized;
            if (c >= prev)
                rises += 1;
            prev = c;
        }
        return rises;
    }, "increases of c along mu, lambda_F = 0.5 mu");

    check.at_most("cylinder", "enumeration-vs-scan", 0.0, [&] {
        std::uniform_real_distribution<double> aspect_d(0.05, 3.0), alpha_d(0.0, 30.0);
        double mismatches = 0;
        for (int i = 0; i < 50; ++i)
        {
            double aspect = aspect_d(rng), alpha = alpha_d(rng);
            auto occ = enumerate_occupied(aspect, alpha);
            std::int64_t count = 0;
            for (int n = 1; aspect * n <= alpha + 1; ++n)
                for (int m = -60; m < 60; ++m)
                {
                    long double l = m + 0.5L, kn = static_cast<long double>(aspect) * n;
                    if (kn * kn + l * l <= static_cast<long double>(alpha) * alpha)
                        ++count;
                }
            if (count != occ.n_electrons)
                mismatches += 1;
        }
        return mismatches;
    }, "random (aspect, alpha) pairs whose N_e differs from a brute-force scan");

    check.at_most("cylinder", "electron-count-identity", 0.0, [&] {
        double bad = 0;
        for (double alpha : {0.4, 3.0, 7.5, 21.0})
            for (double aspect : {0.1, 0.5, 2.0})
            {
                auto occ = enumerate_occupied(aspect, alpha);
                if (occ.n_electrons != occ.n_f + 2 * occ.lambda_sum().value())
                    bad += 1;
            }
        return bad;
    }, "N_e = n_F + 2 sum lambda_n");

    check.at_most("cylinder", "shell-sum-vs-integral", 5e-3, [&] {
        auto s = lambda_shell_sum(0.1, 200);
        return std::abs(s.integral_value / s.direct_sum - 1);
    }, "aspect 0.1, n_F 200; closed form reported separately");

    check.at_most("cylinder", "long-cylinder-approximation", 1e-2, [&] {
        double gap = 0;
        for (double mu : {200.0, 400.0, 800.0})
        {
            auto occ = enumerate_occupied(2.0, 0.1 * mu);
            double exact = persistent_finite_exact(mu, occ, 1e-6).c_linearized;
            double next = std::abs(persistent_finite_approx(mu, occ) / exact - 1);
            if (mu > 200 && !(next < gap))
                return std::numeric_limits<double>::infinity();
            gap = next;
        }
        return gap;
    }, "relative gap at mu 800, aspect 2, alpha = 0.1 mu; shrinks with mu");

    check.at_most("cylinder", "short-cylinder-formula", 5e-2, [&] {
        double exact = persistent_finite_exact(500.0, 40.0, 60.0, 1e-6).c_linearized;
        return std::abs(persistent_short_cylinder(500.0, 40.0, 60.0).value / exact - 1);
    }, "mu 500, aspect 40, alpha 60");

    check.at_most("params", "physical-mu", 1.0, [&] {
        return std::abs(mu_from_physical(Mass::electron_masses(0.0135), 100e-9) - 3495);
    }, "0.0135 m_e, 100 nm");
}

} // namespace detail

inline VerifyReport run_verify(Suite suite, VerifyOptions const& opt = {})
{
    VerifyReport report;
    if (suite == Suite::all || suite == Suite::spinor)
        detail::spinor_suite(report, opt);
    if (suite == Suite::all || suite == Suite::currents)
        detail::currents_suite(report, opt);
    if (suite == Suite::all || suite == Suite::sums)
        detail::sums_suite(report, opt);
    return report;
}

} // namespace abdirac
