#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "abdirac/cylinder.hpp"
#include "abdirac/errors.hpp"
#include "abdirac/half_integer.hpp"
#include "abdirac/ring.hpp"
#include "abdirac/table.hpp"
#include "abdirac/verify.hpp"
#include "abdirac/wavepacket.hpp"

//---------------------------------------------------------------------------//
// Command layer behind the CLI: each command validates its options, calls
// the library and returns a ResultTable. Usage errors name the flag.
//---------------------------------------------------------------------------//
namespace abdirac
{
enum class GeometryKind
{
    ring,
    cylinder
};

inline GeometryKind parse_geometry(std::string const& s)
{
    if (s == "ring")
        return GeometryKind::ring;
    if (s == "cylinder")
        return GeometryKind::cylinder;
    throw UsageError("--geometry must be 'ring' or 'cylinder' (got '" + s + "')");
}

/// "start:stop:count" (inclusive, linear) or a comma-separated list.
inline std::vector<double> parse_grid(std::string const& text, std::string const& flag)
{
    std::vector<std::string> parts;
    char sep = text.find(':') != std::string::npos ? ':' : ',';
    std::istringstream in{text};
    std::string part;
    while (std::getline(in, part, sep))
        parts.push_back(part);
    try
    {
        if (sep == ':')
        {
            if (parts.size() != 3)
                throw UsageError(flag + " range must be start:stop:count");
            double a = parse_number(parts[0]), b = parse_number(parts[1]);
            auto n = std::stoll(parts[2]);
            if (n < 1 || (n == 1 && a != b))
                throw UsageError(flag + " count must be >= 1 (and 1 only when start == stop)");
            if (n == 1)
                return {a};
            return linspace(a, b, static_cast<std::size_t>(n));
        }
        std::vector<double> out;
        for (auto const& p : parts)
            out.push_back(parse_number(p));
        if (out.empty())
            throw UsageError(flag + " grid is empty");
        return out;
    }
    catch (std::logic_error const& e)
    {
        if (dynamic_cast<UsageError const*>(&e))
            throw;
        throw UsageError(flag + ": cannot parse '" + text + "'");
    }
}

//---------------------------------------------------------------------------//
// spectrum
//---------------------------------------------------------------------------//
struct SpectrumOptions
{
    GeometryKind geometry{GeometryKind::ring};
    double mu{1};
    double beta{0};
    std::optional<double> aspect;
    double lambda_max{4.5};
    int n_max{1};
};

inline ResultTable cmd_spectrum(SpectrumOptions const& o)
{
    if (!(o.lambda_max >= 0) || !std::isfinite(o.lambda_max))
        throw UsageError("--lambda-max must be finite and >= 0");
    ResultTable t;
    t.set_provenance("geometry", o.geometry == GeometryKind::ring ? "ring" : "cylinder");
    t.add_scalar("mu", o.mu);
    t.add_scalar("beta", o.beta);
    t.add_scalar("lambda_max", o.lambda_max);
    if (o.geometry == GeometryKind::ring)
    {
        t.title = "ring spectrum";
        t.columns = {{"lambda", "1"}, {"energy", "E*R"}, {"current", "I*2piR"}};
        for (auto const& r : ring_spectrum(o.mu, o.beta, o.lambda_max))
            t.add_row({r.lambda.value(), r.energy_scaled, r.current_scaled});
        return t;
    }
    if (!o.aspect)
        throw UsageError("--aspect is required for the cylinder spectrum");
    if (o.n_max < 1)
        throw UsageError("--n-max must be >= 1");
    t.title = "finite cylinder spectrum";
    t.add_scalar("aspect", *o.aspect);
    t.add_scalar("n_max", o.n_max);
    t.columns = {{"n", "1"}, {"lambda", "1"}, {"energy", "E*R"}, {"current", "I*2piR"}};
    for (auto const& r : cylinder_spectrum(o.mu, *o.aspect, o.beta, o.n_max, o.lambda_max))
        t.add_row({static_cast<double>(r.n), r.lambda.value(), r.energy_scaled, r.current_scaled});
    return t;
}

//---------------------------------------------------------------------------//
// persistent
//---------------------------------------------------------------------------//
struct PersistentOptions
{
    GeometryKind geometry{GeometryKind::ring};
    double mu{1};
    double beta{0};
    std::optional<std::int64_t> n_electrons;  //!< ring filling
    std::optional<double> aspect;             //!< cylinder
    std::optional<double> alpha;              //!< cylinder Fermi radius
    bool compare_approx{false};
};

namespace detail
{
inline std::vector<Column> ring_persistent_columns(bool compare)
{
    std::vector<Column> c{{"mu", "1"},       {"beta", "1"},         {"n_electrons", "1"},
                          {"lambda_F", "1"}, {"c_exact", "I/Imax"}, {"sum_chi", "I*2piR"}};
    if (compare)
        c.insert(c.end(), {{"c_approx", "I/Imax"}, {"abs_gap", "I/Imax"}, {"rel_gap", "1"},
                           {"c_nonrel", "I/Imax"}});
    return c;
}

inline std::vector<double> ring_persistent_row(double mu, double beta, FermiFillingRing f, bool compare)
{
    auto exact = persistent_ring_exact(mu, f, beta);
    std::vector<double> row{mu, beta, static_cast<double>(f.n_electrons()), f.lambda_f().value(),
                            exact.c_linearized, exact.full_sum};
    if (compare)
    {
        double approx = persistent_ring_approx(mu, f);
        double gap = approx - exact.c_linearized;
        double nonrel = mu > 0 ? persistent_ring_nonrel(mu, f) : std::numeric_limits<double>::quiet_NaN();
        row.insert(row.end(), {approx, gap, gap / exact.c_linearized, nonrel});
    }
    return row;
}

inline std::vector<Column> cylinder_persistent_columns(bool compare)
{
    std::vector<Column> c{{"mu", "1"},  {"beta", "1"},        {"aspect", "1"},
                          {"alpha", "1"}, {"n_F", "1"},       {"n_electrons", "1"},
                          {"c_exact", "I/Imax"}, {"sum_chi", "I*2piR"}};
    if (compare)
        c.insert(c.end(), {{"c_approx", "I/Imax"},
                           {"abs_gap", "I/Imax"},
                           {"rel_gap", "1"},
                           {"c_short", "I/Imax"},
                           {"c_nonrel_short", "I/Imax"},
                           {"shell_sum_direct", "1"},
                           {"shell_sum_integral", "1"},
                           {"shell_sum_closed_form", "1"}});
    return c;
}

inline std::vector<double> cylinder_persistent_row(double mu, double beta, OccupationSet const& occ,
                                                   bool compare)
{
    double nan = std::numeric_limits<double>::quiet_NaN();
    auto exact = persistent_finite_exact(mu, occ, beta);
    std::vector<double> row{mu,
                            beta,
                            occ.aspect,
                            occ.alpha,
                            static_cast<double>(occ.n_f),
                            static_cast<double>(occ.n_electrons),
                            exact.c_linearized,
                            exact.full_sum};
    if (!compare)
        return row;
    double approx = nan, gap = nan, rel = nan;
    if (!occ.empty())
    {
        approx = persistent_finite_approx(mu, occ);
        gap = approx - exact.c_linearized;
        rel = gap / exact.c_linearized;
    }
    double short_value = occ.alpha >= occ.aspect
                             ? persistent_short_cylinder(mu, occ.aspect, occ.alpha).value : nan;
    double nonrel = mu > 0 ? nonrel_short_limit(mu, occ.n_electrons) : nan;
    ShellSum shells{nan, nan, nan};
    if (occ.n_f >= 1)
        shells = lambda_shell_sum(occ.aspect, occ.n_f);
    row.insert(row.end(), {approx, gap, rel, short_value, nonrel, shells.direct_sum, shells.integral_value,
                           shells.closed_form});
    return row;
}

inline FermiFillingRing ring_filling(std::optional<std::int64_t> n_electrons)
{
    if (!n_electrons)
        throw UsageError("--ne is required for a ring");
    if (*n_electrons < 2 || *n_electrons % 2 != 0)
        throw UsageError("--ne must be an even number >= 2 (got " + std::to_string(*n_electrons) + ")");
    return FermiFillingRing::from_electrons(*n_electrons);
}

inline void cylinder_notes(ResultTable& t, OccupationSet const& occ)
{
    if (occ.aspect < occ.alpha && occ.alpha < 2 * occ.aspect)
        t.notes.push_back("short-cylinder formula applicable (aspect < alpha < 2 aspect)");
    if (occ.aspect < large_aspect_threshold)
        t.notes.push_back("aspect < 10: the short-cylinder condition 1 << aspect is not met");
    if (occ.odd_count())
        t.notes.push_back("odd electron count N_e = " + std::to_string(occ.n_electrons));
    if (occ.empty())
        t.notes.push_back("no state below the Fermi level");
}
} // namespace detail

inline ResultTable cmd_persistent(PersistentOptions const& o)
{
    ResultTable t;
    t.set_provenance("geometry", o.geometry == GeometryKind::ring ? "ring" : "cylinder");
    t.set_provenance("summation", "ascending lambda, Neumaier-compensated");
    if (std::abs(o.beta) > perturbative_beta)
        t.notes.push_back("|beta| > 1e-8: outside the perturbative regime of the linearized c");

    if (o.geometry == GeometryKind::ring)
    {
        auto f = detail::ring_filling(o.n_electrons);
        t.title = "ring persistent current";
        t.columns = detail::ring_persistent_columns(o.compare_approx);
        t.add_row(detail::ring_persistent_row(o.mu, o.beta, f, o.compare_approx));
        return t;
    }
    if (!o.aspect)
        throw UsageError("--aspect is required for a cylinder");
    if (!o.alpha)
        throw UsageError("--alpha (or fermi_eV in --config) is required for a cylinder");
    if (!(*o.aspect > 0))
        throw UsageError("--aspect must be > 0");
    if (!(*o.alpha >= 0))
        throw UsageError("--alpha must be >= 0");
    auto occ = enumerate_occupied(*o.aspect, *o.alpha);
    t.title = "finite cylinder persistent current";
    t.columns = detail::cylinder_persistent_columns(o.compare_approx);
    t.add_row(detail::cylinder_persistent_row(o.mu, o.beta, occ, o.compare_approx));
    detail::cylinder_notes(t, occ);
    return t;
}

//---------------------------------------------------------------------------//
// sweep
//---------------------------------------------------------------------------//
enum class SweepQuantity
{
    persistent,
    state
};

inline SweepQuantity parse_sweep_quantity(std::string const& s)
{
    if (s == "persistent")
        return SweepQuantity::persistent;
    if (s == "state")
        return SweepQuantity::state;
    throw UsageError("--of must be 'persistent' or 'state' (got '" + s + "')");
}

struct SweepSpec
{
    std::string variable;  //!< mu, beta, lambda, aspect, alpha or n
    double start{0};
    double stop{1};
    int count{2};
    bool log{false};
    SweepQuantity quantity{SweepQuantity::persistent};
    PersistentOptions fixed;
    std::optional<double> lambda_ratio;  //!< ring filling lambda_F = ratio * mu
    double lambda{0.5};                  //!< state sweeps
    int n{1};                            //!< state sweeps on cylinders

    std::vector<double> values() const
    {
        if (count < 2)
            throw UsageError("--count must be >= 2");
        if (!(start < stop))
            throw UsageError("--start must be < --stop");
        if (!log)
            return linspace(start, stop, static_cast<std::size_t>(count));
        if (!(start > 0))
            throw UsageError("--log needs --start > 0");
        std::vector<double> v;
        double ratio = std::log(stop / start);
        for (int i = 0; i < count; ++i)
            v.push_back(start * std::exp(ratio * i / (count - 1)));
        v.back() = stop;
        return v;
    }
};

namespace detail
{
inline void require_variable(SweepSpec const& s, std::initializer_list<char const*> allowed,
                             std::string const& what)
{
    for (auto a : allowed)
        if (s.variable == a)
            return;
    std::string list;
    for (auto a : allowed)
        list += (list.empty() ? "" : ", ") + std::string(a);
    throw UsageError("--variable '" + s.variable + "' is not valid for " + what + " (use one of " + list + ")");
}

inline HalfInteger lambda_from(double x)
{
    return HalfInteger::nearest_half_odd(x);
}
} // namespace detail

inline ResultTable cmd_sweep(SweepSpec const& s)
{
    auto values = s.values();
    auto o = s.fixed;
    bool ring = o.geometry == GeometryKind::ring;
    ResultTable t;
    t.set_provenance("geometry", ring ? "ring" : "cylinder");
    t.set_provenance("sweep", s.variable + (s.log ? " log " : " linear ") + format_number(s.start) + " .. "
                                  + format_number(s.stop) + " x " + std::to_string(s.count));

    if (s.quantity == SweepQuantity::state)
    {
        if (ring)
            detail::require_variable(s, {"mu", "beta", "lambda"}, "a ring state sweep");
        else
        {
            detail::require_variable(s, {"mu", "beta", "lambda", "aspect", "n"}, "a cylinder state sweep");
            if (!o.aspect && s.variable != "aspect")
                throw UsageError("--aspect is required for a cylinder");
        }
        t.title = ring ? "ring state sweep" : "finite cylinder state sweep";
        t.columns = {{s.variable, "1"}, {"lambda", "1"}, {"energy", "E*R"}, {"current", "I*2piR"}, {"j", "1"}};
        if (!ring)
            t.columns.insert(t.columns.begin() + 1, {"n", "1"});
        for (double v : values)
        {
            double mu = o.mu, beta = o.beta, aspect = o.aspect.value_or(0);
            auto lam = detail::lambda_from(s.lambda);
            int n = s.n;
            if (s.variable == "mu")
                mu = v;
            else if (s.variable == "beta")
                beta = v;
            else if (s.variable == "lambda")
                lam = detail::lambda_from(v);
            else if (s.variable == "aspect")
                aspect = v;
            else
                n = static_cast<int>(std::lround(v));
            if (ring)
                t.add_row({v, lam.value(), ring_energy(mu, beta, lam), partial_current_ring(mu, beta, lam),
                           j_ring(mu, std::abs(lam.value()))});
            else
                t.add_row({v, static_cast<double>(n), lam.value(), energy_finite(mu, aspect, n, beta, lam),
                           chi_finite(mu, aspect, n, beta, lam), j_finite(mu, aspect, n, std::abs(lam.value()))});
        }
        return t;
    }

    if (ring)
    {
        detail::require_variable(s, {"mu", "beta", "lambda"}, "a ring persistent sweep");
        if (s.variable != "lambda" && !o.n_electrons && !s.lambda_ratio)
            throw UsageError("a ring sweep needs --ne or --lambda-ratio");
        t.title = "ring persistent current sweep";
        t.columns = detail::ring_persistent_columns(o.compare_approx);
        t.columns.insert(t.columns.begin(), {s.variable, "1"});
        if (s.lambda_ratio)
            t.add_scalar("lambda_ratio", *s.lambda_ratio);
        for (double v : values)
        {
            double mu = s.variable == "mu" ? v : o.mu;
            double beta = s.variable == "beta" ? v : o.beta;
            FermiFillingRing f = s.variable == "lambda" ? FermiFillingRing::from_lambda_f(detail::lambda_from(v))
                                 : s.lambda_ratio   ? FermiFillingRing::nearest(*s.lambda_ratio * mu)
                                                    : detail::ring_filling(o.n_electrons);
            auto row = detail::ring_persistent_row(mu, beta, f, o.compare_approx);
            row.insert(row.begin(), v);
            t.add_row(std::move(row));
        }
        return t;
    }

    detail::require_variable(s, {"mu", "beta", "aspect", "alpha"}, "a cylinder persistent sweep");
    if (!o.aspect && s.variable != "aspect")
        throw UsageError("--aspect is required for a cylinder");
    if (!o.alpha && s.variable != "alpha")
        throw UsageError("--alpha is required for a cylinder");
    t.title = "finite cylinder persistent current sweep";
    t.columns = detail::cylinder_persistent_columns(o.compare_approx);
    t.columns.insert(t.columns.begin(), {s.variable, "1"});
    for (double v : values)
    {
        double mu = s.variable == "mu" ? v : o.mu;
        double beta = s.variable == "beta" ? v : o.beta;
        double aspect = s.variable == "aspect" ? v : *o.aspect;
        double alpha = s.variable == "alpha" ? v : *o.alpha;
        auto row = detail::cylinder_persistent_row(mu, beta, enumerate_occupied(aspect, alpha), o.compare_approx);
        row.insert(row.begin(), v);
        t.add_row(std::move(row));
    }
    return t;
}

//---------------------------------------------------------------------------//
// packet
//---------------------------------------------------------------------------//
struct PacketOptions
{
    double mu{1};
    double beta{0};
    HalfInteger lambda{HalfInteger::half_odd(0)};
    PacketSpec spec;
    std::string source{"gaussian"};
    std::vector<double> t_grid{0.0};
    std::vector<double> z_grid{0.0};
};

inline ResultTable cmd_packet(PacketOptions const& o)
{
    require_angular(o.lambda);
    if (o.t_grid.empty() || o.z_grid.empty())
        throw UsageError("--t and --z grids must not be empty");
    double input_norm = packet_norm(o.spec);
    auto spec = normalize_packet(o.spec);

    ResultTable t;
    t.title = "infinite cylinder packet";
    t.set_provenance("packet", o.source);
    t.set_provenance("quadrature", "composite Simpson on " + std::to_string(spec.k.size())
                                       + " k nodes; direct double sum for I3");
    t.add_scalar("mu", o.mu);
    t.add_scalar("beta", o.beta);
    t.add_scalar("lambda", o.lambda.value());
    t.add_scalar("input_norm", input_norm);
    t.add_scalar("energy", packet_energy(o.mu, o.lambda, spec, o.beta), "E*R");
    t.add_scalar("circular_current", circular_current_packet(o.mu, o.lambda, spec, o.beta), "I*2piR");
    t.add_scalar("polarization", polarization_degree(o.lambda, spec));
    t.columns = {{"t", "t*c/R"}, {"z", "z/R"}, {"I3_re", "I3*R"}, {"I3_im", "I3*R"}, {"density", "rho*R"}};
    for (double time : o.t_grid)
        for (double z : o.z_grid)
        {
            auto i3 = longitudinal_current_complex(o.mu, o.lambda, spec, o.beta, time, z);
            t.add_row({time, z, i3.real(), i3.imag(), packet_density(o.mu, o.lambda, spec, o.beta, time, z)});
        }
    return t;
}

//---------------------------------------------------------------------------//
// verify
//---------------------------------------------------------------------------//
inline VerifyReport cmd_verify(Suite suite, VerifyOptions const& opt = {})
{
    return run_verify(suite, opt);
}

} // namespace abdirac
