// abdirac: spectra, persistent currents, packets and invariant checks for
// Dirac fermions on Aharonov-Bohm rings and cylinders.
//
// Exit codes: 0 ok, 1 failed verification, 2 usage, 3 domain, 4 accuracy.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "abdirac.hpp"

using namespace abdirac;

namespace
{
enum ExitCode
{
    exit_ok = 0,
    exit_failed = 1,
    exit_usage = 2,
    exit_domain = 3,
    exit_accuracy = 4
};

struct Common
{
    std::optional<double> mu;
    std::optional<double> beta;
    std::optional<double> alpha;
    std::string config;
    std::string out;
    bool json{false};
    bool timestamp{false};
};

void add_common(CLI::App* app, Common& c)
{
    app->add_option("--mu", c.mu, "mass-radius product M R");
    app->add_option("--beta", c.beta, "flux parameter e B R^2 / 2");
    app->add_option("--config", c.config, "physical inputs (JSON or key=value: mass_me, radius_m, field_T, fermi_eV)");
    app->add_option("--out", c.out, "output file (default stdout)");
    app->add_flag("--json", c.json, "write JSON instead of CSV");
    app->add_flag("--timestamp", c.timestamp, "record the UTC time in the provenance header");
}

/// mu, beta, alpha from flags, falling back on --config, then defaults.
struct Resolved
{
    double mu{1};
    double beta{0};
    std::optional<double> alpha;
};

Resolved resolve(Common const& c)
{
    Resolved r;
    if (!c.config.empty())
    {
        auto in = load_physical_input(c.config);
        r.mu = in.mu();
        r.beta = in.beta();
        r.alpha = in.alpha();
    }
    if (c.mu)
        r.mu = *c.mu;
    if (c.beta)
        r.beta = *c.beta;
    if (c.alpha)
        r.alpha = c.alpha;
    return r;
}

std::string utc_now()
{
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit(std::string const& text, std::string const& path)
{
    if (path.empty())
    {
        std::cout << text;
        return;
    }
    std::ofstream f{path};
    if (!f)
        throw UsageError("--out: cannot open " + path);
    f << text;
}

void emit_table(ResultTable t, Common const& c, std::string const& command_line)
{
    ResultTable out;
    out.title = t.title;
    out.provenance = {{"command", command_line}, {"version", version_string}};
    if (c.timestamp)
        out.provenance.emplace_back("timestamp", utc_now());
    for (auto& kv : t.provenance)
        out.provenance.push_back(std::move(kv));
    out.columns = std::move(t.columns);
    out.rows = std::move(t.rows);
    out.scalars = std::move(t.scalars);
    out.notes = std::move(t.notes);
    emit(c.json ? to_json_text(out) : to_csv(out), c.out);
}

std::string join_args(int argc, char** argv)
{
    std::string s = "abdirac";
    for (int i = 1; i < argc; ++i)
        s += std::string(" ") + argv[i];
    return s;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dirac fermions on Aharonov-Bohm rings and cylinders"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version_string);
    std::string const command_line = join_args(argc, argv);

    // spectrum
    Common spectrum_common;
    std::string spectrum_geometry = "ring";
    std::optional<double> spectrum_aspect;
    double spectrum_lambda_max = 4.5;
    int spectrum_n_max = 1;
    auto* spectrum = app.add_subcommand("spectrum", "energies and partial currents per state");
    add_common(spectrum, spectrum_common);
    spectrum->add_option("--geometry", spectrum_geometry, "ring or cylinder");
    spectrum->add_option("--aspect", spectrum_aspect, "pi R / L (cylinder)");
    spectrum->add_option("--lambda-max", spectrum_lambda_max, "largest |lambda|");
    spectrum->add_option("--n-max", spectrum_n_max, "largest longitudinal n (cylinder)");

    // persistent
    Common persistent_common;
    std::string persistent_geometry = "ring";
    std::optional<std::int64_t> persistent_ne;
    std::optional<double> persistent_aspect;
    bool persistent_compare = false;
    auto* persistent = app.add_subcommand("persistent", "T = 0 persistent current");
    add_common(persistent, persistent_common);
    persistent->add_option("--geometry", persistent_geometry, "ring or cylinder");
    persistent->add_option("--ne", persistent_ne, "electron count (ring, even)");
    persistent->add_option("--aspect", persistent_aspect, "pi R / L (cylinder)");
    persistent->add_option("--alpha", persistent_common.alpha, "Fermi radius (cylinder)");
    persistent->add_flag("--compare-approx", persistent_compare, "add closed-form approximations and gaps");

    // sweep
    Common sweep_common;
    std::string sweep_geometry = "ring";
    std::string sweep_of = "persistent";
    SweepSpec sweep_spec;
    std::optional<std::int64_t> sweep_ne;
    std::optional<double> sweep_aspect;
    std::string sweep_lambda = "1/2";
    bool sweep_compare = false;
    auto* sweep = app.add_subcommand("sweep", "tabulate a quantity over one parameter");
    add_common(sweep, sweep_common);
    sweep->add_option("--variable", sweep_spec.variable, "mu, beta, lambda, aspect, alpha or n")->required();
    sweep->add_option("--start", sweep_spec.start)->required();
    sweep->add_option("--stop", sweep_spec.stop)->required();
    sweep->add_option("--count", sweep_spec.count)->required();
    sweep->add_flag("--log", sweep_spec.log, "geometric spacing");
    sweep->add_option("--of", sweep_of, "persistent or state");
    sweep->add_option("--geometry", sweep_geometry, "ring or cylinder");
    sweep->add_option("--ne", sweep_ne, "fixed ring electron count");
    sweep->add_option("--lambda-ratio", sweep_spec.lambda_ratio, "ring filling lambda_F = ratio * mu");
    sweep->add_option("--aspect", sweep_aspect, "pi R / L (cylinder)");
    sweep->add_option("--alpha", sweep_common.alpha, "Fermi radius (cylinder)");
    sweep->add_option("--lambda", sweep_lambda, "lambda for state sweeps");
    sweep->add_option("--n", sweep_spec.n, "n for cylinder state sweeps");
    sweep->add_flag("--compare-approx", sweep_compare, "add closed-form approximations and gaps");

    // packet
    Common packet_common;
    std::string packet_lambda = "1/2";
    std::string packet_file;
    std::string packet_gaussian = "0,1";
    double packet_plus_weight = 1.0;
    int packet_nodes = 1025;
    std::string packet_t = "0";
    std::string packet_z = "0";
    auto* packet = app.add_subcommand("packet", "packet observables and longitudinal current");
    add_common(packet, packet_common);
    packet->add_option("--lambda", packet_lambda, "total angular momentum, e.g. 1/2 or -3/2");
    auto* file_opt = packet->add_option("--packet", packet_file, "CSV: k, re_a_plus, im_a_plus, re_a_minus, im_a_minus");
    packet->add_option("--gaussian", packet_gaussian, "k0,width of a Gaussian packet")->excludes(file_opt);
    packet->add_option("--plus-weight", packet_plus_weight, "|c+|^2 of the Gaussian packet");
    packet->add_option("--nodes", packet_nodes, "k nodes of the Gaussian packet (odd)");
    packet->add_option("--t", packet_t, "times: start:stop:count or a comma list");
    packet->add_option("--z", packet_z, "positions: start:stop:count or a comma list");

    // verify
    Common verify_common;
    std::string verify_suite = "all";
    std::string verify_fault;
    int verify_nodes = default_phi_nodes;
    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    verify->add_option("--suite", verify_suite, "all, spinor, currents or sums");
    verify->add_option("--inject-fault", verify_fault, "'gamma' perturbs one gamma matrix entry");
    verify->add_option("--nodes", verify_nodes, "phi quadrature nodes");
    verify->add_option("--out", verify_common.out, "output file (default stdout)");
    verify->add_flag("--json", verify_common.json, "write the JSON report");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const& e)
    {
        return app.exit(e);
    }
    catch (CLI::CallForAllHelp const& e)
    {
        return app.exit(e);
    }
    catch (CLI::CallForVersion const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        app.exit(e);
        return exit_usage;
    }

    try
    {
        if (*spectrum)
        {
            auto r = resolve(spectrum_common);
            emit_table(cmd_spectrum({parse_geometry(spectrum_geometry), r.mu, r.beta, spectrum_aspect,
                                     spectrum_lambda_max, spectrum_n_max}),
                       spectrum_common, command_line);
        }
        else if (*persistent)
        {
            auto r = resolve(persistent_common);
            emit_table(cmd_persistent({parse_geometry(persistent_geometry), r.mu, r.beta, persistent_ne,
                                       persistent_aspect, r.alpha, persistent_compare}),
                       persistent_common, command_line);
        }
        else if (*sweep)
        {
            auto r = resolve(sweep_common);
            sweep_spec.quantity = parse_sweep_quantity(sweep_of);
            sweep_spec.fixed = {parse_geometry(sweep_geometry), r.mu, r.beta, sweep_ne, sweep_aspect, r.alpha,
                                sweep_compare};
            sweep_spec.lambda = HalfInteger::parse(sweep_lambda).value();
            emit_table(cmd_sweep(sweep_spec), sweep_common, command_line);
        }
        else if (*packet)
        {
            auto r = resolve(packet_common);
            PacketOptions o;
            o.mu = r.mu;
            o.beta = r.beta;
            o.lambda = HalfInteger::parse(packet_lambda);
            if (!packet_file.empty())
            {
                o.spec = load_packet_csv(packet_file);
                o.source = "file " + packet_file;
            }
            else
            {
                auto g = parse_grid(packet_gaussian, "--gaussian");
                if (g.size() != 2)
                    throw UsageError("--gaussian needs k0,width");
                if (!(packet_plus_weight >= 0 && packet_plus_weight <= 1))
                    throw UsageError("--plus-weight must lie in [0, 1]");
                auto mix = PolarizationMix::make(std::sqrt(packet_plus_weight), std::sqrt(1 - packet_plus_weight));
                o.spec = gaussian_packet(g[0], g[1], packet_nodes, mix);
                o.source = "gaussian k0=" + format_number(g[0]) + " width=" + format_number(g[1])
                           + " plus_weight=" + format_number(packet_plus_weight);
            }
            o.t_grid = parse_grid(packet_t, "--t");
            o.z_grid = parse_grid(packet_z, "--z");
            emit_table(cmd_packet(o), packet_common, command_line);
        }
        else if (*verify)
        {
            VerifyOptions opt;
            if (verify_nodes < 8)
                throw UsageError("--nodes must be >= 8");
            opt.phi_nodes = verify_nodes;
            if (verify_fault == "gamma")
                opt.gammas = perturbed_gammas();
            else if (!verify_fault.empty())
                throw UsageError("--inject-fault accepts only 'gamma'");
            auto report = cmd_verify(parse_suite(verify_suite), opt);
            emit(verify_common.json ? report.json().dump(2) + "\n" : report.text(), verify_common.out);
            if (!report.passed())
            {
                std::cerr << "abdirac verify: " << report.failures() << " invariant(s) failed\n";
                return exit_failed;
            }
        }
    }
    catch (UsageError const& e)
    {
        std::cerr << "abdirac: usage error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (DomainError const& e)
    {
        std::cerr << "abdirac: domain error: " << e.what() << '\n';
        return exit_domain;
    }
    catch (AccuracyError const& e)
    {
        std::cerr << "abdirac: accuracy error: " << e.what() << '\n';
        return exit_accuracy;
    }
    catch (std::exception const& e)
    {
        std::cerr << "abdirac: error: " << e.what() << '\n';
        return exit_failed;
    }
    return exit_ok;
}
