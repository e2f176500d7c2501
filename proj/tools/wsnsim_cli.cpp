// Command-line front end: parameter sweeps, analytic reference curves, and
// the verification suite.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsnsim/acceptance.hpp"
#include "wsnsim/analytic.hpp"
#include "wsnsim/engine.hpp"
#include "wsnsim/sweep.hpp"

namespace {

// Accepts either a comma list ("0,2,4") or a lo:step:hi range ("0:2:20",
// endpoints inclusive).
std::vector<double> parse_values(const std::string& text)
{
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo = 0.0, step = 0.0, hi = 0.0;
        char c1 = 0, c2 = 0;
        std::istringstream ss(text);
        if (!(ss >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' || c2 != ':'
            || !ss.eof())
            throw wsnsim::ConfigError("bad range '" + text
                                      + "' (expected lo:step:hi)");
        if (step <= 0.0 || hi < lo)
            throw wsnsim::ConfigError("bad range '" + text
                                      + "': need step > 0 and hi >= lo");
        for (double v = lo; v <= hi + 1e-9 * step; v += step)
            out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size())
                throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw wsnsim::ConfigError("bad value '" + item + "' in list '"
                                      + text + "'");
        }
    }
    if (out.empty())
        throw wsnsim::ConfigError("empty value list '" + text + "'");
    return out;
}

struct SimulateArgs {
    std::string config_path;
    std::string m_list, l_list, snr_list, pc_list, rho_list;
    std::string combiner, fidelity, fading, format;
    std::string out_path;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
};

void add_axis(wsnsim::SweepSpec& spec, const std::string& field,
              const std::string& text)
{
    if (text.empty())
        return;
    // a CLI axis replaces any same-named axis from the config file
    for (auto it = spec.axes.begin(); it != spec.axes.end(); ++it) {
        if (it->field == field) {
            spec.axes.erase(it);
            break;
        }
    }
    spec.axes.push_back({field, parse_values(text)});
}

int run_simulate(const SimulateArgs& args)
{
    wsnsim::SweepSpec spec;
    if (!args.config_path.empty())
        spec = wsnsim::load_config(args.config_path);

    add_axis(spec, "M", args.m_list);
    add_axis(spec, "L", args.l_list);
    add_axis(spec, "snr_db", args.snr_list);
    add_axis(spec, "pc", args.pc_list);
    add_axis(spec, "rho", args.rho_list);
    if (args.trials != 0)
        spec.base.trials = args.trials;
    if (args.seed_set)
        spec.base.seed = args.seed;
    if (!args.combiner.empty())
        spec.base.combiner = wsnsim::combiner_from_string(args.combiner);
    if (!args.fidelity.empty())
        spec.base.fidelity = wsnsim::fidelity_from_string(args.fidelity);
    if (!args.fading.empty())
        spec.base.fading = wsnsim::fading_from_string(args.fading);
    if (!args.format.empty())
        spec.format = wsnsim::format_from_string(args.format);
    if (!args.out_path.empty())
        spec.output_path = args.out_path;
    if (args.workers != 0)
        spec.workers = args.workers;
    if (spec.workers < 1)
        throw wsnsim::ConfigError("workers must be at least 1");

    if (spec.axes.empty())
        spec.axes.push_back(
            {"snr_db", {spec.base.snr_db}}); // single-point run

    const auto rows = wsnsim::run_sweep(spec);
    if (spec.output_path.empty())
        wsnsim::emit_results(rows, spec.format, std::cout);
    else
        std::cerr << rows.size() << " point(s) in " << spec.output_path
                  << "\n";
    return 0;
}

struct OracleArgs {
    std::string m_list = "2";
    std::string snr_list = "0:2:20";
    double pc = 1.0;
    std::string kind = "sep"; // sep | ber | floor
    std::string out_path;
};

int run_oracle(const OracleArgs& args)
{
    const auto ms = parse_values(args.m_list);
    const auto snrs = parse_values(args.snr_list);

    std::ostringstream body;
    body << "kind,snr_db,M,pc,value\n";
    char buf[64];
    for (double md : ms) {
        if (md != std::floor(md) || md < 2)
            throw wsnsim::ConfigError("M values must be integers >= 2");
        const int m = static_cast<int>(md);
        for (double snr : snrs) {
            const double gamma = std::pow(10.0, snr / 10.0);
            double value = 0.0;
            if (args.kind == "sep") {
                value = wsnsim::awgn_mfsk_sep(m, gamma);
            } else if (args.kind == "ber") {
                if (m != 2)
                    throw wsnsim::ConfigError(
                        "the rayleigh ber oracle is binary only (M=2)");
                value = wsnsim::rayleigh_ncbfsk_ber(gamma);
            } else if (args.kind == "floor") {
                value = wsnsim::high_snr_ber_floor(args.pc, m);
            } else {
                throw wsnsim::ConfigError("unknown oracle kind '" + args.kind
                                          + "' (expected sep, ber, or floor)");
            }
            std::snprintf(buf, sizeof buf, "%.17g", snr);
            body << args.kind << ',' << buf << ',' << m << ',';
            std::snprintf(buf, sizeof buf, "%.17g", args.pc);
            body << buf << ',';
            std::snprintf(buf, sizeof buf, "%.17g", value);
            body << buf << '\n';
        }
    }

    if (args.out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(args.out_path, std::ios::trunc);
        if (!out)
            throw wsnsim::IoError("cannot open output file: " + args.out_path);
        out << body.str();
        if (!out)
            throw wsnsim::IoError("write failed: " + args.out_path);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Monte Carlo link simulator for a fused multi-sensor MFSK "
                 "network over Rayleigh fading"};
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* simulate =
        app.add_subcommand("simulate", "run a parameter sweep");
    simulate->add_option("--config", sim.config_path,
                         "JSON config file (flags override it)");
    simulate->add_option("--M", sim.m_list, "alphabet sizes (list or range)");
    simulate->add_option("--L", sim.l_list, "sensor counts (list or range)");
    simulate->add_option("--snr", sim.snr_list,
                         "SNR dB values (list or lo:step:hi)");
    simulate->add_option("--pc", sim.pc_list,
                         "detection probabilities (list or range)");
    simulate->add_option("--rho", sim.rho_list,
                         "branch correlations (list or range)");
    simulate->add_option("--combiner", sim.combiner, "sc, egc, or mrc");
    simulate->add_option("--fidelity", sim.fidelity, "symbol or waveform");
    simulate->add_option("--fading", sim.fading, "rayleigh or none");
    simulate->add_option("--trials", sim.trials, "trials per point");
    simulate->add_option("--seed", sim.seed, "master seed")
        ->each([&sim](const std::string&) { sim.seed_set = true; });
    simulate->add_option("--workers", sim.workers, "worker threads");
    simulate->add_option("--out", sim.out_path,
                         "output file (omit to print to stdout)");
    simulate->add_option("--format", sim.format, "csv or json");

    OracleArgs ora;
    CLI::App* oracle =
        app.add_subcommand("oracle", "emit analytic reference values");
    oracle->add_option("--kind", ora.kind, "sep, ber, or floor");
    oracle->add_option("--M", ora.m_list, "alphabet sizes (list or range)");
    oracle->add_option("--snr", ora.snr_list,
                       "SNR dB values (list or lo:step:hi)");
    oracle->add_option("--pc", ora.pc, "detection probability (floor kind)");
    oracle->add_option("--out", ora.out_path,
                       "output file (omit to print to stdout)");

    int verify_workers = 1;
    bool verify_quick = false;
    CLI::App* verify =
        app.add_subcommand("verify", "run the verification suite");
    verify->add_option("--workers", verify_workers, "worker threads");
    verify->add_flag("--quick", verify_quick,
                     "reduced trial counts (smoke test only)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed())
            return run_simulate(sim);
        if (oracle->parsed())
            return run_oracle(ora);
        if (verify->parsed()) {
            wsnsim::AcceptanceOptions opts;
            opts.workers = verify_workers;
            opts.quick = verify_quick;
            const auto report = wsnsim::run_acceptance(std::cout, opts);
            return report.all_pass() ? 0 : 3;
        }
    } catch (const wsnsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const wsnsim::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
