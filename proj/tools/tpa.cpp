// Command-line driver.  Subcommands:
//   bohm    per-point Bohm analysis table (CSV/JSON)
//   wigner  phase-space table as (x, p, value) triples
//   pauli   spin-half analysis table
//   weak    single weak-value query <post|op|psi>/<post|psi>
//   verify  run the identity suite; exit 0 iff all checks pass
//
// Exit codes: 0 success, 1 identity failure, 2 configuration error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tpa/report.hpp"
#include "tpa/verify.hpp"

namespace {

struct CommonOptions {
    std::string scenario_file;
    std::vector<std::string> sets;
    long grid_n = -1;
    double grid_length = 0.0;
    double mass = 0.0;
    std::string derivative;
    std::string output;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--scenario", opt.scenario_file, "scenario key=value file");
    cmd->add_option("--set", opt.sets, "override a scenario key, e.g. --set p0=3");
    cmd->add_option("--grid-n", opt.grid_n, "grid sample count (power of two)");
    cmd->add_option("--grid-length", opt.grid_length, "domain length");
    cmd->add_option("--mass", opt.mass, "particle mass");
    cmd->add_option("--derivative", opt.derivative, "derivative mode: spectral | fd");
    cmd->add_option("--output,-o", opt.output, "output file (default: stdout)");
    cmd->add_option("--format", opt.format, "output format: csv | json");
}

tpa::Scenario load_scenario(const CommonOptions& opt, tpa::Scenario sc = {}) {
    if (!opt.scenario_file.empty()) {
        std::ifstream in(opt.scenario_file);
        if (!in) throw std::invalid_argument("cannot open scenario file '" + opt.scenario_file + "'");
        sc = tpa::parse_scenario(in, sc);
    }
    for (const auto& kv : opt.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        tpa::scenario_set(sc, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (opt.grid_n > 0) sc.grid_n = static_cast<std::size_t>(opt.grid_n);
    if (opt.grid_length > 0.0) sc.grid_length = opt.grid_length;
    if (opt.mass > 0.0) sc.mass = opt.mass;
    if (!opt.derivative.empty()) tpa::scenario_set(sc, "derivative", opt.derivative);
    sc.grid(); // validate grid parameters early
    return sc;
}

void emit(const tpa::DataTable& table, const CommonOptions& opt) {
    const std::string text = tpa::table_to_string(table, opt.format);
    if (opt.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opt.output, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output file '" + opt.output + "'");
        out << text;
    }
}

void warn_if_unnormalized(const tpa::Scenario& sc) {
    if (sc.is_pauli()) return;
    const double nrm = tpa::norm(tpa::build_scalar_state(sc));
    if (std::abs(nrm - 1.0) > 1e-8)
        std::cerr << "warning: state norm " << nrm << " differs from 1\n";
}

tpa::Operator parse_operator(const std::string& name, double mass, std::size_t n) {
    if (name == "p") return tpa::Operator::momentum(1);
    if (name == "p2") return tpa::Operator::momentum(2);
    if (name == "x") return tpa::Operator::position(1);
    if (name == "x2") return tpa::Operator::position(2);
    if (name == "h") return tpa::Operator::hamiltonian(mass, std::vector<double>(n, 0.0));
    throw std::invalid_argument("unknown operator '" + name + "' (use p, p2, x, x2, h)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak values, Bohm variables and Wigner-Moyal phase-space numerics"};
    app.require_subcommand(1);

    CommonOptions bohm_opt, wigner_opt, pauli_opt, weak_opt, verify_opt;

    auto* cmd_bohm = app.add_subcommand("bohm", "per-point Bohm analysis of a scalar scenario");
    add_common(cmd_bohm, bohm_opt);

    auto* cmd_wigner = app.add_subcommand("wigner", "Wigner table of a scalar scenario");
    add_common(cmd_wigner, wigner_opt);

    auto* cmd_pauli = app.add_subcommand("pauli", "spin-half analysis of a pauli_ck scenario");
    add_common(cmd_pauli, pauli_opt);

    auto* cmd_weak = app.add_subcommand("weak", "single weak-value query");
    add_common(cmd_weak, weak_opt);
    std::string weak_operator = "p";
    std::vector<std::string> post_sets;
    cmd_weak->add_option("--op", weak_operator, "operator: p | p2 | x | x2 | h");
    cmd_weak->add_option("--post", post_sets,
                         "post-selection state keys, e.g. --post kind=plane_wave --post mode_index=3");

    auto* cmd_verify = app.add_subcommand("verify", "run the identity suite");
    std::vector<std::string> verify_files;
    double tolerance_scale = 1.0;
    bool no_default_set = false;
    cmd_verify->add_option("--scenario", verify_files, "scenario file (repeatable)");
    cmd_verify->add_option("--tolerance-scale", tolerance_scale, "multiply all tolerances");
    cmd_verify->add_flag("--no-default-set", no_default_set, "do not add the built-in scenario set");
    cmd_verify->add_option("--output,-o", verify_opt.output, "also write the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_bohm->parsed()) {
            const tpa::Scenario sc = load_scenario(bohm_opt);
            warn_if_unnormalized(sc);
            emit(tpa::run_bohm(sc), bohm_opt);
        } else if (cmd_wigner->parsed()) {
            const tpa::Scenario sc = load_scenario(wigner_opt);
            warn_if_unnormalized(sc);
            emit(tpa::run_wigner(sc), wigner_opt);
        } else if (cmd_pauli->parsed()) {
            tpa::Scenario base;
            base.kind = tpa::Scenario::Kind::pauli_ck;
            emit(tpa::run_pauli(load_scenario(pauli_opt, base)), pauli_opt);
        } else if (cmd_weak->parsed()) {
            const tpa::Scenario sc = load_scenario(weak_opt);
            tpa::Scenario post;
            post.kind = tpa::Scenario::Kind::plane_wave;
            for (const auto& kv : post_sets) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("--post expects key=value, got '" + kv + "'");
                tpa::scenario_set(post, kv.substr(0, eq), kv.substr(eq + 1));
            }
            const tpa::Operator op = parse_operator(weak_operator, sc.mass, sc.grid_n);
            emit(tpa::run_weak(sc, op, post), weak_opt);
        } else if (cmd_verify->parsed()) {
            std::vector<tpa::Scenario> set;
            if (!no_default_set) set = tpa::default_scenario_set();
            for (const auto& file : verify_files) {
                std::ifstream in(file);
                if (!in) throw std::invalid_argument("cannot open scenario file '" + file + "'");
                set.push_back(tpa::parse_scenario(in));
            }
            const tpa::VerifyReport report = tpa::run_verify(set, tolerance_scale);
            tpa::print_report(report, std::cout);
            if (!verify_opt.output.empty()) {
                std::ofstream out(verify_opt.output, std::ios::binary);
                if (!out) throw std::invalid_argument("cannot open output file '" + verify_opt.output + "'");
                tpa::write_verify_json(report, out);
            }
            return report.all_pass() ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
