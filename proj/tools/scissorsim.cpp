// Command-line front end: run or validate experiment configs.
//
// Exit codes: 0 success, 2 invalid arguments or config, 3 runtime failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "scissorsim/experiment.hpp"

namespace {

struct Overrides {
    std::optional<std::string> experiment, output, input_kind, herald_kind, counter_kind, source;
    std::optional<int> n_max, t_points, phase_points, delay_points, fringe_points, source_points;
    std::optional<long> seed;
    std::optional<double> t, alpha_sq, vbs2_t, phi, loss_in, loss_aux, loss_out;
    std::optional<double> herald_efficiency, herald_dark_count, counter_efficiency,
        counter_dark_count;
    std::optional<double> squeezing, overlap, tau, t_min, t_max, delay_min, delay_max;
};

void add_config_options(CLI::App* cmd, std::string& config_path, Overrides& o) {
    cmd->add_option("-c,--config", config_path, "JSON config file; flags override its keys");

    cmd->add_option("--experiment", o.experiment,
                    "gain-sweep | hom-dip | fringe-scan | phase-average | amplifier-single");
    cmd->add_option("--output", o.output, "csv | json");
    cmd->add_option("--n-max", o.n_max, "photon cutoff for spdc sources");

    cmd->add_option("--t", o.t, "VBS1 transmission");
    cmd->add_option("--alpha-sq", o.alpha_sq, "vacuum weight of the input qubit");
    cmd->add_option("--vbs2-t", o.vbs2_t, "VBS2 transmission");
    cmd->add_option("--phi", o.phi, "input-arm phase");
    cmd->add_option("--loss-in", o.loss_in, "input path transmission");
    cmd->add_option("--loss-aux", o.loss_aux, "auxiliary path transmission");
    cmd->add_option("--loss-out", o.loss_out, "output path transmission");
    cmd->add_option("--input-kind", o.input_kind, "vbs2 | mixture | coherent");

    cmd->add_option("--herald-kind", o.herald_kind, "pnr | threshold");
    cmd->add_option("--herald-efficiency", o.herald_efficiency);
    cmd->add_option("--herald-dark-count", o.herald_dark_count);
    cmd->add_option("--counter-kind", o.counter_kind, "pnr | threshold");
    cmd->add_option("--counter-efficiency", o.counter_efficiency);
    cmd->add_option("--counter-dark-count", o.counter_dark_count);

    cmd->add_option("--source", o.source, "single-pair | spdc");
    cmd->add_option("--squeezing", o.squeezing, "pair amplitude of the spdc source");
    cmd->add_option("--overlap", o.overlap, "zero-delay wavepacket overlap");
    cmd->add_option("--tau", o.tau, "coherence width for hom-dip delays");

    cmd->add_option("--t-min", o.t_min);
    cmd->add_option("--t-max", o.t_max);
    cmd->add_option("--t-points", o.t_points);
    cmd->add_option("--phase-points", o.phase_points);
    cmd->add_option("--delay-min", o.delay_min);
    cmd->add_option("--delay-max", o.delay_max);
    cmd->add_option("--delay-points", o.delay_points);
    cmd->add_option("--fringe-points", o.fringe_points);
    cmd->add_option("--source-points", o.source_points);
    cmd->add_option("--seed", o.seed, "reserved");
}

scissorsim::ExperimentConfig assemble(const std::string& config_path, const Overrides& o) {
    scissorsim::ExperimentConfig c;
    if (!config_path.empty()) c = scissorsim::ExperimentConfig::from_json_file(config_path);

    auto take = [](auto& field, const auto& opt) {
        if (opt) field = *opt;
    };
    take(c.experiment, o.experiment);
    take(c.output, o.output);
    take(c.n_max, o.n_max);
    take(c.t, o.t);
    take(c.alpha_sq, o.alpha_sq);
    take(c.vbs2_t, o.vbs2_t);
    take(c.phi, o.phi);
    take(c.loss_in, o.loss_in);
    take(c.loss_aux, o.loss_aux);
    take(c.loss_out, o.loss_out);
    take(c.input_kind, o.input_kind);
    take(c.herald_kind, o.herald_kind);
    take(c.herald_efficiency, o.herald_efficiency);
    take(c.herald_dark_count, o.herald_dark_count);
    take(c.counter_kind, o.counter_kind);
    take(c.counter_efficiency, o.counter_efficiency);
    take(c.counter_dark_count, o.counter_dark_count);
    take(c.source, o.source);
    take(c.squeezing, o.squeezing);
    take(c.overlap, o.overlap);
    take(c.tau, o.tau);
    take(c.t_min, o.t_min);
    take(c.t_max, o.t_max);
    take(c.t_points, o.t_points);
    take(c.phase_points, o.phase_points);
    take(c.delay_min, o.delay_min);
    take(c.delay_max, o.delay_max);
    take(c.delay_points, o.delay_points);
    take(c.fringe_points, o.fringe_points);
    take(c.source_points, o.source_points);
    take(c.seed, o.seed);
    return c;
}

int run_command(const std::string& config_path, const Overrides& o, const std::string& out_path) {
    scissorsim::ExperimentConfig config;
    try {
        config = assemble(config_path, o);
        const auto violations = config.validate();
        if (!violations.empty()) {
            std::cerr << "invalid config:\n";
            for (const auto& v : violations) std::cerr << "  - " << v << "\n";
            return 2;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        const scissorsim::ExperimentTable table = scissorsim::run_experiment(config);
        std::ofstream file;
        std::ostream* os = &std::cout;
        if (!out_path.empty() && out_path != "-") {
            file.open(out_path, std::ios::binary);
            if (!file) {
                std::cerr << "error: cannot open output file '" << out_path << "'\n";
                return 3;
            }
            os = &file;
        }
        if (config.output == "json")
            scissorsim::write_json(table, *os);
        else
            scissorsim::write_csv(table, *os);
        os->flush();
        if (!*os) {
            std::cerr << "error: failed writing output\n";
            return 3;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

int validate_command(const std::string& config_path, const Overrides& o) {
    try {
        const scissorsim::ExperimentConfig config = assemble(config_path, o);
        const auto violations = config.validate();
        if (violations.empty()) {
            std::cout << "config ok\n";
            return 0;
        }
        std::cerr << "invalid config:\n";
        for (const auto& v : violations) std::cerr << "  - " << v << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Few-photon heralded amplifier simulator"};
    app.require_subcommand(1);

    std::string run_config, run_out = "-";
    Overrides run_overrides;
    CLI::App* run = app.add_subcommand("run", "run an experiment and write a table");
    add_config_options(run, run_config, run_overrides);
    run->add_option("-o,--out", run_out, "output file ('-' for stdout)");

    std::string val_config;
    Overrides val_overrides;
    CLI::App* validate = app.add_subcommand("validate", "check a config without running it");
    add_config_options(validate, val_config, val_overrides);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (run->parsed()) return run_command(run_config, run_overrides, run_out);
    return validate_command(val_config, val_overrides);
}
