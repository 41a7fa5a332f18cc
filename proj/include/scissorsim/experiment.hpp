#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "scissorsim/amplifier.hpp"

namespace scissorsim {

// Flat experiment description; every field can be set from a JSON config
// file (same key names) and overridden from the command line. Unknown keys
// in a config file are rejected.
struct ExperimentConfig {
    std::string experiment;      // gain-sweep | hom-dip | fringe-scan | phase-average | amplifier-single
    std::string output = "csv";  // csv | json

    int n_max = 4;  // photon cutoff for spdc sources

    double t = 0.8;
    double alpha_sq = 0.5;
    double vbs2_t = 0.5;
    double phi = 0.0;

    double loss_in = 1.0;
    double loss_aux = 1.0;
    double loss_out = 1.0;

    std::string input_kind = "vbs2";  // vbs2 | mixture | coherent

    std::string herald_kind = "pnr";  // pnr | threshold
    double herald_efficiency = 1.0;
    double herald_dark_count = 0.0;

    std::string counter_kind = "threshold";  // pnr | threshold
    double counter_efficiency = 1.0;
    double counter_dark_count = 0.0;

    std::string source = "single-pair";  // single-pair | spdc
    double squeezing = 0.1;
    double overlap = 1.0;
    double tau = 1.0;

    double t_min = 0.5;
    double t_max = 0.95;
    int t_points = 10;

    int phase_points = 64;

    double delay_min = -3.0;
    double delay_max = 3.0;
    int delay_points = 61;

    int fringe_points = 64;
    int source_points = 64;

    long seed = 0;  // reserved; all experiments here are deterministic

    // Parse a JSON object (text or file). Throws std::invalid_argument on
    // unknown keys or malformed values.
    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_json_file(const std::string& path);

    // All rule violations, empty when the config is runnable.
    std::vector<std::string> validate() const;

    AmplifierParams amplifier_params() const;
    SourceSpec source_spec() const;
};

// Tabular result of one experiment run.
struct ExperimentTable {
    std::string experiment;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, double>> summary;
};

// Run the configured experiment. The config must validate cleanly; throws
// std::invalid_argument listing the violations otherwise.
ExperimentTable run_experiment(const ExperimentConfig& config);

// 12-significant-digit CSV with LF line endings; summary entries become
// trailing "# name = value" comment lines.
void write_csv(const ExperimentTable& table, std::ostream& os);

// Full-precision JSON document (columns, row array, summary object).
void write_json(const ExperimentTable& table, std::ostream& os);

std::vector<double> linspace(double lo, double hi, int points);

}  // namespace scissorsim
