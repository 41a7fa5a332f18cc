#include "scissorsim/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace scissorsim {

namespace {

using nlohmann::json;

void assign_from_json(ExperimentConfig& c, const std::string& key, const json& v) {
    auto num = [&](double& field) { field = v.get<double>(); };
    auto integer = [&](int& field) { field = v.get<int>(); };
    auto str = [&](std::string& field) { field = v.get<std::string>(); };

    if (key == "experiment") str(c.experiment);
    else if (key == "output") str(c.output);
    else if (key == "n_max") integer(c.n_max);
    else if (key == "t") num(c.t);
    else if (key == "alpha_sq") num(c.alpha_sq);
    else if (key == "vbs2_t") num(c.vbs2_t);
    else if (key == "phi") num(c.phi);
    else if (key == "loss_in") num(c.loss_in);
    else if (key == "loss_aux") num(c.loss_aux);
    else if (key == "loss_out") num(c.loss_out);
    else if (key == "input_kind") str(c.input_kind);
    else if (key == "herald_kind") str(c.herald_kind);
    else if (key == "herald_efficiency") num(c.herald_efficiency);
    else if (key == "herald_dark_count") num(c.herald_dark_count);
    else if (key == "counter_kind") str(c.counter_kind);
    else if (key == "counter_efficiency") num(c.counter_efficiency);
    else if (key == "counter_dark_count") num(c.counter_dark_count);
    else if (key == "source") str(c.source);
    else if (key == "squeezing") num(c.squeezing);
    else if (key == "overlap") num(c.overlap);
    else if (key == "tau") num(c.tau);
    else if (key == "t_min") num(c.t_min);
    else if (key == "t_max") num(c.t_max);
    else if (key == "t_points") integer(c.t_points);
    else if (key == "phase_points") integer(c.phase_points);
    else if (key == "delay_min") num(c.delay_min);
    else if (key == "delay_max") num(c.delay_max);
    else if (key == "delay_points") integer(c.delay_points);
    else if (key == "fringe_points") integer(c.fringe_points);
    else if (key == "source_points") integer(c.source_points);
    else if (key == "seed") c.seed = v.get<long>();
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

bool one_of(const std::string& s, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (s == a) return true;
    return false;
}

DetectorModel detector_from(const std::string& kind, double efficiency, double dark) {
    if (kind == "pnr") return DetectorModel::make_ideal_pnr();
    return DetectorModel::make_threshold(efficiency, dark);
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    ExperimentConfig c;
    for (const auto& item : j.items()) {
        try {
            assign_from_json(c, item.key(), item.value());
        } catch (const json::exception& e) {
            throw std::invalid_argument("config key '" + item.key() + "': " + e.what());
        }
    }
    return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::vector<std::string> ExperimentConfig::validate() const {
    std::vector<std::string> bad;
    auto complain = [&](const std::string& msg) { bad.push_back(msg); };

    if (!one_of(experiment,
                {"gain-sweep", "hom-dip", "fringe-scan", "phase-average", "amplifier-single"}))
        complain("experiment must be one of gain-sweep, hom-dip, fringe-scan, phase-average, "
                 "amplifier-single (got '" + experiment + "')");
    if (!one_of(output, {"csv", "json"})) complain("output must be csv or json");
    if (n_max < 2 || n_max > 10) complain("n_max must lie in [2, 10]");

    if (!in_unit(t)) complain("t must lie in [0, 1]");
    if (!in_unit(alpha_sq)) complain("alpha_sq must lie in [0, 1]");
    if (!in_unit(vbs2_t)) complain("vbs2_t must lie in [0, 1]");
    if (!in_unit(loss_in)) complain("loss_in must lie in [0, 1]");
    if (!in_unit(loss_aux)) complain("loss_aux must lie in [0, 1]");
    if (!in_unit(loss_out)) complain("loss_out must lie in [0, 1]");

    if (!one_of(input_kind, {"vbs2", "mixture", "coherent"}))
        complain("input_kind must be vbs2, mixture or coherent");
    if (input_kind == "vbs2" && std::abs(alpha_sq - (1.0 - vbs2_t)) > 1e-9)
        complain("vbs2 input needs alpha_sq == 1 - vbs2_t");

    auto check_detector = [&](const std::string& who, const std::string& kind, double eff,
                              double dark) {
        if (!one_of(kind, {"pnr", "threshold"})) complain(who + "_kind must be pnr or threshold");
        if (!in_unit(eff)) complain(who + "_efficiency must lie in [0, 1]");
        if (!(dark >= 0.0 && dark < 1.0)) complain(who + "_dark_count must lie in [0, 1)");
        if (kind == "pnr" && (eff != 1.0 || dark != 0.0))
            complain(who + ": pnr detectors are ideal; set efficiency 1 and dark count 0 "
                           "or use a threshold detector");
    };
    check_detector("herald", herald_kind, herald_efficiency, herald_dark_count);
    check_detector("counter", counter_kind, counter_efficiency, counter_dark_count);

    if (!one_of(source, {"single-pair", "spdc"})) complain("source must be single-pair or spdc");
    if (!(squeezing >= 0.0 && squeezing < 1.0)) complain("squeezing must lie in [0, 1)");
    if (!(overlap >= -1.0 && overlap <= 1.0)) complain("overlap must lie in [-1, 1]");
    if (!(tau > 0.0)) complain("tau must be positive");

    if (!(t_min <= t_max)) complain("t_min must not exceed t_max");
    if (!in_unit(t_min) || !in_unit(t_max)) complain("t_min and t_max must lie in [0, 1]");
    if (t_points < 1) complain("t_points must be at least 1");
    if (phase_points < 4) complain("phase_points must be at least 4");
    if (!(delay_min <= delay_max)) complain("delay_min must not exceed delay_max");
    if (delay_points < 1) complain("delay_points must be at least 1");
    if (fringe_points < 4) complain("fringe_points must be at least 4");
    if (source_points < 4) complain("source_points must be at least 4");
    return bad;
}

AmplifierParams ExperimentConfig::amplifier_params() const {
    AmplifierParams p;
    p.t = t;
    p.alpha_sq = alpha_sq;
    p.vbs2_t = vbs2_t;
    p.phi = phi;
    p.loss_in = loss_in;
    p.loss_aux = loss_aux;
    p.loss_out = loss_out;
    p.herald_detector = detector_from(herald_kind, herald_efficiency, herald_dark_count);
    p.counter_detector = detector_from(counter_kind, counter_efficiency, counter_dark_count);
    if (input_kind == "vbs2") p.input_kind = InputKind::vbs2_split;
    else if (input_kind == "mixture") p.input_kind = InputKind::mixture;
    else {
        p.input_kind = InputKind::coherent;
        p.input_alpha = std::sqrt(alpha_sq);
        p.input_beta = std::sqrt(1.0 - alpha_sq);
    }
    return p;
}

SourceSpec ExperimentConfig::source_spec() const {
    SourceSpec s;
    s.kind = source == "spdc" ? SourceSpec::Kind::spdc : SourceSpec::Kind::single_pair;
    s.spdc.squeezing = squeezing;
    s.spdc.overlap = overlap;
    s.n_max = n_max;
    return s;
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) throw std::invalid_argument("linspace: need at least one point");
    std::vector<double> g(points);
    if (points == 1) {
        g[0] = lo;
        return g;
    }
    for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
    return g;
}

ExperimentTable run_experiment(const ExperimentConfig& config) {
    const auto violations = config.validate();
    if (!violations.empty()) {
        std::string msg = "invalid config:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw std::invalid_argument(msg);
    }

    const AmplifierParams params = config.amplifier_params();
    const SourceSpec source = config.source_spec();

    ExperimentTable table;
    table.experiment = config.experiment;

    if (config.experiment == "amplifier-single") {
        const AmplifierResult r = simulate_amplifier(params);
        table.columns = {"t",
                         "alpha_sq",
                         "herald_probability",
                         "success_probability_total",
                         "gain",
                         "single_photon_weight_in",
                         "single_photon_weight_out",
                         "output_p0",
                         "output_p1",
                         "output_p2"};
        const auto& out = r.output_state;
        table.rows = {{params.t, params.alpha_sq, r.herald_probability, r.success_probability_total,
                       r.gain.value_or(std::nan("")), r.single_photon_weight_in,
                       r.single_photon_weight_out, out.mode_weight("out", 0),
                       out.mode_weight("out", 1), out.mode_weight("out", 2)}};
    } else if (config.experiment == "gain-sweep") {
        const auto grid = linspace(config.t_min, config.t_max, config.t_points);
        const auto rows = gain_sweep(params, source, grid);
        table.columns = {"t", "gain_ideal", "gain_nonpnr", "gain_simulated", "vmax",
                         "visibility_simulated"};
        for (const auto& r : rows)
            table.rows.push_back(
                {r.t, r.gain_ideal, r.gain_nonpnr, r.gain_simulated, r.vmax, r.visibility_simulated});
    } else if (config.experiment == "fringe-scan") {
        const auto grid = linspace(0.0, 2.0 * M_PI * (config.phase_points - 1) / config.phase_points,
                                   config.phase_points);
        const FringeScan scan = fringe_scan(params, source, grid);
        table.columns = {"phase", "coincidence"};
        for (std::size_t i = 0; i < scan.phase.size(); ++i)
            table.rows.push_back({scan.phase[i], scan.coincidence[i]});
        table.summary.emplace_back("visibility", scan.visibility);
    } else if (config.experiment == "phase-average") {
        const PhaseAverageResult r =
            phase_average(params, config.fringe_points, config.source_points);
        table.columns = {"fixed_phase", "visibility_fixed", "visibility_averaged", "ratio"};
        table.rows = {{r.fixed_phase, r.visibility_fixed, r.visibility_averaged, r.ratio}};
    } else {  // hom-dip
        const auto delays = linspace(config.delay_min, config.delay_max, config.delay_points);
        const HomScan scan = hom_scan(source, config.tau, delays, params.herald_detector,
                                      params.counter_detector);
        table.columns = {"delay", "coincidence"};
        for (std::size_t i = 0; i < scan.delay.size(); ++i)
            table.rows.push_back({scan.delay[i], scan.coincidence[i]});
        table.summary.emplace_back("baseline", scan.baseline);
        table.summary.emplace_back("visibility", scan.visibility);
    }
    return table;
}

void write_csv(const ExperimentTable& table, std::ostream& os) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << (i ? "," : "") << table.columns[i];
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
        os << "\n";
    }
    for (const auto& [name, value] : table.summary)
        os << "# " << name << " = " << format_number(value) << "\n";
}

void write_json(const ExperimentTable& table, std::ostream& os) {
    json j;
    j["experiment"] = table.experiment;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    json summary = json::object();
    for (const auto& [name, value] : table.summary) summary[name] = value;
    j["summary"] = summary;
    os << j.dump(2) << "\n";
}

}  // namespace scissorsim
