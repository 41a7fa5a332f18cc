#include "scissorsim/detection.hpp"

#include <cmath>
#include <stdexcept>

namespace scissorsim {

namespace {
constexpr double kImpossibleHerald = 1e-15;
}

DetectorModel DetectorModel::make_ideal_pnr() { return DetectorModel{Kind::ideal_pnr, 1.0, 0.0}; }

DetectorModel DetectorModel::make_threshold(double efficiency, double dark_count_prob) {
    DetectorModel d{Kind::threshold, efficiency, dark_count_prob};
    d.validate();
    return d;
}

void DetectorModel::validate() const {
    if (!(efficiency >= 0.0 && efficiency <= 1.0))
        throw std::invalid_argument("DetectorModel: efficiency must lie in [0, 1]");
    if (!(dark_count_prob >= 0.0 && dark_count_prob < 1.0))
        throw std::invalid_argument("DetectorModel: dark_count_prob must lie in [0, 1)");
    if (kind == Kind::ideal_pnr && (efficiency != 1.0 || dark_count_prob != 0.0))
        throw std::invalid_argument("DetectorModel: ideal_pnr requires efficiency 1 and no dark counts");
}

double DetectorModel::no_click_probability(int n) const {
    if (kind == Kind::ideal_pnr) return n == 0 ? 1.0 : 0.0;
    return (1.0 - dark_count_prob) * std::pow(1.0 - efficiency, n);
}

std::vector<PovmElement> povm_elements(const DetectorModel& det, int n_max) {
    det.validate();
    if (n_max < 0) throw std::invalid_argument("povm_elements: negative n_max");
    const std::size_t dim = static_cast<std::size_t>(n_max) + 1;
    std::vector<PovmElement> out;

    if (det.kind == DetectorModel::Kind::ideal_pnr) {
        for (int n = 0; n <= n_max; ++n) {
            PovmElement e{std::to_string(n), CMat(dim, dim)};
            e.op(n, n) = 1.0;
            out.push_back(std::move(e));
        }
        return out;
    }

    PovmElement noclick{"no_click", CMat(dim, dim)};
    PovmElement click{"click", CMat(dim, dim)};
    for (int n = 0; n <= n_max; ++n) {
        const double nc = det.no_click_probability(n);
        noclick.op(n, n) = nc;
        click.op(n, n) = 1.0 - nc;
    }
    out.push_back(std::move(noclick));
    out.push_back(std::move(click));
    return out;
}

std::vector<double> povm_diagonal(const DetectorModel& det, int n_max, const std::string& outcome) {
    det.validate();
    std::vector<double> diag(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (det.kind == DetectorModel::Kind::ideal_pnr) {
        int n = -1;
        try {
            std::size_t used = 0;
            n = std::stoi(outcome, &used);
            if (used != outcome.size()) n = -1;
        } catch (const std::exception&) {
            n = -1;
        }
        if (n < 0 || n > n_max)
            throw std::invalid_argument("herald: unknown outcome '" + outcome + "' for ideal_pnr");
        diag[n] = 1.0;
        return diag;
    }
    if (outcome != "click" && outcome != "no_click")
        throw std::invalid_argument("herald: unknown outcome '" + outcome + "' for threshold");
    for (int n = 0; n <= n_max; ++n) {
        const double nc = det.no_click_probability(n);
        diag[n] = outcome == "click" ? 1.0 - nc : nc;
    }
    return diag;
}

HeraldOutcome herald(const DensityOperator& rho, const std::string& mode, const DetectorModel& det,
                     const std::string& outcome) {
    const FockBasis& fb = *rho.basis();
    const std::size_t im = fb.mode_index(mode);
    if (fb.mode_count() < 2)
        throw std::invalid_argument("herald: cannot remove the only mode of a state");
    const auto diag = povm_diagonal(det, fb.n_max(), outcome);

    // sqrt(Pi) rho sqrt(Pi) for a diagonal POVM is an entrywise scaling.
    CMat scaled = rho.matrix();
    std::vector<double> root(fb.size());
    for (std::size_t i = 0; i < fb.size(); ++i) root[i] = std::sqrt(diag[fb.occupation(i)[im]]);
    for (std::size_t i = 0; i < scaled.rows; ++i)
        for (std::size_t j = 0; j < scaled.cols; ++j) scaled(i, j) *= root[i] * root[j];

    std::vector<std::string> keep;
    for (const auto& name : fb.mode_names())
        if (name != mode) keep.push_back(name);

    DensityOperator cond = partial_trace(DensityOperator(rho.basis(), std::move(scaled)), keep);
    const double p = cond.trace();
    if (p < kImpossibleHerald) {
        CMat zero(cond.basis()->size(), cond.basis()->size());
        return HeraldOutcome{DensityOperator(cond.basis(), std::move(zero)), 0.0};
    }
    return HeraldOutcome{std::move(cond), p};
}

std::string default_herald_outcome(const DetectorModel& det) {
    return det.kind == DetectorModel::Kind::ideal_pnr ? "1" : "click";
}

std::vector<double> counting_weights(const DetectorModel& det, int n_max) {
    det.validate();
    std::vector<double> w(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) w[n] = 1.0 - det.no_click_probability(n);
    return w;
}

namespace {

// Resolve port mode names to indices and reject overlapping ports.
std::vector<std::vector<std::size_t>> resolve_ports(const FockBasis& fb,
                                                    const std::vector<WeightedPort>& ports) {
    std::vector<std::vector<std::size_t>> port_modes;
    for (const auto& port : ports) {
        if (port.modes.empty()) throw std::invalid_argument("joint_diagonal_probability: empty port");
        if (port.weights.size() != static_cast<std::size_t>(fb.n_max()) + 1)
            throw std::invalid_argument("joint_diagonal_probability: weight table does not span 0..n_max");
        std::vector<std::size_t> idx;
        for (const auto& name : port.modes) idx.push_back(fb.mode_index(name));
        for (const auto& other : port_modes)
            for (std::size_t a : idx)
                for (std::size_t b : other)
                    if (a == b) throw std::invalid_argument("joint_diagonal_probability: ports share a mode");
        port_modes.push_back(std::move(idx));
    }
    return port_modes;
}

template <typename DiagWeight>
double joint_from_diagonal(const FockBasis& fb, const std::vector<WeightedPort>& ports,
                           DiagWeight&& population) {
    const auto port_modes = resolve_ports(fb, ports);
    double total = 0.0;
    for (std::size_t i = 0; i < fb.size(); ++i) {
        const double pii = population(i);
        if (pii == 0.0) continue;
        double w = pii;
        const auto& occ = fb.occupation(i);
        for (std::size_t k = 0; k < ports.size(); ++k) {
            int n = 0;
            for (std::size_t m : port_modes[k]) n += occ[m];
            w *= ports[k].weights[n];
        }
        total += w;
    }
    return total;
}

std::vector<WeightedPort> click_ports(const std::vector<PortDetector>& ports, int n_max) {
    std::vector<WeightedPort> wp;
    for (const auto& port : ports) wp.push_back(WeightedPort{port.modes, counting_weights(port.det, n_max)});
    return wp;
}

}  // namespace

double joint_diagonal_probability(const DensityOperator& rho, const std::vector<WeightedPort>& ports) {
    return joint_from_diagonal(*rho.basis(), ports,
                               [&](std::size_t i) { return rho.element(i, i).real(); });
}

double joint_diagonal_probability(const StateVector& psi, const std::vector<WeightedPort>& ports) {
    return joint_from_diagonal(*psi.basis(), ports,
                               [&](std::size_t i) { return std::norm(psi.amplitudes()[i]); });
}

double all_click_probability(const DensityOperator& rho, const std::vector<PortDetector>& ports) {
    return joint_diagonal_probability(rho, click_ports(ports, rho.basis()->n_max()));
}

double all_click_probability(const StateVector& psi, const std::vector<PortDetector>& ports) {
    return joint_diagonal_probability(psi, click_ports(ports, psi.basis()->n_max()));
}

}  // namespace scissorsim
