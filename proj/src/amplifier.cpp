#include "scissorsim/amplifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace scissorsim {

namespace {

const std::string kRef = "a";    // reference arm carried alongside the input
const std::string kIn = "in";    // amplifier input / herald antisymmetric port
const std::string kAux = "c";    // auxiliary photon arm / herald symmetric port
const std::string kOut = "out";  // amplifier output

constexpr double kTiny = 1e-30;

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

void check_unit_interval(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

// Input-arm state on ("a","in") or ("in") with at most one photon.
DensityOperator input_density(const AmplifierParams& p) {
    if (p.input_kind == InputKind::vbs2_split) {
        auto basis = build_basis({kRef, kIn}, 1);
        StateVector one = pure_state(basis, {{{0, 1}, 1.0}});
        Beamsplitter vbs2{kIn, kRef, p.vbs2_t, 0.0};
        return to_density(apply_beamsplitter(one, vbs2));
    }
    auto basis = build_basis({kIn}, 1);
    if (p.input_kind == InputKind::mixture) {
        DensityOperator vac = to_density(pure_state(basis, {{{0}, 1.0}}));
        DensityOperator one = to_density(pure_state(basis, {{{1}, 1.0}}));
        return mix({{p.alpha_sq, vac}, {1.0 - p.alpha_sq, one}});
    }
    return to_density(pure_state(basis, {{{0}, p.input_alpha}, {{1}, p.input_beta}}));
}

// Auxiliary photon already split on VBS1, on ("c","out"). Loss upstream of
// VBS1 acts on a single photon, so it is an exact mixture with vacuum.
DensityOperator aux_density(const AmplifierParams& p) {
    auto basis = build_basis({kAux, kOut}, 1);
    StateVector split = pure_state(
        basis, {{{1, 0}, std::sqrt(1.0 - p.t)}, {{0, 1}, std::sqrt(p.t)}});
    DensityOperator dm = to_density(split);
    if (p.loss_aux >= 1.0) return dm;
    DensityOperator vac = to_density(pure_state(basis, {{{0, 0}, 1.0}}));
    return mix({{p.loss_aux, dm}, {1.0 - p.loss_aux, vac}});
}

// Source state of the two-arm interferometer on the full four-mode basis,
// photons entering on "in" (goes to VBS2) and "out" (goes to VBS1).
DensityOperator interferometer_source(const SourceSpec& source, const BasisPtr& basis) {
    const std::size_t ia = basis->mode_index(kRef);
    const std::size_t ii = basis->mode_index(kIn);
    const std::size_t ic = basis->mode_index(kAux);
    const std::size_t io = basis->mode_index(kOut);
    auto occ = [&](int a, int in, int c, int out) {
        std::vector<int> o(4, 0);
        o[ia] = a;
        o[ii] = in;
        o[ic] = c;
        o[io] = out;
        return o;
    };

    switch (source.kind) {
        case SourceSpec::Kind::single_pair:
            return to_density(pure_state(basis, {{occ(0, 1, 0, 1), 1.0}}));
        case SourceSpec::Kind::spdc: {
            StateVector sv = pair_state(source.spdc, kIn, kOut, basis->n_max());
            return to_density(embed(sv, basis));
        }
        case SourceSpec::Kind::superposed_two_photon: {
            const complexd ph = std::exp(complexd(0.0, source.source_phase));
            return to_density(pure_state(basis, {{occ(0, 1, 0, 1), ph / std::sqrt(2.0)},
                                                 {occ(0, 0, 0, 2), 0.5},
                                                 {occ(0, 2, 0, 0), 0.5 * ph * ph}}));
        }
    }
    throw std::logic_error("interferometer_source: unhandled source kind");
}

std::vector<WeightedPort> coincidence_ports(const AmplifierParams& p, int n_max) {
    return {WeightedPort{{kIn}, povm_diagonal(p.herald_detector, n_max,
                                              default_herald_outcome(p.herald_detector))},
            WeightedPort{{kRef}, counting_weights(p.counter_detector, n_max)}};
}

}  // namespace

void AmplifierParams::validate() const {
    check_unit_interval(t, "AmplifierParams: t");
    check_unit_interval(alpha_sq, "AmplifierParams: alpha_sq");
    check_unit_interval(vbs2_t, "AmplifierParams: vbs2_t");
    check_unit_interval(loss_in, "AmplifierParams: loss_in");
    check_unit_interval(loss_aux, "AmplifierParams: loss_aux");
    check_unit_interval(loss_out, "AmplifierParams: loss_out");
    herald_detector.validate();
    counter_detector.validate();
    if (input_kind == InputKind::coherent) {
        const double n = std::norm(input_alpha) + std::norm(input_beta);
        if (std::abs(n - 1.0) > 1e-9)
            throw std::invalid_argument("AmplifierParams: coherent input amplitudes must be normalized");
    }
    if (input_kind == InputKind::vbs2_split && std::abs(alpha_sq - (1.0 - vbs2_t)) > 1e-9)
        throw std::invalid_argument(
            "AmplifierParams: vbs2_split preparation needs alpha_sq == 1 - vbs2_t");
}

double gain_ideal(double t, double alpha_sq) {
    check_unit_interval(t, "gain_ideal: t");
    check_unit_interval(alpha_sq, "gain_ideal: alpha_sq");
    const double denom = t + alpha_sq * (1.0 - 2.0 * t);
    if (std::abs(denom) < 1e-12) throw std::domain_error("gain_ideal: degenerate herald probability");
    return t / denom;
}

double gain_nonpnr(double t, double alpha_sq) {
    check_unit_interval(t, "gain_nonpnr: t");
    check_unit_interval(alpha_sq, "gain_nonpnr: alpha_sq");
    const double denom = 1.0 - alpha_sq * t;
    if (std::abs(denom) < 1e-12) throw std::domain_error("gain_nonpnr: degenerate herald probability");
    return t / denom;
}

double vmax(double t) {
    check_unit_interval(t, "vmax: t");
    return 2.0 * std::sqrt(t * (1.0 - t));
}

AmplifierPreHerald amplifier_pre_herald_state(const AmplifierParams& p) {
    p.validate();
    DensityOperator rho = tensor_product(input_density(p), aux_density(p), 2);
    rho = apply_loss(rho, kIn, p.loss_in);
    rho = apply_phase(rho, kIn, p.phi);
    const double weight_in = rho.mode_weight(kIn, 1);
    rho = apply_beamsplitter(rho, Beamsplitter{kAux, kIn, 0.5, 0.0});
    return AmplifierPreHerald{std::move(rho), weight_in};
}

AmplifierResult simulate_amplifier(const AmplifierParams& p) {
    AmplifierPreHerald pre = amplifier_pre_herald_state(p);
    const std::string outcome = default_herald_outcome(p.herald_detector);

    HeraldOutcome plus = herald(pre.state, kAux, p.herald_detector, outcome);
    HeraldOutcome minus = herald(pre.state, kIn, p.herald_detector, outcome);

    auto out_basis = build_basis({kOut}, 2);
    AmplifierResult res{DensityOperator(out_basis, CMat(out_basis->size(), out_basis->size())),
                        plus.probability,
                        2.0 * (plus.probability + minus.probability),
                        std::nullopt,
                        pre.weight_in,
                        0.0};

    if (plus.probability <= 0.0) return res;

    DensityOperator cond = apply_loss(plus.conditioned_state, kOut, p.loss_out);
    DensityOperator out = partial_trace(cond, {kOut}).normalized();
    res.single_photon_weight_out = out.mode_weight(kOut, 1);
    res.output_state = std::move(out);
    if (res.single_photon_weight_in > 1e-12)
        res.gain = res.single_photon_weight_out / res.single_photon_weight_in;
    return res;
}

void SourceSpec::validate() const {
    spdc.validate();
    if (n_max < 2) throw std::invalid_argument("SourceSpec: n_max must be at least 2");
}

InterferometerFront build_interferometer_front(const AmplifierParams& p, const SourceSpec& source) {
    p.validate();
    source.validate();
    const int nm = source.kind == SourceSpec::Kind::spdc ? source.n_max : 2;
    auto basis = build_basis({kRef, kIn, kAux, kOut}, nm);

    DensityOperator rho = interferometer_source(source, basis);
    rho = apply_loss(rho, kOut, p.loss_aux);
    rho = apply_beamsplitter(rho, Beamsplitter{kIn, kRef, p.vbs2_t, 0.0});
    rho = apply_beamsplitter(rho, Beamsplitter{kOut, kAux, p.t, 0.0});
    rho = apply_loss(rho, kIn, p.loss_in);
    rho = apply_phase(rho, kIn, p.phi);
    rho = apply_beamsplitter(rho, Beamsplitter{kAux, kIn, 0.5, 0.0});
    rho = apply_loss(rho, kOut, p.loss_out);

    CMat closing = beamsplitter_unitary(basis, Beamsplitter{kRef, kOut, 0.5, 0.0});
    return InterferometerFront{std::move(rho), std::move(closing)};
}

double interferometer_coincidence(const InterferometerFront& front, const AmplifierParams& p,
                                  double fringe_phase) {
    DensityOperator rho = apply_phase(front.state, kRef, fringe_phase);
    rho.matrix() = kernels::sandwich(front.closing_unitary, rho.matrix());
    return joint_diagonal_probability(rho, coincidence_ports(p, rho.basis()->n_max()));
}

InterferometerOutput simulate_full_interferometer(const AmplifierParams& p, const SourceSpec& source,
                                                  double fringe_phase) {
    InterferometerFront front = build_interferometer_front(p, source);
    DensityOperator rho = apply_phase(front.state, kRef, fringe_phase);
    rho.matrix() = kernels::sandwich(front.closing_unitary, rho.matrix());
    const double c = joint_diagonal_probability(rho, coincidence_ports(p, rho.basis()->n_max()));
    return InterferometerOutput{std::move(rho), c};
}

namespace {

double visibility_of(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("visibility: empty scan");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double span = *hi + *lo;
    if (span < kTiny) return 0.0;
    return (*hi - *lo) / span;
}

std::vector<double> uniform_grid(int points) {
    std::vector<double> g(points);
    for (int k = 0; k < points; ++k) g[k] = 2.0 * M_PI * k / points;
    return g;
}

}  // namespace

FringeScan fringe_scan(const AmplifierParams& p, const SourceSpec& source,
                       const std::vector<double>& phase_grid) {
    if (phase_grid.empty()) throw std::invalid_argument("fringe_scan: empty phase grid");
    InterferometerFront front = build_interferometer_front(p, source);
    FringeScan scan;
    scan.phase = phase_grid;
    scan.coincidence.reserve(phase_grid.size());
    for (double phi_f : phase_grid)
        scan.coincidence.push_back(interferometer_coincidence(front, p, phi_f));
    scan.visibility = visibility_of(scan.coincidence);
    return scan;
}

double fringe_visibility(const AmplifierParams& p, const SourceSpec& source) {
    return fringe_scan(p, source, uniform_grid(64)).visibility;
}

PhaseAverageResult phase_average(const AmplifierParams& p, int fringe_points, int source_points) {
    if (fringe_points < 4 || source_points < 4)
        throw std::invalid_argument("phase_average: need at least 4 grid points");
    const std::vector<double> fringe_grid = uniform_grid(fringe_points);

    SourceSpec fixed;
    fixed.kind = SourceSpec::Kind::superposed_two_photon;
    fixed.source_phase = M_PI / 2.0;  // quarter turn: maximal two-photon fringe contrast

    PhaseAverageResult res;
    res.fixed_phase = fixed.source_phase;
    res.visibility_fixed = fringe_scan(p, fixed, fringe_grid).visibility;

    std::vector<double> averaged(fringe_grid.size(), 0.0);
    for (int k = 0; k < source_points; ++k) {
        SourceSpec s = fixed;
        s.source_phase = 2.0 * M_PI * k / source_points;
        InterferometerFront front = build_interferometer_front(p, s);
        for (std::size_t j = 0; j < fringe_grid.size(); ++j)
            averaged[j] += interferometer_coincidence(front, p, fringe_grid[j]);
    }
    for (double& v : averaged) v /= source_points;
    res.visibility_averaged = visibility_of(averaged);

    if (res.visibility_fixed < 1e-12)
        throw std::domain_error("phase_average: fixed-phase fringe has no contrast");
    res.ratio = res.visibility_averaged / res.visibility_fixed;
    return res;
}

double measured_gain(const AmplifierParams& p) {
    p.validate();
    auto basis = build_basis({kRef, kIn, kAux, kOut}, 2);
    const std::size_t ii = basis->mode_index(kIn);
    const std::size_t io = basis->mode_index(kOut);
    std::vector<int> occ(4, 0);
    occ[ii] = 1;
    occ[io] = 1;
    const DensityOperator source = to_density(pure_state(basis, {{occ, 1.0}}));

    auto run = [&](bool block_input_ref, bool block_aux) {
        DensityOperator rho = apply_loss(source, kOut, p.loss_aux);
        rho = apply_beamsplitter(rho, Beamsplitter{kIn, kRef, p.vbs2_t, 0.0});
        rho = apply_beamsplitter(rho, Beamsplitter{kOut, kAux, p.t, 0.0});
        if (block_input_ref) rho = apply_loss(rho, kRef, 0.0);
        if (block_aux) rho = apply_loss(rho, kAux, 0.0);
        rho = apply_loss(rho, kIn, p.loss_in);
        rho = apply_phase(rho, kIn, p.phi);
        rho = apply_beamsplitter(rho, Beamsplitter{kAux, kIn, 0.5, 0.0});
        rho = apply_loss(rho, kOut, p.loss_out);
        return apply_beamsplitter(rho, Beamsplitter{kRef, kOut, 0.5, 0.0});
    };

    // The same two physical detectors serve both measurements, but their
    // positions are exchanged between them. The gated detector's efficiency
    // then appears in both numerators and cancels from the ratio; only the
    // free-running detector influences the result, through the heralding.
    auto herald_slot = [](const DetectorModel& det) {
        return WeightedPort{{kIn}, povm_diagonal(det, 2, default_herald_outcome(det))};
    };
    auto counter_slot = [](const DetectorModel& det) {
        return WeightedPort{{kRef}, counting_weights(det, 2)};
    };

    // Config (i): both interferometer paths blocked; the gated detector after
    // the herald splitter counts the input photon while the free-running
    // detector behind the closing splitter provides the singles.
    const DensityOperator rho_i = run(true, true);
    const WeightedPort free_running_i = counter_slot(p.counter_detector);
    const double singles_i = joint_diagonal_probability(rho_i, {free_running_i});
    const double coinc_i =
        joint_diagonal_probability(rho_i, {herald_slot(p.herald_detector), free_running_i});
    if (singles_i < kTiny) throw std::domain_error("measured_gain: no counter singles in config (i)");
    const double p_in = coinc_i / singles_i;

    // Config (ii): only the reference path blocked and the detectors swapped;
    // the free-running detector heralds while the gated one counts the output.
    const DensityOperator rho_ii = run(true, false);
    const WeightedPort free_running_ii = herald_slot(p.counter_detector);
    const double singles_ii = joint_diagonal_probability(rho_ii, {free_running_ii});
    const double coinc_ii =
        joint_diagonal_probability(rho_ii, {free_running_ii, counter_slot(p.herald_detector)});
    if (singles_ii < kTiny) throw std::domain_error("measured_gain: no herald singles in config (ii)");
    const double p_out = coinc_ii / singles_ii;

    if (p_in < kTiny) throw std::domain_error("measured_gain: vanishing input detection probability");
    return p_out / p_in;
}

std::vector<GainSweepRow> gain_sweep(const AmplifierParams& base, const SourceSpec& source,
                                     const std::vector<double>& t_grid) {
    source.validate();
    std::vector<AmplifierParams> row_params;
    row_params.reserve(t_grid.size());
    for (double t : t_grid) {
        AmplifierParams pt = base;
        pt.t = t;
        pt.validate();
        row_params.push_back(pt);
    }

    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(t_grid.size());
    std::vector<GainSweepRow> rows(t_grid.size());
    bool failed = false;
    std::string failure;

    const int nthreads = kernels::max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads) if (nthreads > 1 && n > 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            const AmplifierParams& pt = row_params[i];
            GainSweepRow row;
            row.t = pt.t;
            try {
                row.gain_ideal = gain_ideal(pt.t, base.alpha_sq);
            } catch (const std::domain_error&) {
                row.gain_ideal = quiet_nan();
            }
            try {
                row.gain_nonpnr = gain_nonpnr(pt.t, base.alpha_sq);
            } catch (const std::domain_error&) {
                row.gain_nonpnr = quiet_nan();
            }
            row.vmax = vmax(pt.t);
            const AmplifierResult sim = simulate_amplifier(pt);
            row.gain_simulated = sim.gain.value_or(quiet_nan());
            row.visibility_simulated = fringe_visibility(pt, source);
            rows[i] = row;
        } catch (const std::exception& e) {
#pragma omp critical
            {
                failed = true;
                failure = e.what();
            }
        }
    }
    if (failed) throw std::runtime_error("gain_sweep: " + failure);
    return rows;
}

namespace {

const std::string kSigM = "sig_m";  // signal, wavepacket matched to the partner
const std::string kSigU = "sig_u";  // signal, orthogonal wavepacket
const std::string kIdl = "idl";     // partner photon
const std::string kIdlU = "idl_u";  // partner's unmatched wavepacket (vacuum in)

StateVector hom_state(const SourceSpec& source) {
    source.validate();
    if (source.kind == SourceSpec::Kind::superposed_two_photon)
        throw std::invalid_argument("hom: source must be single_pair or spdc");
    const int nm = source.kind == SourceSpec::Kind::spdc ? source.n_max : 2;
    auto basis = build_basis({kSigM, kSigU, kIdl, kIdlU}, nm);

    StateVector psi(basis, std::vector<complexd>(basis->size(), 0.0));
    if (source.kind == SourceSpec::Kind::single_pair) {
        const complexd zeta = source.spdc.overlap;
        const double xi = std::sqrt(std::max(0.0, 1.0 - std::norm(zeta)));
        const std::size_t im = basis->mode_index(kSigM);
        const std::size_t iu = basis->mode_index(kSigU);
        const std::size_t ii = basis->mode_index(kIdl);
        std::vector<int> matched(4, 0), unmatched(4, 0);
        matched[im] = 1;
        matched[ii] = 1;
        unmatched[iu] = 1;
        unmatched[ii] = 1;
        psi = pure_state(basis, {{matched, zeta}, {unmatched, xi}});
    } else {
        psi = embed(distinguishable_pair(source.spdc, kSigM, kSigU, kIdl, nm), basis);
    }
    psi = apply_beamsplitter(psi, Beamsplitter{kSigM, kIdl, 0.5, 0.0});
    psi = apply_beamsplitter(psi, Beamsplitter{kSigU, kIdlU, 0.5, 0.0});
    return psi;
}

}  // namespace

double hom_coincidence(const SourceSpec& source, const DetectorModel& det_a,
                       const DetectorModel& det_b) {
    StateVector psi = hom_state(source);
    return all_click_probability(
        psi, {PortDetector{{kSigM, kSigU}, det_a}, PortDetector{{kIdl, kIdlU}, det_b}});
}

double hom_visibility(const SourceSpec& source, const DetectorModel& det_a,
                      const DetectorModel& det_b) {
    SourceSpec distinguishable = source;
    distinguishable.spdc.overlap = 0.0;
    const double c0 = hom_coincidence(distinguishable, det_a, det_b);
    if (c0 < kTiny) throw std::domain_error("hom_visibility: no coincidences to normalize against");
    return (c0 - hom_coincidence(source, det_a, det_b)) / c0;
}

HomScan hom_scan(const SourceSpec& source, double tau, const std::vector<double>& delay_grid,
                 const DetectorModel& det_a, const DetectorModel& det_b) {
    if (delay_grid.empty()) throw std::invalid_argument("hom_scan: empty delay grid");
    SourceSpec distinguishable = source;
    distinguishable.spdc.overlap = 0.0;
    const double baseline = hom_coincidence(distinguishable, det_a, det_b);
    if (baseline < kTiny) throw std::domain_error("hom_scan: no coincidences to normalize against");

    HomScan scan;
    scan.delay = delay_grid;
    scan.baseline = baseline;
    scan.coincidence.reserve(delay_grid.size());
    const complexd zeta0 = source.spdc.overlap;
    for (double d : delay_grid) {
        SourceSpec s = source;
        s.spdc.overlap = zeta0 * delay_overlap(d, tau);
        scan.coincidence.push_back(hom_coincidence(s, det_a, det_b));
    }
    const double cmin = *std::min_element(scan.coincidence.begin(), scan.coincidence.end());
    scan.visibility = (baseline - cmin) / baseline;
    return scan;
}

double find_unity_crossing(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(lo < hi)) throw std::invalid_argument("find_unity_crossing: invalid bracket");
    double flo = f(lo) - 1.0;
    double fhi = f(hi) - 1.0;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("find_unity_crossing: endpoints do not straddle 1");
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid) - 1.0;
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace scissorsim
