#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scissorsim/detection.hpp"
#include "scissorsim/elements.hpp"
#include "scissorsim/fock.hpp"
#include "scissorsim/spdc.hpp"

namespace scissorsim {

// How the signal entering the amplifier is prepared.
//   vbs2_split : a single photon split on a variable beamsplitter of
//                transmission vbs2_t; the reflected part (amplitude
//                sqrt(1-vbs2_t)) travels alongside as a reference arm "a".
//   mixture    : incoherent mixture alpha_sq |0><0| + (1-alpha_sq) |1><1|.
//   coherent   : pure superposition input_alpha |0> + input_beta |1>.
enum class InputKind { vbs2_split, mixture, coherent };

struct AmplifierParams {
    double t = 0.5;         // VBS1 transmission (the gain knob)
    double alpha_sq = 0.5;  // vacuum weight of the input qubit
    double vbs2_t = 0.5;    // VBS2 transmission used by vbs2_split preparation
    double phi = 0.0;       // relative phase applied to the input arm before the herald splitter

    double loss_in = 1.0;   // transmission of the input path (before the herald splitter)
    double loss_aux = 1.0;  // transmission of the auxiliary photon path (before VBS1)
    double loss_out = 1.0;  // transmission of the output path (after VBS1)

    DetectorModel herald_detector = DetectorModel::make_ideal_pnr();
    DetectorModel counter_detector = DetectorModel::make_threshold(1.0, 0.0);

    InputKind input_kind = InputKind::vbs2_split;
    complexd input_alpha{0.7071067811865476, 0.0};  // coherent preparation only
    complexd input_beta{0.7071067811865476, 0.0};

    void validate() const;
};

struct AmplifierResult {
    DensityOperator output_state;     // conditioned, renormalized output-mode state
    double herald_probability = 0.0;  // probability of the chosen herald outcome
    // Twice the summed probability of the two equivalent herald outcomes
    // (both detectors at the herald splitter announce a usable event).
    double success_probability_total = 0.0;
    std::optional<double> gain;  // single-photon weight ratio out/in; empty when undefined
    double single_photon_weight_in = 0.0;
    double single_photon_weight_out = 0.0;
};

// Closed-form gain of the ideal amplifier with a number-resolving herald.
double gain_ideal(double t, double alpha_sq);

// Closed-form gain when the herald only distinguishes click / no click,
// so two-photon events at the herald are accepted as well.
double gain_nonpnr(double t, double alpha_sq);

// Upper bound on the heralded interference visibility at VBS1 transmission t.
double vmax(double t);

// State of the amplifier just after the herald splitter, before any
// detection, together with the single-photon weight of the input arm
// measured right before that splitter. Modes: ["a",]"in","c","out";
// the herald splitter maps "c" to the symmetric and "in" to the
// antisymmetric detector port.
struct AmplifierPreHerald {
    DensityOperator state;
    double weight_in = 0.0;
};
AmplifierPreHerald amplifier_pre_herald_state(const AmplifierParams& p);

// Full amplifier run: prepare, interfere, herald on the symmetric port,
// apply output loss and report the conditioned output state and gain.
AmplifierResult simulate_amplifier(const AmplifierParams& p);

// Photon source feeding the two-arm interferometer experiments.
struct SourceSpec {
    enum class Kind {
        single_pair,             // exactly one photon per arm
        spdc,                    // two-mode squeezed vacuum, includes multi-pair terms
        superposed_two_photon,   // two indistinguishable photons in a symmetrized
                                 // superposition of the arms, relative phase source_phase
    };
    Kind kind = Kind::single_pair;
    SpdcSource spdc{};           // used for Kind::spdc (and overlap for HOM scans)
    double source_phase = 0.0;   // used for Kind::superposed_two_photon
    int n_max = 4;               // photon cutoff for Kind::spdc (others are exact at 2)

    void validate() const;
};

// Interferometer state after the herald splitter with the closing
// beamsplitter not yet applied; reused across fringe phases.
struct InterferometerFront {
    DensityOperator state;  // modes "a","in","c","out"
    CMat closing_unitary;   // 50/50 recombination of "a" and "out"
};
InterferometerFront build_interferometer_front(const AmplifierParams& p, const SourceSpec& source);

struct InterferometerOutput {
    DensityOperator final_state;          // modes "a","in","c","out" after recombination
    double coincidence_probability = 0.0; // herald port ("in") and counter port ("a") both fire
};

// One full pass through the two-arm interferometer at a given fringe phase.
InterferometerOutput simulate_full_interferometer(const AmplifierParams& p, const SourceSpec& source,
                                                  double fringe_phase);

double interferometer_coincidence(const InterferometerFront& front, const AmplifierParams& p,
                                  double fringe_phase);

struct FringeScan {
    std::vector<double> phase;
    std::vector<double> coincidence;
    double visibility = 0.0;
};

FringeScan fringe_scan(const AmplifierParams& p, const SourceSpec& source,
                       const std::vector<double>& phase_grid);

// Visibility on a uniform 64-point fringe grid.
double fringe_visibility(const AmplifierParams& p, const SourceSpec& source);

struct PhaseAverageResult {
    double fixed_phase = 0.0;          // source phase used for the fixed-phase fringe
    double visibility_fixed = 0.0;     // fringe visibility at that fixed source phase
    double visibility_averaged = 0.0;  // visibility after uniform source-phase averaging
    double ratio = 0.0;                // averaged / fixed
};

// Compare the two-photon fringe at a fixed source phase against the fringe
// left after averaging the source phase uniformly over [0, 2pi).
PhaseAverageResult phase_average(const AmplifierParams& p, int fringe_points = 64,
                                 int source_points = 64);

// Gain extracted the way the experiment measures it: two blocking
// configurations, each giving a coincidence-to-singles ratio, whose quotient
// is the amplifier gain. The two physical detectors (p.herald_detector gated,
// p.counter_detector free-running) swap positions between the configurations,
// which cancels the gated detector's efficiency from the ratio. With equal
// detectors and no loss this reduces to gain_ideal (number-resolved) or
// gain_nonpnr (click-only). Uses one photon pair.
double measured_gain(const AmplifierParams& p);

struct GainSweepRow {
    double t = 0.0;
    double gain_ideal = 0.0;
    double gain_nonpnr = 0.0;
    double gain_simulated = 0.0;  // NaN when undefined
    double vmax = 0.0;
    double visibility_simulated = 0.0;
};

// Sweep VBS1 transmission; closed-form columns alongside simulated ones.
std::vector<GainSweepRow> gain_sweep(const AmplifierParams& base, const SourceSpec& source,
                                     const std::vector<double>& t_grid);

// Two-photon interference of a heralded photon against a partially
// distinguishable partner: coincidence probability across a 50/50
// beamsplitter pair, one per wavepacket.
double hom_coincidence(const SourceSpec& source, const DetectorModel& det_a, const DetectorModel& det_b);

// Dip visibility (C_distinguishable - C) / C_distinguishable at the
// source's stated wavepacket overlap.
double hom_visibility(const SourceSpec& source, const DetectorModel& det_a, const DetectorModel& det_b);

struct HomScan {
    std::vector<double> delay;
    std::vector<double> coincidence;
    double baseline = 0.0;    // coincidence level for fully distinguishable packets
    double visibility = 0.0;  // (baseline - min coincidence) / baseline
};

// Coincidence versus relative delay; the wavepacket overlap decays as a
// Gaussian of width tau scaled by the source's zero-delay overlap.
HomScan hom_scan(const SourceSpec& source, double tau, const std::vector<double>& delay_grid,
                 const DetectorModel& det_a, const DetectorModel& det_b);

// Locate f(x) = 1 by bisection on [lo, hi]; f(lo) and f(hi) must straddle 1.
double find_unity_crossing(const std::function<double(double)>& f, double lo, double hi,
                           double tol = 1e-10);

}  // namespace scissorsim
