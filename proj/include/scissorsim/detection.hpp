#ifndef SCISSORSIM_DETECTION_HPP
#define SCISSORSIM_DETECTION_HPP

#include <string>
#include <vector>

#include "scissorsim/fock.hpp"

namespace scissorsim {

// Single-mode photon detector. `ideal_pnr` resolves exact photon number
// with unit efficiency and no dark counts; `threshold` answers click /
// no-click, missing each photon independently with probability
// 1 - efficiency and firing on vacuum with probability dark_count_prob.
struct DetectorModel {
    enum class Kind { ideal_pnr, threshold };

    Kind kind = Kind::ideal_pnr;
    double efficiency = 1.0;
    double dark_count_prob = 0.0;

    static DetectorModel make_ideal_pnr();
    static DetectorModel make_threshold(double efficiency, double dark_count_prob = 0.0);

    void validate() const;

    // Probability of *no* click given n photons arriving. For ideal_pnr this
    // is the n == 0 indicator.
    double no_click_probability(int n) const;
};

struct PovmElement {
    std::string outcome;
    CMat op;  // (n_max+1) x (n_max+1), diagonal in the number basis
};

// The detector's POVM on a single mode truncated at n_max. Elements sum to
// the identity. ideal_pnr yields projectors labeled "0".."n_max";
// threshold yields "no_click" and "click".
std::vector<PovmElement> povm_elements(const DetectorModel& det, int n_max);

// Diagonal of the POVM element for `outcome`, over n = 0..n_max.
std::vector<double> povm_diagonal(const DetectorModel& det, int n_max, const std::string& outcome);

struct HeraldOutcome {
    DensityOperator conditioned_state;  // detected mode removed; trace == probability
    double probability = 0.0;
};

// Measure `mode` with `det`, post-select on `outcome`, and drop the mode:
// sqrt(POVM) is applied on both sides, then the mode is traced out. The
// returned state is left sub-normalized. An (numerically) impossible
// outcome returns probability 0 with a zero state instead of throwing.
HeraldOutcome herald(const DensityOperator& rho, const std::string& mode, const DetectorModel& det,
                     const std::string& outcome);

// A physical detector watching one or more modes of a state (a spatial
// output port may comprise several internal modes whose photon numbers add).
struct PortDetector {
    std::vector<std::string> modes;
    DetectorModel det;
};

// Outcome label a detector announces a successful herald with: "1" for
// ideal_pnr, "click" for threshold.
std::string default_herald_outcome(const DetectorModel& det);

// Detection-event weight per port photon number: probability that the
// detector fires given n photons at the port (>=1 photon for ideal_pnr).
std::vector<double> counting_weights(const DetectorModel& det, int n_max);

// A port together with the diagonal outcome weights (indexed by the port's
// total photon number) to apply.
struct WeightedPort {
    std::vector<std::string> modes;
    std::vector<double> weights;
};

// Exact joint probability of all listed port outcomes. Every POVM here is
// diagonal in the Fock basis and the ports are disjoint, so the joint
// probability is a single diagonal expectation.
double joint_diagonal_probability(const DensityOperator& rho, const std::vector<WeightedPort>& ports);
double joint_diagonal_probability(const StateVector& psi, const std::vector<WeightedPort>& ports);

// Probability that every listed port clicks.
double all_click_probability(const DensityOperator& rho, const std::vector<PortDetector>& ports);
double all_click_probability(const StateVector& psi, const std::vector<PortDetector>& ports);

}  // namespace scissorsim

#endif
