#ifndef SCISSORSIM_SPDC_HPP
#define SCISSORSIM_SPDC_HPP

#include <string>

#include "scissorsim/fock.hpp"

namespace scissorsim {

// Photon-pair source pumped below saturation: emits k signal/idler pairs
// with amplitude ~ squeezing^k. `overlap` is the complex amplitude for a
// signal photon to occupy the wavepacket matched to its idler partner;
// |overlap| < 1 models temporal/spectral distinguishability (e.g. a delay
// line), with the remainder going to an orthogonal unmatched wavepacket.
struct SpdcSource {
    double squeezing = 0.1;       // >= 0, dimensionless pair amplitude
    complexd overlap = {1.0, 0.0};  // |overlap| <= 1

    void validate() const;
};

// Renormalized two-mode squeezed vacuum truncated at n_max total photons:
// sum_k squeezing^k |k, k> over (signal, idler). Overlap is ignored here;
// both photons of a pair sit in their nominal wavepackets.
StateVector pair_state(const SpdcSource& src, const std::string& signal, const std::string& idler,
                       int n_max);

// Same source with the signal photon split over a matched and an orthogonal
// unmatched wavepacket: each signal creation operator becomes
// overlap * matched^ + sqrt(1 - |overlap|^2) * unmatched^. Modes are
// (signal_matched, signal_unmatched, idler).
StateVector distinguishable_pair(const SpdcSource& src, const std::string& signal_matched,
                                 const std::string& signal_unmatched, const std::string& idler,
                                 int n_max);

// Wavepacket overlap for a relative delay with a Gaussian coherence
// profile of 1/e half-width tau: exp(-(delay/tau)^2).
double delay_overlap(double delay, double tau);

}  // namespace scissorsim

#endif
