#ifndef SCISSORSIM_ELEMENTS_HPP
#define SCISSORSIM_ELEMENTS_HPP

#include <array>
#include <string>

#include "scissorsim/fock.hpp"

namespace scissorsim {

// Lossless two-mode coupler with transmission t and phase phi, acting on
// creation operators as
//   a^ -> sqrt(t) a^ + e^{i phi} sqrt(1-t) b^
//   b^ -> e^{-i phi} sqrt(1-t) a^ - sqrt(t) b^
// which at t = 1/2, phi = 0 sends photons into the (a +/- b)/sqrt(2)
// superpositions used for heralding.
struct Beamsplitter {
    std::string mode_a;
    std::string mode_b;
    double transmission = 0.5;
    double phase = 0.0;

    // The 2x2 mode matrix above; row/column order (a, b).
    std::array<std::array<complexd, 2>, 2> mode_matrix() const;
};

// Photon loss on one mode: each photon independently survives with
// probability `transmission`.
struct LossChannel {
    std::string mode;
    double transmission = 1.0;
};

// Fock-space unitary induced by an arbitrary 2x2 unitary acting on the
// creation operators of two modes of `basis`. The matrix must be unitary to
// ~1e-9; photon number is conserved exactly by construction.
CMat two_mode_unitary(const BasisPtr& basis, const std::string& mode_a, const std::string& mode_b,
                      const std::array<std::array<complexd, 2>, 2>& u);

// Full-basis unitary matrix of a beamsplitter.
CMat beamsplitter_unitary(const BasisPtr& basis, const Beamsplitter& bs);

StateVector apply_beamsplitter(const StateVector& psi, const Beamsplitter& bs);
DensityOperator apply_beamsplitter(const DensityOperator& rho, const Beamsplitter& bs);

// Phase shift: |n> on `mode` picks up e^{i n phi}.
StateVector apply_phase(const StateVector& psi, const std::string& mode, double phi);
DensityOperator apply_phase(const DensityOperator& rho, const std::string& mode, double phi);

// Loss is realized exactly by coupling the mode to a fresh vacuum
// environment mode on a transmission-`t` beamsplitter and tracing the
// environment out; states at the photon cutoff lose no amplitude to
// truncation because the environment only receives removed photons.
DensityOperator apply_loss(const DensityOperator& rho, const LossChannel& loss);
DensityOperator apply_loss(const DensityOperator& rho, const std::string& mode, double transmission);

}  // namespace scissorsim

#endif
