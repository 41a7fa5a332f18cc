#ifndef SCISSORSIM_FOCK_HPP
#define SCISSORSIM_FOCK_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scissorsim/dense.hpp"

namespace scissorsim {

// Truncated multimode Fock space: every occupation vector (n_1..n_M) with
// n_1 + ... + n_M <= n_max, over named modes. The canonical order groups
// states by total photon number ascending and sorts lexicographically
// within a group, so index 0 is always the vacuum.
class FockBasis {
  public:
    FockBasis(std::vector<std::string> mode_names, int n_max);

    std::size_t size() const { return states_.size(); }
    int n_max() const { return n_max_; }
    std::size_t mode_count() const { return mode_names_.size(); }
    const std::vector<std::string>& mode_names() const { return mode_names_; }

    // Position of a named mode inside occupation vectors; throws on unknown names.
    std::size_t mode_index(const std::string& name) const;
    bool has_mode(const std::string& name) const;

    const std::vector<int>& occupation(std::size_t index) const { return states_[index]; }
    int total_photons(std::size_t index) const { return totals_[index]; }

    std::size_t index_of(const std::vector<int>& occupation) const;
    bool contains(const std::vector<int>& occupation) const;

    bool same_as(const FockBasis& other) const;

  private:
    std::vector<std::string> mode_names_;
    int n_max_;
    std::vector<std::vector<int>> states_;
    std::vector<int> totals_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

BasisPtr build_basis(std::vector<std::string> mode_names, int n_max);

// Pure state over a basis. Amplitudes are stored in canonical basis order.
// Sub-normalized states are legal (norm <= 1); nothing auto-normalizes.
class StateVector {
  public:
    StateVector(BasisPtr basis, std::vector<complexd> amplitudes);

    const BasisPtr& basis() const { return basis_; }
    const std::vector<complexd>& amplitudes() const { return amps_; }
    std::vector<complexd>& amplitudes() { return amps_; }

    complexd amplitude(const std::vector<int>& occupation) const;
    double norm() const;
    StateVector normalized() const;

  private:
    BasisPtr basis_;
    std::vector<complexd> amps_;
};

// Mixed (or sub-normalized) state as a dense matrix in the basis order.
class DensityOperator {
  public:
    DensityOperator(BasisPtr basis, CMat matrix);

    const BasisPtr& basis() const { return basis_; }
    const CMat& matrix() const { return mat_; }
    CMat& matrix() { return mat_; }

    double trace() const;
    complexd element(std::size_t i, std::size_t j) const { return mat_(i, j); }

    // Largest |rho - rho^dagger| entry; zero for an exactly Hermitian matrix.
    double hermiticity_defect() const;

    // Probability weight of total photon number n in the named mode.
    double mode_weight(const std::string& mode, int n) const;

    DensityOperator normalized() const;

  private:
    BasisPtr basis_;
    CMat mat_;
};

// terms: (occupation vector, amplitude) pairs; unmentioned basis states get 0.
// Rejects occupations outside the basis and overall norm > 1 + 1e-9.
StateVector pure_state(const BasisPtr& basis,
                       const std::vector<std::pair<std::vector<int>, complexd>>& terms);

DensityOperator to_density(const StateVector& psi);

// Convex combination sum_k w_k rho_k. Weights must be non-negative and sum
// to <= 1 + 1e-9; all operators must share one basis.
DensityOperator mix(const std::vector<std::pair<double, DensityOperator>>& parts);

// Trace out every mode not listed in `keep`. The result's mode order is the
// order of `keep`. Keeping everything is the identity up to mode reorder.
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::string>& keep);

// Same state in a larger basis: target must contain all source modes (by
// name) and have n_max at least as large; missing modes are vacuum.
StateVector embed(const StateVector& psi, const BasisPtr& target);
DensityOperator embed(const DensityOperator& rho, const BasisPtr& target);

// Product state on the concatenated mode list. Throws if any nonzero joint
// amplitude would exceed the requested photon cutoff.
StateVector tensor_product(const StateVector& a, const StateVector& b, int n_max);
DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b, int n_max);

}  // namespace scissorsim

#endif
