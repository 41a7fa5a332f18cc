#include "scissorsim/spdc.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace scissorsim {

void SpdcSource::validate() const {
    if (!(squeezing >= 0.0)) throw std::invalid_argument("SpdcSource: squeezing must be >= 0");
    if (std::abs(overlap) > 1.0 + 1e-12)
        throw std::invalid_argument("SpdcSource: |overlap| must be <= 1");
}

StateVector pair_state(const SpdcSource& src, const std::string& signal, const std::string& idler,
                       int n_max) {
    src.validate();
    BasisPtr basis = build_basis({signal, idler}, n_max);
    std::vector<std::pair<std::vector<int>, complexd>> terms;
    double norm_sq = 0.0;
    double amp = 1.0;
    for (int k = 0; 2 * k <= n_max; ++k) {
        terms.push_back({{k, k}, amp});
        norm_sq += amp * amp;
        amp *= src.squeezing;
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& [occ, a] : terms) a *= scale;
    return pure_state(basis, terms);
}

StateVector distinguishable_pair(const SpdcSource& src, const std::string& signal_matched,
                                 const std::string& signal_unmatched, const std::string& idler,
                                 int n_max) {
    src.validate();
    BasisPtr basis = build_basis({signal_matched, signal_unmatched, idler}, n_max);

    // k pairs contribute (zeta m^ + sqrt(1-|zeta|^2) u^)^k (i^)^k / k! to the
    // exponential series; expanding the binomial and normalizing Fock states
    // gives amplitude squeezing^k C(k,j) zeta^j xi^{k-j} sqrt(j!(k-j)!k!)/k!
    // for |j, k-j, k>.
    const complexd zeta = src.overlap;
    const double xi = std::sqrt(std::max(0.0, 1.0 - std::norm(zeta)));

    std::vector<double> fact{1.0};
    for (int n = 1; n <= n_max; ++n) fact.push_back(fact.back() * n);
    auto binom = [&](int n, int k) { return fact[n] / (fact[k] * fact[n - k]); };

    std::vector<std::pair<std::vector<int>, complexd>> terms;
    double norm_sq = 0.0;
    double lam = 1.0;
    for (int k = 0; 2 * k <= n_max; ++k) {
        complexd zj = 1.0;
        for (int j = 0; j <= k; ++j) {
            const complexd a = lam * binom(k, j) * zj * std::pow(xi, k - j) *
                               std::sqrt(fact[j] * fact[k - j] * fact[k]) / fact[k];
            if (a != complexd{0.0, 0.0}) {
                terms.push_back({{j, k - j, k}, a});
                norm_sq += std::norm(a);
            }
            zj *= zeta;
        }
        lam *= src.squeezing;
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& [occ, a] : terms) a *= scale;
    return pure_state(basis, terms);
}

double delay_overlap(double delay, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("delay_overlap: tau must be positive");
    const double x = delay / tau;
    return std::exp(-x * x);
}

}  // namespace scissorsim
