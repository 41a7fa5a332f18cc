#include "scissorsim/elements.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace scissorsim {

namespace {

void check_unit_interval(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

// Pascal triangle up to the basis cutoff; binomials stay exactly
// representable in double at these sizes.
std::vector<std::vector<double>> binomials(int n) {
    std::vector<std::vector<double>> c(n + 1);
    for (int i = 0; i <= n; ++i) {
        c[i].assign(i + 1, 1.0);
        for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return c;
}

}  // namespace

std::array<std::array<complexd, 2>, 2> Beamsplitter::mode_matrix() const {
    check_unit_interval(transmission, "Beamsplitter transmission");
    const double rt = std::sqrt(transmission);
    const double rr = std::sqrt(1.0 - transmission);
    const complexd eip = std::polar(1.0, phase);
    return {{{complexd{rt, 0.0}, eip * rr}, {std::conj(eip) * rr, complexd{-rt, 0.0}}}};
}

CMat two_mode_unitary(const BasisPtr& basis, const std::string& mode_a, const std::string& mode_b,
                      const std::array<std::array<complexd, 2>, 2>& u) {
    if (mode_a == mode_b) throw std::invalid_argument("two_mode_unitary: modes must differ");
    const FockBasis& fb = *basis;
    const std::size_t ia = fb.mode_index(mode_a);
    const std::size_t ib = fb.mode_index(mode_b);
    const int nmax = fb.n_max();

    // Unitarity of the mode matrix guarantees unitarity of the lift.
    const complexd r0 = u[0][0] * std::conj(u[0][0]) + u[0][1] * std::conj(u[0][1]);
    const complexd r1 = u[1][0] * std::conj(u[1][0]) + u[1][1] * std::conj(u[1][1]);
    const complexd x = u[0][0] * std::conj(u[1][0]) + u[0][1] * std::conj(u[1][1]);
    if (std::abs(r0 - 1.0) > 1e-9 || std::abs(r1 - 1.0) > 1e-9 || std::abs(x) > 1e-9)
        throw std::invalid_argument("two_mode_unitary: mode matrix is not unitary");

    const auto binom = binomials(nmax);

    // Powers of the four matrix entries up to n_max.
    auto powers = [&](complexd v) {
        std::vector<complexd> p(nmax + 1);
        p[0] = 1.0;
        for (int k = 1; k <= nmax; ++k) p[k] = p[k - 1] * v;
        return p;
    };
    const auto pa = powers(u[0][0]);
    const auto pb = powers(u[0][1]);
    const auto pc = powers(u[1][0]);
    const auto pd = powers(u[1][1]);

    // Sector transforms: sector[s](p, na) is the amplitude for (na, s-na)
    // photons in (mode_a, mode_b) to come out as (p, s-p). Expanding
    // (a^)^na (b^)^nb under the substitution gives a double binomial sum;
    // the normalization reduces to sqrt(C(s,na)/C(s,p)).
    std::vector<CMat> sector(nmax + 1);
    for (int s = 0; s <= nmax; ++s) {
        sector[s] = CMat(s + 1, s + 1);
        for (int na = 0; na <= s; ++na) {
            const int nb = s - na;
            for (int p = 0; p <= s; ++p) {
                complexd acc = 0.0;
                const int jlo = std::max(0, p - nb);
                const int jhi = std::min(na, p);
                for (int j = jlo; j <= jhi; ++j) {
                    const int k = p - j;
                    acc += binom[na][j] * binom[nb][k] * pa[j] * pb[na - j] * pc[k] * pd[nb - k];
                }
                sector[s](p, na) = acc * std::sqrt(binom[s][na] / binom[s][p]);
            }
        }
    }

    const std::size_t d = fb.size();
    CMat out(d, d);
    std::vector<int> occ;
    for (std::size_t col = 0; col < d; ++col) {
        occ = fb.occupation(col);
        const int na = occ[ia];
        const int nb = occ[ib];
        const int s = na + nb;
        for (int p = 0; p <= s; ++p) {
            const complexd amp = sector[s](p, na);
            if (amp == complexd{0.0, 0.0}) continue;
            occ[ia] = p;
            occ[ib] = s - p;
            out(fb.index_of(occ), col) += amp;
        }
        occ[ia] = na;
        occ[ib] = nb;
    }
    return out;
}

CMat beamsplitter_unitary(const BasisPtr& basis, const Beamsplitter& bs) {
    return two_mode_unitary(basis, bs.mode_a, bs.mode_b, bs.mode_matrix());
}

StateVector apply_beamsplitter(const StateVector& psi, const Beamsplitter& bs) {
    const CMat u = beamsplitter_unitary(psi.basis(), bs);
    return StateVector(psi.basis(), kernels::matvec(u, psi.amplitudes()));
}

DensityOperator apply_beamsplitter(const DensityOperator& rho, const Beamsplitter& bs) {
    const CMat u = beamsplitter_unitary(rho.basis(), bs);
    return DensityOperator(rho.basis(), kernels::sandwich(u, rho.matrix()));
}

namespace {

std::vector<complexd> phase_factors(const FockBasis& fb, const std::string& mode, double phi) {
    const std::size_t im = fb.mode_index(mode);
    std::vector<complexd> f(fb.size());
    for (std::size_t i = 0; i < fb.size(); ++i) f[i] = std::polar(1.0, phi * fb.occupation(i)[im]);
    return f;
}

}  // namespace

StateVector apply_phase(const StateVector& psi, const std::string& mode, double phi) {
    const auto f = phase_factors(*psi.basis(), mode, phi);
    std::vector<complexd> amps = psi.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= f[i];
    return StateVector(psi.basis(), std::move(amps));
}

DensityOperator apply_phase(const DensityOperator& rho, const std::string& mode, double phi) {
    const auto f = phase_factors(*rho.basis(), mode, phi);
    CMat m = rho.matrix();
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m(i, j) *= f[i] * std::conj(f[j]);
    return DensityOperator(rho.basis(), std::move(m));
}

DensityOperator apply_loss(const DensityOperator& rho, const LossChannel& loss) {
    check_unit_interval(loss.transmission, "LossChannel transmission");
    const FockBasis& fb = *rho.basis();
    if (!fb.has_mode(loss.mode)) throw std::out_of_range("apply_loss: unknown mode '" + loss.mode + "'");
    if (loss.transmission == 1.0) return rho;

    std::string env = "~env";
    for (int k = 0; fb.has_mode(env); ++k) env = "~env" + std::to_string(k);

    std::vector<std::string> names = fb.mode_names();
    names.push_back(env);
    BasisPtr enlarged = build_basis(std::move(names), fb.n_max());

    DensityOperator big = embed(rho, enlarged);
    big = apply_beamsplitter(big, Beamsplitter{loss.mode, env, loss.transmission, 0.0});
    return partial_trace(big, fb.mode_names());
}

DensityOperator apply_loss(const DensityOperator& rho, const std::string& mode, double transmission) {
    return apply_loss(rho, LossChannel{mode, transmission});
}

}  // namespace scissorsim
