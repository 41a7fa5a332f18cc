#include "scissorsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace scissorsim {

namespace {

constexpr int kMaxModes = 12;
constexpr int kMaxPhotons = 31;  // 5 bits per mode in the packed key

std::uint64_t pack_occupation(const std::vector<int>& occ) {
    std::uint64_t key = 0;
    for (std::size_t m = 0; m < occ.size(); ++m)
        key |= static_cast<std::uint64_t>(occ[m]) << (5 * m);
    return key;
}

}  // namespace

FockBasis::FockBasis(std::vector<std::string> mode_names, int n_max)
    : mode_names_(std::move(mode_names)), n_max_(n_max) {
    if (mode_names_.empty()) throw std::invalid_argument("FockBasis: no modes");
    if (mode_names_.size() > kMaxModes) throw std::invalid_argument("FockBasis: too many modes");
    if (n_max_ < 0 || n_max_ > kMaxPhotons) throw std::invalid_argument("FockBasis: n_max out of range");
    std::set<std::string> seen;
    for (const auto& name : mode_names_) {
        if (name.empty()) throw std::invalid_argument("FockBasis: empty mode name");
        if (!seen.insert(name).second)
            throw std::invalid_argument("FockBasis: duplicate mode name '" + name + "'");
    }

    const std::size_t m = mode_names_.size();
    std::vector<int> occ(m, 0);
    // Odometer over occupation vectors; a digit may only grow while the
    // prefix sum stays within the photon budget, everything right of it resets.
    while (true) {
        states_.push_back(occ);
        bool advanced = false;
        for (std::size_t pos = m; pos-- > 0;) {
            int prefix = 0;
            for (std::size_t k = 0; k < pos; ++k) prefix += occ[k];
            if (prefix + occ[pos] + 1 <= n_max_) {
                ++occ[pos];
                std::fill(occ.begin() + static_cast<std::ptrdiff_t>(pos) + 1, occ.end(), 0);
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }

    std::sort(states_.begin(), states_.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        int ta = 0, tb = 0;
        for (int v : a) ta += v;
        for (int v : b) tb += v;
        if (ta != tb) return ta < tb;
        return a < b;
    });

    totals_.reserve(states_.size());
    index_.reserve(states_.size() * 2);
    for (std::size_t i = 0; i < states_.size(); ++i) {
        int t = 0;
        for (int v : states_[i]) t += v;
        totals_.push_back(t);
        index_.emplace(pack_occupation(states_[i]), i);
    }
}

std::size_t FockBasis::mode_index(const std::string& name) const {
    for (std::size_t i = 0; i < mode_names_.size(); ++i)
        if (mode_names_[i] == name) return i;
    throw std::out_of_range("FockBasis: unknown mode '" + name + "'");
}

bool FockBasis::has_mode(const std::string& name) const {
    return std::find(mode_names_.begin(), mode_names_.end(), name) != mode_names_.end();
}

std::size_t FockBasis::index_of(const std::vector<int>& occupation) const {
    if (occupation.size() != mode_names_.size())
        throw std::invalid_argument("FockBasis: occupation arity mismatch");
    auto it = index_.find(pack_occupation(occupation));
    if (it == index_.end()) throw std::out_of_range("FockBasis: occupation outside basis");
    return it->second;
}

bool FockBasis::contains(const std::vector<int>& occupation) const {
    if (occupation.size() != mode_names_.size()) return false;
    int total = 0;
    for (int v : occupation) {
        if (v < 0) return false;
        total += v;
    }
    if (total > n_max_) return false;
    return index_.count(pack_occupation(occupation)) != 0;
}

bool FockBasis::same_as(const FockBasis& other) const {
    return this == &other || (n_max_ == other.n_max_ && mode_names_ == other.mode_names_);
}

BasisPtr build_basis(std::vector<std::string> mode_names, int n_max) {
    return std::make_shared<const FockBasis>(std::move(mode_names), n_max);
}

StateVector::StateVector(BasisPtr basis, std::vector<complexd> amplitudes)
    : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
    if (!basis_) throw std::invalid_argument("StateVector: null basis");
    if (amps_.size() != basis_->size())
        throw std::invalid_argument("StateVector: amplitude count does not match basis size");
}

complexd StateVector::amplitude(const std::vector<int>& occupation) const {
    return amps_[basis_->index_of(occupation)];
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n <= 0.0) throw std::domain_error("StateVector: cannot normalize zero state");
    std::vector<complexd> scaled(amps_);
    for (auto& a : scaled) a /= n;
    return StateVector(basis_, std::move(scaled));
}

DensityOperator::DensityOperator(BasisPtr basis, CMat matrix)
    : basis_(std::move(basis)), mat_(std::move(matrix)) {
    if (!basis_) throw std::invalid_argument("DensityOperator: null basis");
    if (mat_.rows != basis_->size() || mat_.cols != basis_->size())
        throw std::invalid_argument("DensityOperator: matrix shape does not match basis size");
}

double DensityOperator::trace() const { return scissorsim::trace(mat_).real(); }

double DensityOperator::hermiticity_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < mat_.rows; ++i)
        for (std::size_t j = i; j < mat_.cols; ++j)
            d = std::max(d, std::abs(mat_(i, j) - std::conj(mat_(j, i))));
    return d;
}

double DensityOperator::mode_weight(const std::string& mode, int n) const {
    const std::size_t m = basis_->mode_index(mode);
    double w = 0.0;
    for (std::size_t i = 0; i < basis_->size(); ++i)
        if (basis_->occupation(i)[m] == n) w += mat_(i, i).real();
    return w;
}

DensityOperator DensityOperator::normalized() const {
    const double t = trace();
    if (t <= 0.0) throw std::domain_error("DensityOperator: cannot normalize zero state");
    CMat m = mat_;
    for (auto& v : m.data) v /= t;
    return DensityOperator(basis_, std::move(m));
}

StateVector pure_state(const BasisPtr& basis,
                       const std::vector<std::pair<std::vector<int>, complexd>>& terms) {
    if (!basis) throw std::invalid_argument("pure_state: null basis");
    std::vector<complexd> amps(basis->size(), complexd{0.0, 0.0});
    for (const auto& [occ, amp] : terms) {
        if (!basis->contains(occ))
            throw std::invalid_argument("pure_state: occupation outside basis");
        amps[basis->index_of(occ)] += amp;
    }
    StateVector psi(basis, std::move(amps));
    if (psi.norm() > 1.0 + 1e-9) throw std::invalid_argument("pure_state: norm exceeds 1");
    return psi;
}

DensityOperator to_density(const StateVector& psi) {
    const auto& a = psi.amplitudes();
    const std::size_t n = a.size();
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == complexd{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < n; ++j) m(i, j) = a[i] * std::conj(a[j]);
    }
    return DensityOperator(psi.basis(), std::move(m));
}

DensityOperator mix(const std::vector<std::pair<double, DensityOperator>>& parts) {
    if (parts.empty()) throw std::invalid_argument("mix: empty mixture");
    const BasisPtr& basis = parts.front().second.basis();
    double wsum = 0.0;
    for (const auto& [w, rho] : parts) {
        if (w < 0.0) throw std::invalid_argument("mix: negative weight");
        if (!rho.basis()->same_as(*basis)) throw std::invalid_argument("mix: basis mismatch");
        wsum += w;
    }
    if (wsum > 1.0 + 1e-9) throw std::invalid_argument("mix: weights sum above 1");
    CMat m(basis->size(), basis->size());
    for (const auto& [w, rho] : parts) {
        if (w == 0.0) continue;
        const CMat& src = rho.matrix();
        for (std::size_t k = 0; k < m.data.size(); ++k) m.data[k] += w * src.data[k];
    }
    return DensityOperator(basis, std::move(m));
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::string>& keep) {
    const FockBasis& full = *rho.basis();
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep list empty");
    std::set<std::string> seen;
    for (const auto& name : keep) {
        if (!full.has_mode(name)) throw std::out_of_range("partial_trace: unknown mode '" + name + "'");
        if (!seen.insert(name).second) throw std::invalid_argument("partial_trace: duplicate keep mode");
    }

    std::vector<std::size_t> keep_pos;
    keep_pos.reserve(keep.size());
    for (const auto& name : keep) keep_pos.push_back(full.mode_index(name));

    std::vector<std::string> rest;
    std::vector<std::size_t> rest_pos;
    for (std::size_t m = 0; m < full.mode_count(); ++m) {
        if (std::find(keep_pos.begin(), keep_pos.end(), m) == keep_pos.end()) {
            rest.push_back(full.mode_names()[m]);
            rest_pos.push_back(m);
        }
    }

    BasisPtr out_basis = build_basis(std::vector<std::string>(keep), full.n_max());
    const std::size_t dk = out_basis->size();

    if (rest.empty()) {
        // Pure mode reorder.
        CMat out(dk, dk);
        std::vector<std::size_t> map(full.size());
        std::vector<int> occ(keep.size());
        for (std::size_t i = 0; i < full.size(); ++i) {
            const auto& focc = full.occupation(i);
            for (std::size_t k = 0; k < keep_pos.size(); ++k) occ[k] = focc[keep_pos[k]];
            map[i] = out_basis->index_of(occ);
        }
        for (std::size_t i = 0; i < full.size(); ++i)
            for (std::size_t j = 0; j < full.size(); ++j) out(map[i], map[j]) = rho.element(i, j);
        return DensityOperator(out_basis, std::move(out));
    }

    FockBasis rest_basis(rest, full.n_max());
    const std::size_t dr = rest_basis.size();

    // full_index[r * dr + e] = index of (kept occupation r, rest occupation e)
    // in the full basis, or npos when the combination exceeds n_max.
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> full_index(dk * dr, npos);
    std::vector<int> occ(full.mode_count());
    for (std::size_t r = 0; r < dk; ++r) {
        const auto& kocc = out_basis->occupation(r);
        int kt = 0;
        for (int v : kocc) kt += v;
        for (std::size_t e = 0; e < dr; ++e) {
            const auto& eocc = rest_basis.occupation(e);
            int et = 0;
            for (int v : eocc) et += v;
            if (kt + et > full.n_max()) continue;
            for (std::size_t k = 0; k < keep_pos.size(); ++k) occ[keep_pos[k]] = kocc[k];
            for (std::size_t k = 0; k < rest_pos.size(); ++k) occ[rest_pos[k]] = eocc[k];
            full_index[r * dr + e] = full.index_of(occ);
        }
    }

    CMat out(dk, dk);
    const CMat& src = rho.matrix();
    const std::size_t d = full.size();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(kernels::max_threads()) \
    if (kernels::should_parallelize(dk))
#endif
    for (std::ptrdiff_t ri = 0; ri < static_cast<std::ptrdiff_t>(dk); ++ri) {
        const std::size_t r = static_cast<std::size_t>(ri);
        for (std::size_t s = 0; s < dk; ++s) {
            complexd acc = 0.0;
            for (std::size_t e = 0; e < dr; ++e) {
                const std::size_t fi = full_index[r * dr + e];
                const std::size_t fj = full_index[s * dr + e];
                if (fi == npos || fj == npos) continue;
                acc += src.data[fi * d + fj];
            }
            out(r, s) = acc;
        }
    }
    return DensityOperator(out_basis, std::move(out));
}

namespace {

std::vector<std::size_t> embedding_map(const FockBasis& src, const FockBasis& dst) {
    if (dst.n_max() < src.n_max())
        throw std::invalid_argument("embed: target n_max smaller than source");
    std::vector<std::size_t> pos(src.mode_count());
    for (std::size_t m = 0; m < src.mode_count(); ++m) pos[m] = dst.mode_index(src.mode_names()[m]);
    std::vector<std::size_t> map(src.size());
    std::vector<int> occ(dst.mode_count(), 0);
    for (std::size_t i = 0; i < src.size(); ++i) {
        std::fill(occ.begin(), occ.end(), 0);
        const auto& socc = src.occupation(i);
        for (std::size_t m = 0; m < src.mode_count(); ++m) occ[pos[m]] = socc[m];
        map[i] = dst.index_of(occ);
    }
    return map;
}

}  // namespace

StateVector embed(const StateVector& psi, const BasisPtr& target) {
    const auto map = embedding_map(*psi.basis(), *target);
    std::vector<complexd> amps(target->size(), complexd{0.0, 0.0});
    for (std::size_t i = 0; i < map.size(); ++i) amps[map[i]] = psi.amplitudes()[i];
    return StateVector(target, std::move(amps));
}

DensityOperator embed(const DensityOperator& rho, const BasisPtr& target) {
    const auto map = embedding_map(*rho.basis(), *target);
    CMat m(target->size(), target->size());
    for (std::size_t i = 0; i < map.size(); ++i)
        for (std::size_t j = 0; j < map.size(); ++j) m(map[i], map[j]) = rho.element(i, j);
    return DensityOperator(target, std::move(m));
}

namespace {

std::vector<std::string> concat_modes(const FockBasis& a, const FockBasis& b) {
    std::vector<std::string> names = a.mode_names();
    for (const auto& n : b.mode_names()) {
        if (a.has_mode(n)) throw std::invalid_argument("tensor_product: mode '" + n + "' on both sides");
        names.push_back(n);
    }
    return names;
}

}  // namespace

StateVector tensor_product(const StateVector& a, const StateVector& b, int n_max) {
    const FockBasis& ba = *a.basis();
    const FockBasis& bb = *b.basis();
    BasisPtr joint = build_basis(concat_modes(ba, bb), n_max);
    std::vector<complexd> amps(joint->size(), complexd{0.0, 0.0});
    std::vector<int> occ(ba.mode_count() + bb.mode_count());
    for (std::size_t i = 0; i < ba.size(); ++i) {
        const complexd ai = a.amplitudes()[i];
        if (ai == complexd{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < bb.size(); ++j) {
            const complexd bj = b.amplitudes()[j];
            if (bj == complexd{0.0, 0.0}) continue;
            if (ba.total_photons(i) + bb.total_photons(j) > n_max)
                throw std::invalid_argument("tensor_product: joint state exceeds photon cutoff");
            const auto& oa = ba.occupation(i);
            const auto& ob = bb.occupation(j);
            std::copy(oa.begin(), oa.end(), occ.begin());
            std::copy(ob.begin(), ob.end(), occ.begin() + static_cast<std::ptrdiff_t>(oa.size()));
            amps[joint->index_of(occ)] = ai * bj;
        }
    }
    return StateVector(joint, std::move(amps));
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b, int n_max) {
    const FockBasis& ba = *a.basis();
    const FockBasis& bb = *b.basis();
    BasisPtr joint = build_basis(concat_modes(ba, bb), n_max);
    const std::size_t da = ba.size(), db = bb.size();

    std::vector<std::size_t> map(da * db, static_cast<std::size_t>(-1));
    std::vector<int> occ(ba.mode_count() + bb.mode_count());
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t j = 0; j < db; ++j) {
            if (ba.total_photons(i) + bb.total_photons(j) > n_max) continue;
            const auto& oa = ba.occupation(i);
            const auto& ob = bb.occupation(j);
            std::copy(oa.begin(), oa.end(), occ.begin());
            std::copy(ob.begin(), ob.end(), occ.begin() + static_cast<std::ptrdiff_t>(oa.size()));
            map[i * db + j] = joint->index_of(occ);
        }
    }

    CMat m(joint->size(), joint->size());
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j) {
            const std::size_t row = map[i * db + j];
            for (std::size_t k = 0; k < da; ++k)
                for (std::size_t l = 0; l < db; ++l) {
                    const complexd v = a.element(i, k) * b.element(j, l);
                    if (v == complexd{0.0, 0.0}) continue;
                    const std::size_t col = map[k * db + l];
                    if (row == static_cast<std::size_t>(-1) || col == static_cast<std::size_t>(-1))
                        throw std::invalid_argument("tensor_product: joint state exceeds photon cutoff");
                    m(row, col) = v;
                }
        }
    return DensityOperator(joint, std::move(m));
}

}  // namespace scissorsim
