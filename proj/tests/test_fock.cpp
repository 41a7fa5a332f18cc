#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "scissorsim/fock.hpp"

using namespace scissorsim;

namespace {

// Independent enumeration used as the oracle for basis content: build every
// occupation recursively, no ordering assumptions.
void enumerate(int modes, int budget, std::vector<int>& cur, std::set<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == modes) {
        out.insert(cur);
        return;
    }
    for (int n = 0; n <= budget; ++n) {
        cur.push_back(n);
        enumerate(modes, budget - n, cur, out);
        cur.pop_back();
    }
}

std::set<std::vector<int>> all_occupations(int modes, int n_max) {
    std::set<std::vector<int>> out;
    std::vector<int> cur;
    enumerate(modes, n_max, cur, out);
    return out;
}

}  // namespace

TEST_CASE("basis enumerates exactly the bounded occupations") {
    auto basis = build_basis({"p", "q", "r"}, 3);
    const auto oracle = all_occupations(3, 3);
    CHECK(basis->size() == oracle.size());  // C(6,3) = 20
    CHECK(basis->size() == 20);

    std::set<std::vector<int>> seen;
    for (std::size_t i = 0; i < basis->size(); ++i) seen.insert(basis->occupation(i));
    CHECK(seen == oracle);
}

TEST_CASE("basis size for four modes at cutoff two") {
    auto basis = build_basis({"a", "in", "c", "out"}, 2);
    CHECK(basis->size() == all_occupations(4, 2).size());
    CHECK(basis->size() == 15);
}

TEST_CASE("canonical order: vacuum first, totals ascending, lexicographic within a sector") {
    auto basis = build_basis({"x", "y"}, 3);
    CHECK(basis->occupation(0) == std::vector<int>{0, 0});
    for (std::size_t i = 1; i < basis->size(); ++i) {
        const int prev = basis->total_photons(i - 1);
        const int cur = basis->total_photons(i);
        CHECK(prev <= cur);
        if (prev == cur) CHECK(basis->occupation(i - 1) < basis->occupation(i));
    }
}

TEST_CASE("index_of and occupation round-trip; lookups reject unknowns") {
    auto basis = build_basis({"x", "y", "z"}, 2);
    for (std::size_t i = 0; i < basis->size(); ++i)
        CHECK(basis->index_of(basis->occupation(i)) == i);

    CHECK(basis->contains({1, 1, 0}));
    CHECK_FALSE(basis->contains({2, 1, 0}));
    CHECK_THROWS_AS(basis->index_of({2, 1, 0}), std::out_of_range);
    CHECK_THROWS_AS(basis->mode_index("nope"), std::out_of_range);
    CHECK(basis->mode_index("y") == 1);
}

TEST_CASE("basis construction rejects bad inputs") {
    CHECK_THROWS_AS(build_basis({"a", "a"}, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_basis({}, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_basis({"a"}, -1), std::invalid_argument);
}

TEST_CASE("pure_state validates occupations and norm") {
    auto basis = build_basis({"x", "y"}, 1);
    const StateVector psi = pure_state(basis, {{{0, 1}, 0.6}, {{1, 0}, 0.8}});
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(psi.amplitude({0, 1}) - complexd(0.6)) < 1e-15);

    CHECK_THROWS_AS(pure_state(basis, {{{1, 1}, 1.0}}), std::invalid_argument);  // over cutoff
    CHECK_THROWS_AS(pure_state(basis, {{{0, 1}, 1.1}}), std::invalid_argument);  // norm > 1
}

TEST_CASE("sub-normalized states are first-class") {
    auto basis = build_basis({"x"}, 1);
    const StateVector psi = pure_state(basis, {{{1}, 0.5}});
    CHECK(psi.norm() == doctest::Approx(0.5));
    const DensityOperator rho = to_density(psi);
    CHECK(rho.trace() == doctest::Approx(0.25));
    CHECK(rho.normalized().trace() == doctest::Approx(1.0));
}

TEST_CASE("mix validates weights and combines matrices") {
    auto basis = build_basis({"x"}, 1);
    const DensityOperator vac = to_density(pure_state(basis, {{{0}, 1.0}}));
    const DensityOperator one = to_density(pure_state(basis, {{{1}, 1.0}}));

    const DensityOperator m = mix({{0.3, vac}, {0.7, one}});
    CHECK(m.element(0, 0).real() == doctest::Approx(0.3));
    CHECK(m.element(1, 1).real() == doctest::Approx(0.7));
    CHECK(m.hermiticity_defect() == 0.0);

    CHECK_THROWS_AS(mix({{-0.1, vac}, {1.1, one}}), std::invalid_argument);
    CHECK_THROWS_AS(mix({{0.9, vac}, {0.9, one}}), std::invalid_argument);
}

TEST_CASE("partial trace of a product state factorizes") {
    auto basis = build_basis({"A", "B"}, 2);
    const complexd a0(0.6), a1(0.0, 0.8);
    const complexd b0(0.28), b1(0.96);
    const StateVector psi = pure_state(basis, {{{0, 0}, a0 * b0},
                                               {{0, 1}, a0 * b1},
                                               {{1, 0}, a1 * b0},
                                               {{1, 1}, a1 * b1}});
    const DensityOperator red = partial_trace(to_density(psi), {"A"});
    REQUIRE(red.basis()->mode_names() == std::vector<std::string>{"A"});
    CHECK(std::abs(red.element(0, 0) - a0 * std::conj(a0)) < 1e-14);
    CHECK(std::abs(red.element(0, 1) - a0 * std::conj(a1)) < 1e-14);
    CHECK(std::abs(red.element(1, 1) - a1 * std::conj(a1)) < 1e-14);
    CHECK(red.trace() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("partial trace of an entangled pair is maximally mixed") {
    auto basis = build_basis({"A", "B"}, 2);
    const double s = 1.0 / std::sqrt(2.0);
    const StateVector bell = pure_state(basis, {{{0, 1}, s}, {{1, 0}, s}});
    const DensityOperator red = partial_trace(to_density(bell), {"B"});
    CHECK(red.element(0, 0).real() == doctest::Approx(0.5));
    CHECK(red.element(1, 1).real() == doctest::Approx(0.5));
    CHECK(red.element(2, 2).real() == doctest::Approx(0.0));
    CHECK(std::abs(red.element(0, 1)) < 1e-15);
}

TEST_CASE("partial trace result follows the keep-list order") {
    auto basis = build_basis({"A", "B", "C"}, 1);
    const StateVector psi = pure_state(basis, {{{1, 0, 0}, 1.0}});  // photon in A
    const DensityOperator swapped = partial_trace(to_density(psi), {"C", "A"});
    REQUIRE(swapped.basis()->mode_names() == std::vector<std::string>{"C", "A"});
    // occupation (C, A) = (0, 1) must carry the photon
    const std::size_t idx = swapped.basis()->index_of({0, 1});
    CHECK(swapped.element(idx, idx).real() == doctest::Approx(1.0));
    CHECK(swapped.trace() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("embedding into a larger space preserves amplitudes") {
    auto small = build_basis({"x"}, 1);
    auto big = build_basis({"w", "x", "y"}, 2);
    const StateVector psi = pure_state(small, {{{0}, 0.6}, {{1}, 0.8}});
    const StateVector lifted = embed(psi, big);
    CHECK(lifted.norm() == doctest::Approx(psi.norm()).epsilon(1e-14));
    CHECK(std::abs(lifted.amplitude({0, 1, 0}) - complexd(0.8)) < 1e-15);
    CHECK(std::abs(lifted.amplitude({0, 0, 0}) - complexd(0.6)) < 1e-15);
}

TEST_CASE("tensor product concatenates modes and guards the cutoff") {
    auto left = build_basis({"x"}, 1);
    auto right = build_basis({"y"}, 1);
    const StateVector one_x = pure_state(left, {{{1}, 1.0}});
    const StateVector one_y = pure_state(right, {{{1}, 1.0}});

    const StateVector joint = tensor_product(one_x, one_y, 2);
    CHECK(joint.basis()->mode_names() == std::vector<std::string>{"x", "y"});
    CHECK(std::abs(joint.amplitude({1, 1}) - complexd(1.0)) < 1e-15);

    CHECK_THROWS_AS(tensor_product(one_x, one_y, 1), std::invalid_argument);

    const DensityOperator dm =
        tensor_product(to_density(one_x), to_density(one_y.normalized()), 2);
    CHECK(dm.trace() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("mode_weight reads occupation probabilities") {
    auto basis = build_basis({"x", "y"}, 2);
    const StateVector psi = pure_state(basis, {{{0, 2}, 0.6}, {{1, 0}, 0.8}});
    const DensityOperator rho = to_density(psi);
    CHECK(rho.mode_weight("y", 2) == doctest::Approx(0.36));
    CHECK(rho.mode_weight("x", 1) == doctest::Approx(0.64));
    CHECK(rho.mode_weight("x", 0) == doctest::Approx(0.36));
}
