#include <cmath>

#include "doctest.h"
#include "scissorsim/detection.hpp"
#include "scissorsim/elements.hpp"

using namespace scissorsim;

TEST_CASE("detector validation") {
    CHECK_THROWS_AS(DetectorModel::make_threshold(1.2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(DetectorModel::make_threshold(0.5, 1.0), std::invalid_argument);
    DetectorModel broken = DetectorModel::make_ideal_pnr();
    broken.efficiency = 0.9;
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("threshold click probabilities") {
    const DetectorModel det = DetectorModel::make_threshold(0.5, 0.0);
    CHECK(1.0 - det.no_click_probability(2) == doctest::Approx(0.75));  // misses both photons 25%

    const DetectorModel real = DetectorModel::make_threshold(0.9, 3e-5);
    const double click1 = 1.0 - real.no_click_probability(1);
    CHECK(click1 == doctest::Approx(1.0 - (1.0 - 3e-5) * 0.1).epsilon(1e-12));

    const double dark = 1.0 - real.no_click_probability(0);
    CHECK(dark == doctest::Approx(3e-5).epsilon(1e-12));
}

TEST_CASE("povm elements sum to the identity") {
    for (const DetectorModel& det :
         {DetectorModel::make_ideal_pnr(), DetectorModel::make_threshold(0.63, 1e-3)}) {
        const auto elems = povm_elements(det, 4);
        CMat sum(5, 5);
        for (const auto& e : elems)
            for (std::size_t i = 0; i < e.op.data.size(); ++i) sum.data[i] += e.op.data[i];
        CHECK(frobenius_distance(sum, CMat::identity(5)) < 1e-12);
    }
}

TEST_CASE("povm_diagonal labels") {
    const DetectorModel pnr = DetectorModel::make_ideal_pnr();
    const auto d2 = povm_diagonal(pnr, 3, "2");
    CHECK(d2 == std::vector<double>{0.0, 0.0, 1.0, 0.0});
    CHECK_THROWS_AS(povm_diagonal(pnr, 3, "click"), std::invalid_argument);
    CHECK_THROWS_AS(povm_diagonal(pnr, 3, "7"), std::invalid_argument);
    CHECK_THROWS_AS(povm_diagonal(pnr, 3, "1x"), std::invalid_argument);

    const DetectorModel thr = DetectorModel::make_threshold(1.0, 0.0);
    CHECK(povm_diagonal(thr, 2, "click") == std::vector<double>{0.0, 1.0, 1.0});
    CHECK_THROWS_AS(povm_diagonal(thr, 2, "1"), std::invalid_argument);
    CHECK(default_herald_outcome(pnr) == "1");
    CHECK(default_herald_outcome(thr) == "click");
}

TEST_CASE("heralding one arm of an entangled pair") {
    auto basis = build_basis({"A", "B"}, 1);
    const double s = 1.0 / std::sqrt(2.0);
    const DensityOperator rho = to_density(pure_state(basis, {{{0, 1}, s}, {{1, 0}, s}}));

    const HeraldOutcome got = herald(rho, "B", DetectorModel::make_ideal_pnr(), "1");
    CHECK(got.probability == doctest::Approx(0.5).epsilon(1e-13));
    REQUIRE(got.conditioned_state.basis()->mode_names() == std::vector<std::string>{"A"});
    // sub-normalized: trace equals the outcome probability
    CHECK(got.conditioned_state.trace() == doctest::Approx(0.5).epsilon(1e-13));
    // the surviving branch left A empty
    CHECK(got.conditioned_state.normalized().mode_weight("A", 0) == doctest::Approx(1.0));
}

TEST_CASE("impossible herald outcomes return probability zero, not a throw") {
    auto basis = build_basis({"A", "B"}, 2);
    const DensityOperator rho = to_density(pure_state(basis, {{{0, 0}, 1.0}}));
    const HeraldOutcome got = herald(rho, "B", DetectorModel::make_ideal_pnr(), "2");
    CHECK(got.probability == 0.0);
    CHECK(got.conditioned_state.trace() == 0.0);
}

TEST_CASE("herald refuses to remove the only mode") {
    auto basis = build_basis({"A"}, 1);
    const DensityOperator rho = to_density(pure_state(basis, {{{1}, 1.0}}));
    CHECK_THROWS_AS(herald(rho, "A", DetectorModel::make_ideal_pnr(), "1"), std::invalid_argument);
}

TEST_CASE("inefficient threshold herald equals loss followed by an ideal one") {
    // exact channel identity, including the conditioned state
    auto basis = build_basis({"A", "B"}, 2);
    const StateVector psi = pure_state(
        basis, {{{0, 1}, 0.5}, {{1, 0}, 0.5}, {{1, 1}, 0.5}, {{0, 2}, 0.5}});
    const DensityOperator rho = to_density(psi);
    const double eta = 0.62;

    const HeraldOutcome direct = herald(rho, "B", DetectorModel::make_threshold(eta, 0.0), "click");
    const HeraldOutcome staged =
        herald(apply_loss(rho, "B", eta), "B", DetectorModel::make_threshold(1.0, 0.0), "click");

    CHECK(direct.probability == doctest::Approx(staged.probability).epsilon(1e-12));
    CHECK(frobenius_distance(direct.conditioned_state.matrix(),
                             staged.conditioned_state.matrix()) < 1e-12);
}

TEST_CASE("threshold without dark counts equals coarse-grained pnr on <=1 photon") {
    auto basis = build_basis({"A", "B"}, 1);
    const DensityOperator rho =
        to_density(pure_state(basis, {{{0, 1}, 0.6}, {{1, 0}, 0.8}}));
    const HeraldOutcome thr = herald(rho, "B", DetectorModel::make_threshold(1.0, 0.0), "click");
    const HeraldOutcome pnr = herald(rho, "B", DetectorModel::make_ideal_pnr(), "1");
    CHECK(thr.probability == doctest::Approx(pnr.probability).epsilon(1e-13));
    CHECK(frobenius_distance(thr.conditioned_state.matrix(), pnr.conditioned_state.matrix()) <
          1e-13);
}

TEST_CASE("joint click probability over multimode ports") {
    auto basis = build_basis({"p", "q", "r"}, 2);
    // photon split between p and q, plus one in r
    const double s = 1.0 / std::sqrt(2.0);
    const DensityOperator rho =
        to_density(pure_state(basis, {{{1, 0, 1}, s}, {{0, 1, 1}, s}}));

    const DetectorModel ideal = DetectorModel::make_threshold(1.0, 0.0);
    // port {p, q} always holds the photon, so the coincidence is certain
    CHECK(all_click_probability(rho, {{{"p", "q"}, ideal}, {{"r"}, ideal}}) ==
          doctest::Approx(1.0).epsilon(1e-13));

    const DetectorModel lossy = DetectorModel::make_threshold(0.4, 0.0);
    CHECK(all_click_probability(rho, {{{"p", "q"}, lossy}, {{"r"}, ideal}}) ==
          doctest::Approx(0.4).epsilon(1e-13));

    CHECK_THROWS_AS(all_click_probability(rho, {{{"p"}, ideal}, {{"p"}, ideal}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(all_click_probability(rho, {{{}, ideal}}), std::invalid_argument);
}

TEST_CASE("pure-state and density-operator click probabilities agree") {
    auto basis = build_basis({"p", "q"}, 2);
    const StateVector psi =
        pure_state(basis, {{{1, 1}, 0.6}, {{2, 0}, complexd(0.0, 0.48)}, {{0, 1}, 0.64}});
    const DetectorModel det = DetectorModel::make_threshold(0.7, 1e-4);
    const double from_psi = all_click_probability(psi, {{{"p"}, det}, {{"q"}, det}});
    const double from_rho = all_click_probability(to_density(psi), {{{"p"}, det}, {{"q"}, det}});
    CHECK(from_psi == doctest::Approx(from_rho).epsilon(1e-13));
}

TEST_CASE("counting weights saturate for pnr detectors") {
    const auto w = counting_weights(DetectorModel::make_ideal_pnr(), 3);
    CHECK(w == std::vector<double>{0.0, 1.0, 1.0, 1.0});
}
