#include <cmath>
#include <random>

#include "doctest.h"
#include "scissorsim/dense.hpp"

using namespace scissorsim;

namespace {

CMat random_matrix(std::size_t rows, std::size_t cols, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    CMat m(rows, cols);
    for (auto& v : m.data) v = complexd(dist(rng), dist(rng));
    return m;
}

CMat random_hermitian(std::size_t n, unsigned seed) {
    CMat a = random_matrix(n, n, seed);
    CMat h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

}  // namespace

TEST_CASE("matmul serial and parallel paths agree bitwise") {
    for (unsigned seed : {1u, 2u, 3u}) {
        const CMat a = random_matrix(65, 40, seed);
        const CMat b = random_matrix(40, 71, seed + 100);
        const CMat cs = kernels::matmul(a, b, kernels::Exec::serial);
        const CMat cp = kernels::matmul(a, b, kernels::Exec::parallel);
        REQUIRE(cs.data.size() == cp.data.size());
        for (std::size_t i = 0; i < cs.data.size(); ++i) CHECK(cs.data[i] == cp.data[i]);
    }
}

TEST_CASE("matmul_adjB matches matmul with explicit adjoint") {
    const CMat a = random_matrix(30, 20, 7);
    const CMat b = random_matrix(25, 20, 8);  // b^dagger is 20 x 25
    const CMat direct = kernels::matmul_adjB(a, b, kernels::Exec::serial);
    const CMat viaAdj = kernels::matmul(a, adjoint(b), kernels::Exec::serial);
    CHECK(frobenius_distance(direct, viaAdj) < 1e-13);

    const CMat par = kernels::matmul_adjB(a, b, kernels::Exec::parallel);
    for (std::size_t i = 0; i < direct.data.size(); ++i) CHECK(direct.data[i] == par.data[i]);
}

TEST_CASE("matvec agrees between paths and with matmul") {
    const CMat a = random_matrix(80, 33, 11);
    const CMat x = random_matrix(33, 1, 12);
    std::vector<complexd> xv(x.data);
    const auto ys = kernels::matvec(a, xv, kernels::Exec::serial);
    const auto yp = kernels::matvec(a, xv, kernels::Exec::parallel);
    const CMat ym = kernels::matmul(a, x, kernels::Exec::serial);
    for (std::size_t i = 0; i < ys.size(); ++i) {
        CHECK(ys[i] == yp[i]);
        CHECK(std::abs(ys[i] - ym(i, 0)) < 1e-13);
    }
}

TEST_CASE("sandwich is u rho u^dagger") {
    const CMat u = random_matrix(24, 24, 21);
    const CMat rho = random_hermitian(24, 22);
    const CMat s = kernels::sandwich(u, rho);
    const CMat expect = kernels::matmul_adjB(kernels::matmul(u, rho, kernels::Exec::serial), u,
                                             kernels::Exec::serial);
    CHECK(frobenius_distance(s, expect) < 1e-12);
}

TEST_CASE("identity, adjoint, trace helpers") {
    const CMat i3 = CMat::identity(3);
    CHECK(i3(0, 0) == complexd(1.0));
    CHECK(i3(0, 1) == complexd(0.0));
    CHECK(trace(i3) == complexd(3.0));

    const CMat a = random_matrix(5, 5, 31);
    const CMat aa = adjoint(adjoint(a));
    CHECK(frobenius_distance(a, aa) == 0.0);
    CHECK(max_abs_offdiag(i3) == 0.0);
}

TEST_CASE("hermitian eigenvalues: known 2x2") {
    CMat h(2, 2);
    h(0, 0) = 2.0;
    h(1, 1) = 2.0;
    h(0, 1) = complexd(0.0, 1.0);
    h(1, 0) = complexd(0.0, -1.0);
    const auto ev = hermitian_eigenvalues(h);
    REQUIRE(ev.size() == 2);
    CHECK(std::abs(ev[0] - 1.0) < 1e-12);
    CHECK(std::abs(ev[1] - 3.0) < 1e-12);
}

TEST_CASE("hermitian eigenvalues: trace and Frobenius invariants, ascending order") {
    for (unsigned seed : {5u, 6u}) {
        const CMat h = random_hermitian(12, seed);
        const auto ev = hermitian_eigenvalues(h);
        REQUIRE(ev.size() == 12);

        double sum = 0.0, sumsq = 0.0;
        for (double v : ev) {
            sum += v;
            sumsq += v * v;
        }
        double fro = 0.0;
        for (const auto& v : h.data) fro += std::norm(v);
        CHECK(std::abs(sum - trace(h).real()) < 1e-10);
        CHECK(std::abs(sumsq - fro) < 1e-9);
        for (std::size_t i = 1; i < ev.size(); ++i) CHECK(ev[i - 1] <= ev[i]);
    }
}

TEST_CASE("hermitian eigenvalues: B B^dagger is positive semidefinite") {
    const CMat b = random_matrix(10, 6, 41);
    const CMat psd = kernels::matmul_adjB(b, b, kernels::Exec::serial);
    for (double v : hermitian_eigenvalues(psd)) CHECK(v > -1e-12);
}

TEST_CASE("thread budget reports at least one thread") {
    CHECK(kernels::max_threads() >= 1);
}
