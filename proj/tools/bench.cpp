// Timing harness for the dense kernels: serial reference vs OpenMP path on
// the matrix products that dominate every simulation, plus one end-to-end
// sweep. The two paths must agree bitwise; the table reports both timings
// and the largest observed difference.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "scissorsim/amplifier.hpp"
#include "scissorsim/elements.hpp"
#include "scissorsim/fock.hpp"

using namespace scissorsim;

namespace {

double ms_per_call(const std::function<void()>& fn, int min_calls, double min_seconds) {
    using clock = std::chrono::steady_clock;
    fn();  // warm up
    int calls = 0;
    const auto start = clock::now();
    double elapsed = 0.0;
    while (calls < min_calls || elapsed < min_seconds) {
        fn();
        ++calls;
        elapsed = std::chrono::duration<double>(clock::now() - start).count();
        if (calls > 10000) break;
    }
    return 1e3 * elapsed / calls;
}

double max_entry_diff(const CMat& a, const CMat& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::string(argv[1]) == "quick";
    const double budget = quick ? 0.05 : 0.3;

    std::printf("threads available: %d\n\n", kernels::max_threads());
    std::printf("%-28s %10s %12s %12s %9s %10s\n", "case", "dim", "serial_ms", "parallel_ms",
                "speedup", "max_diff");

    struct Case {
        int modes;
        int n_max;
    };
    const std::vector<Case> cases = quick ? std::vector<Case>{{3, 5}, {4, 5}}
                                          : std::vector<Case>{{3, 6}, {4, 6}, {4, 8}, {5, 7}};

    for (const Case& c : cases) {
        std::vector<std::string> names;
        for (int m = 0; m < c.modes; ++m) names.push_back("m" + std::to_string(m));
        auto basis = build_basis(names, c.n_max);
        const CMat u = beamsplitter_unitary(basis, Beamsplitter{"m0", "m1", 0.37, 0.21});

        CMat serial_out(u.rows, u.cols), parallel_out(u.rows, u.cols);
        const double ts = ms_per_call(
            [&] { serial_out = kernels::matmul(u, u, kernels::Exec::serial); }, 3, budget);
        const double tp = ms_per_call(
            [&] { parallel_out = kernels::matmul(u, u, kernels::Exec::parallel); }, 3, budget);

        const std::string label =
            "matmul " + std::to_string(c.modes) + " modes, n_max " + std::to_string(c.n_max);
        std::printf("%-28s %10zu %12.3f %12.3f %9.2f %10.2e\n", label.c_str(), u.rows, ts, tp,
                    ts / tp, max_entry_diff(serial_out, parallel_out));
    }

    // End-to-end: a transmission sweep, parallelized across rows.
    AmplifierParams params;
    SourceSpec source;
    std::vector<double> ts_grid;
    const int rows = quick ? 6 : 16;
    for (int i = 0; i < rows; ++i) ts_grid.push_back(0.5 + 0.45 * i / (rows - 1));
    const double sweep_ms =
        ms_per_call([&] { gain_sweep(params, source, ts_grid); }, 1, quick ? 0.0 : 0.5);
    std::printf("\ngain sweep, %d rows: %.1f ms\n", rows, sweep_ms);
    return 0;
}
