#ifndef SCISSORSIM_DENSE_HPP
#define SCISSORSIM_DENSE_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace scissorsim {

using complexd = std::complex<double>;

// Dense row-major complex matrix. Small by design: Fock bases at the
// truncations this library targets stay below a few hundred states, so
// nothing here tries to be clever about blocking or storage.
struct CMat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<complexd> data;

    CMat() = default;
    CMat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    complexd& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const complexd& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static CMat identity(std::size_t n);
};

double frobenius_distance(const CMat& a, const CMat& b);
double max_abs_offdiag(const CMat& a);
complexd trace(const CMat& a);
CMat adjoint(const CMat& a);

namespace kernels {

// Execution policy for the dense kernels. `parallel` uses OpenMP when it is
// compiled in, the thread budget allows it, and the call is not already
// inside a parallel region; otherwise it falls back to the serial path.
// `serial` is the reference implementation and is kept independently
// callable so tests and the benchmark can compare the two.
enum class Exec { serial, parallel, automatic };

// Thread budget: min(OpenMP max threads, SCISSORSIM_THREADS if set to a
// positive integer). Returns 1 when OpenMP is unavailable.
int max_threads();

// Whether the automatic policy would go parallel for a problem of `rows`
// independent output rows.
bool should_parallelize(std::size_t rows);

// c = a * b
void matmul_serial(const CMat& a, const CMat& b, CMat& c);
void matmul_parallel(const CMat& a, const CMat& b, CMat& c);
CMat matmul(const CMat& a, const CMat& b, Exec exec = Exec::automatic);

// c = a * adjoint(b)
void matmul_adjB_serial(const CMat& a, const CMat& b, CMat& c);
void matmul_adjB_parallel(const CMat& a, const CMat& b, CMat& c);
CMat matmul_adjB(const CMat& a, const CMat& b, Exec exec = Exec::automatic);

// y = a * x
void matvec_serial(const CMat& a, const std::vector<complexd>& x, std::vector<complexd>& y);
void matvec_parallel(const CMat& a, const std::vector<complexd>& x, std::vector<complexd>& y);
std::vector<complexd> matvec(const CMat& a, const std::vector<complexd>& x,
                             Exec exec = Exec::automatic);

// u * rho * adjoint(u), the hot operation of the whole library.
CMat sandwich(const CMat& u, const CMat& rho, Exec exec = Exec::automatic);

}  // namespace kernels

// Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi rotations.
// Serial only: callers are test-side positivity checks on small matrices.
std::vector<double> hermitian_eigenvalues(const CMat& a);

}  // namespace scissorsim

#endif
