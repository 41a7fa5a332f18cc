#include "scissorsim/dense.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace scissorsim {

CMat CMat::identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double frobenius_distance(const CMat& a, const CMat& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("frobenius_distance: shape mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.data.size(); ++k) s += std::norm(a.data[k] - b.data[k]);
    return std::sqrt(s);
}

double max_abs_offdiag(const CMat& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            if (i != j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

complexd trace(const CMat& a) {
    complexd t = 0.0;
    for (std::size_t i = 0; i < std::min(a.rows, a.cols); ++i) t += a(i, i);
    return t;
}

CMat adjoint(const CMat& a) {
    CMat r(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) r(j, i) = std::conj(a(i, j));
    return r;
}

namespace kernels {

int max_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("SCISSORSIM_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) n = std::min(n, static_cast<int>(cap));
    }
    return std::max(1, n);
#else
    return 1;
#endif
}

bool should_parallelize(std::size_t rows) {
#ifdef _OPENMP
    if (max_threads() < 2) return false;
    if (omp_in_parallel()) return false;  // sweeps already own the threads
    return rows >= 64;
#else
    (void)rows;
    return false;
#endif
}

namespace {

inline void matmul_row(const CMat& a, const CMat& b, CMat& c, std::size_t i) {
    const std::size_t n = a.cols, m = b.cols;
    complexd* out = &c.data[i * m];
    std::fill(out, out + m, complexd{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        const complexd aik = a(i, k);
        if (aik == complexd{0.0, 0.0}) continue;
        const complexd* brow = &b.data[k * m];
        for (std::size_t j = 0; j < m; ++j) out[j] += aik * brow[j];
    }
}

inline void matmul_adjB_row(const CMat& a, const CMat& b, CMat& c, std::size_t i) {
    // c(i,j) = sum_k a(i,k) * conj(b(j,k))
    const std::size_t n = a.cols, m = b.rows;
    for (std::size_t j = 0; j < m; ++j) {
        complexd s = 0.0;
        const complexd* arow = &a.data[i * n];
        const complexd* brow = &b.data[j * n];
        for (std::size_t k = 0; k < n; ++k) s += arow[k] * std::conj(brow[k]);
        c(i, j) = s;
    }
}

inline void check_mul(const CMat& a, const CMat& b, bool adjB) {
    const std::size_t inner = adjB ? b.cols : b.rows;
    if (a.cols != inner) throw std::invalid_argument("matmul: shape mismatch");
}

}  // namespace

void matmul_serial(const CMat& a, const CMat& b, CMat& c) {
    check_mul(a, b, false);
    c = CMat(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) matmul_row(a, b, c, i);
}

void matmul_parallel(const CMat& a, const CMat& b, CMat& c) {
    check_mul(a, b, false);
    c = CMat(a.rows, b.cols);
#ifdef _OPENMP
    const int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(a.rows); ++i)
        matmul_row(a, b, c, static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < a.rows; ++i) matmul_row(a, b, c, i);
#endif
}

CMat matmul(const CMat& a, const CMat& b, Exec exec) {
    CMat c;
    const bool par = exec == Exec::parallel || (exec == Exec::automatic && should_parallelize(a.rows));
    if (par)
        matmul_parallel(a, b, c);
    else
        matmul_serial(a, b, c);
    return c;
}

void matmul_adjB_serial(const CMat& a, const CMat& b, CMat& c) {
    check_mul(a, b, true);
    c = CMat(a.rows, b.rows);
    for (std::size_t i = 0; i < a.rows; ++i) matmul_adjB_row(a, b, c, i);
}

void matmul_adjB_parallel(const CMat& a, const CMat& b, CMat& c) {
    check_mul(a, b, true);
    c = CMat(a.rows, b.rows);
#ifdef _OPENMP
    const int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(a.rows); ++i)
        matmul_adjB_row(a, b, c, static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < a.rows; ++i) matmul_adjB_row(a, b, c, i);
#endif
}

CMat matmul_adjB(const CMat& a, const CMat& b, Exec exec) {
    CMat c;
    const bool par = exec == Exec::parallel || (exec == Exec::automatic && should_parallelize(a.rows));
    if (par)
        matmul_adjB_parallel(a, b, c);
    else
        matmul_adjB_serial(a, b, c);
    return c;
}

void matvec_serial(const CMat& a, const std::vector<complexd>& x, std::vector<complexd>& y) {
    if (a.cols != x.size()) throw std::invalid_argument("matvec: shape mismatch");
    y.assign(a.rows, complexd{0.0, 0.0});
    for (std::size_t i = 0; i < a.rows; ++i) {
        complexd s = 0.0;
        const complexd* arow = &a.data[i * a.cols];
        for (std::size_t k = 0; k < a.cols; ++k) s += arow[k] * x[k];
        y[i] = s;
    }
}

void matvec_parallel(const CMat& a, const std::vector<complexd>& x, std::vector<complexd>& y) {
    if (a.cols != x.size()) throw std::invalid_argument("matvec: shape mismatch");
    y.assign(a.rows, complexd{0.0, 0.0});
#ifdef _OPENMP
    const int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(a.rows); ++i) {
        complexd s = 0.0;
        const complexd* arow = &a.data[static_cast<std::size_t>(i) * a.cols];
        for (std::size_t k = 0; k < a.cols; ++k) s += arow[k] * x[k];
        y[static_cast<std::size_t>(i)] = s;
    }
#else
    matvec_serial(a, x, y);
#endif
}

std::vector<complexd> matvec(const CMat& a, const std::vector<complexd>& x, Exec exec) {
    std::vector<complexd> y;
    const bool par = exec == Exec::parallel || (exec == Exec::automatic && should_parallelize(a.rows));
    if (par)
        matvec_parallel(a, x, y);
    else
        matvec_serial(a, x, y);
    return y;
}

CMat sandwich(const CMat& u, const CMat& rho, Exec exec) {
    return matmul_adjB(matmul(u, rho, exec), u, exec);
}

}  // namespace kernels

std::vector<double> hermitian_eigenvalues(const CMat& a) {
    if (a.rows != a.cols) throw std::invalid_argument("hermitian_eigenvalues: not square");
    const std::size_t n = a.rows;
    CMat m = a;
    // Symmetrize roundoff so the rotations see an exactly Hermitian matrix.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            complexd v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
        m(i, i) = complexd{m(i, i).real(), 0.0};
    }

    double scale = 0.0;
    for (const auto& v : m.data) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return std::vector<double>(n, 0.0);
    const double tol = 1e-15 * scale;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(m(p, q)));
        if (off <= tol) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const complexd apq = m(p, q);
                const double absa = std::abs(apq);
                if (absa <= tol) continue;
                const complexd phase = apq / absa;
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                const double tau = (aqq - app) / (2.0 * absa);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const complexd sp = s * phase;  // rotation: p' = c p + sp q ; q' = -conj(sp) p + c q

                for (std::size_t k = 0; k < n; ++k) {
                    const complexd mkp = m(k, p);
                    const complexd mkq = m(k, q);
                    m(k, p) = c * mkp - std::conj(sp) * mkq;
                    m(k, q) = sp * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const complexd mpk = m(p, k);
                    const complexd mqk = m(q, k);
                    m(p, k) = c * mpk - sp * mqk;
                    m(q, k) = std::conj(sp) * mpk + c * mqk;
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = m(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace scissorsim
