#include "apfrac/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "apfrac/errors.hpp"

namespace apfrac {

void SparseSymmetric::apply(const std::vector<double>& x, std::vector<double>& y, Exec exec) const {
    y.resize(static_cast<std::size_t>(n));
    par::for_each(
        static_cast<std::size_t>(n),
        [&](std::size_t i) {
            double s = 0.0;
            for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
                s += val[static_cast<std::size_t>(k)] *
                     x[static_cast<std::size_t>(col[static_cast<std::size_t>(k)])];
            y[i] = s;
        },
        exec);
}

std::vector<double> SparseSymmetric::diagonal() const {
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            if (col[static_cast<std::size_t>(k)] == static_cast<int>(i))
                d[i] = val[static_cast<std::size_t>(k)];
    return d;
}

double SparseSymmetric::max_asymmetry() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            const int j = col[static_cast<std::size_t>(k)];
            double transposed = 0.0;
            for (int kk = row_ptr[j]; kk < row_ptr[j + 1]; ++kk)
                if (col[static_cast<std::size_t>(kk)] == static_cast<int>(i))
                    transposed = val[static_cast<std::size_t>(kk)];
            worst = std::max(worst, std::abs(val[static_cast<std::size_t>(k)] - transposed));
        }
    return worst;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b, Exec exec) {
    return par::block_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; }, exec);
}

}  // namespace

CgResult cg_solve(const SparseSymmetric& A, const std::vector<double>& b, std::vector<double>& x,
                  double rtol, int max_iter, Exec exec) {
    const std::size_t n = static_cast<std::size_t>(A.n);
    x.assign(n, 0.0);
    const std::vector<double> diag = A.diagonal();
    std::vector<double> inv_diag(n);
    for (std::size_t i = 0; i < n; ++i) inv_diag[i] = diag[i] != 0.0 ? 1.0 / diag[i] : 1.0;

    std::vector<double> r = b;
    const double bnorm = std::sqrt(dot(b, b, exec));
    if (bnorm == 0.0) return {0, 0.0};

    std::vector<double> z(n), p(n), q(n);
    par::for_each(n, [&](std::size_t i) { z[i] = inv_diag[i] * r[i]; }, exec);
    p = z;
    double rz = dot(r, z, exec);

    CgResult res;
    for (int it = 0; it < max_iter; ++it) {
        A.apply(p, q, exec);
        const double pq = dot(p, q, exec);
        if (pq <= 0.0)
            throw IndefiniteHessian("cg: nonpositive curvature p'Ap = " + std::to_string(pq));
        const double alpha = rz / pq;
        par::for_each(
            n,
            [&](std::size_t i) {
                x[i] += alpha * p[i];
                r[i] -= alpha * q[i];
            },
            exec);
        const double rnorm = std::sqrt(dot(r, r, exec));
        res.iterations = it + 1;
        res.rel_residual = rnorm / bnorm;
        if (rnorm <= rtol * bnorm) return res;
        par::for_each(n, [&](std::size_t i) { z[i] = inv_diag[i] * r[i]; }, exec);
        const double rz_next = dot(r, z, exec);
        const double beta = rz_next / rz;
        rz = rz_next;
        par::for_each(n, [&](std::size_t i) { p[i] = z[i] + beta * p[i]; }, exec);
    }
    throw BreakdownError("cg: no convergence in " + std::to_string(max_iter) +
                         " iterations (rel residual " + std::to_string(res.rel_residual) + ")");
}

}  // namespace apfrac
