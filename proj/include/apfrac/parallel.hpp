#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace apfrac {

/// Execution policy for the site-loop kernels. The OpenMP path and the serial
/// reference path produce bitwise-identical results: reductions are done over
/// fixed-size blocks whose partial sums are accumulated sequentially in block
/// order, independent of the thread count.
enum class Exec { serial, openmp };

inline Exec default_exec() {
#ifdef _OPENMP
    return Exec::openmp;
#else
    return Exec::serial;
#endif
}

namespace par {

inline constexpr std::size_t kBlock = 2048;

/// Deterministic blocked sum of f(i) for i in [0, n).
template <class F>
double block_sum(std::size_t n, F&& f, Exec exec) {
    const std::size_t nb = (n + kBlock - 1) / kBlock;
    if (nb <= 1) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += f(i);
        return s;
    }
    std::vector<double> partial(nb, 0.0);
#ifdef _OPENMP
    if (exec == Exec::openmp) {
#pragma omp parallel for schedule(static)
        for (long long b = 0; b < static_cast<long long>(nb); ++b) {
            const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
            const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += f(i);
            partial[static_cast<std::size_t>(b)] = s;
        }
    } else
#endif
    {
        (void)exec;
        for (std::size_t b = 0; b < nb; ++b) {
            const std::size_t lo = b * kBlock;
            const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += f(i);
            partial[b] = s;
        }
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

/// Elementwise loop; every iteration writes disjoint output, so the parallel
/// path is trivially reproducible.
template <class F>
void for_each(std::size_t n, F&& f, Exec exec) {
#ifdef _OPENMP
    if (exec == Exec::openmp) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            f(static_cast<std::size_t>(i));
        return;
    }
#endif
    (void)exec;
    for (std::size_t i = 0; i < n; ++i) f(i);
}

/// Deterministic max of f(i); same blocked scheme as block_sum.
template <class F>
double block_max(std::size_t n, F&& f, Exec exec) {
    const std::size_t nb = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(nb, 0.0);
    for_each(
        nb,
        [&](std::size_t b) {
            const std::size_t lo = b * kBlock;
            const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
            double m = 0.0;
            for (std::size_t i = lo; i < hi; ++i) {
                const double v = f(i);
                if (v > m) m = v;
            }
            partial[b] = m;
        },
        exec);
    double m = 0.0;
    for (double p : partial)
        if (p > m) m = p;
    return m;
}

}  // namespace par
}  // namespace apfrac
