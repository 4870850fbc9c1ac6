// Timings of the hot kernels: OpenMP path against the serial reference.
// Both produce bitwise-identical results; this target only compares speed.

#include <chrono>
#include <cstdio>
#include <vector>

#include "apfrac/model.hpp"
#include "apfrac/solver.hpp"

using namespace apfrac;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <class F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now_ms();
        f();
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const double radius = argc > 1 ? std::atof(argv[1]) : 160.0;
    const LatticeDomain dom(radius);
    const EnergyModel model(dom, reference_potential(), 0.01);
    ScalarField u(dom);
    for (int i = 0; i < dom.interior_count(); ++i)
        u[i] = 1e-3 * std::sin(0.01 * i);

    std::printf("radius %g, %d sites\n", radius, dom.interior_count());
    std::printf("%-24s %12s %12s %8s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup");

    const auto row = [&](const char* name, auto&& serial_fn, auto&& omp_fn, int reps) {
        const double ts = time_best_of(reps, serial_fn);
        const double tp = time_best_of(reps, omp_fn);
        std::printf("%-24s %12.2f %12.2f %8.2f\n", name, ts, tp, ts / tp);
    };

    row("energy", [&] { (void)model.energy(u, Exec::serial); },
        [&] { (void)model.energy(u, Exec::openmp); }, 5);
    row("gradient", [&] { (void)model.gradient(u, Exec::serial); },
        [&] { (void)model.gradient(u, Exec::openmp); }, 5);
    row("hessian assembly", [&] { (void)model.hessian(u); }, [&] { (void)model.hessian(u); }, 3);
    row("h1 norm", [&] { (void)h1_norm(u, Exec::serial); },
        [&] { (void)h1_norm(u, Exec::openmp); }, 5);

    const SparseSymmetric A = model.hessian(u);
    std::vector<double> y;
    row("spmv x100",
        [&] {
            for (int k = 0; k < 100; ++k) A.apply(u.values(), y, Exec::serial);
        },
        [&] {
            for (int k = 0; k < 100; ++k) A.apply(u.values(), y, Exec::openmp);
        },
        3);

    const ScalarField b = model.gradient(u);
    std::vector<double> x;
    row("cg solve",
        [&] { (void)cg_solve(A, b.values(), x, 1e-8, 100000, Exec::serial); },
        [&] { (void)cg_solve(A, b.values(), x, 1e-8, 100000, Exec::openmp); }, 2);

    return 0;
}
