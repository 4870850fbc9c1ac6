#include "apfrac/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "apfrac/errors.hpp"

namespace apfrac {

namespace {

double max_norm(const std::vector<double>& v, Exec exec) {
    return par::block_max(v.size(), [&](std::size_t i) { return std::abs(v[i]); }, exec);
}

double dot(const std::vector<double>& a, const std::vector<double>& b, Exec exec) {
    return par::block_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; }, exec);
}

}  // namespace

SolveReport newton(const EnergyModel& model, const ScalarField& u0, double tol, int max_iter,
                   Exec exec) {
    if (!(tol > 0.0)) throw std::invalid_argument("newton: tol must be positive");
    SolveReport report{0, {}, false, std::nullopt, u0};
    ScalarField& u = report.field;
    const int n = model.domain().interior_count();

    for (int it = 0; it <= max_iter; ++it) {
        const ScalarField r = model.gradient(u, exec);
        const double rn = max_norm(r.values(), exec);
        report.residual_history.push_back(rn);
        if (rn <= tol) {
            report.iterations = it;
            report.converged = true;
            return report;
        }
        if (it == max_iter) break;
        const SparseSymmetric A = model.hessian(u);
        std::vector<double> du;
        cg_solve(A, r.values(), du, 0.01 * tol, 40 * n + 1000, exec);
        par::for_each(static_cast<std::size_t>(n),
                      [&](std::size_t i) { u[static_cast<int>(i)] -= du[i]; }, exec);
    }
    throw NonConvergence("newton: residual " + std::to_string(report.residual_history.back()) +
                         " after " + std::to_string(max_iter) + " iterations");
}

namespace {

// deterministic start vector (splitmix64)
std::vector<double> seeded_vector(std::size_t n) {
    std::vector<double> x(n);
    std::uint64_t state = 0x9E3779B97F4A7C15ull;
    for (std::size_t i = 0; i < n; ++i) {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z = z ^ (z >> 31);
        x[i] = static_cast<double>(z >> 11) * (1.0 / 9007199254740992.0) - 0.5;
    }
    return x;
}

using Mat3 = std::array<std::array<double, 3>, 3>;

// smallest eigenpair of a symmetric k x k matrix (k <= 3), cyclic Jacobi
double small_sym_min_eig(Mat3 a, int k, std::array<double, 3>& eigvec) {
    Mat3 v{};
    for (int i = 0; i < k; ++i) v[i][i] = 1.0;
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < k; ++p)
            for (int q = p + 1; q < k; ++q) off += std::abs(a[p][q]);
        if (off < 1e-15) break;
        for (int p = 0; p < k; ++p)
            for (int q = p + 1; q < k; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                const double t =
                    (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int i = 0; i < k; ++i) {
                    const double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for (int i = 0; i < k; ++i) {
                    const double api = a[p][i], aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
                for (int i = 0; i < k; ++i) {
                    const double vip = v[i][p], viq = v[i][q];
                    v[i][p] = c * vip - s * viq;
                    v[i][q] = s * vip + c * viq;
                }
            }
    }
    int arg = 0;
    for (int i = 1; i < k; ++i)
        if (a[i][i] < a[arg][arg]) arg = i;
    for (int i = 0; i < 3; ++i) eigvec[i] = i < k ? v[i][arg] : 0.0;
    return a[arg][arg];
}

}  // namespace

double lambda_min(const EnergyModel& model, const ScalarField& u, Exec exec) {
    const int n = model.domain().interior_count();
    const std::size_t nn = static_cast<std::size_t>(n);
    const SparseSymmetric A = model.hessian(u);
    const EnergyModel gram_model(model.domain(), model.potential(), 0.0);
    const SparseSymmetric M = gram_model.hessian(ScalarField(model.domain()));

    std::vector<double> x = seeded_vector(nn);
    std::vector<double> p;  // previous search direction
    std::vector<double> ax(nn), mx(nn), r(nn), w(nn), tmp(nn);

    const auto mdot = [&](const std::vector<double>& a, const std::vector<double>& b) {
        M.apply(b, tmp, exec);
        return dot(a, tmp, exec);
    };
    const auto axpy = [&](std::vector<double>& y, double c, const std::vector<double>& v) {
        par::for_each(nn, [&](std::size_t i) { y[i] += c * v[i]; }, exec);
    };
    const auto scale = [&](std::vector<double>& y, double c) {
        par::for_each(nn, [&](std::size_t i) { y[i] *= c; }, exec);
    };

    double theta_prev = 0.0;
    for (int it = 0; it < 200; ++it) {
        scale(x, 1.0 / std::sqrt(mdot(x, x)));
        A.apply(x, ax, exec);
        M.apply(x, mx, exec);
        const double theta = dot(x, ax, exec) / dot(x, mx, exec);
        par::for_each(nn, [&](std::size_t i) { r[i] = ax[i] - theta * mx[i]; }, exec);
        const double rnorm = std::sqrt(dot(r, r, exec));
        if (rnorm <= 1e-12 * std::sqrt(dot(ax, ax, exec)))
            return theta;  // exact eigenvector; hit when A and M coincide (eps = 0)
        if (it >= 1 && std::abs(theta - theta_prev) <= 1e-4 * std::abs(theta)) return theta;
        theta_prev = theta;

        cg_solve(A, r, w, 1e-8, 40 * n + 1000, exec);

        // M-orthonormal Rayleigh-Ritz basis {x, w, p}; drop near-dependent vectors
        std::vector<std::vector<double>> basis;
        for (const std::vector<double>* cand : {&x, &w, &p}) {
            if (cand->empty()) continue;
            std::vector<double> v = *cand;
            const double n0 = std::sqrt(std::abs(mdot(v, v)));
            for (const auto& b : basis) axpy(v, -mdot(b, v), b);
            const double n1 = std::sqrt(std::abs(mdot(v, v)));
            if (n1 > 1e-7 * std::max(n0, 1e-300)) {
                scale(v, 1.0 / n1);
                basis.push_back(std::move(v));
            }
        }
        const int k = static_cast<int>(basis.size());
        Mat3 ar{};
        for (int i = 0; i < k; ++i) {
            A.apply(basis[i], tmp, exec);
            for (int j = 0; j < k; ++j) ar[j][i] = dot(basis[j], tmp, exec);
        }
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                const double sym = 0.5 * (ar[i][j] + ar[j][i]);
                ar[i][j] = ar[j][i] = sym;
            }
        std::array<double, 3> y{};
        small_sym_min_eig(ar, k, y);

        std::vector<double> xn(nn, 0.0), pn(nn, 0.0);
        for (int j = 0; j < k; ++j) {
            axpy(xn, y[j], basis[j]);
            if (j > 0) axpy(pn, y[j], basis[j]);
        }
        x = std::move(xn);
        p = std::move(pn);
    }
    throw BreakdownError("lambda_min: no convergence in 200 iterations");
}

}  // namespace apfrac
