#pragma once

#include <optional>
#include <vector>

#include "apfrac/model.hpp"

namespace apfrac {

struct SolveReport {
    int iterations = 0;
    std::vector<double> residual_history;  // recorded per-iteration max-norm of the residual
    bool converged = false;
    std::optional<double> lambda_min;
    ScalarField field;
};

/// Plain Newton iteration u <- u - A(u)^{-1} grad(u), terminating at a
/// max-norm residual <= tol. The inner solve is CG on the SPD Hessian to
/// relative residual 0.01 * tol. Throws NonConvergence when max_iter is hit
/// and IndefiniteHessian when CG meets nonpositive curvature (loading beyond
/// the stable branch). Deterministic: identical inputs give identical
/// reports bit for bit.
SolveReport newton(const EnergyModel& model, const ScalarField& u0, double tol = 1e-8,
                   int max_iter = 50, Exec exec = default_exec());

/// Stability constant: smallest eigenvalue of A v = lambda M v, where A is
/// the Hessian at u and M the gradient Gram matrix (the eps = 0 Hessian).
/// Estimated to better than three significant digits by a single-vector
/// locally optimal preconditioned iteration (Rayleigh-Ritz over the current
/// iterate, the preconditioned residual A^{-1} r, and the previous search
/// direction); the spectrum clusters at 1 for small loading, where plain
/// inverse iteration stalls. Throws BreakdownError if it stagnates.
double lambda_min(const EnergyModel& model, const ScalarField& u, Exec exec = default_exec());

}  // namespace apfrac
