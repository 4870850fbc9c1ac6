#pragma once

#include <vector>

#include "apfrac/parallel.hpp"

namespace apfrac {

/// Assembled symmetric operator in CSR form with sorted columns. Rows hold
/// the diagonal plus at most four neighbor entries; assembly keeps exact
/// structural and numerical symmetry.
struct SparseSymmetric {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    void apply(const std::vector<double>& x, std::vector<double>& y,
               Exec exec = default_exec()) const;

    std::vector<double> diagonal() const;

    /// max |A - A^T| by direct entry lookup (diagnostic).
    double max_asymmetry() const;
};

struct CgResult {
    int iterations = 0;
    double rel_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradients on an SPD matrix. Terminates at
/// ||b - Ax||_2 <= rtol * ||b||_2. Throws IndefiniteHessian when a direction
/// of nonpositive curvature appears and BreakdownError when max_iter is
/// exhausted. Fully deterministic (blocked reductions, fixed order).
CgResult cg_solve(const SparseSymmetric& A, const std::vector<double>& b, std::vector<double>& x,
                  double rtol, int max_iter, Exec exec = default_exec());

}  // namespace apfrac
