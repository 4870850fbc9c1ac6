#pragma once

#include <utility>
#include <vector>

#include "apfrac/lattice.hpp"
#include "apfrac/potential.hpp"

namespace apfrac {

/// Log-log least-squares slope of y against x. Multiplying all y by a
/// constant changes only the intercept.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct DecayReport {
    std::vector<double> radii;     // annulus midpoints, strictly increasing
    std::vector<double> envelope;  // max |Du| per annulus
    double slope = 0.0;            // fitted on the window below
    double fit_rmin = 0.0;
    double fit_rmax = 0.0;
    double eps = 0.0;
};

/// Bins sites by |p(l)|, records the per-annulus maximum of |Du|, and fits
/// the slope on (log r, log envelope) over [fit_rmin, fit_rmax]. The default
/// window is [5, R/2]: the inner cutoff avoids the core, the outer avoids
/// boundary pollution. Throws EmptyAnnulus when the width leaves a bin in
/// the window without sites.
DecayReport decay_envelope(const ScalarField& field, double annulus_width = 1.0,
                           double fit_rmin = 5.0, double fit_rmax = 0.0, double eps_used = 0.0);

/// Max over field pairs of || u_i/eps_i - u_j/eps_j || / || u_i/eps_i || in
/// the gradient norm. All fields must share one domain (DomainMismatch).
double epsilon_collapse(const std::vector<std::pair<double, ScalarField>>& fields);

struct ConvergenceReport {
    std::vector<double> radii;
    std::vector<double> errors;  // gradient-norm distance to the reference solution
    double ref_radius = 0.0;
    double slope = 0.0;
};

/// Supercell convergence study: solves the equilibrium on each radius and on
/// a reference domain (ref_radius >= 4 * max radius), extends the small
/// solutions by zero, and measures the gradient-norm error on the reference
/// domain. The reference stands in for the infinite-lattice solution; its own
/// error is of the same order as the finest measured error, which shifts the
/// reported values by a few percent but not the fitted rate.
ConvergenceReport convergence_study(const std::vector<double>& radii, double eps,
                                    double ref_radius, const PairPotential& potential,
                                    double tol = 1e-8, Exec exec = default_exec());

}  // namespace apfrac
