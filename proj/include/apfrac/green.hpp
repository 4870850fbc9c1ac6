#pragma once

#include <array>
#include <list>
#include <unordered_map>

#include "apfrac/lattice.hpp"
#include "apfrac/potential.hpp"
#include "apfrac/sparse.hpp"

namespace apfrac {

/// One solved column of the crack-geometry lattice Green's function: the
/// finite-energy correction on top of the continuum predictor, for a fixed
/// point source. The corrector is normalized to vanish at the pinning site.
struct GreenColumn {
    LatticeSite source;
    int source_index = -1;
    ScalarField corrector;
};

/// Predictor-corrector construction of the lattice Green's function for the
/// cracked lattice. Holds the assembled zero-loading Hessian of the domain
/// and an LRU cache of solved columns (one CG solve per source).
class GreenFunction {
public:
    explicit GreenFunction(const LatticeDomain& domain, double cg_rtol = 1e-12,
                           std::size_t cache_capacity = 64, Exec exec = default_exec());

    const LatticeDomain& domain() const { return *domain_; }
    const SparseSymmetric& matrix() const { return matrix_; }

    /// Solves (or fetches) the corrector for a point source: the linear
    /// system A g = delta_s - H ghat(.,s) over the domain, where ghat is the
    /// continuum predictor with zeroed diagonal. Throws SourceOutsideDomain.
    const GreenColumn& column(LatticeSite s);

    /// G(m, s) = ghat(m, s) + corrector_s(m), without the symmetrizing
    /// cross-term. Differences in m of this value are exact.
    double value(const GreenColumn& col, LatticeSite m) const;

    /// Mixed difference D1_rho D2_sigma G(l, s) from the two columns at s and
    /// s + sigma (column constants cancel). Preconditions: rho active at l,
    /// sigma active at s, and both field points inside the domain.
    double mixed_difference(LatticeSite l, LatticeSite s, int rho, int sigma);

private:
    const LatticeDomain* domain_;
    double cg_rtol_;
    std::size_t capacity_;
    Exec exec_;
    SparseSymmetric matrix_;
    std::list<std::pair<std::uint64_t, GreenColumn>> lru_;
    std::unordered_map<std::uint64_t, std::list<std::pair<std::uint64_t, GreenColumn>>::iterator>
        cache_;
};

/// Symmetrized value G(m, s) = ghat(m, s) + corrector_s(m) + corrector_xhat(s):
/// the cross-term makes the full function symmetric up to the finite-domain
/// truncation error. col_xhat must be the column at the pinning site; both
/// columns must live on the same domain (DomainMismatch otherwise).
double symmetrized_green(const GreenFunction& gf, const GreenColumn& col_s,
                         const GreenColumn& col_xhat, LatticeSite m);

/// Decay envelope for mixed differences of the Green's function, exponent
/// 2 - delta: 1 / (1 + |w(l)| |w(s)| |w(l)-w(s)|^{2-delta}).
double mixed_decay_envelope(LatticeSite l, LatticeSite s, double delta = 0.1);

/// Difference of the homogeneous lattice Green's function on the full square
/// lattice, G_hom(a) - G_hom(b), where the operator is the double-counted
/// direction sum (twice the 5-point Laplacian, symbol 2 sum_rho (1-cos k.rho)).
/// Evaluated by midpoint Fourier quadrature on a tensor grid with Richardson
/// extrapolation, refined until successive refinements differ by < 1e-9.
/// Throws QuadratureNotConverged if the target is not met.
double homogeneous_green_difference(std::array<int, 2> a, std::array<int, 2> b);

}  // namespace apfrac
