#pragma once

#include "apfrac/lattice.hpp"
#include "apfrac/potential.hpp"
#include "apfrac/sparse.hpp"

namespace apfrac {

/// Energy-difference functional on a finite domain with zero values outside:
///   E(u) = sum_m [ V(D uhat(m) + D u(m)) - V(D uhat(m)) ],
/// where uhat is the continuum far-field with loading eps. Every term with
/// Du(m) = 0 vanishes identically, so summing over the domain plus one halo
/// ring is lossless. The far-field cache stores the eps-independent part and
/// scales lazily, since studies sweep eps.
class EnergyModel {
public:
    EnergyModel(const LatticeDomain& domain, PairPotential potential, double eps);

    const LatticeDomain& domain() const { return *domain_; }
    const PairPotential& potential() const { return potential_; }
    double eps() const { return eps_; }

    /// Far-field value at a table index (defined on domain plus halo).
    double far_field_at(int idx) const {
        return eps_ * far_field_shape_[static_cast<std::size_t>(idx)];
    }

    double energy(const ScalarField& u, Exec exec = default_exec()) const;

    /// First variation as a residual field r over the domain:
    /// <r, v> = dE(u)[v] for all v supported in the domain; pointwise
    /// r(l) = -2 sum_{rho active} phi'(D_rho(uhat + u)(l)).
    ScalarField gradient(const ScalarField& u, Exec exec = default_exec()) const;

    /// Second variation as a sparse symmetric matrix over the domain. Each
    /// active bond carries the weight 2 phi''(D(uhat+u) along the bond),
    /// evaluated once per bond in a canonical orientation so the assembled
    /// matrix is bitwise symmetric.
    SparseSymmetric hessian(const ScalarField& u) const;

private:
    const LatticeDomain* domain_;
    PairPotential potential_;
    double eps_;
    std::vector<double> far_field_shape_;  // second sqrt-map component per table site
};

}  // namespace apfrac
