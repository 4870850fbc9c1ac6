#pragma once

#include <array>
#include <functional>
#include <string>

namespace apfrac {

/// Scalar bond potential with first and second derivatives. The model's
/// symmetry assumptions (phi(0) = 0, evenness, phi''(0) = 1) are contracts;
/// validate() enforces them on user-supplied potentials.
struct PairPotential {
    std::function<double(double)> phi;
    std::function<double(double)> dphi;
    std::function<double(double)> ddphi;
    std::string name;
};

/// The reference potential phi(r) = (1 - exp(-3 r^2)) / 6 with analytic
/// derivatives phi'(r) = r exp(-3 r^2), phi''(r) = (1 - 6 r^2) exp(-3 r^2).
PairPotential reference_potential();

/// Samples the potential contracts; throws std::invalid_argument on
/// violation. Checks phi(0) = 0, evenness, phi''(0) = 1, and agreement of
/// dphi/ddphi with central differences of phi to relative error < 1e-6
/// on r in [-2, 2]. Smoothness beyond that is not machine-checkable.
void validate(const PairPotential& pot);

/// Site potential: sum of phi over the four bond-gradient components.
/// Erased bonds arrive as zeros and contribute phi(0) = 0.
inline double site_energy(const PairPotential& pot, const std::array<double, 4>& g) {
    return pot.phi(g[0]) + pot.phi(g[1]) + pot.phi(g[2]) + pot.phi(g[3]);
}

}  // namespace apfrac
