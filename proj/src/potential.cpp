#include "apfrac/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace apfrac {

PairPotential reference_potential() {
    PairPotential p;
    p.phi = [](double r) { return (1.0 - std::exp(-3.0 * r * r)) / 6.0; };
    p.dphi = [](double r) { return r * std::exp(-3.0 * r * r); };
    p.ddphi = [](double r) { return (1.0 - 6.0 * r * r) * std::exp(-3.0 * r * r); };
    p.name = "reference";
    return p;
}

void validate(const PairPotential& pot) {
    if (!pot.phi || !pot.dphi || !pot.ddphi)
        throw std::invalid_argument("potential '" + pot.name + "': missing callable");
    if (std::abs(pot.phi(0.0)) > 1e-14)
        throw std::invalid_argument("potential '" + pot.name + "': phi(0) != 0");
    if (std::abs(pot.ddphi(0.0) - 1.0) > 1e-12)
        throw std::invalid_argument("potential '" + pot.name + "': phi''(0) != 1");

    // h = 1e-4 balances truncation against cancellation in the second
    // difference; scales floor at 1 so near-zero values are checked
    // absolutely
    const int samples = 401;
    const double h = 1e-4;
    for (int i = 0; i < samples; ++i) {
        const double r = -2.0 + 4.0 * static_cast<double>(i) / (samples - 1);
        if (std::abs(pot.phi(r) - pot.phi(-r)) > 1e-13 * (1.0 + std::abs(pot.phi(r))))
            throw std::invalid_argument("potential '" + pot.name + "': phi not even at r=" +
                                        std::to_string(r));
        const double fd1 = (pot.phi(r + h) - pot.phi(r - h)) / (2.0 * h);
        const double fd2 = (pot.phi(r + h) - 2.0 * pot.phi(r) + pot.phi(r - h)) / (h * h);
        if (std::abs(pot.dphi(r) - fd1) > 1e-6 * std::max(std::abs(fd1), 1.0))
            throw std::invalid_argument("potential '" + pot.name +
                                        "': dphi disagrees with finite differences at r=" +
                                        std::to_string(r));
        if (std::abs(pot.ddphi(r) - fd2) > 1e-6 * std::max(std::abs(fd2), 1.0))
            throw std::invalid_argument("potential '" + pot.name +
                                        "': ddphi disagrees with finite differences at r=" +
                                        std::to_string(r));
    }
}

}  // namespace apfrac
