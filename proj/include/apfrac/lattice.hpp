#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "apfrac/parallel.hpp"

namespace apfrac {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// Lattice site indexed by an integer pair; its physical position is
/// p(l) = (l1 - 1/2, l2 - 1/2), so no site ever lies on the crack line.
/// The crack tip sits at the continuum origin and the pinning site is (1,1).
struct LatticeSite {
    int l1 = 0;
    int l2 = 0;

    friend bool operator==(LatticeSite a, LatticeSite b) {
        return a.l1 == b.l1 && a.l2 == b.l2;
    }
    friend bool operator!=(LatticeSite a, LatticeSite b) { return !(a == b); }
};

inline Vec2 position(LatticeSite l) { return {l.l1 - 0.5, l.l2 - 0.5}; }

inline constexpr LatticeSite kPinSite{1, 1};  // closest site to the tip, value pinned to 0

/// The four bond directions, in the fixed order e1, e2, -e1, -e2.
inline constexpr int kNumDirs = 4;
inline constexpr std::array<std::array<int, 2>, 4> kDirStep{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

inline LatticeSite step(LatticeSite l, int dir) {
    return {l.l1 + kDirStep[static_cast<std::size_t>(dir)][0],
            l.l2 + kDirStep[static_cast<std::size_t>(dir)][1]};
}

inline int opposite(int dir) { return (dir + 2) % 4; }

enum class SiteClass : std::uint8_t { interior, gamma_plus, gamma_minus };

/// Crack-surface classification: the rows directly above/below the cut,
/// x1 < 0 strictly.
inline SiteClass classify(LatticeSite l) {
    if (l.l1 <= 0) {
        if (l.l2 == 1) return SiteClass::gamma_plus;
        if (l.l2 == 0) return SiteClass::gamma_minus;
    }
    return SiteClass::interior;
}

/// Subset of the four directions, stored as a 4-bit mask.
class Stencil {
public:
    constexpr Stencil() = default;
    constexpr explicit Stencil(std::uint8_t mask) : mask_(mask) {}

    bool contains(int dir) const { return (mask_ & (1u << dir)) != 0; }
    int count() const {
        int c = 0;
        for (int d = 0; d < kNumDirs; ++d) c += contains(d) ? 1 : 0;
        return c;
    }
    std::uint8_t mask() const { return mask_; }

    friend bool operator==(Stencil a, Stencil b) { return a.mask_ == b.mask_; }

private:
    std::uint8_t mask_ = 0;
};

/// Crack-adapted direction set: full away from the surface, the bond across
/// the cut erased on the two surface rows.
inline Stencil stencil(LatticeSite m) {
    std::uint8_t mask = 0b1111;
    switch (classify(m)) {
        case SiteClass::gamma_plus: mask &= static_cast<std::uint8_t>(~(1u << 3)); break;  // drop -e2
        case SiteClass::gamma_minus: mask &= static_cast<std::uint8_t>(~(1u << 1)); break; // drop +e2
        case SiteClass::interior: break;
    }
    return Stencil(mask);
}

/// Finite computational region: the lattice ball |p(l)| <= R plus one halo
/// ring where fields are zero but far-field values are still evaluated.
/// Site indices [0, interior_count) are the in-domain sites in a fixed
/// (l2, l1)-lexicographic order; halo sites follow. Immutable after
/// construction and shareable across threads.
class LatticeDomain {
public:
    explicit LatticeDomain(double radius);

    double radius() const { return radius_; }
    int interior_count() const { return n_interior_; }
    int total_count() const { return static_cast<int>(sites_.size()); }

    LatticeSite site(int idx) const { return sites_[static_cast<std::size_t>(idx)]; }
    /// Table index of a site, or -1 if it is neither in the ball nor the halo.
    int index_of(LatticeSite l) const;
    bool is_interior(int idx) const { return idx >= 0 && idx < n_interior_; }

    /// Table index of the neighbor in direction dir, or -1.
    int neighbor(int idx, int dir) const {
        return nbr_[static_cast<std::size_t>(idx) * 4 + static_cast<std::size_t>(dir)];
    }
    bool bond_active(int idx, int dir) const {
        return stencil_[static_cast<std::size_t>(idx)].contains(dir);
    }
    Stencil site_stencil(int idx) const { return stencil_[static_cast<std::size_t>(idx)]; }
    SiteClass site_class(int idx) const { return class_[static_cast<std::size_t>(idx)]; }
    double site_radius(int idx) const { return radius_of_[static_cast<std::size_t>(idx)]; }

    /// Dense index of the pinning site (1,1); valid for every radius >= 1.
    int pin_index() const { return pin_index_; }

private:
    double radius_;
    int n_interior_ = 0;
    int pin_index_ = -1;
    std::vector<LatticeSite> sites_;
    std::vector<int> nbr_;
    std::vector<Stencil> stencil_;
    std::vector<SiteClass> class_;
    std::vector<double> radius_of_;
    std::unordered_map<std::uint64_t, int> index_;
};

/// Anti-plane displacement (or corrector) on a domain: one value per
/// in-domain site, implicitly zero everywhere else.
class ScalarField {
public:
    explicit ScalarField(const LatticeDomain& domain)
        : domain_(&domain), values_(static_cast<std::size_t>(domain.interior_count()), 0.0) {}

    const LatticeDomain& domain() const { return *domain_; }

    double& operator[](int dense) { return values_[static_cast<std::size_t>(dense)]; }
    double operator[](int dense) const { return values_[static_cast<std::size_t>(dense)]; }

    /// Value at any table index; halo and out-of-table indices evaluate to 0.
    double at(int idx) const {
        return (idx >= 0 && idx < static_cast<int>(values_.size()))
                   ? values_[static_cast<std::size_t>(idx)]
                   : 0.0;
    }
    double at_site(LatticeSite l) const { return at(domain_->index_of(l)); }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

private:
    const LatticeDomain* domain_;
    std::vector<double> values_;
};

/// Crack-adapted discrete gradient at a table index: component rho is
/// u(m+rho) - u(m) for active bonds and exactly 0 for erased ones.
std::array<double, 4> gradient(const ScalarField& u, int idx);
std::array<double, 4> gradient(const ScalarField& u, LatticeSite m);

/// l2 norm of the discrete gradient over the whole lattice (finite because
/// fields are zero-extended).
double h1_norm(const ScalarField& u, Exec exec = default_exec());

/// Hu with <Hu, v> = sum_m Du(m).Dv(m) for every v supported in the domain;
/// pointwise Hu(m) = 2 sum_{rho active} (u(m) - u(m+rho)).
ScalarField hessian_apply(const ScalarField& u, Exec exec = default_exec());

/// <u, v> against the discrete-gradient inner product (the Hu pairing).
double h1_inner(const ScalarField& u, const ScalarField& v, Exec exec = default_exec());

}  // namespace apfrac
