#include "apfrac/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace apfrac {

namespace {

std::uint64_t key_of(LatticeSite l) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(l.l1)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(l.l2));
}

}  // namespace

LatticeDomain::LatticeDomain(double radius) : radius_(radius) {
    if (!(radius >= 1.0)) throw std::invalid_argument("LatticeDomain: radius must be >= 1");
    const int n = static_cast<int>(std::ceil(radius)) + 2;

    // in-domain sites first, fixed (l2, l1) order
    for (int l2 = -n; l2 <= n + 1; ++l2)
        for (int l1 = -n; l1 <= n + 1; ++l1) {
            const LatticeSite l{l1, l2};
            if (norm(position(l)) <= radius_) sites_.push_back(l);
        }
    n_interior_ = static_cast<int>(sites_.size());

    index_.reserve(sites_.size() * 2);
    for (int i = 0; i < n_interior_; ++i) index_.emplace(key_of(sites_[static_cast<std::size_t>(i)]), i);

    // halo: sites outside the ball with an active bond into it
    for (int l2 = -n; l2 <= n + 1; ++l2)
        for (int l1 = -n; l1 <= n + 1; ++l1) {
            const LatticeSite l{l1, l2};
            if (norm(position(l)) <= radius_) continue;
            const Stencil st = apfrac::stencil(l);
            bool touches = false;
            for (int d = 0; d < kNumDirs && !touches; ++d)
                if (st.contains(d) && norm(position(step(l, d))) <= radius_) touches = true;
            if (touches) {
                index_.emplace(key_of(l), static_cast<int>(sites_.size()));
                sites_.push_back(l);
            }
        }

    const std::size_t total = sites_.size();
    nbr_.assign(total * 4, -1);
    stencil_.resize(total);
    class_.resize(total);
    radius_of_.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        const LatticeSite l = sites_[i];
        stencil_[i] = apfrac::stencil(l);
        class_[i] = classify(l);
        radius_of_[i] = norm(position(l));
        for (int d = 0; d < kNumDirs; ++d) {
            const auto it = index_.find(key_of(step(l, d)));
            nbr_[i * 4 + static_cast<std::size_t>(d)] = it == index_.end() ? -1 : it->second;
        }
    }

    const auto pin = index_.find(key_of(kPinSite));
    pin_index_ = pin == index_.end() ? -1 : pin->second;
}

int LatticeDomain::index_of(LatticeSite l) const {
    const auto it = index_.find(key_of(l));
    return it == index_.end() ? -1 : it->second;
}

std::array<double, 4> gradient(const ScalarField& u, int idx) {
    const LatticeDomain& dom = u.domain();
    std::array<double, 4> g{0.0, 0.0, 0.0, 0.0};
    const double um = u.at(idx);
    for (int d = 0; d < kNumDirs; ++d)
        if (dom.bond_active(idx, d)) g[static_cast<std::size_t>(d)] = u.at(dom.neighbor(idx, d)) - um;
    return g;
}

std::array<double, 4> gradient(const ScalarField& u, LatticeSite m) {
    const int idx = u.domain().index_of(m);
    if (idx >= 0) return gradient(u, idx);
    // off the table every bond value is 0 - 0
    return {0.0, 0.0, 0.0, 0.0};
}

double h1_norm(const ScalarField& u, Exec exec) {
    const std::size_t total = static_cast<std::size_t>(u.domain().total_count());
    const double s = par::block_sum(
        total,
        [&](std::size_t i) {
            const auto g = gradient(u, static_cast<int>(i));
            return g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3];
        },
        exec);
    return std::sqrt(s);
}

double h1_inner(const ScalarField& u, const ScalarField& v, Exec exec) {
    const std::size_t total = static_cast<std::size_t>(u.domain().total_count());
    return par::block_sum(
        total,
        [&](std::size_t i) {
            const auto gu = gradient(u, static_cast<int>(i));
            const auto gv = gradient(v, static_cast<int>(i));
            return gu[0] * gv[0] + gu[1] * gv[1] + gu[2] * gv[2] + gu[3] * gv[3];
        },
        exec);
}

ScalarField hessian_apply(const ScalarField& u, Exec exec) {
    const LatticeDomain& dom = u.domain();
    ScalarField out(dom);
    par::for_each(
        static_cast<std::size_t>(dom.interior_count()),
        [&](std::size_t i) {
            const int idx = static_cast<int>(i);
            const double um = u.at(idx);
            double s = 0.0;
            for (int d = 0; d < kNumDirs; ++d)
                if (dom.bond_active(idx, d)) s += um - u.at(dom.neighbor(idx, d));
            out[idx] = 2.0 * s;
        },
        exec);
    return out;
}

}  // namespace apfrac
