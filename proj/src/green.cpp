#include "apfrac/green.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "apfrac/errors.hpp"
#include "apfrac/model.hpp"
#include "apfrac/predictor.hpp"

namespace apfrac {

namespace {

std::uint64_t key_of(LatticeSite l) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(l.l1)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(l.l2));
}

}  // namespace

GreenFunction::GreenFunction(const LatticeDomain& domain, double cg_rtol,
                             std::size_t cache_capacity, Exec exec)
    : domain_(&domain), cg_rtol_(cg_rtol), capacity_(cache_capacity), exec_(exec) {
    const EnergyModel zero_model(domain, reference_potential(), 0.0);
    matrix_ = zero_model.hessian(ScalarField(domain));
}

const GreenColumn& GreenFunction::column(LatticeSite s) {
    const std::uint64_t key = key_of(s);
    if (const auto it = cache_.find(key); it != cache_.end()) {
        lru_.splice(lru_.begin(), lru_, it->second);
        return lru_.begin()->second;
    }
    const LatticeDomain& dom = *domain_;
    const int si = dom.index_of(s);
    if (!dom.is_interior(si))
        throw SourceOutsideDomain("green: source (" + std::to_string(s.l1) + "," +
                                  std::to_string(s.l2) + ") not inside the domain");

    // predictor column on domain + halo, diagonal zeroed
    const std::size_t total = static_cast<std::size_t>(dom.total_count());
    std::vector<double> ghat(total);
    par::for_each(
        total,
        [&](std::size_t i) {
            ghat[i] = predictor::lattice_green_predictor(dom.site(static_cast<int>(i)), s);
        },
        exec_);

    // rhs = delta_s - H ghat(., s), rows over the domain
    const int n = dom.interior_count();
    std::vector<double> rhs(static_cast<std::size_t>(n));
    par::for_each(
        static_cast<std::size_t>(n),
        [&](std::size_t i) {
            const int idx = static_cast<int>(i);
            double h = 0.0;
            for (int d = 0; d < kNumDirs; ++d)
                if (dom.bond_active(idx, d)) h += ghat[i] - ghat[dom.neighbor(idx, d)];
            rhs[i] = -2.0 * h;
        },
        exec_);
    rhs[static_cast<std::size_t>(si)] += 1.0;

    std::vector<double> g;
    cg_solve(matrix_, rhs, g, cg_rtol_, 40 * n + 1000, exec_);

    GreenColumn col{s, si, ScalarField(dom)};
    const double pin_value = g[static_cast<std::size_t>(dom.pin_index())];
    par::for_each(
        static_cast<std::size_t>(n),
        [&](std::size_t i) { col.corrector[static_cast<int>(i)] = g[i] - pin_value; }, exec_);

    lru_.emplace_front(key, std::move(col));
    cache_[key] = lru_.begin();
    if (lru_.size() > capacity_) {
        cache_.erase(lru_.back().first);
        lru_.pop_back();
    }
    return lru_.begin()->second;
}

double GreenFunction::value(const GreenColumn& col, LatticeSite m) const {
    return predictor::lattice_green_predictor(m, col.source) + col.corrector.at_site(m);
}

double GreenFunction::mixed_difference(LatticeSite l, LatticeSite s, int rho, int sigma) {
    const LatticeDomain& dom = *domain_;
    if (!stencil(l).contains(rho))
        throw std::invalid_argument("mixed_difference: rho erased at l");
    if (!stencil(s).contains(sigma))
        throw std::invalid_argument("mixed_difference: sigma erased at s");
    const LatticeSite lr = step(l, rho);
    if (!dom.is_interior(dom.index_of(l)) || !dom.is_interior(dom.index_of(lr)))
        throw std::invalid_argument("mixed_difference: field points outside the domain");
    // one solved column per s-argument; the symmetrizing constants cancel in
    // the difference over m
    const GreenColumn cs = column(s);  // copies guard against LRU eviction
    const GreenColumn css = column(step(s, sigma));
    return (value(css, lr) - value(css, l)) - (value(cs, lr) - value(cs, l));
}

double symmetrized_green(const GreenFunction& gf, const GreenColumn& col_s,
                         const GreenColumn& col_xhat, LatticeSite m) {
    if (&col_s.corrector.domain() != &gf.domain() ||
        &col_xhat.corrector.domain() != &gf.domain())
        throw DomainMismatch("symmetrized_green: columns from different domains");
    if (col_xhat.source != kPinSite)
        throw std::invalid_argument("symmetrized_green: second column must sit at the pin site");
    return gf.value(col_s, m) + col_xhat.corrector.at_site(col_s.source);
}

double mixed_decay_envelope(LatticeSite l, LatticeSite s, double delta) {
    const Vec2 wl = predictor::sqrt_map(position(l));
    const Vec2 ws = predictor::sqrt_map(position(s));
    const double sep = std::hypot(wl.x - ws.x, wl.y - ws.y);
    return 1.0 / (1.0 + norm(wl) * norm(ws) * std::pow(sep, 2.0 - delta));
}

namespace {

// midpoint quadrature of (1 - cos(k.c)) / symbol over [-pi, pi]^2, written
// with half-angle sines for accuracy near the removable singularity at k = 0
double quad_level(std::array<int, 2> c, int grid) {
    const double h = 2.0 * std::numbers::pi / grid;
    // per-row partials accumulated sequentially, so the result does not
    // depend on the thread count
    std::vector<double> row_sum(static_cast<std::size_t>(grid), 0.0);
    par::for_each(
        static_cast<std::size_t>(grid),
        [&](std::size_t i) {
            const double k1 = -std::numbers::pi + (static_cast<double>(i) + 0.5) * h;
            const double s1 = std::sin(0.5 * k1);
            double row = 0.0;
            for (int j = 0; j < grid; ++j) {
                const double k2 = -std::numbers::pi + (j + 0.5) * h;
                const double s2 = std::sin(0.5 * k2);
                const double num = std::sin(0.5 * (k1 * c[0] + k2 * c[1]));
                row += (num * num) / (4.0 * (s1 * s1 + s2 * s2));
            }
            row_sum[i] = row;
        },
        default_exec());
    double sum = 0.0;
    for (double r : row_sum) sum += r;
    return sum * h * h / (4.0 * std::numbers::pi * std::numbers::pi);
}

// two-level Richardson in 1/grid^2 across grid, 2*grid, 4*grid
double quad_extrapolated(std::array<int, 2> c, int grid) {
    const double q1 = quad_level(c, grid);
    const double q2 = quad_level(c, 2 * grid);
    const double q4 = quad_level(c, 4 * grid);
    const double r1 = (4.0 * q2 - q1) / 3.0;
    const double r2 = (4.0 * q4 - q2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

double quad(std::array<int, 2> c) {
    if (c[0] == 0 && c[1] == 0) return 0.0;
    double prev = quad_extrapolated(c, 32);
    for (int grid = 64; grid <= 1024; grid *= 2) {
        const double cur = quad_extrapolated(c, grid);
        if (std::abs(cur - prev) < 1e-9) return cur;
        prev = cur;
    }
    throw QuadratureNotConverged("homogeneous_green_difference: refinement stalled for (" +
                                 std::to_string(c[0]) + "," + std::to_string(c[1]) + ")");
}

}  // namespace

double homogeneous_green_difference(std::array<int, 2> a, std::array<int, 2> b) {
    return quad(b) - quad(a);
}

}  // namespace apfrac
