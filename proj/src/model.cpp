#include "apfrac/model.hpp"

#include <algorithm>

#include "apfrac/predictor.hpp"

namespace apfrac {

EnergyModel::EnergyModel(const LatticeDomain& domain, PairPotential potential, double eps)
    : domain_(&domain), potential_(std::move(potential)), eps_(eps) {
    const std::size_t total = static_cast<std::size_t>(domain.total_count());
    far_field_shape_.resize(total);
    par::for_each(
        total,
        [&](std::size_t i) {
            far_field_shape_[i] = predictor::sqrt_map(position(domain.site(static_cast<int>(i)))).y;
        },
        default_exec());
}

double EnergyModel::energy(const ScalarField& u, Exec exec) const {
    const LatticeDomain& dom = *domain_;
    const auto& phi = potential_.phi;
    return par::block_sum(
        static_cast<std::size_t>(dom.total_count()),
        [&](std::size_t i) {
            const int idx = static_cast<int>(i);
            const double um = u.at(idx);
            const double hm = far_field_at(idx);
            double s = 0.0;
            for (int d = 0; d < kNumDirs; ++d) {
                if (!dom.bond_active(idx, d)) continue;
                const int j = dom.neighbor(idx, d);
                if (j < 0) continue;  // bond fully outside; both u-ends are zero
                const double gh = far_field_at(j) - hm;
                const double gu = u.at(j) - um;
                s += phi(gh + gu) - phi(gh);
            }
            return s;
        },
        exec);
}

ScalarField EnergyModel::gradient(const ScalarField& u, Exec exec) const {
    const LatticeDomain& dom = *domain_;
    const auto& dphi = potential_.dphi;
    ScalarField r(dom);
    par::for_each(
        static_cast<std::size_t>(dom.interior_count()),
        [&](std::size_t i) {
            const int idx = static_cast<int>(i);
            const double um = u.at(idx);
            const double hm = far_field_at(idx);
            double s = 0.0;
            for (int d = 0; d < kNumDirs; ++d) {
                if (!dom.bond_active(idx, d)) continue;
                const int j = dom.neighbor(idx, d);
                s += dphi((far_field_at(j) - hm) + (u.at(j) - um));
            }
            r[idx] = -2.0 * s;
        },
        exec);
    return r;
}

SparseSymmetric EnergyModel::hessian(const ScalarField& u) const {
    const LatticeDomain& dom = *domain_;
    const auto& ddphi = potential_.ddphi;
    const int n = dom.interior_count();

    SparseSymmetric A;
    A.n = n;
    A.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
        int nnz = 1;
        for (int d = 0; d < kNumDirs; ++d)
            if (dom.bond_active(i, d) && dom.is_interior(dom.neighbor(i, d))) ++nnz;
        A.row_ptr[static_cast<std::size_t>(i) + 1] = A.row_ptr[static_cast<std::size_t>(i)] + nnz;
    }
    A.col.resize(static_cast<std::size_t>(A.row_ptr.back()));
    A.val.resize(static_cast<std::size_t>(A.row_ptr.back()));

    // bond weight in canonical orientation (lower table index first) so that
    // the two row entries of a bond are bitwise equal
    const auto bond_weight = [&](int i, int j) {
        const int lo = std::min(i, j), hi = std::max(i, j);
        const double w_lo = far_field_at(lo) + u.at(lo);
        const double w_hi = far_field_at(hi) + u.at(hi);
        return 2.0 * ddphi(w_hi - w_lo);
    };

    par::for_each(
        static_cast<std::size_t>(n),
        [&](std::size_t i) {
            const int idx = static_cast<int>(i);
            int entries[5];
            double weights[5];
            int count = 0;
            double diag = 0.0;
            for (int d = 0; d < kNumDirs; ++d) {
                if (!dom.bond_active(idx, d)) continue;
                const int j = dom.neighbor(idx, d);
                const double w = bond_weight(idx, j);
                diag += w;
                if (dom.is_interior(j)) {
                    entries[count] = j;
                    weights[count] = -w;
                    ++count;
                }
            }
            entries[count] = idx;
            weights[count] = diag;
            ++count;
            // insertion sort by column
            for (int a = 1; a < count; ++a) {
                const int c = entries[a];
                const double w = weights[a];
                int b = a - 1;
                while (b >= 0 && entries[b] > c) {
                    entries[b + 1] = entries[b];
                    weights[b + 1] = weights[b];
                    --b;
                }
                entries[b + 1] = c;
                weights[b + 1] = w;
            }
            const std::size_t base = static_cast<std::size_t>(A.row_ptr[i]);
            for (int a = 0; a < count; ++a) {
                A.col[base + static_cast<std::size_t>(a)] = entries[a];
                A.val[base + static_cast<std::size_t>(a)] = weights[a];
            }
        },
        default_exec());
    return A;
}

}  // namespace apfrac
