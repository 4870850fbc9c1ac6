#include "apfrac/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "apfrac/errors.hpp"
#include "apfrac/model.hpp"
#include "apfrac/solver.hpp"

namespace apfrac {

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_loglog_slope: need at least two samples");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

DecayReport decay_envelope(const ScalarField& field, double annulus_width, double fit_rmin,
                           double fit_rmax, double eps_used) {
    if (!(annulus_width > 0.0)) throw std::invalid_argument("decay_envelope: width must be > 0");
    const LatticeDomain& dom = field.domain();
    if (fit_rmax <= 0.0) fit_rmax = dom.radius() / 2.0;

    const int nbins = static_cast<int>(std::ceil(dom.radius() / annulus_width)) + 1;
    std::vector<double> env(static_cast<std::size_t>(nbins), 0.0);
    std::vector<int> count(static_cast<std::size_t>(nbins), 0);
    for (int i = 0; i < dom.total_count(); ++i) {
        const int b = static_cast<int>(std::floor(dom.site_radius(i) / annulus_width));
        if (b >= nbins) continue;
        const auto g = gradient(field, i);
        const double mag =
            std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3]);
        env[static_cast<std::size_t>(b)] = std::max(env[static_cast<std::size_t>(b)], mag);
        ++count[static_cast<std::size_t>(b)];
    }

    DecayReport report;
    report.fit_rmin = fit_rmin;
    report.fit_rmax = fit_rmax;
    report.eps = eps_used;
    std::vector<double> fx, fy;
    for (int b = 0; b < nbins; ++b) {
        const double mid = (b + 0.5) * annulus_width;
        if (mid > dom.radius()) break;
        const bool in_window = mid >= fit_rmin && mid <= fit_rmax;
        if (count[static_cast<std::size_t>(b)] == 0) {
            if (in_window)
                throw EmptyAnnulus("decay_envelope: no sites in annulus at r = " +
                                   std::to_string(mid));
            continue;
        }
        report.radii.push_back(mid);
        report.envelope.push_back(env[static_cast<std::size_t>(b)]);
        if (in_window && env[static_cast<std::size_t>(b)] > 0.0) {
            fx.push_back(mid);
            fy.push_back(env[static_cast<std::size_t>(b)]);
        }
    }
    report.slope = fit_loglog_slope(fx, fy);
    return report;
}

double epsilon_collapse(const std::vector<std::pair<double, ScalarField>>& fields) {
    if (fields.size() < 2) return 0.0;
    const LatticeDomain* dom = &fields.front().second.domain();
    for (const auto& [eps, f] : fields)
        if (&f.domain() != dom) throw DomainMismatch("epsilon_collapse: mixed domains");

    double worst = 0.0;
    for (std::size_t i = 0; i < fields.size(); ++i)
        for (std::size_t j = i + 1; j < fields.size(); ++j) {
            ScalarField diff(*dom), ref(*dom);
            const double ei = fields[i].first, ej = fields[j].first;
            for (int k = 0; k < dom->interior_count(); ++k) {
                ref[k] = fields[i].second[k] / ei;
                diff[k] = ref[k] - fields[j].second[k] / ej;
            }
            worst = std::max(worst, h1_norm(diff) / h1_norm(ref));
        }
    return worst;
}

ConvergenceReport convergence_study(const std::vector<double>& radii, double eps,
                                    double ref_radius, const PairPotential& potential,
                                    double tol, Exec exec) {
    if (radii.empty()) throw std::invalid_argument("convergence_study: no radii");
    if (!std::is_sorted(radii.begin(), radii.end()))
        throw std::invalid_argument("convergence_study: radii must be sorted");
    if (ref_radius < 4.0 * radii.back())
        throw std::invalid_argument("convergence_study: reference radius must be >= 4x max radius");

    const LatticeDomain ref_domain(ref_radius);
    const EnergyModel ref_model(ref_domain, potential, eps);
    const ScalarField ref_solution = newton(ref_model, ScalarField(ref_domain), tol, 50, exec).field;

    ConvergenceReport report;
    report.radii = radii;
    report.ref_radius = ref_radius;
    for (const double radius : radii) {
        const LatticeDomain dom(radius);
        const EnergyModel model(dom, potential, eps);
        const ScalarField u = newton(model, ScalarField(dom), tol, 50, exec).field;
        // zero-extension onto the reference domain
        ScalarField diff(ref_domain);
        for (int i = 0; i < ref_domain.interior_count(); ++i) diff[i] = -ref_solution[i];
        for (int i = 0; i < dom.interior_count(); ++i) {
            const int j = ref_domain.index_of(dom.site(i));
            diff[j] += u[i];
        }
        report.errors.push_back(h1_norm(diff, exec));
    }
    report.slope = fit_loglog_slope(report.radii, report.errors);
    return report;
}

}  // namespace apfrac
