#include "apfrac/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "apfrac/analysis.hpp"
#include "apfrac/errors.hpp"
#include "apfrac/green.hpp"
#include "apfrac/model.hpp"
#include "apfrac/predictor.hpp"
#include "apfrac/solver.hpp"

namespace apfrac {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string config_line(const RunConfig& c) {
    std::ostringstream os;
    os << "# apfrac " << c.command << " radius=" << fmt(c.radius) << " eps=" << fmt(c.eps)
       << " tol=" << fmt(c.tol) << " max_iter=" << c.max_iter;
    if (!c.radii.empty()) {
        os << " radii=";
        for (std::size_t i = 0; i < c.radii.size(); ++i)
            os << (i ? "," : "") << fmt(c.radii[i]);
        os << " ref_radius=" << fmt(c.ref_radius);
    }
    if (c.command == "green")
        os << " source=" << c.source[0] << "," << c.source[1];
    return os.str();
}

std::ofstream open_out(const RunConfig& c, const std::string& name) {
    std::filesystem::create_directories(c.out_path);
    std::ofstream f(std::filesystem::path(c.out_path) / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + name);
    f << config_line(c) << "\n";
    return f;
}

void validate_config(const RunConfig& c) {
    if (!(c.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (c.command != "check" && c.command != "converge" && !(c.radius >= 8.0))
        throw std::invalid_argument("radius must be >= 8");
    if (!(c.eps >= 0.0)) throw std::invalid_argument("eps must be nonnegative");
    if (c.command == "converge") {
        if (c.radii.empty()) throw std::invalid_argument("converge: need --radii");
        for (double r : c.radii)
            if (!(r >= 8.0)) throw std::invalid_argument("converge: radii must be >= 8");
        if (!(c.ref_radius >= 4.0 * c.radii.back()))
            throw std::invalid_argument("converge: ref radius must be >= 4x max radius");
    }
    if (c.command == "green") {
        const double src_norm = norm(position({c.source[0], c.source[1]}));
        if (!(src_norm <= c.radius / 2.0))
            throw std::invalid_argument("green: source must lie within radius/2");
    }
}

int run_solve(const RunConfig& c) {
    const LatticeDomain dom(c.radius);
    const EnergyModel model(dom, reference_potential(), c.eps);
    SolveReport report = newton(model, ScalarField(dom), c.tol, c.max_iter);
    report.lambda_min = lambda_min(model, report.field);

    auto f = open_out(c, "field.csv");
    f << "l1,l2,x1,x2,u\n";
    for (int i = 0; i < dom.interior_count(); ++i) {
        const LatticeSite l = dom.site(i);
        const Vec2 p = position(l);
        f << l.l1 << "," << l.l2 << "," << fmt(p.x) << "," << fmt(p.y) << ","
          << fmt(report.field[i]) << "\n";
    }

    auto s = open_out(c, "summary.txt");
    s << "command: solve\n"
      << "sites: " << dom.interior_count() << "\n"
      << "iterations: " << report.iterations << "\n"
      << "final_residual: " << fmt(report.residual_history.back()) << "\n"
      << "lambda_min: " << fmt(*report.lambda_min) << "\n"
      << "h1_norm: " << fmt(h1_norm(report.field)) << "\n";
    return 0;
}

int run_decay(const RunConfig& c) {
    const LatticeDomain dom(c.radius);
    const EnergyModel model(dom, reference_potential(), c.eps);
    const SolveReport report = newton(model, ScalarField(dom), c.tol, c.max_iter);
    const DecayReport decay = decay_envelope(report.field, 1.0, 5.0, 0.0, c.eps);

    auto f = open_out(c, "decay.csv");
    f << "r,envelope\n";
    for (std::size_t i = 0; i < decay.radii.size(); ++i)
        f << fmt(decay.radii[i]) << "," << fmt(decay.envelope[i]) << "\n";

    auto s = open_out(c, "summary.txt");
    s << "command: decay\n"
      << "iterations: " << report.iterations << "\n"
      << "fit_window: [" << fmt(decay.fit_rmin) << ", " << fmt(decay.fit_rmax) << "]\n"
      << "slope: " << fmt(decay.slope) << "\n";
    return 0;
}

int run_converge(const RunConfig& c) {
    const ConvergenceReport rep =
        convergence_study(c.radii, c.eps, c.ref_radius, reference_potential(), c.tol);

    auto f = open_out(c, "converge.csv");
    f << "R,err_h1\n";
    for (std::size_t i = 0; i < rep.radii.size(); ++i)
        f << fmt(rep.radii[i]) << "," << fmt(rep.errors[i]) << "\n";

    auto s = open_out(c, "summary.txt");
    s << "command: converge\n"
      << "ref_radius: " << fmt(rep.ref_radius) << "\n"
      << "slope: " << fmt(rep.slope) << "\n";
    return 0;
}

int run_green(const RunConfig& c) {
    const LatticeDomain dom(c.radius);
    GreenFunction gf(dom);
    const LatticeSite src{c.source[0], c.source[1]};
    const GreenColumn col_s = gf.column(src);
    const GreenColumn col_pin = gf.column(kPinSite);

    auto f = open_out(c, "green.csv");
    f << "l1,l2,s1,s2,G,mixedD,bound\n";
    // diagonal ray of field points, kept away from the boundary
    const int kmax = static_cast<int>(c.radius / std::sqrt(2.0)) - 2;
    for (int k = 2; k <= kmax; ++k) {
        const LatticeSite l{k, k};
        if (l == src || step(l, 0) == src) continue;
        const double g = symmetrized_green(gf, col_s, col_pin, l);
        const double mixed = gf.mixed_difference(l, src, 0, 0);
        const double bound = mixed_decay_envelope(l, src);
        f << l.l1 << "," << l.l2 << "," << src.l1 << "," << src.l2 << "," << fmt(g) << ","
          << fmt(mixed) << "," << fmt(bound) << "\n";
    }

    auto s = open_out(c, "summary.txt");
    s << "command: green\n"
      << "source: (" << src.l1 << "," << src.l2 << ")\n"
      << "corrector_pin_value: " << fmt(col_s.corrector.at_site(kPinSite)) << "\n";
    return 0;
}

// deterministic pseudo-random fields for the self-check
void fill_seeded(ScalarField& u, std::uint64_t seed, double scale) {
    std::uint64_t state = seed;
    for (int i = 0; i < u.domain().interior_count(); ++i) {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z = z ^ (z >> 31);
        u[i] = scale * (static_cast<double>(z >> 11) * (1.0 / 9007199254740992.0) - 0.5);
    }
}

int run_check() {
    int failures = 0;
    const auto report = [&](const char* group, bool ok) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << group << "\n";
        if (!ok) ++failures;
    };

    {  // stencil reciprocity and crack-line avoidance
        bool ok = true;
        for (int l1 = -16; l1 <= 17 && ok; ++l1)
            for (int l2 = -16; l2 <= 17 && ok; ++l2) {
                const LatticeSite m{l1, l2};
                for (int d = 0; d < kNumDirs; ++d)
                    if (stencil(m).contains(d) && !stencil(step(m, d)).contains(opposite(d)))
                        ok = false;
            }
        for (int l1 = -64; l1 <= 65 && ok; ++l1)
            for (int l2 = -64; l2 <= 65 && ok; ++l2)
                if (position({l1, l2}).y == 0.0) ok = false;
        report("stencil reciprocity / crack-line avoidance", ok);
    }
    {  // potential contracts
        bool ok = true;
        try {
            validate(reference_potential());
        } catch (const std::exception&) {
            ok = false;
        }
        report("pair potential contracts", ok);
    }
    {  // finite-difference consistency of gradient and Hessian
        const LatticeDomain dom(8.0);
        const EnergyModel model(dom, reference_potential(), 0.05);
        ScalarField u(dom), v(dom);
        fill_seeded(u, 1, 0.01);
        fill_seeded(v, 2, 1.0);
        const double h = 1e-5;
        ScalarField up(dom), um(dom);
        for (int i = 0; i < dom.interior_count(); ++i) {
            up[i] = u[i] + h * v[i];
            um[i] = u[i] - h * v[i];
        }
        const double fd = (model.energy(up) - model.energy(um)) / (2.0 * h);
        const ScalarField g = model.gradient(u);
        double dot = 0.0;
        for (int i = 0; i < dom.interior_count(); ++i) dot += g[i] * v[i];
        const bool grad_ok = std::abs(fd - dot) <= 1e-6 * std::abs(fd);

        const SparseSymmetric A = model.hessian(u);
        std::vector<double> av;
        A.apply(v.values(), av);
        const ScalarField gp = model.gradient(up);
        const ScalarField gm = model.gradient(um);
        double err2 = 0.0, ref2 = 0.0;
        for (int i = 0; i < dom.interior_count(); ++i) {
            const double fdv = (gp[i] - gm[i]) / (2.0 * h);
            err2 += (fdv - av[static_cast<std::size_t>(i)]) * (fdv - av[static_cast<std::size_t>(i)]);
            ref2 += av[static_cast<std::size_t>(i)] * av[static_cast<std::size_t>(i)];
        }
        report("finite-difference gradient/Hessian consistency",
               grad_ok && std::sqrt(err2) <= 1e-5 * std::sqrt(ref2));
    }
    {  // square-root map identities and predictor symmetry
        bool ok = true;
        const std::array<Vec2, 4> pts{{{3.5, 2.5}, {-4.5, 0.5}, {1.5, -6.5}, {-2.5, -3.5}}};
        for (const Vec2& a : pts)
            for (const Vec2& b : pts) {
                if (a.x == b.x && a.y == b.y) continue;
                const Vec2 wa = predictor::sqrt_map(a);
                const Vec2 wb = predictor::sqrt_map(b);
                const double lhs = std::hypot(a.x - b.x, a.y - b.y);
                const double rhs = std::hypot(wa.x - wb.x, wa.y - wb.y) *
                                   std::hypot(wa.x + wb.x, wa.y + wb.y);
                if (std::abs(lhs - rhs) > 1e-12 * lhs) ok = false;
                const double gab = predictor::continuum_green(a, b);
                const double gba = predictor::continuum_green(b, a);
                if (std::abs(gab - gba) > 1e-14 * std::max(1.0, std::abs(gab))) ok = false;
            }
        report("square-root map identities / predictor symmetry", ok);
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int run(const RunConfig& config) {
    try {
        validate_config(config);
        if (config.command == "solve") return run_solve(config);
        if (config.command == "decay") return run_decay(config);
        if (config.command == "converge") return run_converge(config);
        if (config.command == "green") return run_green(config);
        if (config.command == "check") return run_check();
        throw std::invalid_argument("unknown command '" + config.command + "'");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace apfrac
