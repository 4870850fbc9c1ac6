#include <CLI11.hpp>

#include "apfrac/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Anti-plane crack lattice model: equilibria, decay and convergence studies, "
                 "and the crack-geometry lattice Green's function"};
    app.require_subcommand(1);

    apfrac::RunConfig cfg;

    auto* solve = app.add_subcommand("solve", "Solve the lattice equilibrium, write field.csv");
    solve->add_option("--radius", cfg.radius, "domain radius")->capture_default_str();
    solve->add_option("--eps", cfg.eps, "loading parameter")->capture_default_str();
    solve->add_option("--tol", cfg.tol, "max-norm residual tolerance")->capture_default_str();
    solve->add_option("--max-iter", cfg.max_iter, "Newton iteration cap")->capture_default_str();
    solve->add_option("--out", cfg.out_path, "output directory")->capture_default_str();

    auto* decay = app.add_subcommand("decay", "Measure the corrector decay rate, write decay.csv");
    decay->add_option("--radius", cfg.radius)->capture_default_str();
    decay->add_option("--eps", cfg.eps)->capture_default_str();
    decay->add_option("--tol", cfg.tol)->capture_default_str();
    decay->add_option("--max-iter", cfg.max_iter)->capture_default_str();
    decay->add_option("--out", cfg.out_path)->capture_default_str();

    auto* conv = app.add_subcommand("converge", "Supercell convergence study, write converge.csv");
    conv->add_option("--radii", cfg.radii, "domain radii, e.g. --radii 16 32 64")->required();
    conv->add_option("--ref-radius", cfg.ref_radius, "reference radius (>= 4x max)")->required();
    conv->add_option("--eps", cfg.eps)->capture_default_str();
    conv->add_option("--tol", cfg.tol)->capture_default_str();
    conv->add_option("--out", cfg.out_path)->capture_default_str();

    auto* green = app.add_subcommand("green", "Lattice Green's function column, write green.csv");
    green->add_option("--radius", cfg.radius)->capture_default_str();
    green->add_option("--source", cfg.source, "source site l1 l2");
    green->add_option("--out", cfg.out_path)->capture_default_str();

    app.add_subcommand("check", "Run the invariant self-check suite");

    CLI11_PARSE(app, argc, argv);
    cfg.command = app.get_subcommands().front()->get_name();
    return apfrac::run(cfg);
}
