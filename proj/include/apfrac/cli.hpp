#pragma once

#include <array>
#include <string>
#include <vector>

namespace apfrac {

/// Parsed command-line configuration. Identical configs must produce
/// byte-identical CSV files.
struct RunConfig {
    std::string command;  // solve | decay | converge | green | check
    double radius = 32.0;
    double eps = 0.01;
    double tol = 1e-8;
    int max_iter = 50;
    std::vector<double> radii;      // converge
    double ref_radius = 0.0;        // converge
    std::array<int, 2> source{13, 9};  // green
    std::string out_path = ".";
};

/// Validates the config, runs the requested experiment, writes CSV artifacts
/// plus a text summary under out_path, and returns the process exit status
/// (0 on success). Failures print a diagnostic to stderr.
int run(const RunConfig& config);

}  // namespace apfrac
