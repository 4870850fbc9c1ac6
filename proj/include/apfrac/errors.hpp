#pragma once

#include <stdexcept>
#include <string>

namespace apfrac {

/// Newton hit the iteration cap before reaching the residual tolerance.
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// CG met a direction of nonpositive curvature; the operator is not SPD
/// (loading beyond the stable branch).
struct IndefiniteHessian : std::runtime_error {
    explicit IndefiniteHessian(const std::string& what) : std::runtime_error(what) {}
};

/// An eigenvalue or linear iteration stagnated.
struct BreakdownError : std::runtime_error {
    explicit BreakdownError(const std::string& what) : std::runtime_error(what) {}
};

struct SourceOutsideDomain : std::runtime_error {
    explicit SourceOutsideDomain(const std::string& what) : std::runtime_error(what) {}
};

struct DomainMismatch : std::runtime_error {
    explicit DomainMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyAnnulus : std::runtime_error {
    explicit EmptyAnnulus(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureNotConverged : std::runtime_error {
    explicit QuadratureNotConverged(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace apfrac
