#pragma once

#include "apfrac/lattice.hpp"

namespace apfrac {

/// Continuum far-field objects built on the complex square-root map, which
/// unfolds the cut plane into the right half-plane and carries the r^{1/2}
/// crack-tip behaviour. The polar angle is taken in (-pi, pi] via atan2, so
/// lattice evaluations never hit the branch cut.
namespace predictor {

/// w(x) = sqrt(r) (cos(theta/2), sin(theta/2)). Throws std::invalid_argument
/// for points exactly on the cut {x1 <= 0, x2 = 0}.
Vec2 sqrt_map(Vec2 x);

/// Reflection of sqrt_map(x) through the vertical axis: negated first
/// component.
Vec2 sqrt_map_reflected(Vec2 x);

/// Far-field displacement eps * w_2(x): harmonic off the cut with zero
/// normal derivative on it. eps is the loading parameter (assumed >= 0).
double far_field(Vec2 x, double eps);

/// Continuum Green's function of the cracked plane for the operator with
/// lattice constant 2:
///   -(1/(4 pi)) [ log|w(x)-w(s)| + log|w(x)-w*(s)| ].
/// Symmetric in its arguments; throws for x == s (logarithmic singularity).
double continuum_green(Vec2 x, Vec2 s);

/// Lattice restriction of continuum_green with the diagonal set to exactly 0
/// (near the point source the true lattice value stays O(1)).
double lattice_green_predictor(LatticeSite m, LatticeSite s);

}  // namespace predictor
}  // namespace apfrac
