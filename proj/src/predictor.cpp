#include "apfrac/predictor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace apfrac::predictor {

Vec2 sqrt_map(Vec2 x) {
    if (x.y == 0.0 && x.x <= 0.0)
        throw std::invalid_argument("sqrt_map: point on the branch cut");
    const double r = std::hypot(x.x, x.y);
    const double half = 0.5 * std::atan2(x.y, x.x);
    const double sr = std::sqrt(r);
    return {sr * std::cos(half), sr * std::sin(half)};
}

Vec2 sqrt_map_reflected(Vec2 x) {
    Vec2 w = sqrt_map(x);
    w.x = -w.x;
    return w;
}

double far_field(Vec2 x, double eps) { return eps * sqrt_map(x).y; }

double continuum_green(Vec2 x, Vec2 s) {
    if (x.x == s.x && x.y == s.y)
        throw std::invalid_argument("continuum_green: coincident arguments");
    const Vec2 wx = sqrt_map(x);
    const Vec2 ws = sqrt_map(s);
    const double d1 = std::hypot(wx.x - ws.x, wx.y - ws.y);
    const double d2 = std::hypot(wx.x + ws.x, wx.y - ws.y);  // |w(x) - w*(s)|
    return -(std::log(d1) + std::log(d2)) / (4.0 * std::numbers::pi);
}

double lattice_green_predictor(LatticeSite m, LatticeSite s) {
    if (m == s) return 0.0;
    return continuum_green(position(m), position(s));
}

}  // namespace apfrac::predictor
