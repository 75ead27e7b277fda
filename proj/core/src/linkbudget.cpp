#include "satnoma/linkbudget.hpp"

#include <cmath>
#include <numbers>

#include "satnoma/errors.hpp"
#include "satnoma/specfun.hpp"

namespace satnoma {

void LinkGeometry::validate() const {
    if (!(carrier_hz > 0.0)) throw ValidationError("geometry: carrier_hz must be > 0");
    if (!(distance_m > 0.0)) throw ValidationError("geometry: distance_m must be > 0");
    if (angle_deg < 0.0 || angle_deg >= 90.0)
        throw ValidationError("geometry: angle_deg must be in [0, 90)");
    if (!(angle3db_deg > 0.0)) throw ValidationError("geometry: angle3db_deg must be > 0");
}

double dbi_to_linear(double dbi) { return std::pow(10.0, dbi / 10.0); }

double free_space_loss(double carrier_hz, double distance_m) {
    if (!(carrier_hz > 0.0) || !(distance_m > 0.0))
        throw ValidationError("free_space_loss: carrier and distance must be > 0");
    const double lambda = kSpeedOfLight / carrier_hz;
    const double ratio = lambda / (4.0 * std::numbers::pi * distance_m);
    return ratio * ratio;
}

double beam_pattern(double u) {
    // J1(u)/(2u) -> 1/4 and 36 J3(u)/u^3 -> 3/4 as u -> 0; both quotients
    // cancel catastrophically near boresight, so use the series there.
    if (std::fabs(u) < 1e-4) return 1.0 - (5.0 / 64.0) * u * u;
    return specfun::bessel_j(1, u) / (2.0 * u) + 36.0 * specfun::bessel_j(3, u) / (u * u * u);
}

double beam_u(double angle_deg, double angle3db_deg) {
    constexpr double deg = std::numbers::pi / 180.0;
    return kHalfPowerU * std::sin(angle_deg * deg) / std::sin(angle3db_deg * deg);
}

double beam_gain(double user_gain_linear, double angle_deg, double angle3db_deg) {
    if (!(angle3db_deg > 0.0)) throw ValidationError("beam_gain: angle3db_deg must be > 0");
    if (angle_deg < 0.0) throw ValidationError("beam_gain: angle_deg must be >= 0");
    return user_gain_linear * beam_pattern(beam_u(angle_deg, angle3db_deg));
}

double composite_gain(const LinkGeometry& geom) {
    geom.validate();
    return free_space_loss(geom.carrier_hz, geom.distance_m) *
           dbi_to_linear(geom.sat_gain_dbi) *
           beam_gain(dbi_to_linear(geom.user_gain_dbi), geom.angle_deg, geom.angle3db_deg);
}

} // namespace satnoma
