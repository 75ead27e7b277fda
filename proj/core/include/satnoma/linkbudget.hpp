#pragma once

namespace satnoma {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact SI value
inline constexpr double kHalfPowerU = 2.07123;       // beam-pattern half-power abscissa

// Deterministic per-user link geometry. Defaults are the usual LEO setup:
// 1 GHz carrier, 1000 km slant range, 0.1 deg off boresight, 0.4 deg 3-dB
// beam angle, 24.3 / 3.5 dBi satellite and user antenna gains.
struct LinkGeometry {
    double carrier_hz = 1e9;
    double distance_m = 1e6;
    double angle_deg = 0.1;
    double angle3db_deg = 0.4;
    double sat_gain_dbi = 24.3;
    double user_gain_dbi = 3.5;
    void validate() const;
};

double dbi_to_linear(double dbi);

// Free-space loss eta = (lambda / (4 pi d))^2 with lambda = C / f.
double free_space_loss(double carrier_hz, double distance_m);

// Normalized Bessel beam pattern J1(u)/(2u) + 36 J3(u)/u^3, equal to 1 at
// boresight. Below u = 1e-4 the 0/0 form is replaced by its Taylor
// expansion 1 - (5/64) u^2.
double beam_pattern(double u);

// u = 2.07123 sin(angle) / sin(angle3db)
double beam_u(double angle_deg, double angle3db_deg);

// G(angle) = user_gain_linear * beam_pattern(u)
double beam_gain(double user_gain_linear, double angle_deg, double angle3db_deg);

// phi = free_space_loss * sat_gain * beam_gain(user_gain, ...) with the dBi
// figures converted at use.
double composite_gain(const LinkGeometry& geom);

} // namespace satnoma
