#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "satnoma/errors.hpp"
#include "satnoma/linkbudget.hpp"

using namespace satnoma;

TEST_CASE("free space loss") {
    // (0.299792458 / (4 pi 1e6))^2, 40-digit reference
    CHECK(free_space_loss(1e9, 1e6) == doctest::Approx(5.691433657143450470e-16).epsilon(1e-14));
    // inverse-square law
    CHECK(free_space_loss(1e9, 2e6) ==
          doctest::Approx(free_space_loss(1e9, 1e6) / 4.0).epsilon(1e-15));
    // unit-distance normalization at d = lambda / (4 pi)
    const double lambda = kSpeedOfLight / 1e9;
    CHECK(free_space_loss(1e9, lambda / (4.0 * std::numbers::pi)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(free_space_loss(0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(free_space_loss(1e9, -1.0), ValidationError);
}

TEST_CASE("beam pattern and beam gain") {
    CHECK(beam_pattern(0.0) == 1.0);
    // boresight limit: J1(u)/(2u) -> 1/4, 36 J3(u)/u^3 -> 3/4
    CHECK(beam_gain(3.0, 0.0, 0.4) == doctest::Approx(3.0).epsilon(1e-15));

    SUBCASE("u at the standard working point") {
        // 2.07123 sin(0.1 deg)/sin(0.4 deg), 40-digit reference
        CHECK(beam_u(0.1, 0.4) == doctest::Approx(0.5178114433514369415).epsilon(1e-14));
        CHECK(beam_pattern(beam_u(0.1, 0.4)) ==
              doctest::Approx(0.9792294721415245157).epsilon(1e-13));
    }
    SUBCASE("half-power abscissa") {
        // The printed pattern is the amplitude-type bracket: its square is
        // the half-power value at u = 2.07123.
        const double br = beam_pattern(kHalfPowerU);
        CHECK(br == doctest::Approx(0.7071070699213710430).epsilon(1e-13));
        CHECK(br * br == doctest::Approx(0.5).epsilon(0.01));
        CHECK(beam_gain(2.0, 0.4, 0.4) == doctest::Approx(2.0 * br).epsilon(1e-13));
    }
    SUBCASE("limit branch continuity") {
        const double tiny = beam_gain(1.0, 1e-9, 0.4);
        CHECK(std::fabs(tiny - 1.0) <= 1e-12);
        // across the branch switch at u = 1e-4
        CHECK(beam_pattern(0.99e-4) == doctest::Approx(beam_pattern(1.01e-4)).epsilon(1e-10));
    }
    SUBCASE("main lobe: bracket in (0, 1], equals 1 only at u = 0") {
        for (double u = 0.01; u <= 3.83; u += 0.01) {
            const double v = beam_pattern(u);
            CHECK(v > 0.0);
            CHECK(v < 1.0);
        }
    }
    CHECK_THROWS_AS(beam_gain(1.0, -0.1, 0.4), ValidationError);
    CHECK_THROWS_AS(beam_gain(1.0, 0.1, 0.0), ValidationError);
}

TEST_CASE("composite gain") {
    LinkGeometry geom; // table defaults: 1 GHz, 1000 km, 0.1/0.4 deg, 24.3/3.5 dBi
    const double expected = free_space_loss(1e9, 1e6) * std::pow(10.0, 2.43) *
                            beam_gain(std::pow(10.0, 0.35), 0.1, 0.4);
    CHECK(composite_gain(geom) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(composite_gain(geom) == doctest::Approx(3.358196880703442e-13).epsilon(1e-12));

    SUBCASE("zero-gain antennas reduce to loss times pattern") {
        geom.sat_gain_dbi = 0.0;
        geom.user_gain_dbi = 0.0;
        CHECK(composite_gain(geom) ==
              doctest::Approx(free_space_loss(1e9, 1e6) * beam_pattern(beam_u(0.1, 0.4)))
                  .epsilon(1e-15));
    }
    SUBCASE("strictly decreasing in angle over the main lobe") {
        LinkGeometry g;
        double prev = std::numeric_limits<double>::infinity();
        for (double angle = 0.0; angle <= 1.0; angle += 0.02) {
            g.angle_deg = angle;
            const double v = composite_gain(g);
            CHECK(v < prev);
            prev = v;
        }
    }
    SUBCASE("validation") {
        LinkGeometry g;
        g.angle_deg = 95.0;
        CHECK_THROWS_AS(g.validate(), ValidationError);
        g = LinkGeometry{};
        g.distance_m = 0.0;
        CHECK_THROWS_AS(composite_gain(g), ValidationError);
    }
}
