#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "satnoma/noma.hpp"

namespace satnoma {

// Flat key-value scenario files. Lines are `key = value`, `#` starts a
// comment, list values are comma- or whitespace-separated. Keys:
//
//   alloc         = 0.5, 0.4, 0.1        (required; defines the user count)
//   rates_bpcu    = 0.1, 0.5, 1.0        (required)
//   sic           = psic | ipsic         (required)
//   omega_i_db    = -30                  (required for ipsic: 10 log10 of
//                                         the residual interference power)
//   fading        = fhs | as | ils       (or fading_b / fading_m /
//                                         fading_omega scalars)
//   carrier_hz    = 1e9
//   distance_m    = 1e6
//   angle_deg     = 0.1, 0.2, 0.3        (scalar broadcasts to all users)
//   angle3db_deg  = 0.4
//   sat_gain_dbi  = 24.3
//   user_gain_dbi = 3.5
//   snr_ref       = transmit | boresight (default transmit)
NomaScenario parse_scenario(std::istream& in, const std::string& source_name = "<stream>");
NomaScenario load_scenario(const std::string& path);

// The sweep modes a CSV run can request.
enum class SweepMode { exact, asymptote, floor, mc, oma };

std::string to_string(SweepMode m);
SweepMode parse_sweep_mode(const std::string& name);

struct SweepSpec {
    double snr_db_start = 0.0;
    double snr_db_stop = 0.0;
    double snr_db_step = 1.0;
    std::vector<SweepMode> modes;
    std::vector<int> users;

    std::vector<double> snr_grid_db() const;
    void validate(int user_count) const;
};

// A named figure setup: one or more labelled scenarios plus the sweep that
// reproduces the corresponding outage-vs-SNR plot.
struct RecipeRun {
    std::string label; // "" for single-run recipes
    NomaScenario scenario;
};

struct Recipe {
    std::string name;
    std::vector<RecipeRun> runs;
    SweepSpec sweep;
};

// Built-in recipes. fig1: frequent heavy shadowing, every user 0.1 deg off
// boresight, ipSIC with omega_i = -30 dB (overridable), all modes. fig2:
// one run per shadowing preset with user angles 0.1/0.2/0.3 deg. fig3:
// frequent heavy shadowing with one run per common user angle
// {0.1, 0.2, 0.3} deg. All recipes use the boresight SNR reference.
Recipe figure_recipe(const std::string& name,
                     std::optional<double> omega_i_db_override = std::nullopt);

} // namespace satnoma
