#pragma once

#include <iosfwd>
#include <string>

#include "satnoma/montecarlo.hpp"
#include "satnoma/scenario_io.hpp"

namespace satnoma {

// One evaluated CSV row. The mode strings a sweep can produce are
// exact_psic, exact_ipsic, asymptote, floor, mc_psic, mc_ipsic and oma;
// an ipSIC scenario yields both SIC variants of the exact and mc modes.
struct SweepRow {
    double snr_db = 0.0;
    int user = 0;
    std::string mode;
    double probability = 0.0;
    std::optional<double> mc_ci_halfwidth;
    int series_terms = 0;
    int quad_nodes = 0;
    std::optional<std::uint64_t> seed;
};

std::vector<SweepRow> evaluate_sweep(const NomaScenario& scenario, const SweepSpec& sweep,
                                     const SimConfig& sim, int quad_n);

// Rows sorted by (snr_db, user, mode), formatted with 15 significant
// digits. Header:
//   snr_db,user,mode,probability,mc_ci_halfwidth,series_terms,quad_nodes,seed
// mc_ci_halfwidth and seed are empty for analytic rows; series_terms and
// quad_nodes are empty for Monte Carlo rows and whenever not applicable.
void write_csv(std::ostream& out, std::vector<SweepRow> rows);

void run_sweep(const NomaScenario& scenario, const SweepSpec& sweep, const SimConfig& sim,
               int quad_n, std::ostream& out);

// Prints the derived per-user quantities (alpha/beta/delta, composite gain,
// gamma thresholds, feasibility margins). Returns normally for a valid
// scenario; scenario construction itself throws ValidationError earlier.
void write_validation_report(std::ostream& out, const NomaScenario& scenario);

} // namespace satnoma
