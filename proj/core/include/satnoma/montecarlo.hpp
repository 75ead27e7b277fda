#pragma once

#include <cstdint>
#include <random>

#include "satnoma/analytic.hpp"
#include "satnoma/noma.hpp"

namespace satnoma {

// Trials are processed in fixed blocks of 4096 and every block seeds its own
// generator from a deterministic hash of (seed, block index), so outage
// counts are bitwise reproducible for any worker count.
struct SimConfig {
    long long trials = 100000; // >= 1000 for any reported result
    std::uint64_t seed = 12345;
    int workers = 0; // 0 = hardware concurrency
};

inline constexpr long long kMonteCarloBlockTrials = 4096;

// Deterministic per-block generator seed.
std::uint64_t block_seed(std::uint64_t master_seed, std::uint64_t block_index);

// One draw of the residual interference power |h_I|^2 (exponential with
// mean omega_i; zero under pSIC).
double sample_residual_power(const SicMode& sic, std::mt19937_64& rng);

// Outage of user p estimated through the full SIC decoding chain: a trial
// fails when any target q <= p has SINR below its threshold. Returns the
// failure fraction with a 95% confidence half-width.
OutageResult simulate_outage(const NomaScenario& s, int p, double rho, const SimConfig& sim);

// Same trials decided through the equivalent channel-power threshold
// |h_p|^2 > psi_p* (eta rho |h_I|^2 + 1). Under a shared seed this agrees
// with simulate_outage trial-by-trial.
OutageResult simulate_outage_threshold_form(const NomaScenario& s, int p, double rho,
                                            const SimConfig& sim);

// OMA baseline simulation over the same ordered channel draws.
OutageResult simulate_oma(const NomaScenario& s, int p, double rho, const SimConfig& sim);

} // namespace satnoma
