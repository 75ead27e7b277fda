#include "satnoma/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "satnoma/errors.hpp"

namespace satnoma {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

int resolve_workers(int workers) {
    if (workers < 0) throw ValidationError("sim: workers must be >= 0");
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void check_sim(const NomaScenario& s, int p, const SimConfig& sim) {
    if (sim.trials < 1000)
        throw ValidationError("sim: needs at least 1000 trials for a meaningful interval");
    if (p < 1 || p > s.user_count())
        throw ValidationError("sim: user index out of range");
}

// Shared per-trial channel draw: M i.i.d. fading powers sorted ascending,
// then the residual power when user p actually performs imperfect SIC.
// Both outage forms consume the generator identically.
struct TrialDraw {
    std::vector<double> gains;
    double residual = 0.0;
};

void draw_trial(const NomaScenario& s, int p, std::mt19937_64& rng, TrialDraw& d) {
    // Order statistics assume i.i.d. draws; like the analytic expressions,
    // user p's outage is evaluated under user p's fading parameters.
    d.gains.clear();
    for (int i = 0; i < s.user_count(); ++i)
        d.gains.push_back(sample_gain(s.user(p).fading, rng));
    std::stable_sort(d.gains.begin(), d.gains.end());
    d.residual = (s.residual_eta(p) > 0.0) ? sample_residual_power(s.sic(), rng) : 0.0;
}

// Runs `trials` block-seeded trials across the workers and returns the
// failure count. The per-block counts do not depend on which worker ran
// them, so the total is reproducible for any worker count.
template <typename FailFn>
long long run_blocks(const NomaScenario& s, int p, const SimConfig& sim, FailFn&& fails) {
    const long long n_blocks =
        (sim.trials + kMonteCarloBlockTrials - 1) / kMonteCarloBlockTrials;
    const int workers = std::min<long long>(resolve_workers(sim.workers), n_blocks);
    std::atomic<long long> next_block{0};
    std::vector<long long> worker_count(workers, 0);
    auto work = [&](int w) {
        TrialDraw draw;
        draw.gains.reserve(s.user_count());
        long long local = 0;
        for (;;) {
            const long long b = next_block.fetch_add(1);
            if (b >= n_blocks) break;
            std::mt19937_64 rng(block_seed(sim.seed, static_cast<std::uint64_t>(b)));
            const long long block_trials =
                std::min(kMonteCarloBlockTrials, sim.trials - b * kMonteCarloBlockTrials);
            for (long long t = 0; t < block_trials; ++t) {
                draw_trial(s, p, rng, draw);
                if (fails(draw)) ++local;
            }
        }
        worker_count[w] = local;
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    long long total = 0;
    for (long long c : worker_count) total += c;
    return total;
}

OutageResult make_result(long long failures, long long trials) {
    OutageResult out;
    out.method = Method::monte_carlo;
    const double phat = static_cast<double>(failures) / static_cast<double>(trials);
    out.probability = phat;
    out.ci_halfwidth = 1.96 * std::sqrt(phat * (1.0 - phat) / static_cast<double>(trials));
    return out;
}

} // namespace

std::uint64_t block_seed(std::uint64_t master_seed, std::uint64_t block_index) {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(block_index + 1));
}

double sample_residual_power(const SicMode& sic, std::mt19937_64& rng) {
    if (sic.kind != SicKind::ipsic) return 0.0;
    std::exponential_distribution<double> residual(1.0 / sic.omega_i);
    return residual(rng);
}

OutageResult simulate_outage(const NomaScenario& s, int p, double rho, const SimConfig& sim) {
    check_sim(s, p, sim);
    const long long failures = run_blocks(s, p, sim, [&](const TrialDraw& d) {
        for (int q = 1; q <= p; ++q) {
            const double th = gamma_threshold(s.user(q).rate_bpcu);
            if (sinr_detect(s, p, q, d.gains[p - 1], d.residual, rho) < th) return true;
        }
        return false;
    });
    return make_result(failures, sim.trials);
}

OutageResult simulate_outage_threshold_form(const NomaScenario& s, int p, double rho,
                                            const SimConfig& sim) {
    check_sim(s, p, sim);
    const double ps = psi_star(s, p, rho);
    const double eta = s.residual_eta(p);
    const long long failures = run_blocks(s, p, sim, [&](const TrialDraw& d) {
        return !(d.gains[p - 1] > ps * (eta * rho * d.residual + 1.0));
    });
    return make_result(failures, sim.trials);
}

OutageResult simulate_oma(const NomaScenario& s, int p, double rho, const SimConfig& sim) {
    check_sim(s, p, sim);
    const int M = s.user_count();
    double rate_sum = 0.0;
    for (int i = 1; i <= M; ++i) rate_sum += s.user(i).rate_bpcu;
    const double phi = s.gain(p);
    const long long failures = run_blocks(s, p, sim, [&](const TrialDraw& d) {
        return std::log2(1.0 + rho * phi * d.gains[p - 1]) / M < rate_sum;
    });
    return make_result(failures, sim.trials);
}

} // namespace satnoma
