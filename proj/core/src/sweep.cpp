#include "satnoma/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>
#include <vector>

#include "satnoma/errors.hpp"

namespace satnoma {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

SweepRow analytic_row(double snr_db, int user, std::string mode, const OutageResult& r) {
    SweepRow row;
    row.snr_db = snr_db;
    row.user = user;
    row.mode = std::move(mode);
    row.probability = r.probability;
    row.series_terms = r.diagnostics.series_terms_used;
    row.quad_nodes = r.diagnostics.quadrature_nodes;
    return row;
}

SweepRow mc_row(double snr_db, int user, std::string mode, const OutageResult& r,
                std::uint64_t seed) {
    SweepRow row;
    row.snr_db = snr_db;
    row.user = user;
    row.mode = std::move(mode);
    row.probability = r.probability;
    row.mc_ci_halfwidth = r.ci_halfwidth;
    row.seed = seed;
    return row;
}

// The analytic points are pure and independent; spread them over a small
// pool and keep the result order fixed.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    const int n = std::max(1, std::min<int>(workers, static_cast<int>(count)));
    if (n == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (int w = 0; w < n; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

} // namespace

std::vector<SweepRow> evaluate_sweep(const NomaScenario& scenario, const SweepSpec& sweep,
                                     const SimConfig& sim, int quad_n) {
    sweep.validate(scenario.user_count());
    const bool ipsic = scenario.sic().kind == SicKind::ipsic;
    for (SweepMode m : sweep.modes)
        if (m == SweepMode::floor && !ipsic)
            throw ValidationError("sweep: mode 'floor' requires an ipSIC scenario");

    const NomaScenario psic_variant =
        ipsic ? scenario.with_sic(SicMode::psic()) : scenario;

    // Analytic evaluations, dispatched concurrently.
    struct AnalyticTask {
        double snr_db;
        int user;
        std::string mode;
        std::function<OutageResult()> eval;
    };
    std::vector<AnalyticTask> analytic;
    // Monte Carlo points run one at a time; each parallelizes internally.
    struct McTask {
        double snr_db;
        int user;
        std::string mode;
        const NomaScenario* scn;
    };
    std::vector<McTask> mc;

    for (double snr_db : sweep.snr_grid_db()) {
        const double rho = db_to_linear(snr_db);
        for (int user : sweep.users) {
            for (SweepMode m : sweep.modes) {
                switch (m) {
                    case SweepMode::exact:
                        analytic.push_back({snr_db, user, "exact_psic", [&, user, rho] {
                                                return outage_psic_exact(psic_variant, user, rho);
                                            }});
                        if (ipsic)
                            analytic.push_back({snr_db, user, "exact_ipsic", [&, user, rho] {
                                                    return outage_ipsic_exact(scenario, user, rho, quad_n);
                                                }});
                        break;
                    case SweepMode::asymptote:
                        analytic.push_back({snr_db, user, "asymptote", [&, user, rho] {
                                                return outage_psic_asymptote(psic_variant, user, rho);
                                            }});
                        break;
                    case SweepMode::floor:
                        analytic.push_back({snr_db, user, "floor", [&, user] {
                                                return outage_ipsic_floor(scenario, user, quad_n);
                                            }});
                        break;
                    case SweepMode::mc:
                        mc.push_back({snr_db, user, "mc_psic", &psic_variant});
                        if (ipsic) mc.push_back({snr_db, user, "mc_ipsic", &scenario});
                        break;
                    case SweepMode::oma:
                        analytic.push_back({snr_db, user, "oma", [&, user, rho] {
                                                return outage_oma(scenario, user, rho);
                                            }});
                        break;
                }
            }
        }
    }

    std::vector<SweepRow> rows(analytic.size() + mc.size());
    const int workers = sim.workers > 0 ? sim.workers
                                        : std::max(1u, std::thread::hardware_concurrency());
    parallel_for(analytic.size(), workers, [&](std::size_t i) {
        const auto& t = analytic[i];
        rows[i] = analytic_row(t.snr_db, t.user, t.mode, t.eval());
    });
    for (std::size_t i = 0; i < mc.size(); ++i) {
        const auto& t = mc[i];
        const OutageResult r = simulate_outage(*t.scn, t.user, db_to_linear(t.snr_db), sim);
        rows[analytic.size() + i] = mc_row(t.snr_db, t.user, t.mode, r, sim.seed);
    }
    return rows;
}

void write_csv(std::ostream& out, std::vector<SweepRow> rows) {
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tie(a.snr_db, a.user, a.mode) < std::tie(b.snr_db, b.user, b.mode);
    });
    out << "snr_db,user,mode,probability,mc_ci_halfwidth,series_terms,quad_nodes,seed\n";
    for (const auto& r : rows) {
        out << format_number(r.snr_db) << ',' << r.user << ',' << r.mode << ','
            << format_number(r.probability) << ',';
        if (r.mc_ci_halfwidth) out << format_number(*r.mc_ci_halfwidth);
        out << ',';
        if (r.series_terms > 0) out << r.series_terms;
        out << ',';
        if (r.quad_nodes > 0) out << r.quad_nodes;
        out << ',';
        if (r.seed) out << *r.seed;
        out << '\n';
    }
}

void run_sweep(const NomaScenario& scenario, const SweepSpec& sweep, const SimConfig& sim,
               int quad_n, std::ostream& out) {
    write_csv(out, evaluate_sweep(scenario, sweep, sim, quad_n));
}

void write_validation_report(std::ostream& out, const NomaScenario& scenario) {
    const int M = scenario.user_count();
    out << "scenario: " << M << " users, sic="
        << (scenario.sic().kind == SicKind::ipsic ? "ipsic" : "psic");
    if (scenario.sic().kind == SicKind::ipsic)
        out << " omega_i=" << format_number(scenario.sic().omega_i) << " ("
            << format_number(10.0 * std::log10(scenario.sic().omega_i)) << " dB)";
    out << ", snr_ref="
        << (scenario.snr_reference() == SnrReference::boresight ? "boresight" : "transmit")
        << "\n";
    for (int p = 1; p <= M; ++p) {
        const NomaUser& u = scenario.user(p);
        const DerivedConstants dc = derive(u.fading);
        out << "user " << p << ": alloc=" << format_number(u.alloc)
            << " rate_bpcu=" << format_number(u.rate_bpcu)
            << " gamma_th=" << format_number(gamma_threshold(u.rate_bpcu)) << "\n";
        out << "  fading b=" << format_number(u.fading.b) << " m=" << format_number(u.fading.m)
            << " omega=" << format_number(u.fading.omega) << "  alpha=" << format_number(dc.alpha)
            << " beta=" << format_number(dc.beta) << " delta=" << format_number(dc.delta) << "\n";
        out << "  angle_deg=" << format_number(u.geometry.angle_deg)
            << " composite_gain=" << format_number(composite_gain(u.geometry))
            << " effective_gain=" << format_number(scenario.gain(p)) << "\n";
        if (p < M) {
            double tail = 0.0;
            for (int i = p + 1; i <= M; ++i) tail += scenario.user(i).alloc;
            const double margin = u.alloc - gamma_threshold(u.rate_bpcu) * tail;
            out << "  feasibility margin a_p - gamma_th_p * sum_tail = "
                << format_number(margin) << "\n";
        }
    }
}

} // namespace satnoma
