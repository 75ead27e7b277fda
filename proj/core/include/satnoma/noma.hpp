#pragma once

#include <vector>

#include "satnoma/channel.hpp"
#include "satnoma/linkbudget.hpp"

namespace satnoma {

enum class SicKind { psic, ipsic };

// Perfect vs imperfect successive interference cancellation. ipSIC leaves a
// residual interference term of average power omega_i in every SINR of a
// user that actually performs SIC.
struct SicMode {
    SicKind kind = SicKind::psic;
    double omega_i = 0.0;

    static SicMode psic() { return {SicKind::psic, 0.0}; }
    static SicMode ipsic(double omega_i) { return {SicKind::ipsic, omega_i}; }
};

// How the sweep SNR axis relates to the link budget.
//   transmit:  phi_p is the full composite gain (free-space loss included).
//   boresight: phi_p is divided by its own boresight value, so rho is the
//              received SNR a user would see at beam center and users differ
//              only through the beam pattern. The figure recipes use this.
enum class SnrReference { transmit, boresight };

struct NomaUser {
    double alloc = 0.0;     // power allocation fraction a_p
    double rate_bpcu = 0.0; // target rate R_p, bits per channel use
    LinkGeometry geometry;
    ShadowedRicianParams fading;
};

// Immutable validated NOMA downlink scenario. Users are indexed 1-based in
// ascending channel-gain order: user 1 gets the largest power fraction and
// the weakest ordered channel.
class NomaScenario {
  public:
    // Enforces: M >= 2; sum a_i = 1 within 1e-12; a_1 >= ... >= a_M > 0;
    // rates > 0; decoding feasibility a_p > gamma_th_p * sum_{i>p} a_i for
    // every p < M; valid geometry/fading; omega_i > 0 iff ipSIC.
    static NomaScenario validated(std::vector<NomaUser> users, SicMode sic,
                                  SnrReference ref = SnrReference::transmit);

    // Test hook: skips every invariant check. Degenerate allocations produce
    // degenerate thresholds by design.
    static NomaScenario unchecked(std::vector<NomaUser> users, SicMode sic,
                                  SnrReference ref = SnrReference::transmit);

    int user_count() const { return static_cast<int>(users_.size()); }
    const NomaUser& user(int p) const { return users_.at(p - 1); }
    const std::vector<NomaUser>& users() const { return users_; }
    const SicMode& sic() const { return sic_; }
    SnrReference snr_reference() const { return ref_; }

    // Effective composite gain phi_p of user p under the SNR reference.
    double gain(int p) const { return gains_.at(p - 1); }

    // 1 when user p carries a residual interference term (ipSIC and p >= 2;
    // the weakest user performs no SIC and never sees a residual), else 0.
    double residual_eta(int p) const;

    // Same users/reference with a different SIC mode; revalidates.
    NomaScenario with_sic(SicMode sic) const;

  private:
    NomaScenario(std::vector<NomaUser> users, SicMode sic, SnrReference ref, bool validate);

    std::vector<NomaUser> users_;
    SicMode sic_;
    SnrReference ref_ = SnrReference::transmit;
    std::vector<double> gains_;
};

// gamma_th = 2^R - 1
double gamma_threshold(double rate_bpcu);

// Channel-power threshold for user p to decode its own message:
//   psi_p = gamma_th_p / (rho phi_p (a_p - gamma_th_p sum_{i>p} a_i)), p < M
//   psi_M = gamma_th_M / (rho phi_M a_M)
double psi(const NomaScenario& s, int p, double rho);

// psi_p* = max{psi_1, ..., psi_p}, every term evaluated at the detecting
// user's composite gain phi_p.
double psi_star(const NomaScenario& s, int p, double rho);

// rho-free floor coefficient: vartheta_p* = rho * psi_p*(rho) for any rho.
double vartheta_star(const NomaScenario& s, int p);

// SINR at detector p for target q <= p:
//   phi_p rho g a_q / (phi_p rho g sum_{i>q} a_i + eta rho residual + 1)
// with eta = residual_eta(p).
double sinr_detect(const NomaScenario& s, int p, int q, double gain_p,
                   double residual_power, double rho);

} // namespace satnoma
