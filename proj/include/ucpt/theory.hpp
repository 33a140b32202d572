#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "ucpt/kernel.hpp"
#include "ucpt/sampler.hpp"

namespace ucpt {

// Monte Carlo standard errors attached to an estimated theta triple.
struct ThetaErrors {
    double se_f = 0.0;
    double se_g = 0.0;
    double se_fg = 0.0;
    double se_rho = 0.0;
};

// The three pair parameters theta_F = E h(X,X'), theta_G = E h(Y,Y'),
// theta_FG = E h(X,Y') for X,X' ~ F and Y,Y' ~ G independent, plus the
// eccentricity rho = theta_fg - (theta_f + theta_g)/2, which is maintained
// as an exact identity by every constructor.
struct ThetaTriple {
    double theta_f = 0.0;
    double theta_g = 0.0;
    double theta_fg = 0.0;
    double rho = 0.0;
    std::optional<ThetaErrors> se;

    static ThetaTriple closed_form(double f, double g, double fg) {
        return {f, g, fg, fg - 0.5 * (f + g), std::nullopt};
    }
};

// Parameters of the deterministic limits of the (1/n)-scaled difference
// processes under a fixed change at fraction tau_star. delta is the local
// drift height used by phi_local only.
struct DriftSpec {
    double tau_star = 0.5;
    double theta_f = 0.0;
    double theta_g = 0.0;
    double rho = 0.0;
    double delta = 0.0;

    static DriftSpec from_triple(const ThetaTriple& t, double tau_star,
                                 double delta = 0.0);
};

// Plain Monte Carlo estimate of the triple from m independent pairs per
// parameter. Deterministic for a given seed, independent of thread count.
ThetaTriple theta_mc(const Kernel& kernel, const DistSpec& f, const DistSpec& g,
                     std::size_t m, std::uint64_t seed);

// Closed form for the gmd kernel between N(0, sigma1^2) and N(0, sigma2^2):
// theta = sqrt(2/pi) * sqrt(s1^2 + s2^2) pairwise; rho >= 0 always.
ThetaTriple gmd_normal_triple(double sigma1, double sigma2);

// Eccentricity of the variance kernel: (muF - muG)^2 / 2.
double variance_rho(double mu_f, double mu_g);

// Eccentricity of the covariance kernel:
// (E_F X - E_G X)(E_F Y - E_G Y) / 2.
double covariance_rho(std::pair<double, double> mu_f, std::pair<double, double> mu_g);

// Kendall's tau of a bivariate normal with correlation rho: (2/pi) asin(rho).
double kendall_normal_theta(double rho_corr);

// Two-branch limits of (1/n) D^F([nt]) and (1/n) D^L([nt]) on [0,1].
// Endpoints are set to 0 explicitly (removable singularities).
double psi1(double t, const DriftSpec& spec);
double psi2(double t, const DriftSpec& spec);

// psi2 - psi1 in closed form: 2 t^2 (1-tau)^2 rho / (1-t) left of tau_star,
// 2 (1-t) tau^2 rho from tau_star on.
double psi_diff(double t, const DriftSpec& spec);

// Tent-shaped drift of the (1/sqrt n)-scaled processes under local
// alternatives of height delta, peaking at tau_star.
double phi_local(double t, double tau_star, double delta);

enum class PowerRanking { first_vs_full, first_vs_last, equal, no_theta_change };

const char* power_ranking_name(PowerRanking r);

// Which test is expected to be more powerful: decided by the sign of rho
// relative to theta_g - theta_f. For Monte Carlo triples, "zero" means
// within 3 standard errors; closed-form triples compare exactly.
PowerRanking power_ranking(const ThetaTriple& triple);

struct ArgmaxConsistency {
    bool fvf_ok = false;
    bool fvl_ok = false;
    bool theta_change = true;  // false when theta_f == theta_g
};

// Checks the inequality systems under which |Psi_1| (resp. |Psi_2|) attains
// its unique maximum at tau_star, so the argmax location estimators are
// consistent. The fvf bounds are strict, the fvl bound is not.
ArgmaxConsistency argmax_consistency(const ThetaTriple& triple, double tau_star);

struct LimitVariances {
    double var_z1 = 0.0;
    double var_z2 = 0.0;
};

// Asymptotic variances of the centered test statistics under a fixed
// alternative (independent data):
//   Var[Z1] = 4 tau Var[h_F(X) - tau h_G(X)] + 4 tau^2 (1-tau) Var[h_G(Y)],
//   Var[Z2] = 4 tau (1-tau)^2 Var[h_F(X)] + 4 tau^2 (1-tau) Var[h_G(Y)],
// with h_F(x) = E_F h(x, Y'), h_G(x) = E_G h(x, Y'), X ~ F, Y ~ G.
// Nested Monte Carlo: m outer draws, ceil(sqrt(m)) inner draws per outer
// draw; the inner noise inflates each variance by E[Var_inner]/m_inner,
// an O(m^{-1/2}) upward bias.
LimitVariances limit_variances(const Kernel& kernel, const DistSpec& f,
                               const DistSpec& g, double tau_star,
                               std::size_t m, std::uint64_t seed);

struct TheoryReport {
    ThetaTriple triple;
    PowerRanking ranking = PowerRanking::equal;
    std::optional<ArgmaxConsistency> consistency;
    std::string kernel_id;
};

nlohmann::json to_json(const TheoryReport& report);

}  // namespace ucpt
