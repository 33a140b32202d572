#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ucpt/cptest.hpp"
#include "ucpt/sampler.hpp"
#include "ucpt/theory.hpp"

namespace ucpt {

// One simulation experiment: a kernel, a sample size, a change fraction (or
// none for the null), the marginals before and after the change, and the
// replication protocol. Sampler parameters may be sample-size-dependent
// rules in the JSON form; resolve_sampler() evaluates them at n.
struct Scenario {
    std::string label;
    std::string kernel_id = "gmd";
    int n = 0;
    std::optional<double> tau_star;  // nullopt = null hypothesis
    nlohmann::json pre;              // sampler spec, possibly with rules
    nlohmann::json post;             // ignored under the null
    int runs = 1;
    std::uint64_t seed = 1;
    double alpha = 0.05;
    LrvConfig lrv;

    // Index of the last pre-change observation, floor(n * tau_star) with a
    // guard against 0.9999... representations of exact rationals.
    int change_index() const;

    DistSpec resolve_pre() const;
    DistSpec resolve_post() const;
};

Scenario scenario_from_json(const nlohmann::json& j);
std::vector<Scenario> scenarios_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

// Replaces {"rule": ..., "c": ...} objects inside a sampler spec by their
// numeric value at sample size n. Known rules:
//   sigma_local: 1 + c/sqrt(n)
//   rho_local:   c/sqrt(n)
nlohmann::json resolve_rules(const nlohmann::json& spec, int n);

struct PowerRow {
    std::string scenario;
    Method method = Method::first_vs_full;
    int n = 0;
    std::optional<double> tau_star;
    int runs = 0;
    int rejections = 0;
    int degenerate = 0;  // replications with a degenerate variance estimate
    double frequency = 0.0;
    double se = 0.0;  // binomial, sqrt(p(1-p)/runs)
};

struct PowerTable {
    std::vector<PowerRow> rows;

    std::string to_csv() const;
    std::string to_text() const;  // aligned columns
};

// Runs all replications of one scenario. Replication r draws from
// substream(seed, r), so the result is identical for any worker count.
// Degenerate-variance replications count as non-rejections and are reported
// in the degenerate column. num_threads = 0 picks the OpenMP default.
PowerTable run_scenario(const Scenario& s, int num_threads = 0);

struct TrajectoryBundle {
    std::vector<double> t;         // k/n for k = 1..n
    std::vector<double> d_first_vs_full;  // scaled by 1/n
    std::vector<double> d_first_vs_last;  // scaled by 1/n
    std::vector<double> psi1;      // empty when no drift spec is available
    std::vector<double> psi2;

    std::string to_csv() const;
};

// One realized pair of (1/n)-scaled trajectories from replication 0 of the
// scenario, with deterministic limit overlays. If no drift spec is given one
// is derived from the scenario marginals: closed form for gmd with centered
// normal samplers, otherwise theta_mc with a fixed internal seed (so the
// overlay never depends on the scenario seed).
TrajectoryBundle trajectory_bundle(const Scenario& s,
                                   std::optional<DriftSpec> drift = std::nullopt);

// Standard bivariate normal sampler with correlation rho: Y1 = Z1,
// Y2 = rho Z1 + sqrt(1-rho^2) Z2, normals via the polar method.
Sampler bivariate_normal_sampler(double rho_corr, std::uint64_t seed);

}  // namespace ucpt
