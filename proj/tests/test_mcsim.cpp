#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ucpt/mcsim.hpp"

using nlohmann::json;
using ucpt::DistSpec;
using ucpt::Scenario;

namespace {

Scenario gmd_change_scenario(int n, double tau, double sigma2_post, int runs,
                             std::uint64_t seed) {
    Scenario sc;
    sc.label = "gmd_change";
    sc.kernel_id = "gmd";
    sc.n = n;
    sc.tau_star = tau;
    sc.pre = DistSpec::normal(0.0, 1.0).to_json();
    sc.post = DistSpec::normal(0.0, sigma2_post).to_json();
    sc.runs = runs;
    sc.seed = seed;
    return sc;
}

}  // namespace

TEST_CASE("scenario parsing and rules") {
    const json j{
        {"label", "alt1"},
        {"kernel", "gmd"},
        {"n", 63},
        {"tau_star", 0.5},
        {"pre", {{"family", "normal"}, {"mu", 0.0}, {"sigma", 1.0}}},
        {"post",
         {{"family", "normal"},
          {"mu", 0.0},
          {"sigma", {{"rule", "sigma_local"}, {"c", 3.0}}}}},
        {"runs", 10},
        {"seed", 42},
        {"lrv", {{"bandwidth", "n^(1/3)"}}},
    };
    const Scenario sc = ucpt::scenario_from_json(j);
    CHECK(sc.n == 63);
    CHECK(sc.change_index() == 31);
    CHECK(sc.resolve_post().p2 == doctest::Approx(1.0 + 3.0 / std::sqrt(63.0)));

    const json rho_rule{{"family", "bivariate_normal"},
                        {"rho", {{"rule", "rho_local"}, {"c", -3.0}}}};
    const auto resolved = ucpt::resolve_rules(rho_rule, 100);
    CHECK(resolved.at("rho").get<double>() == doctest::Approx(-0.3));

    CHECK_THROWS_AS(ucpt::scenario_from_json(json{{"kernel", "gmd"}}),
                    ucpt::ConfigError);
    json bad = j;
    bad["post"]["sigma"] = json{{"rule", "unknown_rule"}, {"c", 1.0}};
    CHECK_THROWS_AS(ucpt::scenario_from_json(bad), ucpt::ConfigError);
}

TEST_CASE("change index uses the floor of n tau with rational guard") {
    Scenario sc = gmd_change_scenario(60, 1.0 / 3.0, 2.0, 1, 1);
    CHECK(sc.change_index() == 20);
    sc.n = 63;
    sc.tau_star = 0.25;
    CHECK(sc.change_index() == 15);
    sc.tau_star = 0.5;
    CHECK(sc.change_index() == 31);
    sc.n = 4000;
    sc.tau_star = 1.0 / 3.0;
    CHECK(sc.change_index() == 1333);
}

TEST_CASE("single-run null scenario yields a 0/1 frequency") {
    Scenario sc;
    sc.label = "null_one";
    sc.kernel_id = "gmd";
    sc.n = 50;
    sc.pre = DistSpec::normal(0.0, 1.0).to_json();
    sc.runs = 1;
    sc.seed = 5;
    const auto table = ucpt::run_scenario(sc);
    REQUIRE(table.rows.size() == 2);
    for (const auto& row : table.rows) {
        CHECK((row.frequency == 0.0 || row.frequency == 1.0));
        CHECK(row.se == 0.0);
    }
}

TEST_CASE("results are identical for any worker count") {
    const Scenario sc = gmd_change_scenario(80, 0.5, 1.8, 64, 2029);
    const auto one = ucpt::run_scenario(sc, 1);
    const auto two = ucpt::run_scenario(sc, 2);
    const auto four = ucpt::run_scenario(sc, 4);
    for (std::size_t i = 0; i < one.rows.size(); ++i) {
        CHECK(one.rows[i].rejections == two.rows[i].rejections);
        CHECK(one.rows[i].rejections == four.rows[i].rejections);
        CHECK(one.rows[i].degenerate == two.rows[i].degenerate);
    }
}

TEST_CASE("degenerate replications are counted, not dropped") {
    Scenario sc;
    sc.label = "degenerate";
    sc.kernel_id = "gmd";
    sc.n = 12;
    sc.pre = DistSpec::tabulated({7.0}).to_json();  // constant data
    sc.runs = 8;
    sc.seed = 3;
    const auto table = ucpt::run_scenario(sc);
    for (const auto& row : table.rows) {
        CHECK(row.degenerate == 8);
        CHECK(row.rejections == 0);
    }
}

TEST_CASE("power table serialization") {
    const Scenario sc = gmd_change_scenario(40, 0.5, 3.0, 16, 11);
    const auto table = ucpt::run_scenario(sc);
    const std::string csv = table.to_csv();
    CHECK(csv.find("scenario,method,n,tau_star,runs,rejections,degenerate,frequency,se") !=
          std::string::npos);
    CHECK(csv.find("first_vs_full") != std::string::npos);
    const std::string text = table.to_text();
    CHECK(text.find("gmd_change") != std::string::npos);
}

TEST_CASE("trajectory bundles carry seed-independent overlays") {
    Scenario sc = gmd_change_scenario(200, 1.0 / 3.0, 2.0, 1, 555);
    const auto a = ucpt::trajectory_bundle(sc);
    sc.seed = 556;
    const auto b = ucpt::trajectory_bundle(sc);
    REQUIRE(a.psi1.size() == a.t.size());
    bool data_differ = false;
    for (std::size_t i = 0; i < a.t.size(); ++i) {
        CHECK(a.psi1[i] == b.psi1[i]);
        CHECK(a.psi2[i] == b.psi2[i]);
        data_differ = data_differ || a.d_first_vs_full[i] != b.d_first_vs_full[i];
    }
    CHECK(data_differ);

    const std::string csv = a.to_csv();
    CHECK(csv.find("t,d_first_vs_full,d_first_vs_last,psi1,psi2") != std::string::npos);
}

TEST_CASE("scaled trajectories track the deterministic limits") {
    // moderate n keeps this quick; the acceptance suite runs the large-n version
    int hits = 0;
    const int seeds = 60;
    for (int s = 0; s < seeds; ++s) {
        Scenario sc = gmd_change_scenario(1000, 1.0 / 3.0, 2.0, 1, 7000 + s);
        const auto bundle = ucpt::trajectory_bundle(sc);
        double sup = 0.0;
        for (std::size_t i = 0; i < bundle.t.size(); ++i) {
            sup = std::max(sup, std::fabs(bundle.d_first_vs_full[i] - bundle.psi1[i]));
        }
        if (sup <= 0.12) ++hits;
    }
    CHECK(hits >= seeds - 3);
}

TEST_CASE("null trajectories stay small") {
    int ok = 0;
    const int seeds = 50;
    for (int s = 0; s < seeds; ++s) {
        Scenario sc;
        sc.label = "null_traj";
        sc.kernel_id = "gmd";
        sc.n = 1000;
        sc.pre = DistSpec::normal(0.0, 1.0).to_json();
        sc.runs = 1;
        sc.seed = 100 + s;
        const auto bundle = ucpt::trajectory_bundle(sc);
        double sup = 0.0;
        for (std::size_t i = 0; i < bundle.t.size(); ++i) {
            sup = std::max({sup, std::fabs(bundle.d_first_vs_full[i]),
                            std::fabs(bundle.d_first_vs_last[i])});
        }
        if (sup < 0.3) ++ok;
    }
    CHECK(ok == seeds);
}

TEST_CASE("realized power ranking matches the eccentricity prediction") {
    // gmd scale change at n=63: increase favors first-vs-full, decrease
    // favors first-vs-last, with a clear gap in both directions.
    const auto up = ucpt::run_scenario(gmd_change_scenario(63, 0.5, 1.378, 1500, 606));
    CHECK(ucpt::power_ranking(ucpt::gmd_normal_triple(1.0, 1.378)) ==
          ucpt::PowerRanking::first_vs_full);
    CHECK(100.0 * (up.rows[0].frequency - up.rows[1].frequency) >= 3.0);

    Scenario down;
    down.label = "down";
    down.kernel_id = "gmd";
    down.n = 63;
    down.tau_star = 0.5;
    down.pre = DistSpec::normal(0.0, 1.378).to_json();
    down.post = DistSpec::normal(0.0, 1.0).to_json();
    down.runs = 1500;
    down.seed = 607;
    const auto dn = ucpt::run_scenario(down);
    CHECK(ucpt::power_ranking(ucpt::gmd_normal_triple(1.378, 1.0)) ==
          ucpt::PowerRanking::first_vs_last);
    CHECK(100.0 * (dn.rows[1].frequency - dn.rows[0].frequency) >= 3.0);
}

TEST_CASE("bivariate normal sampler") {
    CHECK_THROWS_AS(ucpt::bivariate_normal_sampler(1.0, 1), ucpt::ConfigError);

    // correlation of 10^6 draws within +-0.005
    for (double rho : {0.0, 0.5}) {
        auto sampler = ucpt::bivariate_normal_sampler(rho, 99);
        const int n = 1000000;
        double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
        for (int i = 0; i < n; ++i) {
            const auto o = sampler.draw();
            sx += o.x;
            sy += o.y;
            sxx += o.x * o.x;
            syy += o.y * o.y;
            sxy += o.x * o.y;
        }
        const double corr = (sxy - sx * sy / n) /
                            std::sqrt((sxx - sx * sx / n) * (syy - sy * sy / n));
        CHECK(corr == doctest::Approx(rho).epsilon(0.005 / std::max(rho, 0.5)));
    }

    // empirical Kendall tau of 1e5 draws: 0 at rho=0, ~1/3 at rho=0.5
    for (double rho : {0.0, 0.5}) {
        auto sampler = ucpt::bivariate_normal_sampler(rho, 4242);
        const int n = 100000;
        std::vector<double> xs(n), ys(n);
        for (int i = 0; i < n; ++i) {
            const auto o = sampler.draw();
            xs[i] = o.x;
            ys[i] = o.y;
        }
        const double tau = oracles::kendall_tau(xs, ys);
        const double want = rho == 0.0 ? 0.0 : 1.0 / 3.0;
        CHECK(std::fabs(tau - want) < 0.01);
    }

    // same seed, same stream
    auto a = ucpt::bivariate_normal_sampler(0.3, 7);
    auto b = ucpt::bivariate_normal_sampler(0.3, 7);
    for (int i = 0; i < 100; ++i) {
        const auto oa = a.draw();
        const auto ob = b.draw();
        CHECK(oa.x == ob.x);
        CHECK(oa.y == ob.y);
    }
}

TEST_CASE("scenario json round trip") {
    const Scenario sc = gmd_change_scenario(64, 0.25, 2.0, 5, 77);
    const auto j = ucpt::scenario_to_json(sc);
    const Scenario back = ucpt::scenario_from_json(j);
    CHECK(back.n == sc.n);
    CHECK(back.runs == sc.runs);
    CHECK(back.seed == sc.seed);
    CHECK(*back.tau_star == *sc.tau_star);
    const auto list = ucpt::scenarios_from_json(json{{"scenarios", json::array({j, j})}});
    CHECK(list.size() == 2);
}
