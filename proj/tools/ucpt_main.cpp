// Command-line front end: CSV in, change-point test reports, trajectory
// exports, theta/eccentricity reports, and seeded power studies out.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ucpt/cptest.hpp"
#include "ucpt/io.hpp"
#include "ucpt/mcsim.hpp"
#include "ucpt/nulldist.hpp"
#include "ucpt/theory.hpp"

namespace {

using nlohmann::json;

constexpr int kExitData = 2;
constexpr int kExitDegenerate = 3;

ucpt::LrvConfig make_lrv(const std::string& bandwidth, const std::string& variant) {
    ucpt::LrvConfig cfg;
    if (bandwidth == "auto" || bandwidth == "n^(1/3)") {
        cfg.bandwidth = ucpt::Bandwidth::cbrt_rule();
    } else {
        try {
            cfg.bandwidth = ucpt::Bandwidth::fixed(std::stod(bandwidth));
        } catch (const std::invalid_argument&) {
            throw ucpt::ConfigError("--bandwidth expects a number or 'auto'");
        }
    }
    if (variant == "appendix_d") {
        cfg.variant = ucpt::LrvVariant::appendix_d;
    } else if (variant == "intro_gmd") {
        cfg.variant = ucpt::LrvVariant::intro_gmd;
    } else {
        throw ucpt::ConfigError("--variant expects appendix_d or intro_gmd");
    }
    return cfg;
}

void print_report_text(const ucpt::TestReport& r) {
    std::cout << ucpt::method_name(r.method) << ": statistic=" << r.statistic
              << " p=" << r.p_value << " tau_hat=" << r.tau_hat
              << " k_hat=" << r.k_hat << " sigma2=" << r.sigma2
              << (r.no_signal ? " (no signal)" : "") << '\n';
}

int cmd_test(const std::string& input, const std::string& kernel_name,
             const std::string& method, const std::string& bandwidth,
             const std::string& variant, bool text) {
    const ucpt::InputTable table = ucpt::read_csv(input);
    const ucpt::Series series = table.to_series();
    const ucpt::Kernel kernel = ucpt::Kernel::builtin(kernel_name);
    const ucpt::LrvConfig cfg = make_lrv(bandwidth, variant);

    std::vector<ucpt::TestReport> reports;
    if (method == "both") {
        auto [fvf, fvl] = ucpt::run_both(series, kernel, cfg);
        reports = {fvf, fvl};
    } else {
        reports = {ucpt::run_test(series, kernel, cfg,
                                  ucpt::method_from_name(method))};
    }

    if (text) {
        for (const auto& r : reports) print_report_text(r);
    } else if (reports.size() == 1) {
        std::cout << ucpt::to_json(reports[0]).dump(2) << '\n';
    } else {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(ucpt::to_json(r));
        std::cout << arr.dump(2) << '\n';
    }
    return 0;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ucpt::DataError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ucpt::DataError(path + ": " + e.what());
    }
    return j;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        ucpt::write_file(out_path, content);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"U-statistic CUSUM change-point tests (first-vs-full / first-vs-last)"};
    app.require_subcommand(1);

    // --- test ---
    auto* test = app.add_subcommand("test", "Run the change-point test(s) on a CSV series");
    std::string t_input, t_kernel, t_method = "both", t_bandwidth = "auto",
                t_variant = "appendix_d";
    bool t_text = false, t_json = false;
    test->add_option("--input", t_input, "CSV file with 1 or 2 numeric columns")->required();
    test->add_option("--kernel", t_kernel, "gmd | variance | covariance | kendall")->required();
    test->add_option("--method", t_method, "fvf | fvl | both (default both)");
    test->add_option("--bandwidth", t_bandwidth, "lag-window bandwidth, or 'auto' for n^(1/3)");
    test->add_option("--variant", t_variant, "appendix_d | intro_gmd");
    test->add_flag("--text", t_text, "human-readable output");
    test->add_flag("--json", t_json, "JSON output (default)");

    // --- trajectory ---
    auto* traj = app.add_subcommand("trajectory", "Export scaled difference-process trajectories as CSV");
    std::string tr_input, tr_kernel = "gmd", tr_config, tr_before, tr_after, tr_out;
    int tr_n = 0;
    double tr_tau = 0.0;
    std::uint64_t tr_seed = 1;
    bool tr_psi = false;
    traj->add_option("--input", tr_input, "CSV series (real data; no overlays)");
    traj->add_option("--config", tr_config, "scenario JSON (simulated data)");
    traj->add_option("--kernel", tr_kernel, "kernel id");
    traj->add_option("--n", tr_n, "sample size (simulated data)");
    traj->add_option("--tau-star", tr_tau, "change fraction (simulated data)");
    traj->add_option("--before", tr_before, "pre-change distribution, e.g. normal:0,1");
    traj->add_option("--after", tr_after, "post-change distribution");
    traj->add_option("--seed", tr_seed, "seed (simulated data)");
    traj->add_flag("--psi", tr_psi, "include deterministic limit overlays");
    double tr_theta_f = 0.0, tr_theta_g = 0.0, tr_rho = 0.0;
    auto* opt_tf = traj->add_option("--theta-f", tr_theta_f,
                                    "explicit overlay parameter theta_F");
    auto* opt_tg = traj->add_option("--theta-g", tr_theta_g,
                                    "explicit overlay parameter theta_G");
    auto* opt_rho = traj->add_option("--rho", tr_rho,
                                     "explicit overlay eccentricity");
    traj->add_option("--out", tr_out, "output file (default stdout)");

    // --- theory ---
    auto* theo = app.add_subcommand("theory", "Estimate the theta triple, eccentricity, and power ranking");
    std::string th_kernel, th_before, th_after, th_psi1_out, th_psi2_out;
    std::size_t th_mc = 1000000;
    std::uint64_t th_seed = 1;
    double th_tau = 0.0;
    int th_psi_points = 1001;
    theo->add_option("--kernel", th_kernel, "kernel id")->required();
    theo->add_option("--before", th_before, "distribution F, e.g. normal:0,1")->required();
    theo->add_option("--after", th_after, "distribution G")->required();
    theo->add_option("--mc", th_mc, "Monte Carlo pairs per parameter");
    theo->add_option("--seed", th_seed, "seed");
    theo->add_option("--tau-star", th_tau, "change fraction for consistency flags and psi grids");
    theo->add_option("--psi1-out", th_psi1_out, "write psi1 grid as two-column CSV");
    theo->add_option("--psi2-out", th_psi2_out, "write psi2 grid as two-column CSV");
    theo->add_option("--psi-points", th_psi_points, "grid size (default 1001)");

    // --- simulate ---
    auto* sim = app.add_subcommand("simulate", "Run scenario power studies from a JSON config");
    std::string s_config, s_out;
    bool s_text = false;
    int s_threads = 0;
    sim->add_option("--config", s_config, "scenario JSON (object, array, or {\"scenarios\":[...]})")->required();
    sim->add_option("--out", s_out, "output CSV path (default stdout)");
    sim->add_flag("--text", s_text, "aligned text table instead of CSV");
    sim->add_option("--threads", s_threads, "worker threads (0 = OpenMP default)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*test) {
            if (t_text && t_json) throw ucpt::ConfigError("--text and --json are exclusive");
            return cmd_test(t_input, t_kernel, t_method, t_bandwidth, t_variant, t_text);
        }

        if (*traj) {
            if (!tr_input.empty()) {
                const ucpt::Series series = ucpt::read_csv(tr_input).to_series();
                const ucpt::Kernel kernel = ucpt::Kernel::builtin(tr_kernel);
                const ucpt::DiffProcess d = ucpt::diff_processes(kernel, series);
                ucpt::TrajectoryBundle out;
                const int n = d.n;
                out.t.resize(n);
                out.d_first_vs_full.resize(n);
                out.d_first_vs_last.resize(n);
                for (int k = 1; k <= n; ++k) {
                    out.t[k - 1] = static_cast<double>(k) / n;
                    out.d_first_vs_full[k - 1] = d.d_first_vs_full[k] / n;
                    out.d_first_vs_last[k - 1] = d.d_first_vs_last[k] / n;
                }
                emit(tr_out, out.to_csv());
                return 0;
            }
            ucpt::Scenario sc;
            if (!tr_config.empty()) {
                sc = ucpt::scenario_from_json(load_json_file(tr_config));
            } else {
                if (tr_n < 8 || tr_before.empty()) {
                    throw ucpt::ConfigError(
                        "trajectory needs --input, --config, or --n/--before flags");
                }
                sc.kernel_id = tr_kernel;
                sc.n = tr_n;
                sc.seed = tr_seed;
                sc.runs = 1;
                sc.pre = ucpt::DistSpec::parse(tr_before).to_json();
                if (tr_tau > 0.0) {
                    sc.tau_star = tr_tau;
                    if (tr_after.empty()) {
                        throw ucpt::ConfigError("--tau-star needs --after");
                    }
                    sc.post = ucpt::DistSpec::parse(tr_after).to_json();
                }
            }
            std::optional<ucpt::DriftSpec> drift;
            if (*opt_tf || *opt_tg || *opt_rho) {
                if (!(*opt_tf && *opt_tg && *opt_rho) || !sc.tau_star) {
                    throw ucpt::ConfigError(
                        "explicit overlays need --theta-f, --theta-g, --rho and a change fraction");
                }
                ucpt::DriftSpec d;
                d.tau_star = *sc.tau_star;
                d.theta_f = tr_theta_f;
                d.theta_g = tr_theta_g;
                d.rho = tr_rho;
                drift = d;
            }
            auto bundle = ucpt::trajectory_bundle(sc, drift);
            if (!tr_psi && !drift) {
                bundle.psi1.clear();
                bundle.psi2.clear();
            }
            emit(tr_out, bundle.to_csv());
            return 0;
        }

        if (*theo) {
            const ucpt::Kernel kernel = ucpt::Kernel::builtin(th_kernel);
            const ucpt::DistSpec f = ucpt::DistSpec::parse(th_before);
            const ucpt::DistSpec g = ucpt::DistSpec::parse(th_after);
            ucpt::TheoryReport report;
            report.kernel_id = kernel.id();
            report.triple = ucpt::theta_mc(kernel, f, g, th_mc, th_seed);
            report.ranking = ucpt::power_ranking(report.triple);
            if (th_tau > 0.0) {
                report.consistency = ucpt::argmax_consistency(report.triple, th_tau);
            }
            std::cout << ucpt::to_json(report).dump(2) << '\n';

            if ((!th_psi1_out.empty() || !th_psi2_out.empty())) {
                if (!(th_tau > 0.0)) {
                    throw ucpt::ConfigError("psi grids need --tau-star");
                }
                const ucpt::DriftSpec spec =
                    ucpt::DriftSpec::from_triple(report.triple, th_tau);
                auto write_grid = [&](const std::string& path, bool second) {
                    std::ostringstream os;
                    os.precision(17);
                    os << "t,value\n";
                    for (int i = 0; i < th_psi_points; ++i) {
                        const double t = static_cast<double>(i) / (th_psi_points - 1);
                        os << t << ','
                           << (second ? ucpt::psi2(t, spec) : ucpt::psi1(t, spec))
                           << '\n';
                    }
                    ucpt::write_file(path, os.str());
                };
                if (!th_psi1_out.empty()) write_grid(th_psi1_out, false);
                if (!th_psi2_out.empty()) write_grid(th_psi2_out, true);
            }
            return 0;
        }

        if (*sim) {
            const auto scenarios = ucpt::scenarios_from_json(load_json_file(s_config));
            ucpt::PowerTable table;
            for (const auto& sc : scenarios) {
                const auto rows = ucpt::run_scenario(sc, s_threads);
                table.rows.insert(table.rows.end(), rows.rows.begin(), rows.rows.end());
            }
            emit(s_out, s_text ? table.to_text() : table.to_csv());
            return 0;
        }
    } catch (const ucpt::DegenerateVarianceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const ucpt::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return 0;
}
