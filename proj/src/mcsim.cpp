#include "ucpt/mcsim.hpp"

#include <omp.h>

#include <cmath>
#include <sstream>

#include "ucpt/errors.hpp"

namespace ucpt {

int Scenario::change_index() const {
    if (!tau_star) return n;
    const double v = static_cast<double>(n) * *tau_star;
    return static_cast<int>(std::floor(v + 1e-9));
}

nlohmann::json resolve_rules(const nlohmann::json& spec, int n) {
    if (spec.is_object() && spec.contains("rule")) {
        const std::string rule = spec.at("rule").get<std::string>();
        if (!spec.contains("c") || !spec.at("c").is_number()) {
            throw ConfigError("rule '" + rule + "' needs a numeric field 'c'");
        }
        const double c = spec.at("c").get<double>();
        const double root_n = std::sqrt(static_cast<double>(n));
        if (rule == "sigma_local") return 1.0 + c / root_n;
        if (rule == "rho_local") return c / root_n;
        throw ConfigError("unknown parameter rule '" + rule + "'");
    }
    if (spec.is_object()) {
        nlohmann::json out = nlohmann::json::object();
        for (const auto& [key, value] : spec.items()) {
            out[key] = resolve_rules(value, n);
        }
        return out;
    }
    return spec;
}

DistSpec Scenario::resolve_pre() const {
    return DistSpec::from_json(resolve_rules(pre, n));
}

DistSpec Scenario::resolve_post() const {
    if (post.is_null()) throw ConfigError("scenario has no post-change sampler");
    return DistSpec::from_json(resolve_rules(post, n));
}

namespace {

LrvConfig lrv_from_json(const nlohmann::json& j) {
    LrvConfig cfg;
    if (j.is_null()) return cfg;
    if (j.contains("bandwidth")) {
        const auto& b = j.at("bandwidth");
        if (b.is_string()) {
            if (b.get<std::string>() != "n^(1/3)" && b.get<std::string>() != "auto") {
                throw ConfigError("bandwidth must be a number, \"auto\" or \"n^(1/3)\"");
            }
            cfg.bandwidth = Bandwidth::cbrt_rule();
        } else if (b.is_number()) {
            cfg.bandwidth = Bandwidth::fixed(b.get<double>());
        } else {
            throw ConfigError("bandwidth must be a number or a rule string");
        }
    }
    if (j.contains("variant")) {
        const std::string v = j.at("variant").get<std::string>();
        if (v == "appendix_d") {
            cfg.variant = LrvVariant::appendix_d;
        } else if (v == "intro_gmd") {
            cfg.variant = LrvVariant::intro_gmd;
        } else {
            throw ConfigError("unknown lrv variant '" + v + "'");
        }
    }
    if (j.contains("window") && j.at("window").get<std::string>() != "bartlett") {
        throw ConfigError("only the bartlett window is supported");
    }
    return cfg;
}

nlohmann::json lrv_to_json(const LrvConfig& cfg) {
    nlohmann::json j{{"window", "bartlett"}};
    if (cfg.bandwidth.is_rule()) {
        j["bandwidth"] = "n^(1/3)";
    } else {
        j["bandwidth"] = cfg.bandwidth.fixed_value();
    }
    j["variant"] = cfg.variant == LrvVariant::appendix_d ? "appendix_d" : "intro_gmd";
    return j;
}

template <typename T>
T require(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) {
        throw ConfigError(std::string("scenario config missing key '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("scenario config key '") + key +
                          "' has the wrong type");
    }
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& j) {
    Scenario s;
    s.label = j.value("label", std::string("scenario"));
    s.kernel_id = require<std::string>(j, "kernel");
    Kernel::builtin(s.kernel_id);  // validate early
    s.n = require<int>(j, "n");
    if (s.n < 8) throw ConfigError("scenario needs n >= 8");
    if (j.contains("tau_star") && !j.at("tau_star").is_null()) {
        const double tau = j.at("tau_star").get<double>();
        if (!(tau > 0.0) || !(tau < 1.0)) {
            throw ConfigError("scenario tau_star must lie in (0,1)");
        }
        s.tau_star = tau;
    }
    if (!j.contains("pre")) throw ConfigError("scenario config missing key 'pre'");
    s.pre = j.at("pre");
    s.post = j.value("post", nlohmann::json());
    if (s.tau_star && s.post.is_null()) {
        throw ConfigError("scenario with tau_star needs a 'post' sampler");
    }
    s.runs = require<int>(j, "runs");
    if (s.runs < 1) throw ConfigError("scenario needs runs >= 1");
    s.seed = require<std::uint64_t>(j, "seed");
    s.alpha = j.value("alpha", 0.05);
    if (!(s.alpha > 0.0) || !(s.alpha < 1.0)) {
        throw ConfigError("scenario alpha must lie in (0,1)");
    }
    s.lrv = lrv_from_json(j.value("lrv", nlohmann::json()));
    // fail fast on malformed sampler specs / rules
    s.resolve_pre();
    if (s.tau_star) s.resolve_post();
    return s;
}

std::vector<Scenario> scenarios_from_json(const nlohmann::json& j) {
    std::vector<Scenario> out;
    if (j.is_array()) {
        for (const auto& item : j) out.push_back(scenario_from_json(item));
    } else if (j.is_object() && j.contains("scenarios")) {
        for (const auto& item : j.at("scenarios")) {
            out.push_back(scenario_from_json(item));
        }
    } else {
        out.push_back(scenario_from_json(j));
    }
    return out;
}

nlohmann::json scenario_to_json(const Scenario& s) {
    nlohmann::json j{
        {"label", s.label}, {"kernel", s.kernel_id}, {"n", s.n},
        {"runs", s.runs},   {"seed", s.seed},        {"alpha", s.alpha},
        {"pre", s.pre},     {"lrv", lrv_to_json(s.lrv)},
    };
    if (s.tau_star) {
        j["tau_star"] = *s.tau_star;
        j["post"] = s.post;
    }
    return j;
}

// Draws one replication series: observations 1..change_index from pre, the
// rest from post, all from one stream.
static Series draw_series(const DistSpec& pre, const DistSpec* post, int n,
                          int change_index, Xoshiro256pp& rng) {
    const int dim = pre.dimension();
    std::vector<double> xs(n), ys(dim == 2 ? n : 0);
    for (int i = 0; i < n; ++i) {
        const Observation o =
            i < change_index || post == nullptr ? sample(pre, rng) : sample(*post, rng);
        xs[i] = o.x;
        if (dim == 2) ys[i] = o.y;
    }
    return dim == 2 ? Series::bivariate(std::move(xs), std::move(ys))
                    : Series::univariate(std::move(xs));
}

PowerTable run_scenario(const Scenario& s, int num_threads) {
    const Kernel kernel = Kernel::builtin(s.kernel_id);
    const DistSpec pre = s.resolve_pre();
    std::optional<DistSpec> post;
    if (s.tau_star) post = s.resolve_post();
    const int change = s.change_index();
    const int nt = num_threads > 0 ? num_threads : omp_get_max_threads();

    long long rej_fvf = 0, rej_fvl = 0, degenerate = 0;

#pragma omp parallel for schedule(dynamic) num_threads(nt) \
    reduction(+ : rej_fvf, rej_fvl, degenerate)
    for (int r = 0; r < s.runs; ++r) {
        Xoshiro256pp rng = Xoshiro256pp::substream(s.seed, static_cast<std::uint64_t>(r));
        const Series series =
            draw_series(pre, post ? &*post : nullptr, s.n, change, rng);
        try {
            const auto [fvf, fvl] = run_both(series, kernel, s.lrv);
            if (fvf.p_value <= s.alpha) ++rej_fvf;
            if (fvl.p_value <= s.alpha) ++rej_fvl;
        } catch (const DegenerateVarianceError&) {
            ++degenerate;
        }
    }

    auto make_row = [&](Method m, long long rejections) {
        PowerRow row;
        row.scenario = s.label;
        row.method = m;
        row.n = s.n;
        row.tau_star = s.tau_star;
        row.runs = s.runs;
        row.rejections = static_cast<int>(rejections);
        row.degenerate = static_cast<int>(degenerate);
        row.frequency = static_cast<double>(rejections) / s.runs;
        row.se = std::sqrt(row.frequency * (1.0 - row.frequency) / s.runs);
        return row;
    };

    PowerTable table;
    table.rows.push_back(make_row(Method::first_vs_full, rej_fvf));
    table.rows.push_back(make_row(Method::first_vs_last, rej_fvl));
    return table;
}

std::string PowerTable::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "scenario,method,n,tau_star,runs,rejections,degenerate,frequency,se\n";
    for (const auto& r : rows) {
        os << r.scenario << ',' << method_name(r.method) << ',' << r.n << ',';
        if (r.tau_star) os << *r.tau_star;
        os << ',' << r.runs << ',' << r.rejections << ',' << r.degenerate << ','
           << r.frequency << ',' << r.se << '\n';
    }
    return os.str();
}

std::string PowerTable::to_text() const {
    std::ostringstream os;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-24s %-14s %6s %6s %6s %9s %6s\n",
                  "scenario", "method", "n", "tau*", "runs", "freq(%)", "degen");
    os << buf;
    for (const auto& r : rows) {
        char tau[16] = "-";
        if (r.tau_star) std::snprintf(tau, sizeof(tau), "%.2f", *r.tau_star);
        std::snprintf(buf, sizeof(buf), "%-24s %-14s %6d %6s %6d %9.1f %6d\n",
                      r.scenario.c_str(), method_name(r.method), r.n, tau, r.runs,
                      100.0 * r.frequency, r.degenerate);
        os << buf;
    }
    return os.str();
}

TrajectoryBundle trajectory_bundle(const Scenario& s, std::optional<DriftSpec> drift) {
    const Kernel kernel = Kernel::builtin(s.kernel_id);
    const DistSpec pre = s.resolve_pre();
    std::optional<DistSpec> post;
    if (s.tau_star) post = s.resolve_post();

    Xoshiro256pp rng = Xoshiro256pp::substream(s.seed, 0);
    const Series series =
        draw_series(pre, post ? &*post : nullptr, s.n, s.change_index(), rng);
    const DiffProcess diff = diff_processes(kernel, series);

    TrajectoryBundle out;
    out.t.resize(s.n);
    out.d_first_vs_full.resize(s.n);
    out.d_first_vs_last.resize(s.n);
    for (int k = 1; k <= s.n; ++k) {
        out.t[k - 1] = static_cast<double>(k) / s.n;
        out.d_first_vs_full[k - 1] = diff.d_first_vs_full[k] / s.n;
        out.d_first_vs_last[k - 1] = diff.d_first_vs_last[k] / s.n;
    }

    if (!drift && s.tau_star) {
        // Overlay parameters must not depend on the scenario seed: use the
        // closed form when available, a fixed-seed MC estimate otherwise.
        const DistSpec po = *post;
        ThetaTriple triple;
        if (kernel.kind() == KernelKind::gmd &&
            pre.family == DistSpec::Family::normal &&
            po.family == DistSpec::Family::normal && pre.p1 == 0.0 && po.p1 == 0.0) {
            triple = gmd_normal_triple(pre.p2, po.p2);
        } else {
            triple = theta_mc(kernel, pre, po, 200000, 0x5EEDFACEULL);
        }
        drift = DriftSpec::from_triple(triple, *s.tau_star);
    }
    if (drift) {
        out.psi1.resize(s.n);
        out.psi2.resize(s.n);
        for (int k = 1; k <= s.n; ++k) {
            out.psi1[k - 1] = psi1(out.t[k - 1], *drift);
            out.psi2[k - 1] = psi2(out.t[k - 1], *drift);
        }
    }
    return out;
}

std::string TrajectoryBundle::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    const bool with_psi = !psi1.empty();
    os << "t,d_first_vs_full,d_first_vs_last";
    if (with_psi) os << ",psi1,psi2";
    os << '\n';
    for (std::size_t i = 0; i < t.size(); ++i) {
        os << t[i] << ',' << d_first_vs_full[i] << ',' << d_first_vs_last[i];
        if (with_psi) os << ',' << psi1[i] << ',' << psi2[i];
        os << '\n';
    }
    return os.str();
}

Sampler bivariate_normal_sampler(double rho_corr, std::uint64_t seed) {
    return Sampler(DistSpec::bivariate_normal(rho_corr), seed);
}

}  // namespace ucpt
