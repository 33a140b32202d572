#include "ucpt/theory.hpp"

#include <omp.h>

#include <cmath>

#include "ucpt/errors.hpp"

namespace ucpt {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_tau(double tau_star) {
    if (!(tau_star > 0.0) || !(tau_star < 1.0)) {
        throw ConfigError("tau_star must lie strictly in (0,1)");
    }
}

struct MeanVar {
    double mean = 0.0;
    double var = 0.0;   // population-style 1/(m-1)
    double se = 0.0;    // of the mean
};

// Block-wise accumulation so the result is independent of the thread count:
// block b draws from substream(seed, stream_base + b) and partials are
// reduced in block order.
template <typename DrawFn>
MeanVar mc_mean(std::size_t m, std::uint64_t seed, std::uint64_t stream_base,
                DrawFn&& draw) {
    constexpr std::size_t kBlock = 1 << 14;
    const std::size_t blocks = (m + kBlock - 1) / kBlock;
    std::vector<double> sums(blocks, 0.0), sumsqs(blocks, 0.0);

#pragma omp parallel for schedule(dynamic) if (blocks > 1 && !omp_in_parallel())
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
        Xoshiro256pp rng = Xoshiro256pp::substream(seed, stream_base + static_cast<std::uint64_t>(b));
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = std::min(m, lo + kBlock);
        double s = 0.0, s2 = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const double v = draw(rng);
            s += v;
            s2 += v * v;
        }
        sums[b] = s;
        sumsqs[b] = s2;
    }

    double s = 0.0, s2 = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        s += sums[b];
        s2 += sumsqs[b];
    }
    MeanVar out;
    out.mean = s / m;
    out.var = m > 1 ? (s2 - s * s / m) / (m - 1) : 0.0;
    out.var = std::max(out.var, 0.0);
    out.se = std::sqrt(out.var / m);
    return out;
}

}  // namespace

DriftSpec DriftSpec::from_triple(const ThetaTriple& t, double tau_star, double delta) {
    check_tau(tau_star);
    return {tau_star, t.theta_f, t.theta_g, t.rho, delta};
}

ThetaTriple theta_mc(const Kernel& kernel, const DistSpec& f, const DistSpec& g,
                     std::size_t m, std::uint64_t seed) {
    const int dim = kernel.arity() == Arity::univariate ? 1 : 2;
    if (f.dimension() != dim || g.dimension() != dim) {
        throw ConfigError("sampler dimension does not match kernel arity");
    }
    if (m < 1000) throw ConfigError("theta_mc needs at least 1000 pairs");

    // Distinct stream bases keep the three estimates independent.
    const auto mv_f = mc_mean(m, seed, 0x100000000ULL, [&](Xoshiro256pp& rng) {
        const Observation a = sample(f, rng);
        const Observation b = sample(f, rng);
        return kernel.eval(a, b);
    });
    const auto mv_g = mc_mean(m, seed, 0x200000000ULL, [&](Xoshiro256pp& rng) {
        const Observation a = sample(g, rng);
        const Observation b = sample(g, rng);
        return kernel.eval(a, b);
    });
    const auto mv_fg = mc_mean(m, seed, 0x300000000ULL, [&](Xoshiro256pp& rng) {
        const Observation a = sample(f, rng);
        const Observation b = sample(g, rng);
        return kernel.eval(a, b);
    });

    ThetaTriple t = ThetaTriple::closed_form(mv_f.mean, mv_g.mean, mv_fg.mean);
    ThetaErrors se;
    se.se_f = mv_f.se;
    se.se_g = mv_g.se;
    se.se_fg = mv_fg.se;
    se.se_rho = std::sqrt(mv_fg.se * mv_fg.se +
                          0.25 * (mv_f.se * mv_f.se + mv_g.se * mv_g.se));
    t.se = se;
    return t;
}

ThetaTriple gmd_normal_triple(double sigma1, double sigma2) {
    if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) {
        throw ConfigError("gmd_normal_triple needs positive scales");
    }
    const double c = 2.0 / std::sqrt(kPi);
    const double f = c * sigma1;
    const double g = c * sigma2;
    const double fg = c * std::sqrt(0.5 * (sigma1 * sigma1 + sigma2 * sigma2));
    return ThetaTriple::closed_form(f, g, fg);
}

double variance_rho(double mu_f, double mu_g) {
    const double d = mu_f - mu_g;
    return 0.5 * d * d;
}

double covariance_rho(std::pair<double, double> mu_f, std::pair<double, double> mu_g) {
    return 0.5 * (mu_f.first - mu_g.first) * (mu_f.second - mu_g.second);
}

double kendall_normal_theta(double rho_corr) {
    if (!(std::fabs(rho_corr) < 1.0)) {
        throw ConfigError("kendall_normal_theta needs |rho| < 1");
    }
    return 2.0 / kPi * std::asin(rho_corr);
}

double psi1(double t, const DriftSpec& spec) {
    check_tau(spec.tau_star);
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double tau = spec.tau_star;
    const double d = spec.theta_f - spec.theta_g;
    const double rho = spec.rho;
    if (t < tau) {
        return t * (1.0 - tau) * d - 2.0 * t * tau * (1.0 - tau) * rho;
    }
    return (1.0 - t) * tau * d + 2.0 * (t - tau) / t * tau * rho -
           2.0 * t * tau * (1.0 - tau) * rho;
}

double psi2(double t, const DriftSpec& spec) {
    check_tau(spec.tau_star);
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double tau = spec.tau_star;
    const double d = spec.theta_f - spec.theta_g;
    const double rho = spec.rho;
    if (t < tau) {
        return t * (1.0 - tau) * d -
               2.0 * t * (tau - t) / (1.0 - t) * (1.0 - tau) * rho;
    }
    return (1.0 - t) * tau * d + 2.0 * (t - tau) / t * tau * rho -
           2.0 * (t - tau) * tau * rho;
}

double psi_diff(double t, const DriftSpec& spec) {
    check_tau(spec.tau_star);
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double tau = spec.tau_star;
    if (t < tau) {
        return 2.0 * t * t * (1.0 - tau) * (1.0 - tau) / (1.0 - t) * spec.rho;
    }
    return 2.0 * (1.0 - t) * tau * tau * spec.rho;
}

double phi_local(double t, double tau_star, double delta) {
    check_tau(tau_star);
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return t < tau_star ? t * (1.0 - tau_star) * delta
                        : (1.0 - t) * tau_star * delta;
}

const char* power_ranking_name(PowerRanking r) {
    switch (r) {
        case PowerRanking::first_vs_full: return "first_vs_full";
        case PowerRanking::first_vs_last: return "first_vs_last";
        case PowerRanking::equal: return "equal";
        case PowerRanking::no_theta_change: return "no_theta_change";
    }
    return "equal";
}

PowerRanking power_ranking(const ThetaTriple& t) {
    const double rho_tol = t.se ? 3.0 * t.se->se_rho : 0.0;
    const double dg = t.theta_g - t.theta_f;
    const double dg_tol =
        t.se ? 3.0 * std::sqrt(t.se->se_f * t.se->se_f + t.se->se_g * t.se->se_g)
             : 0.0;
    if (std::fabs(t.rho) <= rho_tol) return PowerRanking::equal;
    if (std::fabs(dg) <= dg_tol) return PowerRanking::no_theta_change;
    const bool same_sign = (t.rho > 0.0) == (dg > 0.0);
    return same_sign ? PowerRanking::first_vs_full : PowerRanking::first_vs_last;
}

ArgmaxConsistency argmax_consistency(const ThetaTriple& t, double tau_star) {
    check_tau(tau_star);
    ArgmaxConsistency out;
    const double d = t.theta_f - t.theta_g;
    if (d == 0.0) {
        out.theta_change = false;
        return out;
    }
    const double rho = t.rho;
    // denominator tau - 1 + 1/tau > 0 on (0,1)
    const double q = tau_star - 1.0 + 1.0 / tau_star;
    if (d > 0.0) {
        out.fvf_ok = (-d / 2.0 < rho) && (rho < d / (2.0 * q));
    } else {
        out.fvf_ok = (d / (2.0 * q) < rho) && (rho < -d / 2.0);
    }
    const double ratio = std::min(tau_star / (1.0 - tau_star),
                                  (1.0 - tau_star) / tau_star);
    out.fvl_ok = std::fabs(rho) <= 0.5 * ratio * std::fabs(d);
    return out;
}

LimitVariances limit_variances(const Kernel& kernel, const DistSpec& f,
                               const DistSpec& g, double tau_star,
                               std::size_t m, std::uint64_t seed) {
    check_tau(tau_star);
    const int dim = kernel.arity() == Arity::univariate ? 1 : 2;
    if (f.dimension() != dim || g.dimension() != dim) {
        throw ConfigError("sampler dimension does not match kernel arity");
    }
    const std::size_t m_inner =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(std::sqrt(
                                     static_cast<double>(m)))));

    auto inner_mean = [&](const Observation& x, const DistSpec& dist,
                          Xoshiro256pp& rng) {
        double s = 0.0;
        for (std::size_t j = 0; j < m_inner; ++j) {
            s += kernel.eval(x, sample(dist, rng));
        }
        return s / static_cast<double>(m_inner);
    };

    // Var[h_F(X) - tau h_G(X)] over X ~ F.
    const auto mv_a = mc_mean(m, seed, 0x400000000ULL, [&](Xoshiro256pp& rng) {
        const Observation x = sample(f, rng);
        return inner_mean(x, f, rng) - tau_star * inner_mean(x, g, rng);
    });
    // Var[h_F(X)] over X ~ F.
    const auto mv_b = mc_mean(m, seed, 0x500000000ULL, [&](Xoshiro256pp& rng) {
        const Observation x = sample(f, rng);
        return inner_mean(x, f, rng);
    });
    // Var[h_G(Y)] over Y ~ G.
    const auto mv_c = mc_mean(m, seed, 0x600000000ULL, [&](Xoshiro256pp& rng) {
        const Observation y = sample(g, rng);
        return inner_mean(y, g, rng);
    });

    const double tau = tau_star;
    LimitVariances lv;
    lv.var_z1 = 4.0 * tau * mv_a.var + 4.0 * tau * tau * (1.0 - tau) * mv_c.var;
    lv.var_z2 = 4.0 * tau * (1.0 - tau) * (1.0 - tau) * mv_b.var +
                4.0 * tau * tau * (1.0 - tau) * mv_c.var;
    return lv;
}

nlohmann::json to_json(const TheoryReport& r) {
    nlohmann::json j{
        {"kernel", r.kernel_id},
        {"theta_f", r.triple.theta_f},
        {"theta_g", r.triple.theta_g},
        {"theta_fg", r.triple.theta_fg},
        {"rho", r.triple.rho},
        {"ranking", power_ranking_name(r.ranking)},
    };
    if (r.triple.se) {
        j["se"] = {{"theta_f", r.triple.se->se_f},
                   {"theta_g", r.triple.se->se_g},
                   {"theta_fg", r.triple.se->se_fg},
                   {"rho", r.triple.se->se_rho}};
    }
    if (r.consistency) {
        j["argmax_consistency"] = {{"first_vs_full", r.consistency->fvf_ok},
                                   {"first_vs_last", r.consistency->fvl_ok},
                                   {"theta_change", r.consistency->theta_change}};
    }
    return j;
}

}  // namespace ucpt
