#include "ucpt/sampler.hpp"

#include <cmath>

#include "ucpt/errors.hpp"

namespace ucpt {

int DistSpec::dimension() const {
    switch (family) {
        case Family::bivariate_normal: return 2;
        case Family::negate_second: return 2;
        case Family::scale_shift: return base->dimension();
        default: return 1;
    }
}

DistSpec DistSpec::normal(double mu, double sigma) {
    if (!(sigma > 0.0)) throw ConfigError("normal sigma must be positive");
    DistSpec d;
    d.family = Family::normal;
    d.p1 = mu;
    d.p2 = sigma;
    return d;
}

DistSpec DistSpec::uniform(double a, double b) {
    if (!(a < b)) throw ConfigError("uniform needs a < b");
    DistSpec d;
    d.family = Family::uniform;
    d.p1 = a;
    d.p2 = b;
    return d;
}

DistSpec DistSpec::exponential(double rate) {
    if (!(rate > 0.0)) throw ConfigError("exponential rate must be positive");
    DistSpec d;
    d.family = Family::exponential;
    d.p1 = rate;
    return d;
}

DistSpec DistSpec::student_t(int df) {
    if (df < 1 || df > 200) throw ConfigError("student_t df must be in 1..200");
    DistSpec d;
    d.family = Family::student_t;
    d.p1 = df;
    return d;
}

DistSpec DistSpec::bivariate_normal(double rho) {
    if (!(std::fabs(rho) < 1.0)) {
        throw ConfigError("bivariate normal correlation must satisfy |rho| < 1");
    }
    DistSpec d;
    d.family = Family::bivariate_normal;
    d.p1 = rho;
    return d;
}

DistSpec DistSpec::tabulated(std::vector<double> values) {
    if (values.empty()) throw ConfigError("tabulated distribution needs values");
    DistSpec d;
    d.family = Family::tabulated;
    d.table = std::move(values);
    return d;
}

DistSpec DistSpec::scale_shift(DistSpec b, double scale, double shift) {
    if (b.dimension() != 1) throw ConfigError("scale_shift needs a univariate base");
    DistSpec d;
    d.family = Family::scale_shift;
    d.p1 = scale;
    d.p2 = shift;
    d.base = std::make_shared<DistSpec>(std::move(b));
    return d;
}

DistSpec DistSpec::negate_second(DistSpec b) {
    if (b.dimension() != 2) throw ConfigError("negate_second needs a bivariate base");
    DistSpec d;
    d.family = Family::negate_second;
    d.base = std::make_shared<DistSpec>(std::move(b));
    return d;
}

Observation sample(const DistSpec& spec, Xoshiro256pp& rng) {
    using F = DistSpec::Family;
    switch (spec.family) {
        case F::normal:
            return {spec.p1 + spec.p2 * rng.normal(), 0.0};
        case F::uniform:
            return {spec.p1 + (spec.p2 - spec.p1) * rng.uniform01(), 0.0};
        case F::exponential:
            return {rng.exponential(spec.p1), 0.0};
        case F::student_t: {
            const int df = static_cast<int>(spec.p1);
            const double z = rng.normal();
            double chi2 = 0.0;
            for (int i = 0; i < df; ++i) {
                const double w = rng.normal();
                chi2 += w * w;
            }
            return {z / std::sqrt(chi2 / df), 0.0};
        }
        case F::bivariate_normal: {
            const double z1 = rng.normal();
            const double z2 = rng.normal();
            const double rho = spec.p1;
            return {z1, rho * z1 + std::sqrt(1.0 - rho * rho) * z2};
        }
        case F::tabulated: {
            const auto idx = static_cast<std::size_t>(rng.uniform01() * spec.table.size());
            return {spec.table[std::min(idx, spec.table.size() - 1)], 0.0};
        }
        case F::scale_shift: {
            const Observation o = sample(*spec.base, rng);
            return {spec.p1 * o.x + spec.p2, 0.0};
        }
        case F::negate_second: {
            const Observation o = sample(*spec.base, rng);
            return {o.x, -o.y};
        }
    }
    return {};
}

namespace {

double get_num(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ConfigError(std::string("sampler spec missing numeric field '") + key + "'");
    }
    return j.at(key).get<double>();
}

}  // namespace

DistSpec DistSpec::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("family")) {
        throw ConfigError("sampler spec must be an object with a 'family' field");
    }
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "normal") return normal(get_num(j, "mu"), get_num(j, "sigma"));
    if (fam == "uniform") return uniform(get_num(j, "a"), get_num(j, "b"));
    if (fam == "exponential") return exponential(get_num(j, "rate"));
    if (fam == "student_t") return student_t(static_cast<int>(get_num(j, "df")));
    if (fam == "bivariate_normal") return bivariate_normal(get_num(j, "rho"));
    if (fam == "tabulated") {
        return tabulated(j.at("values").get<std::vector<double>>());
    }
    if (fam == "scale_shift") {
        return scale_shift(from_json(j.at("base")), get_num(j, "scale"),
                           get_num(j, "shift"));
    }
    if (fam == "negate_second") return negate_second(from_json(j.at("base")));
    throw ConfigError("unknown sampler family '" + fam + "'");
}

nlohmann::json DistSpec::to_json() const {
    using F = Family;
    switch (family) {
        case F::normal: return {{"family", "normal"}, {"mu", p1}, {"sigma", p2}};
        case F::uniform: return {{"family", "uniform"}, {"a", p1}, {"b", p2}};
        case F::exponential: return {{"family", "exponential"}, {"rate", p1}};
        case F::student_t: return {{"family", "student_t"}, {"df", p1}};
        case F::bivariate_normal: return {{"family", "bivariate_normal"}, {"rho", p1}};
        case F::tabulated: return {{"family", "tabulated"}, {"values", table}};
        case F::scale_shift:
            return {{"family", "scale_shift"}, {"base", base->to_json()},
                    {"scale", p1}, {"shift", p2}};
        case F::negate_second:
            return {{"family", "negate_second"}, {"base", base->to_json()}};
    }
    return {};
}

DistSpec DistSpec::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string fam = text.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::string rest = text.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t next = rest.find(',', pos);
            if (next == std::string::npos) next = rest.size();
            try {
                args.push_back(std::stod(rest.substr(pos, next - pos)));
            } catch (const std::exception&) {
                throw ConfigError("cannot parse distribution '" + text + "'");
            }
            pos = next + 1;
        }
    }
    auto want = [&](std::size_t k) {
        if (args.size() != k) {
            throw ConfigError("distribution '" + fam + "' expects " +
                              std::to_string(k) + " parameter(s)");
        }
    };
    if (fam == "normal") { want(2); return normal(args[0], args[1]); }
    if (fam == "uniform") { want(2); return uniform(args[0], args[1]); }
    if (fam == "exponential") { want(1); return exponential(args[0]); }
    if (fam == "student_t") { want(1); return student_t(static_cast<int>(args[0])); }
    if (fam == "binormal" || fam == "bivariate_normal") {
        want(1);
        return bivariate_normal(args[0]);
    }
    throw ConfigError("unknown distribution '" + fam + "'");
}

}  // namespace ucpt
