#include "wcec/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>

#include "wcec/errors.hpp"
#include "wcec/rng.hpp"

namespace wcec {

namespace {
const std::array<std::string, 2> kUnitNames = {"pJ", "mW"};
}

const std::string& unit_name(Unit u) { return kUnitNames[static_cast<size_t>(u)]; }

SampleMoments moments(const EmpiricalSample& sample) {
    const auto& v = sample.values;
    const auto n = v.size();
    if (n < 3) throw DegenerateSample("moments: need at least 3 values");
    SampleMoments m;
    m.mean = v.mean();
    const Eigen::ArrayXd d = v - m.mean;
    const double ss2 = (d * d).sum();
    const double ss3 = (d * d * d).sum();
    m.variance = ss2 / double(n - 1);
    if (m.variance <= 0.0) throw DegenerateSample("moments: zero variance");
    // adjusted Fisher-Pearson third moment
    m.third_central = ss3 * double(n) / (double(n - 1) * double(n - 2));
    m.skewness = m.third_central / std::pow(m.variance, 1.5);
    return m;
}

WeibullParams weibull_from_moments(double mean, double variance, double skewness) {
    if (variance <= 0.0) throw DegenerateSample("weibull_from_moments: variance must be positive");
    constexpr double k_lo = 0.1, k_hi = 50.0;
    // skewness(k) decreases monotonically in k
    const double s_hi = weibull_skewness(k_lo);
    const double s_lo = weibull_skewness(k_hi);
    if (skewness > s_hi || skewness < s_lo)
        throw SkewnessOutOfRange("weibull_from_moments: skewness not attainable for k in [0.1, 50]");
    double lo = k_lo, hi = k_hi;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (weibull_skewness(mid) > skewness)
            lo = mid;
        else
            hi = mid;
    }
    WeibullParams p;
    p.k = 0.5 * (lo + hi);
    const double g1 = std::tgamma(1.0 + 1.0 / p.k);
    const double g2 = std::tgamma(1.0 + 2.0 / p.k);
    p.sigma = std::sqrt(variance / (g2 - g1 * g1));
    p.mu = mean - p.sigma * g1;
    return p;
}

namespace {

// 2-parameter Weibull MLE on shifted data y > 0. The shape equation
//   1/k + mean(ln y) - sum(y^k ln y)/sum(y^k) = 0
// is strictly decreasing in k, so bisection is safe; powers go through
// log-sum-exp to stay finite at large k.
struct InnerFit {
    double k = 0.0;
    double sigma = 0.0;
    double log_likelihood = -std::numeric_limits<double>::infinity();
    bool ok = false;
};

InnerFit fit_shape_scale(const Eigen::ArrayXd& log_y) {
    const auto n = log_y.size();
    const double mean_log = log_y.mean();

    auto shape_eq = [&](double k) {
        const Eigen::ArrayXd w = k * log_y;
        const double w_max = w.maxCoeff();
        const Eigen::ArrayXd ew = (w - w_max).exp();
        const double s0 = ew.sum();
        const double s1 = (ew * log_y).sum();
        return 1.0 / k + mean_log - s1 / s0;
    };

    double lo = 1e-3, hi = 1.0;
    while (shape_eq(hi) > 0.0 && hi < 1e6) hi *= 2.0;
    if (hi >= 1e6) return {};
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-13 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (shape_eq(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }

    InnerFit fit;
    fit.k = 0.5 * (lo + hi);
    // sigma^k = mean(y^k), evaluated in log space
    const Eigen::ArrayXd w = fit.k * log_y;
    const double w_max = w.maxCoeff();
    const double log_mean_pow = w_max + std::log((w - w_max).exp().mean());
    const double log_sigma = log_mean_pow / fit.k;
    fit.sigma = std::exp(log_sigma);
    fit.log_likelihood = double(n) * (std::log(fit.k) - fit.k * log_sigma) +
                         (fit.k - 1.0) * log_y.sum() - double(n);
    fit.ok = std::isfinite(fit.log_likelihood) && fit.k > 0.0 && fit.sigma > 0.0;
    return fit;
}

double ks_statistic(std::vector<double> sorted, const WeibullParams& p) {
    const size_t n = sorted.size();
    double d = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double f = weibull_cdf(sorted[i], p);
        d = std::max(d, std::abs(f - double(i + 1) / double(n)));
        d = std::max(d, std::abs(f - double(i) / double(n)));
    }
    return d;
}

} // namespace

FitReport fit_weibull(const EmpiricalSample& sample) {
    const auto& v = sample.values;
    const auto n = v.size();
    if (n < 30) throw DegenerateSample("fit_weibull: need at least 30 values");
    const double vmin = v.minCoeff();
    const double vmax = v.maxCoeff();
    if (vmax == vmin) throw DegenerateSample("fit_weibull: all values equal");

    const double range = vmax - vmin;
    const double eps = range * 1e-6;
    const double mu_lo = vmin - range;
    const double mu_hi = vmin - eps;

    auto profile = [&](double mu) {
        const Eigen::ArrayXd log_y = (v - mu).log();
        return fit_shape_scale(log_y);
    };

    // golden-section maximization of the profile log-likelihood over mu
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = mu_lo, b = mu_hi;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    InnerFit f1 = profile(x1);
    InnerFit f2 = profile(x2);
    int evals = 2;
    while (b - a > 1e-9 * range && evals < 300) {
        if (f1.log_likelihood < f2.log_likelihood) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = profile(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = profile(x1);
        }
        ++evals;
    }
    double mu_final = f1.log_likelihood >= f2.log_likelihood ? x1 : x2;
    InnerFit final_fit = f1.log_likelihood >= f2.log_likelihood ? f1 : f2;
    // the boundary can beat the interior for exponential-like data
    for (double mu : {mu_hi, mu_lo}) {
        InnerFit f = profile(mu);
        if (f.ok && f.log_likelihood > final_fit.log_likelihood) {
            final_fit = f;
            mu_final = mu;
        }
    }
    if (!final_fit.ok) throw FitDivergence("fit_weibull: inner MLE failed to converge");

    FitReport report;
    report.params = {final_fit.k, mu_final, final_fit.sigma};
    report.sample_size = size_t(n);
    std::vector<double> sorted(v.data(), v.data() + n);
    std::sort(sorted.begin(), sorted.end());
    report.ks_stat = ks_statistic(std::move(sorted), report.params);
    return report;
}

std::string FitReport::to_json() const {
    nlohmann::ordered_json j;
    j["k"] = params.k;
    j["mu"] = params.mu;
    j["sigma"] = params.sigma;
    j["ks_stat"] = ks_stat;
    j["n"] = sample_size;
    return j.dump(2);
}

FitReport FitReport::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    FitReport r;
    r.params.k = j.at("k").get<double>();
    r.params.mu = j.at("mu").get<double>();
    r.params.sigma = j.at("sigma").get<double>();
    r.ks_stat = j.at("ks_stat").get<double>();
    r.sample_size = j.at("n").get<size_t>();
    return r;
}

EmpiricalSample sample_weibull(const WeibullParams& p, size_t n, uint64_t seed, Unit unit) {
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    EmpiricalSample s;
    s.unit = unit;
    s.values.resize(Eigen::Index(n));
    for (size_t i = 0; i < n; ++i) {
        double q = u(rng);
        if (q >= 1.0) q = std::nextafter(1.0, 0.0);
        s.values[Eigen::Index(i)] = weibull_quantile(q, p);
    }
    return s;
}

} // namespace wcec
