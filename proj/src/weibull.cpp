#include "wcec/weibull.hpp"

#include <cmath>
#include <limits>

#include "wcec/errors.hpp"

namespace wcec {

namespace {
constexpr double kLn2 = 0.6931471805599453094172321214581766;
}

double DataSpaceSize::log_size() const { return double(nbits) * kLn2; }

double weibull_cdf(double x, const WeibullParams& p) {
    if (x <= p.mu) return 0.0;
    const double t = (x - p.mu) / p.sigma;
    return -std::expm1(-std::pow(t, p.k));
}

double weibull_pdf(double x, const WeibullParams& p) {
    if (x < p.mu) return 0.0;
    const double t = (x - p.mu) / p.sigma;
    if (t == 0.0) {
        if (p.k > 1.0) return 0.0;
        if (p.k == 1.0) return 1.0 / p.sigma;
        return std::numeric_limits<double>::infinity();
    }
    const double tk = std::pow(t, p.k);
    return (p.k / p.sigma) * std::pow(t, p.k - 1.0) * std::exp(-tk);
}

double weibull_quantile(double prob, const WeibullParams& p) {
    if (prob < 0.0 || prob >= 1.0)
        throw DomainError("weibull_quantile: prob must be in [0, 1)");
    if (prob == 0.0) return p.mu;
    // -ln(1-prob) via log1p for accuracy near 0
    const double z = -std::log1p(-prob);
    return p.mu + p.sigma * std::pow(z, 1.0 / p.k);
}

double weibull_log_exceedance(double x, const WeibullParams& p) {
    if (x <= p.mu) return 0.0;
    const double t = (x - p.mu) / p.sigma;
    return -std::pow(t, p.k);
}

double exceedance_probability(const WeibullParams& p, double value) {
    return std::exp(weibull_log_exceedance(value, p));
}

double probabilistic_max(const WeibullParams& p, const DataSpaceSize& space) {
    // (nbits ln 2)^(1/k) computed in log space so nbits up to 1e9 is exact
    const double log_ls = std::log(space.log_size());
    return p.mu + p.sigma * std::exp(log_ls / p.k);
}

namespace {
inline double gamma1p(double x) { return std::tgamma(1.0 + x); }
}

double weibull_mean(const WeibullParams& p) {
    return p.mu + p.sigma * gamma1p(1.0 / p.k);
}

double weibull_variance(const WeibullParams& p) {
    const double g1 = gamma1p(1.0 / p.k);
    const double g2 = gamma1p(2.0 / p.k);
    return p.sigma * p.sigma * (g2 - g1 * g1);
}

double weibull_skewness(double k) {
    const double g1 = gamma1p(1.0 / k);
    const double g2 = gamma1p(2.0 / k);
    const double g3 = gamma1p(3.0 / k);
    const double var = g2 - g1 * g1;
    return (g3 - 3.0 * g1 * g2 + 2.0 * g1 * g1 * g1) / std::pow(var, 1.5);
}

double weibull_third_central_moment(const WeibullParams& p) {
    const double g1 = gamma1p(1.0 / p.k);
    const double g2 = gamma1p(2.0 / p.k);
    const double g3 = gamma1p(3.0 / p.k);
    return p.sigma * p.sigma * p.sigma * (g3 - 3.0 * g1 * g2 + 2.0 * g1 * g1 * g1);
}

} // namespace wcec
