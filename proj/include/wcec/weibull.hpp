#pragma once

#include <cstdint>

namespace wcec {

// Three-parameter Weibull, CDF(x) = 1 - exp(-((x - mu)/sigma)^k) for x >= mu.
struct WeibullParams {
    double k = 1.0;     // shape, > 0
    double mu = 0.0;    // location
    double sigma = 1.0; // scale, > 0
};

// Input data space of size S = 2^nbits, carried as a bit count so S itself
// is never materialized.
struct DataSpaceSize {
    uint64_t nbits = 1;
    double log_size() const; // nbits * ln 2
};

double weibull_cdf(double x, const WeibullParams& p);
double weibull_pdf(double x, const WeibullParams& p);

// Inverse CDF. Throws DomainError unless 0 <= prob < 1.
double weibull_quantile(double prob, const WeibullParams& p);

// ln(1 - CDF(x)); exact far into the tail where the probability underflows.
double weibull_log_exceedance(double x, const WeibullParams& p);

// 1 - CDF(value) evaluated through log space. Underflows gracefully through
// the denormal range rather than jumping to zero.
double exceedance_probability(const WeibullParams& p, double value);

// Solves (1 - CDF(x)) * S = 1 in closed form:
//   x* = mu + sigma * (nbits ln 2)^(1/k).
double probabilistic_max(const WeibullParams& p, const DataSpaceSize& space);

// Analytic moments via Gamma-function identities.
double weibull_mean(const WeibullParams& p);
double weibull_variance(const WeibullParams& p);
double weibull_skewness(double k); // location/scale free
double weibull_third_central_moment(const WeibullParams& p);

} // namespace wcec
