#pragma once

#include <string>

#include <Eigen/Core>

#include "wcec/weibull.hpp"

namespace wcec {

enum class Unit { PicoJoule, MilliWatt };

const std::string& unit_name(Unit u);

struct EmpiricalSample {
    Eigen::ArrayXd values;
    Unit unit = Unit::PicoJoule;
};

struct SampleMoments {
    double mean = 0.0;
    double variance = 0.0; // unbiased
    double skewness = 0.0; // standardized third central moment
    double third_central = 0.0;
};

// Throws DegenerateSample on zero variance; needs at least 3 values.
SampleMoments moments(const EmpiricalSample& sample);

// Moment-matched Weibull: k from the scale-free skewness map by bisection
// over [0.1, 50], then sigma from the variance and mu from the mean.
WeibullParams weibull_from_moments(double mean, double variance, double skewness);

struct FitReport {
    WeibullParams params;
    double ks_stat = 0.0; // Kolmogorov-Smirnov D against the fitted CDF
    size_t sample_size = 0;

    std::string to_json() const;
    static FitReport from_json(const std::string& text);
};

// Three-parameter maximum-likelihood fit: the location is profiled over
// [min - range, min - eps] by golden-section search on the profile
// log-likelihood; each candidate location gets an inner two-parameter
// MLE solve for (k, sigma).
FitReport fit_weibull(const EmpiricalSample& sample);

// Draws of a Weibull by inverse-CDF sampling; test and profiling helper.
EmpiricalSample sample_weibull(const WeibullParams& p, size_t n, uint64_t seed,
                               Unit unit = Unit::PicoJoule);

} // namespace wcec
