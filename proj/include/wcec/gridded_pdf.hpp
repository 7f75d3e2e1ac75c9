#pragma once

#include <Eigen/Core>

#include "wcec/weibull.hpp"

namespace wcec {

// Probability density discretized on a uniform energy grid. Bin i covers
// [origin + i*step, origin + (i+1)*step); densities are midpoint samples
// normalized so sum(densities) * step = 1.
struct GriddedPdf {
    double origin = 0.0;
    double step = 1.0;
    Eigen::ArrayXd densities;

    Eigen::Index bins() const { return densities.size(); }
    double bin_start(Eigen::Index i) const { return origin + double(i) * step; }
    double bin_mid(Eigen::Index i) const { return origin + (double(i) + 0.5) * step; }
};

// Samples the Weibull density onto a grid spanning quantiles [0, 1 - 1e-12].
// Throws GridTooCoarse if fewer than 32 bins carry mass.
GriddedPdf discretize(const WeibullParams& p, double grid_step);

// Discrete linear convolution; origins add. Inputs on different steps are
// brought onto the finer one first. Tails below 1e-12 mass are trimmed.
GriddedPdf convolve(const GriddedPdf& a, const GriddedPdf& b);

// Inverse CDF with linear interpolation inside a bin; prob 0 maps to the
// grid origin. Throws DomainError outside [0, 1).
double grid_percentile(const GriddedPdf& pdf, double prob);

double grid_mean(const GriddedPdf& pdf);
double grid_variance(const GriddedPdf& pdf);

// Density resampled onto a new step by linear interpolation, renormalized.
GriddedPdf resample(const GriddedPdf& pdf, double new_step);

} // namespace wcec
