#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "wcec/fit.hpp"

namespace wcec {

struct Histogram {
    std::vector<double> bin_edges; // strictly increasing, counts.size() + 1
    std::vector<int64_t> counts;
    Unit unit = Unit::PicoJoule;
};

// Freedman-Diaconis binning, clamped to [8, 4096] bins.
Histogram build_histogram(const EmpiricalSample& sample);
Histogram build_histogram(const EmpiricalSample& sample, int bins);

struct ModeReport {
    int count = 0;
    std::vector<double> centers; // bin midpoints of surviving peaks
};

// Smooths counts with a 3-bin moving average, keeps local maxima above 5 %
// of the global maximum, and merges neighbors unless a valley drops below
// half the smaller peak. Throws TooFewBins below 8 bins.
ModeReport detect_modes(const Histogram& hist);

} // namespace wcec
