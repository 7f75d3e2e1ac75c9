#include "wcec/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wcec/errors.hpp"

namespace wcec {

namespace {

int freedman_diaconis_bins(const Eigen::ArrayXd& values) {
    std::vector<double> sorted(values.data(), values.data() + values.size());
    std::sort(sorted.begin(), sorted.end());
    const size_t n = sorted.size();
    const double q1 = sorted[size_t(0.25 * double(n - 1))];
    const double q3 = sorted[size_t(0.75 * double(n - 1))];
    const double iqr = q3 - q1;
    const double range = sorted.back() - sorted.front();
    if (iqr <= 0.0 || range <= 0.0) return 8;
    const double h = 2.0 * iqr / std::cbrt(double(n));
    return int(std::clamp(std::ceil(range / h), 8.0, 4096.0));
}

} // namespace

Histogram build_histogram(const EmpiricalSample& sample) {
    return build_histogram(sample, freedman_diaconis_bins(sample.values));
}

Histogram build_histogram(const EmpiricalSample& sample, int bins) {
    if (bins < 1) throw std::invalid_argument("build_histogram: bins must be positive");
    const double lo = sample.values.minCoeff();
    double hi = sample.values.maxCoeff();
    if (hi == lo) hi = lo + 1.0; // degenerate sample still yields a valid histogram
    Histogram h;
    h.unit = sample.unit;
    const double width = (hi - lo) / double(bins);
    h.bin_edges.resize(size_t(bins) + 1);
    for (int i = 0; i <= bins; ++i) h.bin_edges[size_t(i)] = lo + double(i) * width;
    h.counts.assign(size_t(bins), 0);
    for (Eigen::Index i = 0; i < sample.values.size(); ++i) {
        auto bin = int((sample.values[i] - lo) / width);
        bin = std::clamp(bin, 0, bins - 1);
        ++h.counts[size_t(bin)];
    }
    return h;
}

ModeReport detect_modes(const Histogram& hist) {
    const int n = int(hist.counts.size());
    if (n < 8) throw TooFewBins("detect_modes: need at least 8 bins");

    // 3-bin moving average
    std::vector<double> s(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        int cnt = 0;
        for (int j = std::max(0, i - 1); j <= std::min(n - 1, i + 1); ++j) {
            acc += double(hist.counts[size_t(j)]);
            ++cnt;
        }
        s[size_t(i)] = acc / double(cnt);
    }
    const double global_max = *std::max_element(s.begin(), s.end());
    if (global_max <= 0.0) return {};

    // local maxima above the height threshold; flat runs keep their left edge
    std::vector<int> peaks;
    for (int i = 0; i < n; ++i) {
        const double left = i > 0 ? s[size_t(i - 1)] : -1.0;
        const double right = i < n - 1 ? s[size_t(i + 1)] : -1.0;
        if (s[size_t(i)] > left && s[size_t(i)] >= right &&
            s[size_t(i)] >= 0.05 * global_max)
            peaks.push_back(i);
    }

    // merge adjacent peaks unless the valley dips below half the smaller one
    bool changed = true;
    while (changed && peaks.size() > 1) {
        changed = false;
        for (size_t p = 0; p + 1 < peaks.size(); ++p) {
            const double peak_l = s[size_t(peaks[p])];
            const double peak_r = s[size_t(peaks[p + 1])];
            double valley = peak_l;
            for (int i = peaks[p]; i <= peaks[p + 1]; ++i)
                valley = std::min(valley, s[size_t(i)]);
            if (valley >= 0.5 * std::min(peak_l, peak_r)) {
                peaks.erase(peaks.begin() + long(peak_l >= peak_r ? p + 1 : p));
                changed = true;
                break;
            }
        }
    }

    ModeReport report;
    report.count = int(peaks.size());
    for (const int p : peaks)
        report.centers.push_back(0.5 * (hist.bin_edges[size_t(p)] + hist.bin_edges[size_t(p) + 1]));
    return report;
}

} // namespace wcec
