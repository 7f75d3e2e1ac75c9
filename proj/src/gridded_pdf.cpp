#include "wcec/gridded_pdf.hpp"

#include <cmath>
#include <stdexcept>

#include "wcec/errors.hpp"

namespace wcec {

namespace {

constexpr double kTailMass = 1e-12;

void normalize(GriddedPdf& pdf) {
    const double mass = pdf.densities.sum() * pdf.step;
    if (mass <= 0.0) throw GridTooCoarse("gridded pdf carries no mass");
    pdf.densities /= mass;
}

// trims leading/trailing bins whose cumulative mass stays below kTailMass
void truncate_tails(GriddedPdf& pdf) {
    const Eigen::Index n = pdf.bins();
    double acc = 0.0;
    Eigen::Index lo = 0;
    while (lo < n) {
        acc += pdf.densities[lo] * pdf.step;
        if (acc >= kTailMass) break;
        ++lo;
    }
    acc = 0.0;
    Eigen::Index hi = n - 1;
    while (hi > lo) {
        acc += pdf.densities[hi] * pdf.step;
        if (acc >= kTailMass) break;
        --hi;
    }
    if (lo == 0 && hi == n - 1) return;
    GriddedPdf out;
    out.origin = pdf.bin_start(lo);
    out.step = pdf.step;
    out.densities = pdf.densities.segment(lo, hi - lo + 1);
    pdf = std::move(out);
}

} // namespace

GriddedPdf discretize(const WeibullParams& p, double grid_step) {
    if (grid_step <= 0.0) throw std::invalid_argument("discretize: grid_step must be positive");
    const double hi = weibull_quantile(1.0 - 1e-12, p);
    const auto nbins = Eigen::Index(std::ceil((hi - p.mu) / grid_step)) + 1;
    GriddedPdf pdf;
    pdf.origin = p.mu;
    pdf.step = grid_step;
    pdf.densities.resize(nbins);
    for (Eigen::Index i = 0; i < nbins; ++i)
        pdf.densities[i] = weibull_pdf(pdf.bin_mid(i), p);
    if ((pdf.densities > 0.0).count() < 32)
        throw GridTooCoarse("discretize: fewer than 32 nonzero bins; shrink grid_step");
    normalize(pdf);
    truncate_tails(pdf);
    normalize(pdf);
    return pdf;
}

GriddedPdf convolve(const GriddedPdf& a_in, const GriddedPdf& b_in) {
    GriddedPdf a = a_in, b = b_in;
    if (a.step != b.step) {
        const double step = std::min(a.step, b.step);
        if (a.step != step) a = resample(a, step);
        if (b.step != step) b = resample(b, step);
    }
    const Eigen::Index na = a.bins(), nb = b.bins();
    GriddedPdf out;
    out.step = a.step;
    // midpoint convention: mid_a + mid_b = out.origin + (i + j + 0.5) * step
    out.origin = a.origin + b.origin + 0.5 * a.step;
    out.densities = Eigen::ArrayXd::Zero(na + nb - 1);
    for (Eigen::Index i = 0; i < na; ++i) {
        const double w = a.densities[i] * a.step;
        if (w == 0.0) continue;
        out.densities.segment(i, nb) += w * b.densities;
    }
    normalize(out);
    truncate_tails(out);
    normalize(out);
    return out;
}

double grid_percentile(const GriddedPdf& pdf, double prob) {
    if (prob < 0.0 || prob >= 1.0)
        throw DomainError("grid_percentile: prob must be in [0, 1)");
    if (prob == 0.0) return pdf.origin;
    double cum = 0.0;
    for (Eigen::Index i = 0; i < pdf.bins(); ++i) {
        const double mass = pdf.densities[i] * pdf.step;
        if (cum + mass >= prob) {
            const double frac = mass > 0.0 ? (prob - cum) / mass : 0.0;
            return pdf.bin_start(i) + frac * pdf.step;
        }
        cum += mass;
    }
    return pdf.bin_start(pdf.bins() - 1) + pdf.step;
}

double grid_mean(const GriddedPdf& pdf) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < pdf.bins(); ++i)
        m += pdf.bin_mid(i) * pdf.densities[i] * pdf.step;
    return m;
}

double grid_variance(const GriddedPdf& pdf) {
    const double m = grid_mean(pdf);
    double v = 0.0;
    for (Eigen::Index i = 0; i < pdf.bins(); ++i) {
        const double d = pdf.bin_mid(i) - m;
        v += d * d * pdf.densities[i] * pdf.step;
    }
    return v;
}

GriddedPdf resample(const GriddedPdf& pdf, double new_step) {
    if (new_step <= 0.0) throw std::invalid_argument("resample: step must be positive");
    const double span = double(pdf.bins()) * pdf.step;
    const auto nbins = Eigen::Index(std::ceil(span / new_step));
    GriddedPdf out;
    out.origin = pdf.origin;
    out.step = new_step;
    out.densities.resize(nbins);
    for (Eigen::Index i = 0; i < nbins; ++i) {
        // linear interpolation between source midpoints
        const double x = out.bin_mid(i);
        const double u = (x - pdf.origin) / pdf.step - 0.5;
        const auto lo = Eigen::Index(std::floor(u));
        const double frac = u - double(lo);
        double d = 0.0;
        if (lo >= 0 && lo < pdf.bins()) d += (1.0 - frac) * pdf.densities[lo];
        if (lo + 1 >= 0 && lo + 1 < pdf.bins()) d += frac * pdf.densities[lo + 1];
        out.densities[i] = d;
    }
    normalize(out);
    return out;
}

} // namespace wcec
