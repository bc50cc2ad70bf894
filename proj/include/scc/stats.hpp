#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace scc {

struct McSummary {
    std::uint64_t reps = 0;
    double mean = 0;
    double std_err = 0; // sample SD / sqrt(reps)
    double min = 0;
    double max = 0;
    bool low_reps = false; // single sample: std_err reported as 0
};

// Mean, unbiased-variance standard error and extremes. Throws on empty input.
McSummary summarize(std::span<const double> samples);

// Sup-norm distance between the sample ECDF and `cdf`, evaluated with both
// one-sided gaps at every sample point (ties handled by the jump envelope).
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

// Sorted distinct values with cumulative fractions, ending exactly at 1.
struct EcdfTable {
    std::vector<double> values;
    std::vector<double> fractions;
};
EcdfTable ecdf(std::span<const double> samples);

struct HistogramBin {
    double lo = 0, hi = 0;
    std::uint64_t count = 0;
    double density = 0; // count / (N * width); densities integrate to 1
};

// Equal-width bins spanning [min, max]. Degenerate constant samples use a
// unit-width single bin. Throws on empty input or bin_count < 1.
std::vector<HistogramBin> histogram(std::span<const double> samples, int bin_count);

struct QuantilePair {
    double p = 0;
    double empirical = 0;
    double reference = 0;
};

// Quantile pairs at p = (i + 1/2) / points for Q-Q output against a
// reference quantile function.
std::vector<QuantilePair> quantile_pairs(std::span<const double> samples,
                                         const std::function<double(double)>& ref_quantile,
                                         int points);

} // namespace scc
