#include "scc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scc {

McSummary summarize(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("summarize needs at least one sample");
    McSummary out;
    out.reps = samples.size();
    double sum = 0;
    for (double x : samples) sum += x;
    out.mean = sum / static_cast<double>(out.reps);
    const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
    out.min = *lo;
    out.max = *hi;
    if (out.reps == 1) {
        out.low_reps = true;
        return out;
    }
    double ss = 0;
    for (double x : samples) ss += (x - out.mean) * (x - out.mean);
    const double var = ss / static_cast<double>(out.reps - 1);
    out.std_err = std::sqrt(var / static_cast<double>(out.reps));
    return out;
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_distance needs at least one sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double inv_n = 1.0 / static_cast<double>(sorted.size());
    double d = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        // Both one-sided gaps at every point; with ties the first and last
        // duplicate realize the jump envelope.
        d = std::max(d, static_cast<double>(i + 1) * inv_n - f);
        d = std::max(d, f - static_cast<double>(i) * inv_n);
    }
    return d;
}

EcdfTable ecdf(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("ecdf needs at least one sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    EcdfTable out;
    const double inv_n = 1.0 / static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue; // collapse ties
        out.values.push_back(sorted[i]);
        out.fractions.push_back(static_cast<double>(i + 1) * inv_n);
    }
    out.fractions.back() = 1.0;
    return out;
}

std::vector<HistogramBin> histogram(std::span<const double> samples, int bin_count) {
    if (samples.empty()) throw std::invalid_argument("histogram needs at least one sample");
    if (bin_count < 1) throw std::invalid_argument("histogram needs at least one bin");
    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *lo_it, hi = *hi_it;
    const double n = static_cast<double>(samples.size());
    if (lo == hi) {
        // Constant sample: a single unit-width bin keeps densities normalized.
        return {HistogramBin{lo, lo + 1, samples.size(), 1.0}};
    }
    std::vector<HistogramBin> bins(static_cast<std::size_t>(bin_count));
    const double width = (hi - lo) / bin_count;
    for (int b = 0; b < bin_count; ++b) {
        bins[static_cast<std::size_t>(b)].lo = lo + b * width;
        bins[static_cast<std::size_t>(b)].hi = lo + (b + 1) * width;
    }
    bins.back().hi = hi;
    for (double x : samples) {
        int b = static_cast<int>((x - lo) / width);
        b = std::clamp(b, 0, bin_count - 1);
        ++bins[static_cast<std::size_t>(b)].count;
    }
    for (HistogramBin& bin : bins)
        bin.density = static_cast<double>(bin.count) / (n * width);
    return bins;
}

std::vector<QuantilePair> quantile_pairs(std::span<const double> samples,
                                         const std::function<double(double)>& ref_quantile,
                                         int points) {
    if (samples.empty()) throw std::invalid_argument("quantile_pairs needs at least one sample");
    if (points < 1) throw std::invalid_argument("quantile_pairs needs at least one point");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<QuantilePair> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double p = (i + 0.5) / points;
        std::size_t idx = static_cast<std::size_t>(p * static_cast<double>(sorted.size()));
        idx = std::min(idx, sorted.size() - 1);
        out[static_cast<std::size_t>(i)] = QuantilePair{p, sorted[idx], ref_quantile(p)};
    }
    return out;
}

} // namespace scc
