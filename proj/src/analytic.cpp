#include "scc/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "scc/combinat.hpp"

namespace scc {

double theta(int n, int r, int s) {
    require_model_params(n, r, s);
    return std::exp(log_binomial(n - s, r - s) - log_binomial(n, r));
}

Rational theta_exact(int n, int r, int s) {
    require_model_params(n, r, s);
    return Rational(bigint_from_u128(binomial(n - s, r - s)), bigint_from_u128(binomial(n, r)));
}

double psi(int n, int r, int s) {
    require_model_params(n, r, s);
    const double log_fact = std::lgamma(static_cast<double>(std::max(r - 2 * s, 0)) + 1);
    return std::exp(r * std::log(static_cast<double>(r)) -
                    (s + 2) * std::log(static_cast<double>(n)) - log_fact);
}

double expected_Nk(int n, int r, int s, std::uint64_t k) {
    const double m = binomial_d(n, s);
    if (k == 0) return m;
    const double th = theta(n, r, s);
    if (th >= 1) return 0; // r == n == s: the single coupon is certain each round
    return std::exp(std::log(m) + static_cast<double>(k) * std::log1p(-th));
}

MomentBounds moment_bounds(int n, int r, int s, std::uint64_t k, int d) {
    require_model_params(n, r, s);
    if (d < 2) throw std::invalid_argument("moment_bounds requires d >= 2");
    const double m = binomial_d(n, s);
    const double kk = static_cast<double>(k);

    // log of the falling factorial m (m-1) ... (m-d+1) = d! C(m, d)
    double log_ff = 0;
    bool ff_zero = false;
    for (int i = 0; i < d; ++i) {
        if (m - i <= 0) {
            ff_zero = true;
            break;
        }
        log_ff += std::log(m - i);
    }

    MomentBounds out;
    const double th = theta(n, r, s);
    const double base_lo = 1 - d * th;
    const double base_hi = base_lo + 0.5 * d * (d - 1) * psi(n, r, s);

    auto power_term = [&](double base) -> double {
        if (k == 0) return ff_zero ? 0.0 : std::exp(log_ff);
        if (base <= 0 || ff_zero) return 0.0;
        return std::exp(log_ff + kk * std::log(base));
    };

    out.degenerate = base_lo < 0;
    out.lower = power_term(base_lo);
    out.upper = power_term(base_hi);
    // cross-correction term d^2 m^{d-1} (1 - theta)^k
    if (th < 1)
        out.upper += std::exp(2 * std::log(static_cast<double>(d)) + (d - 1) * std::log(m) +
                              kk * std::log1p(-th));
    else if (k == 0)
        out.upper += d * d * std::pow(m, d - 1);
    return out;
}

double pair_collect_prob(int n, int r, int s, int overlap) {
    require_model_params(n, r, s);
    if (overlap < 0 || overlap >= s)
        throw std::invalid_argument("pair_collect_prob requires 0 <= overlap < s");
    const int u = 2 * s - overlap; // union size of the two subsets
    if (r < u) return 0;
    return std::exp(log_binomial(n - u, r - u) - log_binomial(n, r));
}

Rational pair_collect_prob_exact(int n, int r, int s, int overlap) {
    require_model_params(n, r, s);
    if (overlap < 0 || overlap >= s)
        throw std::invalid_argument("pair_collect_prob requires 0 <= overlap < s");
    const int u = 2 * s - overlap;
    if (r < u) return 0;
    return Rational(bigint_from_u128(binomial(n - u, r - u)), bigint_from_u128(binomial(n, r)));
}

Prediction predicted_T(int n, int r, int s) {
    require_model_params(n, r, s);
    const double m = binomial_d(n, s);
    const double b = binomial_d(r, s);
    Prediction p;
    p.value = m * std::log(m) / b;
    p.kind = PredictionKind::CollectAll;
    p.n = n;
    p.r = r;
    p.s = s;
    return p;
}

Prediction predicted_T_alpha(int n, int r, int s, double alpha) {
    require_model_params(n, r, s);
    if (!(alpha > 0 && alpha < 1))
        throw std::invalid_argument("alpha must lie strictly inside (0, 1)");
    const double m = binomial_d(n, s);
    const double b = binomial_d(r, s);
    Prediction p;
    p.value = m * std::log(1 / alpha) / b;
    p.kind = PredictionKind::CollectFraction;
    p.n = n;
    p.r = r;
    p.s = s;
    p.alpha = alpha;
    return p;
}

Prediction predicted_T_rw(int n, int r, int s) {
    require_model_params(n, r, s);
    if (r >= n)
        throw std::invalid_argument("the one-swap walk needs r < n");
    Prediction p = predicted_T(n, r, s);
    p.value *= static_cast<double>(r) / static_cast<double>(s);
    p.kind = PredictionKind::RwCollectAll;
    p.conjecture = true;
    return p;
}

double normalize_T(double t, int n, int r, int s) {
    require_model_params(n, r, s);
    const double m = binomial_d(n, s);
    const double b = binomial_d(r, s);
    return (t - m * std::log(m) / b) / (m / b);
}

double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

double gumbel_pdf(double x) { return std::exp(-x - std::exp(-x)); }

double gumbel_quantile(double p) {
    if (!(p > 0 && p < 1))
        throw std::invalid_argument("gumbel_quantile requires p in (0, 1)");
    return -std::log(-std::log(p));
}

} // namespace scc
