#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "scc/analytic.hpp"
#include "scc/combinat.hpp"
#include "scc/oracle.hpp"

using namespace scc;

namespace {

// First s elements of [0, n), the canonical fixed super-coupon.
CouponSet head_set(int s, int n) {
    std::vector<int> ids(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) ids[static_cast<std::size_t>(i)] = i;
    return CouponSet(std::move(ids), n);
}

} // namespace

TEST_CASE("theta closed-form values") {
    CHECK(theta(10, 3, 1) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(theta(6, 3, 2) == doctest::Approx(0.2).epsilon(1e-12));
    for (int n = 2; n <= 12; ++n)
        for (int r = 1; r <= n; ++r) // r = s: only the set itself collects it
            CHECK(theta(n, r, r) == doctest::Approx(1.0 / binomial_d(n, r)).epsilon(1e-12));
    CHECK(theta_exact(10, 3, 1) == Rational(3, 10));
    CHECK(theta_exact(6, 3, 2) == Rational(1, 5));
    CHECK_THROWS_AS(theta(5, 6, 2), std::invalid_argument);
}

TEST_CASE("theta equals enumeration wherever C(n,r) <= 10^4") {
    for (int n = 2; n <= 14; ++n) {
        for (int r = 1; r <= n; ++r) {
            if (binomial(n, r) > 10'000) continue;
            for (int s = 1; s <= r; ++s) {
                const Rational by_enum =
                    Rational(1) - exact_miss_prob(n, r, {head_set(s, n)});
                CHECK(theta_exact(n, r, s) == by_enum);
                CHECK(theta(n, r, s) ==
                      doctest::Approx(rational_to_double(by_enum)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("psi plug-in values and decay") {
    CHECK(psi(10, 2, 1) == doctest::Approx(0.004).epsilon(1e-12));
    CHECK(psi(10, 4, 2) == doctest::Approx(0.0256).epsilon(1e-12));
    // psi/theta -> 0 as n grows with (r, s) fixed
    double prev = 1e300;
    for (int n : {100, 1000, 10000}) {
        const double ratio = psi(n, 3, 1) / theta(n, 3, 1);
        CHECK(ratio < prev);
        prev = ratio;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("expected_Nk") {
    CHECK(expected_Nk(6, 3, 2, 0) == doctest::Approx(15.0));
    CHECK(expected_Nk(6, 3, 2, 1) == doctest::Approx(12.0).epsilon(1e-12));
    const double th = theta(10, 4, 2);
    CHECK(expected_Nk(10, 4, 2, 17) ==
          doctest::Approx(45.0 * std::pow(1 - th, 17)).epsilon(1e-10));
    CHECK(expected_Nk(3, 3, 3, 5) == 0.0); // theta = 1: collected in round one
}

TEST_CASE("moment_bounds ordering, k = 0 sanity, degeneracy flag") {
    const MomentBounds b = moment_bounds(10, 3, 2, 20, 2);
    CHECK(b.lower <= b.upper);
    CHECK(!b.degenerate);
    CHECK(b.lower >= 0);

    // k = 0 extension: lower = m(m-1) <= E N_0^2 = m^2 <= m(m-1) + 4m
    const double m = binomial_d(10, 3);
    const MomentBounds z = moment_bounds(10, 4, 3, 0, 2);
    CHECK(z.lower == doctest::Approx(m * (m - 1)).epsilon(1e-10));
    CHECK(z.upper >= m * m * (1 - 1e-12));
    CHECK(z.lower <= m * m);

    // theta = 1 at (3,3,1) makes 1 - 2*theta negative: clipped and flagged
    const MomentBounds d = moment_bounds(3, 3, 1, 4, 2);
    CHECK(d.degenerate);
    CHECK(d.lower == 0.0);

    CHECK_THROWS_AS(moment_bounds(10, 3, 2, 5, 1), std::invalid_argument);
}

TEST_CASE("moment_bounds bracket the exact second moment at k where it is computable") {
    // E N_k^2 = sum over ordered pairs (S, S') of P(both uncollected after k)
    //         = m(1-theta)^k + sum_{S != S'} (1 - 2 theta + pair)^k
    // checked against the closed-form bounds for a small case
    const int n = 10, r = 3, s = 2;
    const double m = binomial_d(n, s);
    const double th = theta(n, r, s);
    for (std::uint64_t k : {1ULL, 5ULL, 20ULL}) {
        double second = m * std::pow(1 - th, static_cast<double>(k)); // diagonal S = S'
        for (int l = 0; l < s; ++l) {
            // ordered pairs with overlap l: m * C(s,l) * C(n-s, s-l)
            const double pairs = m * binomial_d(s, l) * binomial_d(n - s, s - l);
            const double q = 1 - 2 * th + pair_collect_prob(n, r, s, l);
            second += pairs * std::pow(q, static_cast<double>(k));
        }
        const MomentBounds b = moment_bounds(n, r, s, k, 2);
        CHECK(b.lower <= second * (1 + 1e-12));
        CHECK(second <= b.upper * (1 + 1e-12));
    }
}

TEST_CASE("pair_collect_prob") {
    CHECK(pair_collect_prob(6, 4, 2, 1) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(pair_collect_prob(6, 4, 2, 0) == doctest::Approx(1.0 / 15).epsilon(1e-12));
    CHECK(pair_collect_prob(10, 3, 2, 0) == 0.0); // union of size 4 > r = 3
    CHECK(pair_collect_prob_exact(6, 4, 2, 0) == Rational(1, 15));
    CHECK_THROWS_AS(pair_collect_prob(6, 4, 2, 2), std::invalid_argument);  // l = s
    CHECK_THROWS_AS(pair_collect_prob(6, 4, 2, -1), std::invalid_argument);
}

TEST_CASE("pair_collect_prob equals enumeration wherever C(n,r) <= 10^4") {
    for (int n = 2; n <= 12; ++n) {
        for (int r = 1; r <= n; ++r) {
            if (binomial(n, r) > 10'000) continue;
            for (int s = 1; s <= r; ++s) {
                for (int l = 0; l < s; ++l) {
                    if (2 * s - l > n) continue; // no such pair of subsets exists
                    // union of two overlap-l subsets: {0..s-1} and {l..s+l-1}... use
                    // the contiguous union {0 .. 2s-l-1}; P(collect both) =
                    // P(draw contains the union)
                    std::vector<int> u(static_cast<std::size_t>(2 * s - l));
                    for (std::size_t i = 0; i < u.size(); ++i) u[i] = static_cast<int>(i);
                    const Rational by_enum =
                        Rational(1) - exact_miss_prob(n, r, {CouponSet(u, n)});
                    CHECK(pair_collect_prob_exact(n, r, s, l) == by_enum);
                }
            }
        }
    }
}

TEST_CASE("predicted_T") {
    const Prediction p = predicted_T(500, 10, 2);
    CHECK(p.value == doctest::Approx(124750.0 * std::log(124750.0) / 45.0).epsilon(1e-12));
    CHECK(p.value == doctest::Approx(3.253e4).epsilon(2e-3));
    CHECK(p.kind == PredictionKind::CollectAll);
    CHECK(!p.conjecture);

    // r = s reduces to the classical m log m scale
    const double m = binomial_d(12, 3);
    CHECK(predicted_T(12, 3, 3).value == doctest::Approx(m * std::log(m)).epsilon(1e-12));
}

TEST_CASE("predicted_T approaches the n^s log n normalization from below") {
    // m log m / C(r,s) vs n^s log n / ((s-1)! C(r,s))
    double prev_gap = 1e300;
    for (int n : {100, 1000, 10000, 100000}) {
        const double fig = std::pow(n, 2) * std::log(n) / (1.0 * 45.0);
        const double ratio = predicted_T(n, 10, 2).value / fig;
        CHECK(ratio > 0.85);
        CHECK(ratio < 1.0);
        CHECK(1 - ratio < prev_gap);
        prev_gap = 1 - ratio;
    }
    // the gap closes like log(2)/(2 log n), so it is still ~0.03 at n = 1e5
    CHECK(prev_gap < 0.04);
}

TEST_CASE("predicted_T_alpha") {
    CHECK(predicted_T_alpha(200, 4, 2, 0.25).value ==
          doctest::Approx(19900.0 * std::log(4.0) / 6.0).epsilon(1e-12));
    CHECK(predicted_T_alpha(200, 4, 2, 0.25).value == doctest::Approx(4597.876).epsilon(1e-4));
    CHECK(predicted_T_alpha(200, 4, 2, 0.999999).value < 0.01); // alpha -> 1: value -> 0
    const double m_over_b = binomial_d(30, 2) / binomial_d(5, 2);
    CHECK(predicted_T_alpha(30, 5, 2, std::exp(-1.0)).value ==
          doctest::Approx(m_over_b).epsilon(1e-12));
    CHECK_THROWS_AS(predicted_T_alpha(10, 3, 2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(predicted_T_alpha(10, 3, 2, 1.0), std::invalid_argument);
}

TEST_CASE("predicted_T_rw") {
    for (auto [n, r, s] : std::vector<std::array<int, 3>>{{10, 3, 1}, {20, 10, 2}, {9, 4, 4}}) {
        const Prediction rw = predicted_T_rw(n, r, s);
        CHECK(rw.conjecture);
        CHECK(rw.value / predicted_T(n, r, s).value ==
              doctest::Approx(static_cast<double>(r) / s).epsilon(1e-12));
    }
    // r = s: factor one, the classical cover-time scale C(n,r) log C(n,r)
    const double v = binomial_d(10, 2);
    CHECK(predicted_T_rw(10, 2, 2).value == doctest::Approx(v * std::log(v)).epsilon(1e-12));
    CHECK_THROWS_AS(predicted_T_rw(5, 5, 2), std::invalid_argument); // needs r < n

    // s = 2: agrees with n^2 log n / (r-1) to first order at n = 200
    const double fig4 = 200.0 * 200.0 * std::log(200.0) / (4 - 1);
    const double ratio = predicted_T_rw(200, 4, 2).value / fig4;
    CHECK(ratio > 0.8);
    CHECK(ratio < 1.05);
}

TEST_CASE("normalize_T centering, scale, monotonicity") {
    const int n = 40, r = 6, s = 2;
    const double m = binomial_d(n, s), b = binomial_d(r, s);
    CHECK(normalize_T(m * std::log(m) / b, n, r, s) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(normalize_T(predicted_T(n, r, s).value + m / b, n, r, s) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(normalize_T(500.0, n, r, s) < normalize_T(501.0, n, r, s));
}

TEST_CASE("gumbel cdf/pdf/quantile") {
    CHECK(gumbel_cdf(0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(gumbel_pdf(0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(gumbel_cdf(-1) < gumbel_cdf(0));
    CHECK(gumbel_cdf(0) < gumbel_cdf(1));
    CHECK(gumbel_cdf(-40) == doctest::Approx(0.0));
    CHECK(gumbel_cdf(40) == doctest::Approx(1.0));
    for (double p : {0.01, 0.25, 0.5, 0.9, 0.999})
        CHECK(gumbel_cdf(gumbel_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    CHECK_THROWS_AS(gumbel_quantile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(gumbel_quantile(1.0), std::invalid_argument);
}

TEST_CASE("gumbel pdf integrates to one") {
    // Simpson's rule on [-10, 20]; the tails beyond carry < 1e-9 mass
    const double a = -10, b = 20;
    const int steps = 30'000; // even
    const double h = (b - a) / steps;
    double sum = gumbel_pdf(a) + gumbel_pdf(b);
    for (int i = 1; i < steps; ++i) sum += gumbel_pdf(a + i * h) * (i % 2 == 1 ? 4 : 2);
    CHECK(sum * h / 3 == doctest::Approx(1.0).epsilon(1e-6));
}
