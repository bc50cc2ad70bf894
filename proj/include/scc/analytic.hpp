#pragma once

#include <cstdint>

#include "scc/rational.hpp"

namespace scc {

// Probability that one r-draw collects a fixed s-subset:
// theta = C(n - s, r - s) / C(n, r). Evaluated in log space, so it stays
// finite for parameters far beyond the exact-integer range.
double theta(int n, int r, int s);

// Exact-rational theta; throws std::overflow_error outside the checked
// 128-bit binomial range.
Rational theta_exact(int n, int r, int s);

// Uniform bound on the one-round pairwise collection probability:
// psi = r^r n^-(s+2) / max(r - 2s, 0)!.
double psi(int n, int r, int s);

// E N_k = C(n, s) (1 - theta)^k, log-space evaluation.
double expected_Nk(int n, int r, int s, std::uint64_t k);

struct MomentBounds {
    double lower = 0;
    double upper = 0;
    // Set when a base 1 - d*theta (+ pair term) went negative and the bound
    // was clipped to 0; the closed form presumes d * theta < 1.
    bool degenerate = false;
};

// Two-sided bounds on E N_k^d:
//   lower = d! C(m, d) (1 - d theta)^k
//   upper = d! C(m, d) (1 - d theta + C(d, 2) psi)^k + d^2 m^{d-1} (1 - theta)^k
// Requires d >= 2. k = 0 is accepted as a sanity extension of the k >= 1 form.
MomentBounds moment_bounds(int n, int r, int s, std::uint64_t k, int d);

// One-round probability of collecting two fixed distinct s-subsets whose
// intersection has size `overlap`: C(n - 2s + overlap, r - 2s + overlap) / C(n, r),
// zero when the union cannot fit in a draw. overlap >= s is rejected
// (the sets would not be distinct).
double pair_collect_prob(int n, int r, int s, int overlap);
Rational pair_collect_prob_exact(int n, int r, int s, int overlap);

enum class PredictionKind { CollectAll, CollectFraction, RwCollectAll };

// First-order expected stopping time; the (1 + o(1)) factor of the source
// formulas is dropped, so downstream comparisons should use ratio tolerances.
struct Prediction {
    double value = 0; // rounds
    PredictionKind kind = PredictionKind::CollectAll;
    int n = 0, r = 0, s = 0;
    double alpha = 0;        // meaningful for CollectFraction only
    bool conjecture = false; // true for the random-walk value
};

// m log m / b with m = C(n, s), b = C(r, s). Natural log throughout.
Prediction predicted_T(int n, int r, int s);

// m log(1/alpha) / b, alpha in (0, 1).
Prediction predicted_T_alpha(int n, int r, int s, double alpha);

// (r/s) m log m / b; conjectured value, flagged as such. Requires r < n.
Prediction predicted_T_rw(int n, int r, int s);

// Gumbel normalization of a stopping time: (t - m log m / b) / (m / b).
// Strictly increasing in t.
double normalize_T(double t, int n, int r, int s);

double gumbel_cdf(double x);       // exp(-exp(-x))
double gumbel_pdf(double x);       // exp(-x - exp(-x))
double gumbel_quantile(double p);  // -log(-log(p)), p in (0, 1)

inline constexpr double kEulerGamma = 0.5772156649015329;

} // namespace scc
