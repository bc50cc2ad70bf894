#pragma once

#include <cstdint>
#include <vector>

#include "scc/combinat.hpp"
#include "scc/process.hpp"
#include "scc/rational.hpp"

namespace scc {

// Hard limits of the exact computations. Everything here is enumeration at
// desk scale; past these the request fails with CapacityError.
inline constexpr std::uint64_t kMissEnumLimit = 1'000'000; // C(n, r) cap for draw enumeration
inline constexpr int kInclExclFamilyLimit = 22;            // m cap for the 2^m inclusion-exclusion
inline constexpr std::uint64_t kCoverDpVertexLimit = 12;   // C(n, r) cap for the cover-time DP

// Probability that a single uniform r-draw contains no member of `family`,
// by exhaustive enumeration of all C(n, r) draws. Exact rational in [0, 1].
Rational exact_miss_prob(int n, int r, const std::vector<CouponSet>& family);

// Exact E T under IID dynamics and the All rule, by inclusion-exclusion over
// all nonempty subfamilies J of the m = C(n, s) super-coupons:
//
//   E T = sum_J (-1)^{|J|+1} / (1 - q_J),   q_J = exact miss probability of J,
//
// since P(some member of J is still uncollected after k rounds) telescopes
// through the per-round independence of the draws. Requires m <= 22 and
// C(n, r) within the enumeration limit. The Fraction rule is not a product
// event and is rejected.
Rational exact_expected_T(int n, int r, int s, const StopRule& rule = StopRule::all());

// Hitting times of the Johnson graph J(n, r) by intersection size:
// h[k] = expected steps to reach a target vertex from a start sharing k
// elements with it. Intersection sizes below k_min = max(0, 2r - n) do not
// occur (two r-subsets of [n] cannot be that disjoint), so the profile
// starts at k_min. h(r) = 0.
struct HittingProfile {
    int n = 0, r = 0;
    int k_min = 0;
    std::vector<Rational> h; // h[k - k_min] for k in [k_min, r]

    const Rational& at(int k) const; // throws outside [k_min, r]
    double at_d(int k) const;
};

// Solves the first-step tridiagonal system
//   (A_k + C_k) h_k - A_k h_{k-1} - C_k h_{k+1} = r(n - r),  k_min <= k <= r-1,
// with A_k = k(n - 2r + k) down-neighbours, C_k = (r - k)^2 up-neighbours and
// h_r = 0, in exact rational arithmetic.
HittingProfile hitting_profile(int n, int r);

// Difference sequence x_k = h_k - h_{k-1}, defined for k in [k_min + 1, r].
struct XProfile {
    int k_lo = 1; // index of x.front()
    std::vector<Rational> x;
};
XProfile x_profile(int n, int r);

// Harmonic number H_v = sum_{i=1}^{v} 1/i. Exact summation up to 10^8 terms,
// Euler-Maclaurin beyond.
double harmonic_number(std::uint64_t v);

// Matthews' sandwich of the cover time: H_{|V|} * min/max hitting time over
// distinct-vertex pairs (k in [k_min, r - 1]; h_r = 0 is excluded, which
// would make the lower side vacuous). The lower side printed as stated can
// exceed the true cover time on small graphs; treat it as diagnostic and
// assert only the upper side against simulation.
struct CoverBounds {
    double lower = 0;
    double upper = 0;
    double harmonic = 0;
};
CoverBounds matthews_bounds(int n, int r);

// 1 + exact cover time of J(n, r) from a uniform start, via dynamic
// programming over (current vertex, visited set). Exponential in the vertex
// count; only exposed at toy sizes (C(n, r) <= 12). Matches the stopping
// time of the one-swap walk with r = s.
double exact_T_rw_rs(int n, int r);

} // namespace scc
