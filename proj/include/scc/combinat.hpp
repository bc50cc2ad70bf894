#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scc/rng.hpp"

namespace scc {

using Uint128 = unsigned __int128;
using SubsetRank = std::uint64_t;

// Throws std::invalid_argument unless 1 <= s <= r <= n.
void require_model_params(int n, int r, int s);

// C(n, k) computed exactly in checked 128-bit arithmetic. Returns 0 for
// k > n. Throws std::overflow_error when the running product leaves the
// 128-bit range (the check is on the intermediate product, so it can fire
// slightly before the value itself overflows); there is no silent wraparound.
Uint128 binomial(int n, int k);

// C(n, k) narrowed to 64 bits; throws std::overflow_error when it does not fit.
std::uint64_t binomial_u64(int n, int k);

// log C(n, k) via lgamma. Requires 0 <= k <= n.
double log_binomial(double n, double k);

// C(n, k) as a double: exact conversion where the 128-bit path fits,
// log-gamma fallback beyond.
double binomial_d(int n, int k);

// A set of coupon ids, kept strictly increasing. The validating constructor
// checks ordering, uniqueness and the range [0, universe).
class CouponSet {
public:
    CouponSet() = default;
    CouponSet(std::vector<int> ids, int universe);

    // Trusted path for ids already strictly increasing and in range.
    static CouponSet from_sorted(std::vector<int> ids);

    const std::vector<int>& ids() const { return ids_; }
    int size() const { return static_cast<int>(ids_.size()); }

    friend bool operator==(const CouponSet&, const CouponSet&) = default;

private:
    std::vector<int> ids_;
};

// Colexicographic rank of an s-subset: sum of C(c_i, i + 1) over the sorted
// elements c_0 < ... < c_{s-1}. Bijection onto [0, C(n, s)).
SubsetRank rank_colex(const CouponSet& s);

// Inverse of rank_colex for subsets of size `s` over universe `n`.
// Throws std::invalid_argument when rank >= C(n, s).
CouponSet unrank_colex(SubsetRank rank, int s, int n);

// All C(|h|, s) s-subsets of h, in colex-compatible (lexicographic index)
// order. Throws when s exceeds |h| or is negative.
std::vector<CouponSet> s_subsets_of(const CouponSet& h, int s);

// Uniform random r-subset of [0, n) via Floyd's algorithm, returned sorted.
CouponSet sample_r_subset(int n, int r, Rng& rng);

// Allocation-free variant: fills `out` (resized to r) with a sorted uniform
// r-subset. Consumes exactly r bounded draws.
void sample_r_subset_into(int n, int r, Rng& rng, std::vector<int>& out);

// Visits all k-index combinations of {0, ..., m-1} in lexicographic order.
// The callback receives a span over the current combination.
template <typename F>
void for_each_combination(int m, int k, F&& visit) {
    if (k < 0 || k > m) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) idx[static_cast<std::size_t>(j)] = j;
    for (;;) {
        visit(std::span<const int>(idx));
        int j = k - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] == m - k + j) --j;
        if (j < 0) break;
        ++idx[static_cast<std::size_t>(j)];
        for (int t = j + 1; t < k; ++t)
            idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
    }
}

// Precomputed colex rank/unrank for s-subsets of [0, n). Table entries that
// would not fit in 64 bits are saturated; valid ranks never touch them since
// every term of a rank sum is bounded by C(n, s).
class ColexRanker {
public:
    ColexRanker(int n, int s);

    int n() const { return n_; }
    int s() const { return s_; }
    std::uint64_t count() const { return count_; } // C(n, s)

    // Table lookup of C(c, j), 0 <= c <= n, 0 <= j <= s (saturated).
    std::uint64_t choose(int c, int j) const {
        return tab_[static_cast<std::size_t>(c) * (static_cast<std::size_t>(s_) + 1) +
                    static_cast<std::size_t>(j)];
    }

    SubsetRank rank(std::span<const int> sorted_elems) const;
    void unrank(SubsetRank rank, std::span<int> out) const;

private:
    std::uint64_t& choose_mut(int c, int j) {
        return tab_[static_cast<std::size_t>(c) * (static_cast<std::size_t>(s_) + 1) +
                    static_cast<std::size_t>(j)];
    }

    int n_ = 0, s_ = 0;
    std::uint64_t count_ = 0;
    std::vector<std::uint64_t> tab_;
};

} // namespace scc
