#include "scc/combinat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace scc {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

[[noreturn]] void throw_binomial_overflow(int n, int k) {
    throw std::overflow_error("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                              ") exceeds 128-bit range");
}

} // namespace

void require_model_params(int n, int r, int s) {
    if (s < 1 || r < s || n < r)
        throw std::invalid_argument("model parameters must satisfy 1 <= s <= r <= n (got n=" +
                                    std::to_string(n) + ", r=" + std::to_string(r) +
                                    ", s=" + std::to_string(s) + ")");
}

Uint128 binomial(int n, int k) {
    if (n < 0) throw std::invalid_argument("binomial: n must be nonnegative");
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Uint128 result = 1;
    for (int i = 1; i <= k; ++i) {
        // result = C(n - k + i - 1, i - 1) entering the step, so the division
        // below is exact.
        Uint128 next;
        if (__builtin_mul_overflow(result, static_cast<Uint128>(n - k + i), &next))
            throw_binomial_overflow(n, k);
        result = next / static_cast<Uint128>(i);
    }
    return result;
}

std::uint64_t binomial_u64(int n, int k) {
    const Uint128 v = binomial(n, k);
    if (v > static_cast<Uint128>(std::numeric_limits<std::uint64_t>::max()))
        throw std::overflow_error("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                                  ") exceeds 64-bit range");
    return static_cast<std::uint64_t>(v);
}

double log_binomial(double n, double k) {
    if (!(k >= 0 && k <= n))
        throw std::invalid_argument("log_binomial requires 0 <= k <= n");
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

double binomial_d(int n, int k) {
    if (n < 0) throw std::invalid_argument("binomial_d: n must be nonnegative");
    if (k < 0 || k > n) return 0;
    try {
        const Uint128 v = binomial(n, k);
        if (v <= static_cast<Uint128>(1) << 63) return static_cast<double>(v);
    } catch (const std::overflow_error&) {
    }
    return std::exp(log_binomial(n, k));
}

CouponSet::CouponSet(std::vector<int> ids, int universe) : ids_(std::move(ids)) {
    int prev = -1;
    for (int id : ids_) {
        if (id <= prev)
            throw std::invalid_argument("coupon ids must be strictly increasing");
        if (id < 0 || id >= universe)
            throw std::invalid_argument("coupon id " + std::to_string(id) +
                                        " outside universe [0, " + std::to_string(universe) + ")");
        prev = id;
    }
}

CouponSet CouponSet::from_sorted(std::vector<int> ids) {
    CouponSet s;
    s.ids_ = std::move(ids);
    return s;
}

SubsetRank rank_colex(const CouponSet& s) {
    Uint128 rank = 0;
    int i = 1;
    for (int c : s.ids()) rank += binomial(c, i++);
    if (rank > static_cast<Uint128>(std::numeric_limits<std::uint64_t>::max()))
        throw std::overflow_error("colex rank exceeds 64-bit range");
    return static_cast<SubsetRank>(rank);
}

CouponSet unrank_colex(SubsetRank rank, int s, int n) {
    if (s < 0 || s > n) throw std::invalid_argument("unrank_colex requires 0 <= s <= n");
    const Uint128 count = binomial(n, s);
    if (static_cast<Uint128>(rank) >= count)
        throw std::invalid_argument("unrank_colex: rank " + std::to_string(rank) +
                                    " out of range for C(" + std::to_string(n) + ", " +
                                    std::to_string(s) + ")");
    std::vector<int> ids(static_cast<std::size_t>(s));
    Uint128 rem = rank;
    int c = n - 1;
    for (int j = s; j >= 1; --j) {
        while (binomial(c, j) > rem) --c;
        ids[static_cast<std::size_t>(j - 1)] = c;
        rem -= binomial(c, j);
        --c;
    }
    return CouponSet::from_sorted(std::move(ids));
}

std::vector<CouponSet> s_subsets_of(const CouponSet& h, int s) {
    if (s < 0 || s > h.size())
        throw std::invalid_argument("s_subsets_of requires 0 <= s <= |h|");
    std::vector<CouponSet> out;
    out.reserve(static_cast<std::size_t>(binomial_u64(h.size(), s)));
    const std::vector<int>& ids = h.ids();
    for_each_combination(h.size(), s, [&](std::span<const int> idx) {
        std::vector<int> sub(idx.size());
        for (std::size_t t = 0; t < idx.size(); ++t)
            sub[t] = ids[static_cast<std::size_t>(idx[t])];
        out.push_back(CouponSet::from_sorted(std::move(sub)));
    });
    return out;
}

void sample_r_subset_into(int n, int r, Rng& rng, std::vector<int>& out) {
    if (r < 0 || r > n) throw std::invalid_argument("sample_r_subset requires 0 <= r <= n");
    out.clear();
    // Floyd: for j = n - r .. n - 1 pick t uniform in [0, j]; take t unless
    // already chosen, else take j. Exactly uniform and exactly r draws.
    for (int j = n - r; j < n; ++j) {
        const int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
        const bool seen = std::find(out.begin(), out.end(), t) != out.end();
        out.push_back(seen ? j : t);
    }
    std::sort(out.begin(), out.end());
}

CouponSet sample_r_subset(int n, int r, Rng& rng) {
    std::vector<int> out;
    sample_r_subset_into(n, r, rng, out);
    return CouponSet::from_sorted(std::move(out));
}

ColexRanker::ColexRanker(int n, int s) : n_(n), s_(s) {
    if (s < 1 || s > n) throw std::invalid_argument("ColexRanker requires 1 <= s <= n");
    tab_.assign((static_cast<std::size_t>(n) + 1) * (static_cast<std::size_t>(s) + 1), 0);
    // Saturating Pascal triangle: entries past 2^64 - 1 are pinned at the
    // sentinel. A valid rank never reads one, because each term of a rank sum
    // is at most C(n, s), which the constructor requires to fit.
    for (int c = 0; c <= n; ++c) {
        choose_mut(c, 0) = 1;
        for (int j = 1; j <= std::min(c, s); ++j) {
            const std::uint64_t a = choose(c - 1, j - 1);
            const std::uint64_t b = choose(c - 1, j);
            choose_mut(c, j) = (a == kSaturated || b == kSaturated || a > kSaturated - b)
                                   ? kSaturated
                                   : a + b;
        }
    }
    count_ = choose(n, s);
    if (count_ == kSaturated)
        throw std::overflow_error("C(n, s) exceeds the 64-bit rank width");
}

SubsetRank ColexRanker::rank(std::span<const int> sorted_elems) const {
    if (static_cast<int>(sorted_elems.size()) != s_)
        throw std::invalid_argument("ColexRanker::rank: wrong subset size");
    SubsetRank r = 0;
    for (int i = 0; i < s_; ++i) r += choose(sorted_elems[static_cast<std::size_t>(i)], i + 1);
    return r;
}

void ColexRanker::unrank(SubsetRank rank, std::span<int> out) const {
    if (static_cast<int>(out.size()) != s_)
        throw std::invalid_argument("ColexRanker::unrank: wrong output size");
    if (rank >= count_) throw std::invalid_argument("ColexRanker::unrank: rank out of range");
    int c = n_ - 1;
    for (int j = s_; j >= 1; --j) {
        while (choose(c, j) > rank) --c;
        out[static_cast<std::size_t>(j - 1)] = c;
        rank -= choose(c, j);
        --c;
    }
}

} // namespace scc
