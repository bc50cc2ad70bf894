#include "scc/process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "scc/analytic.hpp"
#include "scc/errors.hpp"

namespace scc {

namespace {

// Dense coverage bitmap cap: 2^33 bits = 1 GiB of state per replication.
constexpr std::uint64_t kMaxStateBits = 1ULL << 33;

void check_sorted_draw(std::span<const int> draw, const ModelParams& p) {
    if (static_cast<int>(draw.size()) != p.r)
        throw std::invalid_argument("draw must contain exactly r coupons");
    int prev = -1;
    for (int id : draw) {
        if (id <= prev || id >= p.n)
            throw std::invalid_argument("draw must be a strictly increasing subset of [0, n)");
        prev = id;
    }
}

[[noreturn]] void throw_safety(std::uint64_t cap, const ModelParams& p) {
    throw std::runtime_error("safety valve: run exceeded " + std::to_string(cap) +
                             " rounds (1000x the first-order prediction) for n=" +
                             std::to_string(p.n) + ", r=" + std::to_string(p.r) +
                             ", s=" + std::to_string(p.s));
}

} // namespace

ModelParams::ModelParams(int n_, int r_, int s_) : n(n_), r(r_), s(s_) {
    require_model_params(n, r, s);
    super_count = binomial_u64(n, s);
    round_yield = binomial_u64(r, s);
}

StopRule StopRule::fraction(double alpha) {
    if (!(alpha > 0 && alpha < 1))
        throw std::invalid_argument("fraction rule needs alpha strictly inside (0, 1)");
    return StopRule(Kind::Fraction, alpha);
}

std::uint64_t StopRule::target(std::uint64_t m) const {
    if (kind_ == Kind::All) return m;
    const double t = std::ceil((1.0 - alpha_) * static_cast<double>(m));
    return std::min(m, static_cast<std::uint64_t>(t));
}

CollectionState::CollectionState(const ModelParams& params)
    : params_(params), ranker_(params.n, params.s) {
    if (params_.super_count > kMaxStateBits)
        throw CapacityError("collection state needs " + std::to_string(params_.super_count) +
                            " bits; the dense bitmap is capped at " +
                            std::to_string(kMaxStateBits));
    bits_.assign((params_.super_count + 63) / 64, 0);
    comb_.resize(static_cast<std::size_t>(params_.s));
}

std::uint64_t CollectionState::mark_round(const CouponSet& h) {
    check_sorted_draw(h.ids(), params_);
    return mark_round_sorted(h.ids());
}

std::uint64_t CollectionState::mark_round_sorted(std::span<const int> draw) {
    const int r = params_.r;
    const int s = params_.s;
    std::uint64_t fresh = 0;
    if (s == 1) {
        for (int v : draw) fresh += set_bit(static_cast<SubsetRank>(v)) ? 1 : 0;
        return fresh;
    }
    if (s == 2) {
        for (int j = 1; j < r; ++j) {
            const SubsetRank base = ranker_.choose(draw[static_cast<std::size_t>(j)], 2);
            for (int i = 0; i < j; ++i)
                fresh += set_bit(base + static_cast<SubsetRank>(draw[static_cast<std::size_t>(i)]))
                             ? 1
                             : 0;
        }
        return fresh;
    }
    // Odometer over the s-index combinations of the r draw slots.
    for (int j = 0; j < s; ++j) comb_[static_cast<std::size_t>(j)] = j;
    for (;;) {
        SubsetRank rank = 0;
        for (int j = 0; j < s; ++j)
            rank += ranker_.choose(draw[static_cast<std::size_t>(comb_[static_cast<std::size_t>(j)])],
                                   j + 1);
        fresh += set_bit(rank) ? 1 : 0;
        int j = s - 1;
        while (j >= 0 && comb_[static_cast<std::size_t>(j)] == r - s + j) --j;
        if (j < 0) break;
        ++comb_[static_cast<std::size_t>(j)];
        for (int t = j + 1; t < s; ++t)
            comb_[static_cast<std::size_t>(t)] = comb_[static_cast<std::size_t>(t - 1)] + 1;
    }
    return fresh;
}

std::uint64_t CollectionState::mark_containing_sorted(std::span<const int> draw, int fresh_id) {
    const int s = params_.s;
    // Split the draw into fresh_id and the r - 1 other elements (still sorted).
    others_.clear();
    bool found = false;
    for (int v : draw) {
        if (v == fresh_id) {
            found = true;
        } else {
            others_.push_back(v);
        }
    }
    if (!found) throw std::invalid_argument("fresh coupon is not part of the draw");

    std::uint64_t added = 0;
    merged_.resize(static_cast<std::size_t>(s));
    for_each_combination(static_cast<int>(others_.size()), s - 1, [&](std::span<const int> idx) {
        // Merge the chosen s-1 others with fresh_id, keeping sorted order.
        int w = 0;
        bool placed = false;
        for (int t = 0; t < s - 1; ++t) {
            const int v = others_[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)])];
            if (!placed && fresh_id < v) {
                merged_[static_cast<std::size_t>(w++)] = fresh_id;
                placed = true;
            }
            merged_[static_cast<std::size_t>(w++)] = v;
        }
        if (!placed) merged_[static_cast<std::size_t>(w)] = fresh_id;
        added += set_bit(ranker_.rank(merged_)) ? 1 : 0;
    });
    return added;
}

std::uint64_t safety_cap(const ModelParams& params, const StopRule& rule, ModelKind model) {
    const double m = binomial_d(params.n, params.s);
    const double b = binomial_d(params.r, params.s);
    double pred = rule.kind() == StopRule::Kind::All ? m * std::log(m) / b
                                                     : m * std::log(1 / rule.alpha()) / b;
    if (model == ModelKind::Rw)
        pred *= static_cast<double>(params.r) / static_cast<double>(params.s);
    const double cap = std::ceil(1000.0 * pred);
    if (!(cap < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
    return std::max<std::uint64_t>(1000, static_cast<std::uint64_t>(cap));
}

RunResult run_iid(const ModelParams& params, const StopRule& rule, Rng& rng,
                  const SeedRecord& seed) {
    CollectionState state(params);
    const std::uint64_t target = rule.target(params.super_count);
    const std::uint64_t cap = safety_cap(params, rule, ModelKind::Iid);
    std::vector<int> draw;
    draw.reserve(static_cast<std::size_t>(params.r));
    for (std::uint64_t rounds = 1;; ++rounds) {
        sample_r_subset_into(params.n, params.r, rng, draw);
        state.mark_round_sorted(draw);
        if (state.collected() >= target) return RunResult{rounds, rule, ModelKind::Iid, seed};
        if (rounds >= cap) throw_safety(cap, params);
    }
}

CouponSet rw_step(const CouponSet& h, int n, Rng& rng) {
    const int r = h.size();
    if (r < 1 || r >= n)
        throw std::invalid_argument("rw_step needs a nonempty set with 1 <= |h| < n");
    if (h.ids().back() >= n)
        throw std::invalid_argument("rw_step: set not contained in [0, n)");
    const int leave_pos = static_cast<int>(rng.below(static_cast<std::uint64_t>(r)));
    const int enter_idx = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - r)));
    // Locate the enter_idx-th element of the complement by walking the gaps.
    int enter = -1;
    int seen = 0;
    int next = 0; // next member of h to skip
    for (int v = 0; v < n; ++v) {
        if (next < r && h.ids()[static_cast<std::size_t>(next)] == v) {
            ++next;
            continue;
        }
        if (seen++ == enter_idx) {
            enter = v;
            break;
        }
    }
    std::vector<int> ids = h.ids();
    ids.erase(ids.begin() + leave_pos);
    ids.insert(std::lower_bound(ids.begin(), ids.end(), enter), enter);
    return CouponSet::from_sorted(std::move(ids));
}

RunResult run_rw(const ModelParams& params, const StopRule& rule, Rng& rng,
                 const SeedRecord& seed) {
    const int n = params.n;
    const int r = params.r;
    if (r >= n) throw std::invalid_argument("the one-swap walk needs r < n");

    CollectionState state(params);
    const std::uint64_t target = rule.target(params.super_count);
    const std::uint64_t cap = safety_cap(params, rule, ModelKind::Rw);

    std::vector<int> members;
    sample_r_subset_into(n, r, rng, members);
    state.mark_round_sorted(members);
    if (state.collected() >= target) return RunResult{1, rule, ModelKind::Rw, seed};

    // Complement of the start set, in any order: a uniform index into it is a
    // uniform complement element, so the array never needs re-sorting.
    std::vector<int> outside;
    outside.reserve(static_cast<std::size_t>(n - r));
    {
        int next = 0;
        for (int v = 0; v < n; ++v) {
            if (next < r && members[static_cast<std::size_t>(next)] == v) {
                ++next;
            } else {
                outside.push_back(v);
            }
        }
    }

    for (std::uint64_t rounds = 2;; ++rounds) {
        const std::size_t leave_pos =
            static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(r)));
        const std::size_t enter_pos =
            static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n - r)));
        const int leaving = members[leave_pos];
        const int fresh = outside[enter_pos];
        outside[enter_pos] = leaving;
        members.erase(members.begin() + static_cast<std::ptrdiff_t>(leave_pos));
        members.insert(std::lower_bound(members.begin(), members.end(), fresh), fresh);
        // Only s-subsets through the fresh coupon can be new: all others are
        // subsets of the previous round's set and were marked already.
        state.mark_containing_sorted(members, fresh);
        if (state.collected() >= target) return RunResult{rounds, rule, ModelKind::Rw, seed};
        if (rounds >= cap) throw_safety(cap, params);
    }
}

std::uint64_t sample_N_k(const ModelParams& params, std::uint64_t k, ModelKind model, Rng& rng) {
    if (model == ModelKind::Rw && params.r >= params.n)
        throw std::invalid_argument("the one-swap walk needs r < n");
    if (k == 0) return params.super_count;

    CollectionState state(params);
    std::vector<int> draw;
    if (model == ModelKind::Iid) {
        for (std::uint64_t i = 0; i < k; ++i) {
            sample_r_subset_into(params.n, params.r, rng, draw);
            state.mark_round_sorted(draw);
        }
        return state.remaining();
    }

    const int n = params.n;
    const int r = params.r;
    sample_r_subset_into(n, r, rng, draw);
    state.mark_round_sorted(draw);
    std::vector<int> outside;
    outside.reserve(static_cast<std::size_t>(n - r));
    int next = 0;
    for (int v = 0; v < n; ++v) {
        if (next < r && draw[static_cast<std::size_t>(next)] == v) {
            ++next;
        } else {
            outside.push_back(v);
        }
    }
    for (std::uint64_t i = 1; i < k; ++i) {
        const std::size_t leave_pos =
            static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(r)));
        const std::size_t enter_pos =
            static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n - r)));
        const int leaving = draw[leave_pos];
        const int fresh = outside[enter_pos];
        outside[enter_pos] = leaving;
        draw.erase(draw.begin() + static_cast<std::ptrdiff_t>(leave_pos));
        draw.insert(std::lower_bound(draw.begin(), draw.end(), fresh), fresh);
        state.mark_containing_sorted(draw, fresh);
    }
    return state.remaining();
}

} // namespace scc
