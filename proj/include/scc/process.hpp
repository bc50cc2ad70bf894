#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scc/combinat.hpp"
#include "scc/rng.hpp"

namespace scc {

// The model triple (n, r, s). The constructor enforces 1 <= s <= r <= n and
// that C(n, s) fits the 64-bit rank width.
struct ModelParams {
    int n = 0, r = 0, s = 0;
    std::uint64_t super_count = 0; // m = C(n, s)
    std::uint64_t round_yield = 0; // b = C(r, s)

    ModelParams() = default;
    ModelParams(int n, int r, int s);
};

enum class ModelKind { Iid, Rw };

class StopRule {
public:
    enum class Kind { All, Fraction };

    static StopRule all() { return StopRule(Kind::All, 0.0); }
    // alpha strictly inside (0, 1).
    static StopRule fraction(double alpha);

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }

    // Collected-count threshold: m for All, ceil((1 - alpha) m) for Fraction.
    std::uint64_t target(std::uint64_t m) const;

    friend bool operator==(const StopRule&, const StopRule&) = default;

private:
    StopRule(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {}
    Kind kind_ = Kind::All;
    double alpha_ = 0;
};

// Coverage of the C(n, s) super-coupons as a dense bit-vector indexed by
// colex rank, plus the running count of set bits. Single-owner: replications
// each hold their own state.
class CollectionState {
public:
    explicit CollectionState(const ModelParams& params);

    const ModelParams& params() const { return params_; }
    const ColexRanker& ranker() const { return ranker_; }
    std::uint64_t collected() const { return count_; }
    std::uint64_t remaining() const { return params_.super_count - count_; }
    bool test(SubsetRank rank) const {
        return (bits_[rank >> 6] >> (rank & 63)) & 1u;
    }

    // Marks every s-subset of the r-subset `h`; returns how many were new.
    // Validates h against the params.
    std::uint64_t mark_round(const CouponSet& h);

    // Trusted fast path: `draw` strictly increasing, in range, size r.
    std::uint64_t mark_round_sorted(std::span<const int> draw);

    // Marks only the s-subsets of `draw` containing `fresh`. Valid for the
    // one-swap walk: every other s-subset of the new draw was already a
    // subset of the previous one.
    std::uint64_t mark_containing_sorted(std::span<const int> draw, int fresh);

private:
    bool set_bit(SubsetRank rank) {
        std::uint64_t& word = bits_[rank >> 6];
        const std::uint64_t mask = 1ULL << (rank & 63);
        if (word & mask) return false;
        word |= mask;
        ++count_;
        return true;
    }

    ModelParams params_;
    ColexRanker ranker_;
    std::vector<std::uint64_t> bits_;
    std::uint64_t count_ = 0;
    // marking scratch: index odometer, non-fresh draw elements, merged subset
    std::vector<int> comb_, others_, merged_;
};

// Provenance of one replication's rng stream.
struct SeedRecord {
    std::uint64_t master = 0;
    std::uint64_t index = 0;
    std::uint64_t stream = 0;
};

struct RunResult {
    std::uint64_t rounds = 0; // stopping time, first round is 1
    StopRule rule = StopRule::all();
    ModelKind model = ModelKind::Iid;
    SeedRecord seed;
};

// Rounds cap of the safety valve: max(1000, ceil(1000 * first-order
// prediction for this model/rule)). Runs exceeding it abort with a
// diagnostic std::runtime_error.
std::uint64_t safety_cap(const ModelParams& params, const StopRule& rule, ModelKind model);

// IID dynamics: each round draws a uniform r-subset and marks its s-subsets.
// Returns the first round (counted from 1) at which the rule's target is met.
RunResult run_iid(const ModelParams& params, const StopRule& rule, Rng& rng,
                  const SeedRecord& seed = {});

// One step of the Markovian dynamics: a uniform element of h is replaced by
// a uniform element of the complement. Requires |h| < n.
CouponSet rw_step(const CouponSet& h, int n, Rng& rng);

// Markovian dynamics: round 1 draws H_1 uniformly and marks it; each later
// round applies one swap step and marks. Requires r < n.
RunResult run_rw(const ModelParams& params, const StopRule& rule, Rng& rng,
                 const SeedRecord& seed = {});

// Runs exactly k rounds of the chosen dynamics and returns
// N_k = C(n, s) - collected.
std::uint64_t sample_N_k(const ModelParams& params, std::uint64_t k, ModelKind model,
                         Rng& rng);

} // namespace scc
