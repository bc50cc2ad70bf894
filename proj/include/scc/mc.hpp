#pragma once

#include <cstdint>
#include <vector>

#include "scc/process.hpp"

namespace scc {

struct McOptions {
    std::uint64_t reps = 200;
    std::uint64_t master_seed = 0;
    int threads = 0; // 0 = resolve from SUPERCOUPON_THREADS, else OpenMP default
};

// Effective thread count: explicit request wins, then the SUPERCOUPON_THREADS
// environment variable, then the OpenMP runtime default (1 without OpenMP).
int resolve_threads(int requested);

// Run `opts.reps` independent replications. Replication i always uses
// stream_seed(master_seed, i), and results are stored at index i, so the
// output is identical for every thread count.
std::vector<RunResult> simulate_many(const ModelParams& params, const StopRule& rule,
                                     ModelKind model, const McOptions& opts);
std::vector<RunResult> simulate_many_serial(const ModelParams& params, const StopRule& rule,
                                            ModelKind model, const McOptions& opts);

// Replicated draws of N_k, the count of uncollected super-coupons after k
// rounds. Same seeding contract as simulate_many.
std::vector<std::uint64_t> sample_nk_many(const ModelParams& params, std::uint64_t k,
                                          ModelKind model, const McOptions& opts);
std::vector<std::uint64_t> sample_nk_many_serial(const ModelParams& params, std::uint64_t k,
                                                 ModelKind model, const McOptions& opts);

std::vector<double> rounds_as_doubles(const std::vector<RunResult>& results);

} // namespace scc
