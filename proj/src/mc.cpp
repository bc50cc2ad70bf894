#include "scc/mc.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace scc {

namespace {

int env_threads() {
    const char* raw = std::getenv("SUPERCOUPON_THREADS");
    if (raw == nullptr) return 0;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 1 || v > 4096) return 0; // malformed: ignore
    return static_cast<int>(v);
}

// Runs body(i) for i in [0, reps), parallel when threads > 1, with the first
// thrown exception captured and rethrown on the calling thread.
template <typename Body>
void replicate(std::uint64_t reps, int threads, Body&& body) {
    if (threads <= 1) {
        for (std::uint64_t i = 0; i < reps; ++i) body(i);
        return;
    }
    std::exception_ptr error = nullptr;
    std::atomic<bool> failed{false};
    const std::int64_t count = static_cast<std::int64_t>(reps);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::int64_t i = 0; i < count; ++i) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            body(static_cast<std::uint64_t>(i));
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(scc_mc_error)
#endif
            {
                if (!error) error = std::current_exception();
            }
            failed.store(true, std::memory_order_relaxed);
        }
    }
    if (error) std::rethrow_exception(error);
}

} // namespace

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const int env = env_threads(); env > 0) return env;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::vector<RunResult> simulate_many(const ModelParams& params, const StopRule& rule,
                                     ModelKind model, const McOptions& opts) {
    std::vector<RunResult> results(opts.reps);
    replicate(opts.reps, resolve_threads(opts.threads), [&](std::uint64_t i) {
        const std::uint64_t seed = stream_seed(opts.master_seed, i);
        Rng rng(seed);
        const SeedRecord record{opts.master_seed, i, seed};
        results[i] = model == ModelKind::Iid ? run_iid(params, rule, rng, record)
                                             : run_rw(params, rule, rng, record);
    });
    return results;
}

std::vector<RunResult> simulate_many_serial(const ModelParams& params, const StopRule& rule,
                                            ModelKind model, const McOptions& opts) {
    McOptions serial = opts;
    serial.threads = 1;
    return simulate_many(params, rule, model, serial);
}

std::vector<std::uint64_t> sample_nk_many(const ModelParams& params, std::uint64_t k,
                                          ModelKind model, const McOptions& opts) {
    std::vector<std::uint64_t> results(opts.reps);
    replicate(opts.reps, resolve_threads(opts.threads), [&](std::uint64_t i) {
        Rng rng(stream_seed(opts.master_seed, i));
        results[i] = sample_N_k(params, k, model, rng);
    });
    return results;
}

std::vector<std::uint64_t> sample_nk_many_serial(const ModelParams& params, std::uint64_t k,
                                                 ModelKind model, const McOptions& opts) {
    McOptions serial = opts;
    serial.threads = 1;
    return sample_nk_many(params, k, model, serial);
}

std::vector<double> rounds_as_doubles(const std::vector<RunResult>& results) {
    std::vector<double> out;
    out.reserve(results.size());
    for (const RunResult& r : results) out.push_back(static_cast<double>(r.rounds));
    return out;
}

} // namespace scc
