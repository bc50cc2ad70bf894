#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "scc/mc.hpp"
#include "scc/process.hpp"
#include "scc/rng.hpp"

using namespace scc;

namespace {

bool same_results(const std::vector<RunResult>& a, const std::vector<RunResult>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].rounds != b[i].rounds) return false;
        if (a[i].seed.master != b[i].seed.master) return false;
        if (a[i].seed.index != b[i].seed.index) return false;
        if (a[i].seed.stream != b[i].seed.stream) return false;
    }
    return true;
}

} // namespace

TEST_CASE("parallel replication matches serial exactly") {
    const ModelParams params(12, 4, 2);
    for (ModelKind model : {ModelKind::Iid, ModelKind::Rw}) {
        McOptions serial_opts;
        serial_opts.reps = 500;
        serial_opts.master_seed = 2024;
        const auto serial =
            simulate_many_serial(params, StopRule::all(), model, serial_opts);
        REQUIRE(serial.size() == 500);
        for (std::size_t i = 0; i < serial.size(); ++i) {
            CHECK(serial[i].seed.index == i);
            CHECK(serial[i].seed.stream == stream_seed(2024, i));
        }
        for (int threads : {2, 4, 8}) {
            McOptions opts = serial_opts;
            opts.threads = threads;
            const auto parallel = simulate_many(params, StopRule::all(), model, opts);
            CHECK(same_results(serial, parallel));
        }
    }
}

TEST_CASE("parallel N_k sampling matches serial exactly") {
    const ModelParams params(12, 4, 2);
    McOptions opts;
    opts.reps = 400;
    opts.master_seed = 555;
    const auto serial = sample_nk_many_serial(params, 25, ModelKind::Iid, opts);
    for (int threads : {2, 4, 8}) {
        opts.threads = threads;
        CHECK(sample_nk_many(params, 25, ModelKind::Iid, opts) == serial);
    }
}

TEST_CASE("resolve_threads precedence") {
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(1) == 1);

    setenv("SUPERCOUPON_THREADS", "5", 1);
    CHECK(resolve_threads(0) == 5);
    CHECK(resolve_threads(2) == 2); // explicit request wins

    setenv("SUPERCOUPON_THREADS", "abc", 1);
    CHECK(resolve_threads(0) >= 1); // malformed value ignored

    setenv("SUPERCOUPON_THREADS", "0", 1);
    CHECK(resolve_threads(0) >= 1); // out-of-range value ignored

    unsetenv("SUPERCOUPON_THREADS");
    CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("exceptions inside replications propagate") {
    McOptions opts;
    opts.reps = 64;
    opts.threads = 4;
    // r = n is invalid for the one-swap walk; the throw happens inside the
    // parallel region and must surface on the calling thread
    CHECK_THROWS_AS(simulate_many(ModelParams(3, 3, 1), StopRule::all(), ModelKind::Rw, opts),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_nk_many(ModelParams(3, 3, 1), 4, ModelKind::Rw, opts),
                    std::invalid_argument);
}
