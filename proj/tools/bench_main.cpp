// Serial vs parallel throughput of the replication kernels, plus a check
// that both produce identical results.

#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "scc/mc.hpp"
#include "scc/stats.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"replication kernel benchmark"};
    int n = 60, r = 10, s = 2, threads = 0;
    std::uint64_t reps = 200, seed = 1;
    std::string model = "iid";
    app.add_option("--n", n)->capture_default_str();
    app.add_option("--r", r)->capture_default_str();
    app.add_option("--s", s)->capture_default_str();
    app.add_option("--reps", reps)->capture_default_str();
    app.add_option("--seed", seed)->capture_default_str();
    app.add_option("--model", model)->check(CLI::IsMember({"iid", "rw"}))->capture_default_str();
    app.add_option("--threads", threads, "parallel worker count (0 = runtime default)");
    CLI11_PARSE(app, argc, argv);

    try {
        const scc::ModelParams params(n, r, s);
        const scc::ModelKind kind = model == "rw" ? scc::ModelKind::Rw : scc::ModelKind::Iid;
        scc::McOptions opts;
        opts.reps = reps;
        opts.master_seed = seed;
        opts.threads = threads;

        auto t0 = std::chrono::steady_clock::now();
        const auto serial = scc::simulate_many_serial(params, scc::StopRule::all(), kind, opts);
        const double t_serial = seconds_since(t0);

        const int workers = scc::resolve_threads(threads);
        t0 = std::chrono::steady_clock::now();
        const auto parallel = scc::simulate_many(params, scc::StopRule::all(), kind, opts);
        const double t_parallel = seconds_since(t0);

        bool identical = serial.size() == parallel.size();
        for (std::size_t i = 0; identical && i < serial.size(); ++i)
            identical = serial[i].rounds == parallel[i].rounds;
        const scc::McSummary sum = scc::summarize(scc::rounds_as_doubles(serial));

        std::printf("model=%s n=%d r=%d s=%d reps=%llu mean_rounds=%.2f\n", model.c_str(), n, r,
                    s, static_cast<unsigned long long>(reps), sum.mean);
        std::printf("%-10s %8s %12s %10s\n", "variant", "threads", "seconds", "reps/s");
        std::printf("%-10s %8d %12.4f %10.1f\n", "serial", 1, t_serial,
                    static_cast<double>(reps) / t_serial);
        std::printf("%-10s %8d %12.4f %10.1f\n", "parallel", workers, t_parallel,
                    static_cast<double>(reps) / t_parallel);
        std::printf("speedup: %.2fx, results identical: %s\n", t_serial / t_parallel,
                    identical ? "yes" : "NO");
        return identical ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
