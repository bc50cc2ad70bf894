// supercoupon: prediction, simulation, exact oracles and Gumbel diagnostics
// for the super-coupon collector process, with CSV/JSON output.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scc/analytic.hpp"
#include "scc/mc.hpp"
#include "scc/oracle.hpp"
#include "scc/process.hpp"
#include "scc/stats.hpp"

namespace {

using nlohmann::json;

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// One output table: fixed header, rows of typed cells (number/string/null).
// CSV renders null as an empty field; JSON keeps the typed value.
struct Table {
    std::string command;
    std::vector<std::string> header;
    std::vector<std::vector<json>> rows;

    void add_row(std::vector<json> row) { rows.push_back(std::move(row)); }
};

std::string csv_cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return fmt_g(v.get<double>());
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    return v.dump();
}

void render(const Table& t, const std::string& format, std::ostream& os) {
    if (format == "json") {
        json doc;
        doc["schema_version"] = 1;
        doc["command"] = t.command;
        doc["records"] = json::array();
        for (const auto& row : t.rows) {
            json rec;
            for (std::size_t i = 0; i < t.header.size(); ++i) rec[t.header[i]] = row[i];
            doc["records"].push_back(std::move(rec));
        }
        os << doc.dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < t.header.size(); ++i)
        os << t.header[i] << (i + 1 < t.header.size() ? "," : "\n");
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << csv_cell(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
}

void emit(const Table& t, const std::string& format, const std::string& path) {
    if (path.empty()) {
        render(t, format, std::cout);
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    render(t, format, os);
}

struct CommonOpts {
    int n = 0, r = 0, s = 0;
    double alpha = 0;
    bool has_alpha = false;
    std::string model = "iid";
    std::string rule = "all";
    std::uint64_t reps = 200;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string format = "csv";
    std::string output;
};

scc::ModelKind parse_model(const std::string& m) {
    return m == "rw" ? scc::ModelKind::Rw : scc::ModelKind::Iid;
}

scc::StopRule parse_rule(const CommonOpts& c) {
    if (c.rule == "fraction") {
        if (!c.has_alpha)
            throw std::invalid_argument("--rule fraction needs --alpha");
        return scc::StopRule::fraction(c.alpha);
    }
    return scc::StopRule::all();
}

// Prediction matched to model/rule, with its normalization id. The walk
// values inherit the conjecture status of the (r/s) factor.
std::pair<scc::Prediction, std::string> matched_prediction(int n, int r, int s,
                                                           scc::ModelKind model,
                                                           const scc::StopRule& rule) {
    if (rule.kind() == scc::StopRule::Kind::All) {
        if (model == scc::ModelKind::Iid) return {scc::predicted_T(n, r, s), "T"};
        return {scc::predicted_T_rw(n, r, s), "T_rw"};
    }
    scc::Prediction p = scc::predicted_T_alpha(n, r, s, rule.alpha());
    if (model == scc::ModelKind::Rw) {
        p.value *= static_cast<double>(r) / static_cast<double>(s);
        p.conjecture = true;
        return {p, "T_rw_alpha"};
    }
    return {p, "T_alpha"};
}

// Figure normalization constants (first-order in n):
//   fig1: n^s log n / ((s-1)! C(r,s))          collect-all trend
//   fig2: n^s log(1/alpha) / (s! C(r,s))       fraction trend
//   fig4: (r/s) n^s log n / ((s-1)! C(r,s))    walk trend; n^2 log n/(r-1) at s=2
double fig_norm(const std::string& id, int n, int r, int s, bool has_alpha, double alpha) {
    const double b = scc::binomial_d(r, s);
    if (id == "fig1") return std::pow(n, s) * std::log(n) / (std::tgamma(s) * b);
    if (id == "fig2") {
        if (!has_alpha) throw std::invalid_argument("--fig-norm fig2 needs --alpha");
        return std::pow(n, s) * std::log(1 / alpha) / (std::tgamma(s + 1) * b);
    }
    if (id == "fig4")
        return static_cast<double>(r) / s * std::pow(n, s) * std::log(n) /
               (std::tgamma(s) * b);
    throw std::invalid_argument("unknown figure normalization: " + id);
}

int cmd_predict(const CommonOpts& c) {
    Table t;
    t.command = "predict";
    t.header = {"kind", "n", "r", "s", "alpha", "value", "asymptotic", "conjecture"};
    auto push = [&](const char* kind, const scc::Prediction& p, bool with_alpha) {
        t.add_row({kind, p.n, p.r, p.s, with_alpha ? json(p.alpha) : json(nullptr), p.value,
                   true, p.conjecture});
    };
    push("T", scc::predicted_T(c.n, c.r, c.s), false);
    if (c.has_alpha) push("T_alpha", scc::predicted_T_alpha(c.n, c.r, c.s, c.alpha), true);
    if (c.r < c.n) push("T_rw", scc::predicted_T_rw(c.n, c.r, c.s), false);
    emit(t, c.format, c.output);
    return 0;
}

int cmd_simulate(const CommonOpts& c, const std::string& raw_path) {
    const scc::ModelParams params(c.n, c.r, c.s);
    const scc::StopRule rule = parse_rule(c);
    const scc::ModelKind model = parse_model(c.model);
    const auto [pred, norm_id] = matched_prediction(c.n, c.r, c.s, model, rule);

    scc::McOptions opts;
    opts.reps = c.reps;
    opts.master_seed = c.seed;
    opts.threads = c.threads;
    const std::vector<scc::RunResult> results = scc::simulate_many(params, rule, model, opts);
    const std::vector<double> rounds = scc::rounds_as_doubles(results);
    const scc::McSummary sum = scc::summarize(rounds);

    Table t;
    t.command = "simulate";
    t.header = {"model", "rule", "n",   "r",   "s",          "alpha", "reps",    "mean",
                "stderr", "min", "max", "prediction", "ratio", "norm_id", "seed"};
    t.add_row({c.model, c.rule, c.n, c.r, c.s,
               rule.kind() == scc::StopRule::Kind::Fraction ? json(rule.alpha()) : json(nullptr),
               sum.reps, sum.mean, sum.std_err, sum.min, sum.max, pred.value,
               sum.mean / pred.value, norm_id, c.seed});
    emit(t, c.format, c.output);

    if (!raw_path.empty()) {
        Table raw;
        raw.command = "simulate-raw";
        raw.header = {"rep", "rounds", "stream_seed"};
        for (const scc::RunResult& r : results)
            raw.add_row({r.seed.index, r.rounds, r.seed.stream});
        emit(raw, c.format, raw_path);
    }
    return 0;
}

int cmd_sweep(const CommonOpts& c, const std::string& grid, const std::vector<int>& values,
              const std::string& fig) {
    if (values.empty()) throw std::invalid_argument("--values must list at least one grid point");
    const scc::StopRule rule = parse_rule(c);
    const scc::ModelKind model = parse_model(c.model);

    Table t;
    t.command = "sweep";
    t.header = {"grid", "param", "reps", "mean", "stderr", "prediction", "ratio", "norm_id"};
    for (int v : values) {
        const int n = grid == "n" ? v : c.n;
        const int r = grid == "r" ? v : c.r;
        const scc::ModelParams params(n, r, c.s);
        scc::McOptions opts;
        opts.reps = c.reps;
        opts.master_seed = c.seed;
        opts.threads = c.threads;
        const scc::McSummary sum =
            scc::summarize(scc::rounds_as_doubles(scc::simulate_many(params, rule, model, opts)));
        double pred;
        std::string norm_id;
        if (fig.empty()) {
            auto [p, id] = matched_prediction(n, r, c.s, model, rule);
            pred = p.value;
            norm_id = id;
        } else {
            pred = fig_norm(fig, n, r, c.s, c.has_alpha, c.alpha);
            norm_id = fig;
        }
        t.add_row({grid, v, sum.reps, sum.mean, sum.std_err, pred, sum.mean / pred, norm_id});
    }
    emit(t, c.format, c.output);
    return 0;
}

int cmd_exact(const CommonOpts& c, bool has_s, bool hitting, bool matthews, bool cover_rw) {
    if (!has_s && !hitting && !matthews && !cover_rw)
        throw std::invalid_argument(
            "exact needs --s (expected stopping time) or one of --hitting/--matthews/--cover-rw");

    Table t;
    t.command = "exact";
    t.header = {"quantity", "n", "r", "s", "k", "rational", "decimal"};
    if (has_s) {
        const scc::Rational et = scc::exact_expected_T(c.n, c.r, c.s);
        t.add_row({"expected_T", c.n, c.r, c.s, nullptr, scc::rational_to_string(et),
                   scc::rational_to_double(et)});
    }
    if (hitting) {
        const scc::HittingProfile hp = scc::hitting_profile(c.n, c.r);
        for (int k = hp.k_min; k <= hp.r; ++k)
            t.add_row({"hitting_h", c.n, c.r, nullptr, k, scc::rational_to_string(hp.at(k)),
                       hp.at_d(k)});
    }
    if (matthews) {
        const scc::CoverBounds cb = scc::matthews_bounds(c.n, c.r);
        t.add_row({"matthews_lower", c.n, c.r, nullptr, nullptr, nullptr, cb.lower});
        t.add_row({"matthews_upper", c.n, c.r, nullptr, nullptr, nullptr, cb.upper});
        t.add_row({"matthews_harmonic", c.n, c.r, nullptr, nullptr, nullptr, cb.harmonic});
    }
    if (cover_rw) {
        const double v = scc::exact_T_rw_rs(c.n, c.r);
        t.add_row({"cover_rw_T", c.n, c.r, c.r, nullptr, nullptr, v});
    }
    emit(t, c.format, c.output);
    return 0;
}

int cmd_gumbel(const CommonOpts& c, int bins, int points, const std::string& qq_path,
               const std::string& hist_path) {
    const scc::ModelParams params(c.n, c.r, c.s);
    scc::McOptions opts;
    opts.reps = c.reps;
    opts.master_seed = c.seed;
    opts.threads = c.threads;
    const std::vector<scc::RunResult> results =
        scc::simulate_many(params, scc::StopRule::all(), scc::ModelKind::Iid, opts);

    std::vector<double> norm;
    norm.reserve(results.size());
    for (const scc::RunResult& r : results)
        norm.push_back(scc::normalize_T(static_cast<double>(r.rounds), c.n, c.r, c.s));

    const scc::McSummary sum = scc::summarize(norm);
    const double ks = scc::ks_distance(norm, scc::gumbel_cdf);
    const double sd = sum.std_err * std::sqrt(static_cast<double>(sum.reps));

    Table t;
    t.command = "gumbel";
    t.header = {"n",  "r",  "s",  "reps", "ks",
                "mean_norm", "sd_norm", "gumbel_mean_ref", "seed", "warning"};
    t.add_row({c.n, c.r, c.s, sum.reps, ks, sum.mean, sd, scc::kEulerGamma, c.seed,
               sum.low_reps ? json("degenerate-sample") : json(nullptr)});
    emit(t, c.format, c.output);

    if (!qq_path.empty()) {
        Table qq;
        qq.command = "gumbel-qq";
        qq.header = {"p", "empirical_q", "gumbel_q"};
        for (const scc::QuantilePair& q :
             scc::quantile_pairs(norm, scc::gumbel_quantile, points))
            qq.add_row({q.p, q.empirical, q.reference});
        emit(qq, c.format, qq_path);
    }
    if (!hist_path.empty()) {
        Table ht;
        ht.command = "gumbel-hist";
        ht.header = {"bin_lo", "bin_hi", "count", "density"};
        for (const scc::HistogramBin& b : scc::histogram(norm, bins))
            ht.add_row({b.lo, b.hi, b.count, b.density});
        emit(ht, c.format, hist_path);
    }
    return 0;
}

void add_output_opts(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output", c.output, "Write data to this file instead of stdout");
}

void add_mc_opts(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--reps", c.reps, "Replications")->capture_default_str();
    cmd->add_option("--seed", c.seed, "64-bit master seed")->capture_default_str();
    cmd->add_option("--threads", c.threads,
                    "Worker threads (0 = SUPERCOUPON_THREADS or hardware default)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"super-coupon collector laboratory"};
    app.require_subcommand(1);
    CommonOpts c;

    CLI::App* predict = app.add_subcommand("predict", "First-order stopping-time predictions");
    predict->add_option("--n", c.n, "Universe size")->required();
    predict->add_option("--r", c.r, "Draw size")->required();
    predict->add_option("--s", c.s, "Super-coupon size")->required();
    CLI::Option* pred_alpha = predict->add_option("--alpha", c.alpha, "Fraction-rule alpha");
    add_output_opts(predict, c);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo stopping times");
    simulate->add_option("--n", c.n, "Universe size")->required();
    simulate->add_option("--r", c.r, "Draw size")->required();
    simulate->add_option("--s", c.s, "Super-coupon size")->required();
    simulate->add_option("--model", c.model, "Dynamics")
        ->check(CLI::IsMember({"iid", "rw"}))
        ->capture_default_str();
    simulate->add_option("--rule", c.rule, "Stopping rule")
        ->check(CLI::IsMember({"all", "fraction"}))
        ->capture_default_str();
    CLI::Option* sim_alpha = simulate->add_option("--alpha", c.alpha, "Fraction-rule alpha");
    add_mc_opts(simulate, c);
    add_output_opts(simulate, c);
    std::string raw_path;
    simulate->add_option("--raw", raw_path, "Also write per-replication stopping times here");

    CLI::App* sweep = app.add_subcommand("sweep", "Simulate over a grid of n or r");
    std::string grid;
    std::vector<int> values;
    std::string fig;
    sweep->add_option("--grid", grid, "Swept parameter")
        ->check(CLI::IsMember({"n", "r"}))
        ->required();
    sweep->add_option("--values", values, "Grid points")->required()->expected(1, -1);
    sweep->add_option("--n", c.n, "Universe size (fixed when sweeping r)");
    sweep->add_option("--r", c.r, "Draw size (fixed when sweeping n)");
    sweep->add_option("--s", c.s, "Super-coupon size")->required();
    sweep->add_option("--model", c.model, "Dynamics")
        ->check(CLI::IsMember({"iid", "rw"}))
        ->capture_default_str();
    sweep->add_option("--rule", c.rule, "Stopping rule")
        ->check(CLI::IsMember({"all", "fraction"}))
        ->capture_default_str();
    CLI::Option* sweep_alpha = sweep->add_option("--alpha", c.alpha, "Fraction-rule alpha");
    sweep->add_option("--fig-norm", fig, "Normalize by a figure constant instead of the prediction")
        ->check(CLI::IsMember({"fig1", "fig2", "fig4"}));
    add_mc_opts(sweep, c);
    add_output_opts(sweep, c);

    CLI::App* exact = app.add_subcommand("exact", "Exact oracle quantities");
    exact->add_option("--n", c.n, "Universe size")->required();
    exact->add_option("--r", c.r, "Draw size")->required();
    CLI::Option* exact_s =
        exact->add_option("--s", c.s, "Super-coupon size (emits exact expected T)");
    bool hitting = false, matthews = false, cover_rw = false;
    exact->add_flag("--hitting", hitting, "Johnson-graph hitting-time profile");
    exact->add_flag("--matthews", matthews, "Matthews cover-time sandwich");
    exact->add_flag("--cover-rw", cover_rw, "Exact walk stopping time at r = s (toy sizes)");
    add_output_opts(exact, c);

    CLI::App* gumbel = app.add_subcommand("gumbel", "Gumbel-limit diagnostics (iid, collect-all)");
    gumbel->add_option("--n", c.n, "Universe size")->required();
    gumbel->add_option("--r", c.r, "Draw size")->required();
    gumbel->add_option("--s", c.s, "Super-coupon size")->required();
    int bins = 30, points = 100;
    std::string qq_path, hist_path;
    gumbel->add_option("--bins", bins, "Histogram bins")->capture_default_str();
    gumbel->add_option("--points", points, "Quantile pairs")->capture_default_str();
    gumbel->add_option("--qq", qq_path, "Write quantile pairs (Q-Q table) here");
    gumbel->add_option("--hist", hist_path, "Write the normalized histogram here");
    add_mc_opts(gumbel, c);
    add_output_opts(gumbel, c);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*predict) {
            c.has_alpha = pred_alpha->count() > 0;
            return cmd_predict(c);
        }
        if (*simulate) {
            c.has_alpha = sim_alpha->count() > 0;
            return cmd_simulate(c, raw_path);
        }
        if (*sweep) {
            c.has_alpha = sweep_alpha->count() > 0;
            return cmd_sweep(c, grid, values, fig);
        }
        if (*exact) return cmd_exact(c, exact_s->count() > 0, hitting, matthews, cover_rw);
        if (*gumbel) return cmd_gumbel(c, bins, points, qq_path, hist_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
