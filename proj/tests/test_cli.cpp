// Black-box checks of the command-line tool. argv[1] must be the path to the
// supercoupon binary; the build system passes it in.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

std::string g_cli;
int g_tmp_counter = 0;

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CliResult run_cli(const std::string& args) {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() /
                          ("scc_cli_" + std::to_string(++g_tmp_counter));
    const fs::path out_path = base.string() + ".out";
    const fs::path err_path = base.string() + ".err";
    const std::string cmd = "'" + g_cli + "' " + args + " >'" + out_path.string() +
                            "' 2>'" + err_path.string() + "'";
    const int status = std::system(cmd.c_str());
    CliResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = slurp(out_path);
    res.err = slurp(err_path);
    fs::remove(out_path);
    fs::remove(err_path);
    return res;
}

std::filesystem::path temp_file(const std::string& tag) {
    return std::filesystem::temp_directory_path() /
           ("scc_cli_" + tag + "_" + std::to_string(++g_tmp_counter) + ".txt");
}

} // namespace

TEST_CASE("predict emits the first-order prediction") {
    const CliResult r = run_cli("predict --n 500 --r 10 --s 2 --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("schema_version") == 1);
    CHECK(doc.at("command") == "predict");
    bool found = false;
    for (const auto& rec : doc.at("records")) {
        if (rec.at("kind") == "T") {
            found = true;
            CHECK(rec.at("value").get<double>() == doctest::Approx(32529.4).epsilon(1e-3));
            CHECK(rec.at("n") == 500);
        }
    }
    CHECK(found);
}

TEST_CASE("predict rejects invalid parameters") {
    const CliResult r = run_cli("predict --n 10 --r 12 --s 2");
    CHECK(r.exit_code != 0);
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("exact expected T prints the rational 5/2") {
    const CliResult r = run_cli("exact --n 3 --r 2 --s 1 --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.at("records").size() == 1);
    const auto& rec = doc.at("records").at(0);
    CHECK(rec.at("quantity") == "expected_T");
    CHECK(rec.at("rational") == "5/2");
    CHECK(rec.at("decimal").get<double>() == doctest::Approx(2.5));
}

TEST_CASE("exact hitting profile of J(4,2)") {
    const CliResult r = run_cli("exact --n 4 --r 2 --hitting --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    const auto& recs = doc.at("records");
    REQUIRE(recs.size() == 3);
    CHECK(recs.at(0).at("rational") == "6");
    CHECK(recs.at(1).at("rational") == "5");
    CHECK(recs.at(2).at("rational") == "0");
}

TEST_CASE("exact cover-rw value at J(4,2)") {
    const CliResult r = run_cli("exact --n 4 --r 2 --cover-rw --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    const auto& rec = doc.at("records").at(0);
    CHECK(rec.at("quantity") == "cover_rw_T");
    CHECK(rec.at("decimal").get<double>() == doctest::Approx(12.8095238).epsilon(1e-6));
}

TEST_CASE("exact reports the inclusion-exclusion capacity limit") {
    const CliResult r = run_cli("exact --n 8 --r 3 --s 2");
    CHECK(r.exit_code != 0);
    CHECK(r.err.find("22") != std::string::npos);
}

TEST_CASE("exact requires a mode") {
    CHECK(run_cli("exact --n 4 --r 2").exit_code != 0);
}

TEST_CASE("simulate output is reproducible and thread-independent") {
    const std::string base = "simulate --n 30 --r 5 --s 2 --reps 60 --seed 9";
    const CliResult a = run_cli(base + " --threads 1");
    const CliResult b = run_cli(base + " --threads 1");
    const CliResult c = run_cli(base + " --threads 3");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(!a.out.empty());
}

TEST_CASE("simulate writes --output and --raw files") {
    const auto out_path = temp_file("out");
    const auto raw_path = temp_file("raw");
    const std::string base = "simulate --n 20 --r 4 --s 2 --reps 10 --seed 4";
    const CliResult direct = run_cli(base);
    const CliResult filed =
        run_cli(base + " --output '" + out_path.string() + "' --raw '" + raw_path.string() + "'");
    REQUIRE(direct.exit_code == 0);
    REQUIRE(filed.exit_code == 0);
    CHECK(slurp(out_path) == direct.out);
    // raw CSV: header plus one row per replication
    const std::string raw = slurp(raw_path);
    CHECK(std::count(raw.begin(), raw.end(), '\n') == 11);
    CHECK(raw.rfind("rep,", 0) == 0);
    std::filesystem::remove(out_path);
    std::filesystem::remove(raw_path);
}

TEST_CASE("simulate reports the prediction ratio") {
    const CliResult r = run_cli("simulate --n 30 --r 5 --s 2 --reps 40 --seed 2 --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    const auto& rec = doc.at("records").at(0);
    const double mean = rec.at("mean").get<double>();
    const double pred = rec.at("prediction").get<double>();
    const double ratio = rec.at("ratio").get<double>();
    CHECK(ratio == doctest::Approx(mean / pred).epsilon(1e-9));
    CHECK(rec.at("norm_id") == "T");
    CHECK(rec.at("reps") == 40);
}

TEST_CASE("sweep requires --values") {
    CHECK(run_cli("sweep --grid n --r 4 --s 2").exit_code != 0);
}

TEST_CASE("sweep runs an n-grid") {
    const CliResult r =
        run_cli("sweep --grid n --values 20 25 --r 4 --s 2 --reps 20 --seed 3 --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.at("records").size() == 2);
    CHECK(doc.at("records").at(0).at("param") == 20);
    CHECK(doc.at("records").at(1).at("param") == 25);
    for (const auto& rec : doc.at("records")) CHECK(rec.at("ratio").get<double>() > 0);
}

TEST_CASE("gumbel flags degenerate single-replication samples") {
    const CliResult r = run_cli("gumbel --n 20 --r 4 --s 2 --reps 1 --seed 8 --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("records").at(0).at("warning") == "degenerate-sample");
}

TEST_CASE("gumbel writes qq and histogram side files") {
    const auto qq_path = temp_file("qq");
    const auto hist_path = temp_file("hist");
    const CliResult r = run_cli("gumbel --n 20 --r 4 --s 2 --reps 50 --seed 8 --qq '" +
                                qq_path.string() + "' --hist '" + hist_path.string() + "'");
    REQUIRE(r.exit_code == 0);
    const std::string qq = slurp(qq_path);
    const std::string hist = slurp(hist_path);
    CHECK(qq.rfind("p,", 0) == 0);
    CHECK(hist.rfind("bin_lo,", 0) == 0);
    CHECK(std::count(qq.begin(), qq.end(), '\n') == 101); // header + default 100 points
    std::filesystem::remove(qq_path);
    std::filesystem::remove(hist_path);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-supercoupon> [doctest args]\n", argv[0]);
        return 2;
    }
    g_cli = argv[1];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    return ctx.run();
}
