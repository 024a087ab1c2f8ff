#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qmc/point_set.hpp"
#include "qmc/pointgen.hpp"

using namespace qmc;

namespace {

std::string cli_path() {
    const char* p = std::getenv("QMCKIT_CLI");
    return p ? p : "tools/qmckit_cli";
}

int run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args;
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("gen writes the documented format") {
    REQUIRE(run("gen fibonacci --n 10 -o /tmp/qmccli_f10.pts > /dev/null") == 0);
    const PointSet ps = read_point_set("/tmp/qmccli_f10.pts");
    REQUIRE(ps.size() == 89);
    REQUIRE(ps.dim() == 2);
    // round trip is exact: file coordinates match the in-memory generator
    const PointSet direct = fibonacci_set(10);
    REQUIRE(ps.raw() == direct.raw());

    REQUIRE(run("gen frolov --d 2 --a 8 -o /tmp/qmccli_fr.pts > /dev/null") == 0);
    const PointSet fr = read_point_set("/tmp/qmccli_fr.pts");
    REQUIRE(fr.size() > 0);
}

TEST_CASE("seeded generation is byte identical") {
    REQUIRE(run("gen random --m 100 --d 3 --seed 7 -o /tmp/qmccli_r1.pts > /dev/null") == 0);
    REQUIRE(run("gen random --m 100 --d 3 --seed 7 -o /tmp/qmccli_r2.pts > /dev/null") == 0);
    REQUIRE(run("--threads 8 gen random --m 100 --d 3 --seed 7 -o /tmp/qmccli_r3.pts "
                "> /dev/null") == 0);
    const std::string a = slurp("/tmp/qmccli_r1.pts");
    REQUIRE(!a.empty());
    REQUIRE(a == slurp("/tmp/qmccli_r2.pts"));
    REQUIRE(a == slurp("/tmp/qmccli_r3.pts"));
}

TEST_CASE("randomized commands demand a seed") {
    REQUIRE(run("gen random --m 5 --d 2 -o /tmp/qmccli_ns.pts 2> /dev/null") == 2);
    REQUIRE(run("metric lq -i /tmp/qmccli_f10.pts --q 2 2> /dev/null") == 1);
    REQUIRE(run("universal -i /tmp/qmccli_f10.pts --n 2 2> /dev/null") == 1);
}

TEST_CASE("metrics run and print values") {
    REQUIRE(run("gen fibonacci --n 8 -o /tmp/qmccli_f8.pts > /dev/null") == 0);
    REQUIRE(run("metric star -i /tmp/qmccli_f8.pts > /tmp/qmccli_star.txt") == 0);
    const std::string out = slurp("/tmp/qmccli_star.txt");
    REQUIRE(out.find("star = ") != std::string::npos);
    const double v = std::stod(out.substr(out.find("= ") + 2));
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);

    REQUIRE(run("metric dispersion -i /tmp/qmccli_f8.pts > /tmp/qmccli_d.txt") == 0);
    REQUIRE(slurp("/tmp/qmccli_d.txt").find("n*disp") != std::string::npos);

    REQUIRE(run("metric wce -i /tmp/qmccli_f8.pts --r 1 --tol 1e-4 > /tmp/qmccli_w.txt") == 0);
    REQUIRE(slurp("/tmp/qmccli_w.txt").find("tail:") != std::string::npos);

    REQUIRE(run("metric l2star -i /tmp/qmccli_f8.pts > /dev/null") == 0);
    REQUIRE(run("metric rdisc2 -i /tmp/qmccli_f8.pts --r 2 > /dev/null") == 0);
    REQUIRE(run("metric lq -i /tmp/qmccli_f8.pts --q 2 --samples 2000 --seed 4 "
                "> /dev/null") == 0);
    REQUIRE(run("metric smooth -i /tmp/qmccli_f8.pts --r 2 --budget 128 > /dev/null") == 0);
    REQUIRE(run("metric fixedvol -i /tmp/qmccli_f8.pts --r 2 --volume 0.25 --budget 128 "
                "> /dev/null") == 0);
    REQUIRE(run("metric periodic -i /tmp/qmccli_f8.pts --r 2 --zgrid 6 --ugrid 5 "
                "> /dev/null") == 0);
    REQUIRE(run("metric diaphony -i /tmp/qmccli_f8.pts > /dev/null") == 0);

    // report rows append as JSON lines
    std::remove("/tmp/qmccli_rows.jsonl");
    REQUIRE(run("metric star -i /tmp/qmccli_f8.pts --report /tmp/qmccli_rows.jsonl "
                "> /dev/null") == 0);
    REQUIRE(run("metric l2star -i /tmp/qmccli_f8.pts --report /tmp/qmccli_rows.jsonl "
                "> /dev/null") == 0);
    const std::string rows = slurp("/tmp/qmccli_rows.jsonl");
    REQUIRE(std::count(rows.begin(), rows.end(), '\n') == 2);
    REQUIRE(rows.find("\"metric\":\"star\"") != std::string::npos);
    REQUIRE(rows.find("\"metric\":\"l2star\"") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    REQUIRE(run("metric nosuch -i /tmp/qmccli_f10.pts 2> /dev/null") == 2);
    REQUIRE(run("metric star 2> /dev/null") == 2);         // missing -i
    REQUIRE(run("nosuchcommand 2> /dev/null") == 2);
    // dimension mismatch is a precondition failure, not usage
    REQUIRE(run("gen random --m 6 --d 3 --seed 2 -o /tmp/qmccli_r3d.pts > /dev/null") == 0);
    REQUIRE(run("metric dispersion -i /tmp/qmccli_r3d.pts > /dev/null") == 0);
}

TEST_CASE("experiment configs drive reports and summaries") {
    {
        std::ofstream cfg("/tmp/qmccli_rate.cfg");
        cfg << "# fibonacci integration rate\n"
            << "experiment = rate\nfamily = fibonacci\nr = 1\nsizes = 8,10,12\n"
            << "output = /tmp/qmccli_rate.jsonl\ncsv = /tmp/qmccli_rate.csv\n";
    }
    REQUIRE(run("experiment /tmp/qmccli_rate.cfg > /dev/null") == 0);
    const std::string csv = slurp("/tmp/qmccli_rate.csv");
    REQUIRE(csv.find("family,size,metric,value,slope") != std::string::npos);
    REQUIRE(csv.find("wce_slope") != std::string::npos);

    // byte-identical rerun
    REQUIRE(run("--threads 8 experiment /tmp/qmccli_rate.cfg > /dev/null") == 0);
    REQUIRE(slurp("/tmp/qmccli_rate.csv") == csv);

    // malformed config: exit 2 and no report written
    {
        std::ofstream cfg("/tmp/qmccli_bad.cfg");
        cfg << "experiment = rate\nfamily = fibonacci\nbogus_key = 1\n"
            << "output = /tmp/qmccli_bad.jsonl\n";
    }
    std::remove("/tmp/qmccli_bad.jsonl");
    REQUIRE(run("experiment /tmp/qmccli_bad.cfg 2> /dev/null") == 2);
    REQUIRE(slurp("/tmp/qmccli_bad.jsonl").empty());
}

TEST_CASE("every shipped config runs clean") {
    namespace fs = std::filesystem;
    const fs::path configs = fs::path(__FILE__).parent_path().parent_path() / "configs";
    REQUIRE(fs::exists(configs));
    std::size_t count = 0;
    for (const auto& entry : fs::directory_iterator(configs)) {
        if (entry.path().extension() != ".cfg") continue;
        ++count;
        // relative output paths in the configs land in the scratch directory
        const std::string cmd = "cd /tmp && " + cli_path() + " experiment " +
                                entry.path().string() + " > /dev/null";
        INFO(entry.path().string());
        REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    }
    REQUIRE(count >= 5);
}

TEST_CASE("greedy and universal subcommands") {
    REQUIRE(run("greedy --kernel cos --m 32 --candidates 128 --grid 128 "
                "--trace /tmp/qmccli_trace.jsonl > /tmp/qmccli_greedy.txt") == 0);
    REQUIRE(slurp("/tmp/qmccli_greedy.txt").find("discrepancy") != std::string::npos);
    const std::string trace = slurp("/tmp/qmccli_trace.jsonl");
    REQUIRE(std::count(trace.begin(), trace.end(), '\n') == 32);
    REQUIRE(trace.find("\"eps\"") != std::string::npos);

    REQUIRE(run("gen corput --level 5 -o /tmp/qmccli_c5.pts > /dev/null") == 0);
    REQUIRE(run("universal -i /tmp/qmccli_c5.pts --n 2 --trials 5 --seed 1 "
                "> /tmp/qmccli_u.txt") == 0);
    REQUIRE(slurp("/tmp/qmccli_u.txt").find("c1_hat") != std::string::npos);
}
