// End-to-end checks of the command-line front end, run against the built
// binary (path injected by the build).

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

const fs::path kScratch = fs::temp_directory_path() / "bass_cli_tests";

int run_cli(const std::string& args) {
    const std::string cmd = std::string(BASS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct ScratchDir {
    ScratchDir() {
        fs::remove_all(kScratch);
        fs::create_directories(kScratch);
    }
};

std::string path(const std::string& name) { return (kScratch / name).string(); }

void write_sine_csv(const fs::path& p, int n, bool with_duplicates = false) {
    std::ofstream out(p);
    out << "t,y\n";
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        out << t << "," << 2.0 * t * t - t << "\n";
        if (with_duplicates && i % 3 == 0)
            out << t << "," << 2.0 * t * t - t + 0.05 << "\n";
    }
}

} // namespace

TEST_CASE("fit happy path writes curve and summary") {
    const ScratchDir scratch;
    write_sine_csv(path("d.csv"), 24);
    const int code = run_cli("fit --input " + path("d.csv") +
                             " --model bass1 --errors cauchy --seed 7 --iterations 400"
                             " --burnin 200 --output " + path("out"));
    CHECK(code == 0);
    CHECK(fs::exists(path("out.curve.csv")));
    CHECK(fs::exists(path("out.summary.json")));
    const std::string curve = slurp(path("out.curve.csv"));
    CHECK(curve.rfind("t,mean,lo95,hi95,lambda_mean\n", 0) == 0);
    const std::string summary = slurp(path("out.summary.json"));
    CHECK(summary.find("\"model\": \"bass1\"") != std::string::npos);
    CHECK(summary.find("\"acceptance_gamma\"") != std::string::npos);
}

TEST_CASE("fit deduplicates repeated time points") {
    const ScratchDir scratch;
    write_sine_csv(path("dup.csv"), 18, true);
    const int code = run_cli("fit --input " + path("dup.csv") +
                             " --model oss --iterations 300 --burnin 100 --output " +
                             path("dup"));
    CHECK(code == 0);
    // 18 knots from 24 observations
    int lines = 0;
    std::istringstream in(slurp(path("dup.curve.csv")));
    for (std::string line; std::getline(in, line);)
        ++lines;
    CHECK(lines == 19);
}

TEST_CASE("usage errors exit with code 1") {
    const ScratchDir scratch;
    write_sine_csv(path("d.csv"), 12);
    std::ofstream(path("g.txt")) << "0\n1\n2\n3\n";
    CHECK(run_cli("fit --input " + path("d.csv") + " --model bass3") == 1);
    CHECK(run_cli("fit") == 1);
    CHECK(run_cli("simulate --example 9") == 1);
    CHECK(run_cli("wibble") == 1);
    CHECK(run_cli("matrices --which q1 --grid " + path("g.txt")) == 1);
}

TEST_CASE("malformed CSV exits with code 2") {
    const ScratchDir scratch;
    std::ofstream(path("bad.csv")) << "t,y\n0,oops\n";
    CHECK(run_cli("fit --input " + path("bad.csv")) == 2);
}

TEST_CASE("degenerate data exits with code 3") {
    const ScratchDir scratch;
    std::ofstream(path("deg.csv")) << "t,y\n0,1\n0,2\n1,3\n1,4\n2,0\n";
    CHECK(run_cli("fit --input " + path("deg.csv") + " --iterations 200 --burnin 50") == 3);
}

TEST_CASE("matrices subcommand dumps dense CSV") {
    const ScratchDir scratch;
    {
        std::ofstream g(path("g.txt"));
        g << "0\n0.5\n0.75\n1\n";
    }
    CHECK(run_cli("matrices --which btilde --grid " + path("g.txt") + " --output " +
                  path("bt.csv")) == 0);
    const std::string bt = slurp(path("bt.csv"));
    CHECK(bt ==
          "0.25,0,0,0\n"
          "0,0.375,0,0\n"
          "0,0,0.25,0\n"
          "0,0,0,0.125\n");

    {
        std::ofstream g(path("u.txt"));
        for (int i = 0; i < 7; ++i)
            g << i << "\n";
    }
    CHECK(run_cli("matrices --which q --grid " + path("u.txt") + " --output " +
                  path("q.csv")) == 0);
    std::istringstream rows(slurp(path("q.csv")));
    std::vector<std::string> lines;
    for (std::string line; std::getline(rows, line);)
        lines.push_back(line);
    REQUIRE(lines.size() == 7);
    CHECK(lines[3] == "0,1,-4,6,-4,1,0");

    {
        std::ofstream l(path("lam.txt"));
        for (int i = 1; i <= 7; ++i)
            l << i << "\n";
    }
    CHECK(run_cli("matrices --which q2 --grid " + path("u.txt") + " --lambda " +
                  path("lam.txt") + " --output " + path("q2.csv")) == 0);
}

TEST_CASE("simulate writes the report and is byte-identical across reruns") {
    const ScratchDir scratch;
    const std::string flags =
        "simulate --example 2 --reps 2 --seed 1 --methods bass1,oss --iterations 200"
        " --burnin 50";
    CHECK(run_cli(flags + " --jobs 1 --output " + path("a")) == 0);
    CHECK(run_cli(flags + " --jobs 1 --output " + path("b")) == 0);
    CHECK(slurp(path("a.csv")) == slurp(path("b.csv")));
    CHECK(slurp(path("a.json")) == slurp(path("b.json")));

    std::istringstream rows(slurp(path("a.csv")));
    int lines = 0;
    for (std::string line; std::getline(rows, line);)
        ++lines;
    CHECK(lines == 3); // header + 2 method rows
}

TEST_CASE("knot policy flag selects a regular grid") {
    const ScratchDir scratch;
    write_sine_csv(path("d.csv"), 30);
    CHECK(run_cli("fit --input " + path("d.csv") +
                  " --knots 8 --iterations 300 --burnin 100 --output " + path("reg")) == 0);
    int lines = 0;
    std::istringstream in(slurp(path("reg.curve.csv")));
    for (std::string line; std::getline(in, line);)
        ++lines;
    CHECK(lines == 9); // header + 8 knots
    CHECK(run_cli("fit --input " + path("d.csv") + " --knots 2") == 1);
    CHECK(run_cli("fit --input " + path("d.csv") + " --knots soup") == 1);
}

TEST_CASE("config file fills unset flags and flags win") {
    const ScratchDir scratch;
    write_sine_csv(path("d.csv"), 16);
    std::ofstream(path("cfg.json"))
        << R"({"model": "oss", "iterations": 300, "burnin": 100, "seed": 5})";
    CHECK(run_cli("fit --input " + path("d.csv") + " --config " + path("cfg.json") +
                  " --output " + path("cfg_out")) == 0);
    const std::string summary = slurp(path("cfg_out.summary.json"));
    CHECK(summary.find("\"model\": \"oss\"") != std::string::npos);
    CHECK(summary.find("\"iterations\": 300") != std::string::npos);

    CHECK(run_cli("fit --input " + path("d.csv") + " --config " + path("cfg.json") +
                  " --model bass1 --output " + path("cfg_out2")) == 0);
    CHECK(slurp(path("cfg_out2.summary.json")).find("\"model\": \"bass1\"") !=
          std::string::npos);
}
