#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string cli = LATCIRC_CLI_PATH;

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / ("latcirc_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() { std::error_code ec; fs::remove_all(dir, ec); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args) {
    const int status = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

json run_json(const std::string& args, const std::string& out_path) {
    const int code = run(args + " --out " + out_path);
    REQUIRE(code == 0);
    std::ifstream in(out_path);
    REQUIRE(in.good());
    return json::parse(in);
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
    std::ofstream out(path);
    for (const auto& l : lines) out << l << "\n";
}

}  // namespace

TEST_CASE("pmf command emits a versioned JSON report") {
    Scratch s;
    const json rep = run_json("pmf --family cdvm --m 37 --kappa 2.0 --t 5", s.path("pmf.json"));
    CHECK(rep["schema"] == "latcirc-report/1");
    CHECK(rep["tool"]["name"] == "latcirc");
    CHECK(rep["command"] == "pmf");
    const auto& probs = rep["result"]["probs"];
    REQUIRE(probs.size() == 37);
    double total = 0.0;
    for (const auto& v : probs) total += v.get<double>();
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(rep["result"]["mode"] == 5);
}

TEST_CASE("sample then fit round-trips the parameters") {
    Scratch s;
    const std::string csv = s.path("draws.csv");
    run_json("sample --family cdwc --m 10 --rho 0.5 --t 3 --n 4000 --seed 11 --csv " + csv,
             s.path("sample.json"));
    const json fit = run_json(
        "fit --family cdwc --m 10 --data " + csv + " --bootstrap 200 --seed 12", s.path("fit.json"));
    CHECK(fit["result"]["t_hat"] == 3);
    CHECK(std::abs(fit["result"]["tau_hat"].get<double>() - 0.5) < 0.06);
    CHECK(fit["result"]["se_tau"].get<double>() > 0.0);
    CHECK(fit["result"]["rbar_t"].get<double>() > 0.5);
    CHECK(fit["seed"] == 12);
    // recovery within the bootstrap band
    CHECK(std::abs(fit["result"]["tau_hat"].get<double>() - 0.5) <
          4.0 * fit["result"]["se_tau"].get<double>());
}

TEST_CASE("fit on uniform draws gives kappa near zero") {
    Scratch s;
    const std::string csv = s.path("uniform.csv");
    run_json("sample --family cdvm --m 37 --kappa 0 --n 2000 --seed 5 --csv " + csv,
             s.path("s.json"));
    const json fit = run_json("fit --family cdvm --m 37 --data " + csv + " --bootstrap 0",
                              s.path("fit0.json"));
    CHECK(fit["result"]["tau_hat"].get<double>() < 0.12);
}

TEST_CASE("frequency input expands and is rejected by order-sensitive commands") {
    Scratch s;
    const std::string freq = s.path("freq.csv");
    std::vector<std::string> lines;
    for (int r = 0; r < 48; ++r) lines.push_back(std::to_string(r) + ",8");
    write_lines(freq, lines);
    const json fit = run_json("fit --family cdwc --m 48 --data " + freq +
                                  " --format frequency --bootstrap 0",
                              s.path("freqfit.json"));
    CHECK(fit["result"]["n"] == 48 * 8);
    CHECK(run("test-serial --m 48 --data " + freq + " --format frequency --replicates 100") == 2);
    CHECK(run("changepoint --m 48 --data " + freq + " --format frequency --iterations 200 "
              "--burnin 50") == 2);
}

TEST_CASE("ingest errors carry the data exit code") {
    Scratch s;
    const std::string bad = s.path("bad.csv");
    write_lines(bad, {"1", "2", "37"});
    CHECK(run("fit --family cdwc --m 37 --data " + bad) == 3);
    CHECK(run("fit --family cdwc --m 37 --data " + s.path("missing.csv")) == 3);
    write_lines(bad, {"1", "oops"});
    CHECK(run("fit --family cdwc --m 37 --data " + bad) == 3);
}

TEST_CASE("usage errors carry exit code 2") {
    Scratch s;
    const std::string csv = s.path("ok.csv");
    write_lines(csv, {"0", "1", "2", "3"});
    CHECK(run("fit --family nosuch --m 5 --data " + csv) == 2);
    CHECK(run("fit --family cdwc --data " + csv) == 2);  // --m missing
    CHECK(run("bogus-command") == 2);
}

TEST_CASE("uniformity test report carries all four statistics") {
    Scratch s;
    const std::string csv = s.path("biased.csv");
    run_json("sample --family cdwc --m 10 --rho 0.3 --t 2 --n 500 --seed 3 --csv " + csv,
             s.path("s.json"));
    const json rep = run_json("test-uniformity --family cdwc --m 10 --data " + csv +
                                  " --replicates 99 --mc-replicates 999 --seed 4",
                              s.path("tu.json"));
    for (const char* key : {"T", "UG2", "T1sq", "T2sq"}) {
        CHECK(rep["result"][key].contains("value"));
        CHECK(rep["result"][key].contains("p_value_mc"));
        CHECK(rep["result"][key].contains("replications"));
    }
    CHECK(rep["result"]["T"]["p_value_mc"].get<double>() < 0.05);
    CHECK(rep["result"]["T"]["replications"] == 99);
    CHECK(rep["result"]["T1sq"].contains("p_value_asymptotic"));
}

TEST_CASE("serial test on a sequence file") {
    Scratch s;
    const std::string csv = s.path("seq.csv");
    run_json("sample --family cdwc --m 37 --rho 0 --n 800 --seed 9 --csv " + csv,
             s.path("s.json"));
    const json rep = run_json("test-serial --m 37 --data " + csv + " --replicates 2000 --seed 10",
                              s.path("serial.json"));
    CHECK(rep["result"]["C"].contains("crit1"));
    CHECK(rep["result"]["R2"]["p_value_mc"].get<double>() > 0.001);
}

TEST_CASE("changepoint command with streaming trace") {
    Scratch s;
    const std::string csv = s.path("cp.csv");
    // uniform then biased halves
    run_json("sample --family cdwc --m 37 --rho 0 --n 300 --seed 21 --csv " + s.path("a.csv"),
             s.path("sa.json"));
    run_json("sample --family cdwc --m 37 --rho 0.6 --t 9 --n 300 --seed 22 --csv " +
                 s.path("b.csv"),
             s.path("sb.json"));
    {
        std::ifstream a(s.path("a.csv")), b(s.path("b.csv"));
        std::ofstream out(csv);
        out << a.rdbuf() << b.rdbuf();
    }
    const std::string trace = s.path("trace.csv");
    const json rep = run_json("changepoint --m 37 --data " + csv +
                                  " --iterations 4000 --burnin 1000 --seed 23 --stream 300,600 "
                                  "--trace-csv " + trace,
                              s.path("cp.json"));
    REQUIRE(rep["result"]["prefixes"].size() == 2);
    CHECK(rep["result"]["prefixes"][1]["rho2"]["lo95"].get<double>() > 0.025);
    std::ifstream tr(trace);
    std::string header;
    std::getline(tr, header);
    CHECK(header.find("rho2_lo95") != std::string::npos);
    int rows = 0;
    for (std::string line; std::getline(tr, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("mixture command on frequency data") {
    Scratch s;
    const std::string csv = s.path("mix.csv");
    run_json("sample --family cdwc --m 24 --rho 0.6 --t 6 --n 400 --seed 31 --csv " + csv,
             s.path("s.json"));
    const json rep = run_json("mixture --m 24 --K 1 --data " + csv +
                                  " --iterations 3000 --burnin 1000 --seed 32",
                              s.path("mix.json"));
    REQUIRE(rep["result"]["components"].size() == 1);
    CHECK(std::abs(rep["result"]["components"][0]["tau"]["mean"].get<double>() - 0.6) < 0.12);
}

TEST_CASE("sampling through a continuous parent") {
    Scratch s;
    const json rep = run_json(
        "sample --parent wc --method marginalized --m 12 --rho 0.6 --mu 1.0 --n 50 --seed 2",
        s.path("parent.json"));
    REQUIRE(rep["result"]["samples"].size() == 50);
    CHECK(rep["config"]["method"] == "marginalized");
    CHECK(run("sample --parent nope --m 12 --rho 0.6 --n 10") == 2);
}

TEST_CASE("numeric failures carry exit code 4") {
    // a stable series with a tiny exponent at high concentration exceeds the
    // term cap
    CHECK(run("pmf --family cdstable --m 10 --rho 0.95 --stable-a 0.05") == 4);
}

TEST_CASE("divergence-scan and sheppard commands") {
    Scratch s;
    const json scan = run_json(
        "divergence-scan --fam1 cdwc --fam2 cdvm --m 10 --grid-max 0.3 --grid-step 0.01",
        s.path("scan.json"));
    CHECK(scan["result"]["kl"].contains("max"));
    CHECK(scan["result"]["kl"]["at_cap"].get<bool>());
    const std::string csv = s.path("shep.csv");
    const json shep = run_json("sheppard --rho 0.5 --m-list 3,5,10 --csv " + csv,
                               s.path("shep.json"));
    REQUIRE(shep["result"]["rows"].size() == 3);
    CHECK(std::abs(shep["result"]["rows"][0]["cdwc_cos1"].get<double>() - 0.667) < 1e-3);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header.find("mdwc_cos1") != std::string::npos);
}
