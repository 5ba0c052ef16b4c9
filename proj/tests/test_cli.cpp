// Black-box tests of the planarcount binary: output shapes, exit codes,
// determinism, and the fault-injection hook. The binary path arrives in
// PLANARCOUNT_CLI (set by the test harness).

#include <catch2/catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::json;

namespace {

std::string cli_path() {
    const char* p = std::getenv("PLANARCOUNT_CLI");
    if (!p) throw std::runtime_error("PLANARCOUNT_CLI not set");
    return p;
}

struct RunResult {
    int code = -1;
    std::string out;  // stdout and stderr combined
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
    static int seq = 0;
    std::string file = "/tmp/planarcount_cli_" + std::to_string(getpid()) + "_" +
                       std::to_string(++seq) + ".out";
    std::string cmd = env + (env.empty() ? "" : " ") + "'" + cli_path() + "' " + args + " > " +
                      file + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = (rc != -1 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(file);
    std::remove(file.c_str());
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("constants agrees with the reference table") {
    RunResult r = run_cli("constants --no-header");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    REQUIRE(doc["precision_bits"] == 256);
    bool saw_gamma = false, saw_rho = false;
    for (const auto& row : doc["constants"]) {
        if (row["name"] == "gamma") {
            saw_gamma = true;
            REQUIRE(row["value"].get<std::string>().substr(0, 10) == "27.2268777");
            REQUIRE(row["paper_value"] == "27.2268777685");
            REQUIRE(row["agrees_to_digits"].get<int>() >= 8);
            REQUIRE(contains(row["formula"].get<std::string>(), "rho"));
        }
        if (row["name"] == "rho") {
            saw_rho = true;
            REQUIRE(row["paper_value"].is_null());
            REQUIRE(row["agrees_to_digits"].is_null());
        }
        if (row["name"] == "g") REQUIRE(row["agrees_to_digits"].get<int>() >= 8);
        if (row["name"] == "c") REQUIRE(row["agrees_to_digits"].get<int>() >= 8);
    }
    REQUIRE(saw_gamma);
    REQUIRE(saw_rho);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("constants --precision-bits 64").code == 2);
    CHECK(run_cli("series --order 3").code == 2);
    CHECK(run_cli("series --which z").code == 2);
    CHECK(run_cli("law local").code == 2);
    CHECK(run_cli("verify --oracle-nmax 9").code == 2);
    CHECK(run_cli("constants --format yaml").code == 2);
    CHECK(run_cli("").code == 2);
}

TEST_CASE("help is available") {
    RunResult r = run_cli("--help");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "constants"));
    CHECK(contains(r.out, "verify"));
}

TEST_CASE("output is deterministic without the timestamp header") {
    std::string f1 = "/tmp/planarcount_det_1_" + std::to_string(getpid());
    std::string f2 = "/tmp/planarcount_det_2_" + std::to_string(getpid());
    RunResult r1 = run_cli("constants --no-header --digits 15 --out " + f1);
    RunResult r2 = run_cli("constants --no-header --digits 15 --out " + f2);
    REQUIRE(r1.code == 0);
    REQUIRE(r2.code == 0);
    std::string a = slurp(f1), b = slurp(f2);
    std::remove(f1.c_str());
    std::remove(f2.c_str());
    REQUIRE(!a.empty());
    REQUIRE(a == b);
    REQUIRE(a.substr(0, 1) == "{");  // no header line in the file
}

TEST_CASE("timestamp header appears unless suppressed") {
    RunResult r = run_cli("law edges");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.substr(0, 13) == "# generated: ");
    std::string rest = r.out.substr(r.out.find('\n') + 1);
    json doc = json::parse(rest);
    REQUIRE(doc["law"] == "edges");
    REQUIRE(doc["mean_coeff"].get<std::string>().substr(0, 6) == "2.2132");
}

TEST_CASE("series totals are exact decimal strings") {
    RunResult g = run_cli("series --which g --order 5 --format csv --no-header");
    REQUIRE(g.code == 0);
    REQUIRE(g.out == "n,count\n0,1\n1,1\n2,2\n3,8\n4,64\n5,1023\n");
    RunResult b = run_cli("series --which b --order 5 --format csv --no-header");
    REQUIRE(b.code == 0);
    REQUIRE(b.out == "n,count\n0,0\n1,0\n2,1\n3,1\n4,10\n5,237\n");
}

TEST_CASE("bivariate series carries the (n,q) table") {
    RunResult r = run_cli("series --which g --order 5 --bivariate --format csv --no-header");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.substr(0, 10) == "n,q,count\n");
    CHECK(contains(r.out, "\n5,9,10\n"));
    CHECK(contains(r.out, "\n5,10,0\n"));
    CHECK(contains(r.out, "\n4,3,20\n"));
    CHECK(contains(r.out, "\n0,0,1\n"));
}

TEST_CASE("series JSON exposes raw EGF rationals") {
    RunResult r = run_cli("series --which b --order 5 --no-header");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    REQUIRE(doc["kind"] == "b");
    bool saw_half = false;
    for (const auto& e : doc["egf_coefficients"])
        if (e["n"] == 2 && e["q"] == 1) {
            saw_half = true;
            REQUIRE(e["value"] == "1/2");
        }
    REQUIRE(saw_half);
    for (const auto& t : doc["totals"])
        if (t["n"] == 4) REQUIRE(t["count"] == "10");
}

TEST_CASE("curve defaults to CSV with the fixed header") {
    RunResult r = run_cli("curve --steps 12 --no-header");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    REQUIRE(std::getline(in, line));
    REQUIRE(line == "mu,u,lambda_mu,growth_ratio");
    std::vector<double> ratio;
    while (std::getline(in, line)) {
        size_t c1 = line.find(','), c2 = line.find(',', c1 + 1), c3 = line.find(',', c2 + 1);
        REQUIRE(c3 != std::string::npos);
        REQUIRE(line.find(',', c3 + 1) == std::string::npos);
        ratio.push_back(std::stod(line.substr(c3 + 1)));
    }
    REQUIRE(ratio.size() == 12);
    // exp(lambda(mu)) rises to a single interior peak just below the growth
    // constant (the peak value log(gamma) is attained at mu(1)) and then falls.
    size_t peak = 0;
    for (size_t i = 1; i < ratio.size(); ++i)
        if (ratio[i] > ratio[peak]) peak = i;
    REQUIRE(peak > 0);
    REQUIRE(peak + 1 < ratio.size());
    REQUIRE(ratio[peak] > 27.0);
    REQUIRE(ratio[peak] < 27.2268777686);
    for (size_t i = 1; i <= peak; ++i) REQUIRE(ratio[i] > ratio[i - 1]);
    for (size_t i = peak + 1; i < ratio.size(); ++i) REQUIRE(ratio[i] < ratio[i - 1]);
    REQUIRE(r.out.substr(r.out.size() - 1) == "\n");
    REQUIRE(r.out.find("mu,") == 0);
    CHECK(r.out.substr(r.out.find('\n') + 1, 4) == "1.1,");
}

TEST_CASE("law tau reports the edge growth constant") {
    RunResult r = run_cli("law tau --no-header");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    REQUIRE(doc["tau"].get<std::string>().substr(0, 4) == "6.03");
    REQUIRE(doc["log2_tau"].get<std::string>().substr(0, 4) == "2.59");
}

TEST_CASE("law appearances at h = 1 returns rho twice") {
    RunResult r = run_cli("law appearances --size 1 --format csv --no-header");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line, mean, x1, var;
    while (std::getline(in, line)) {
        if (line.rfind("mean_coeff,", 0) == 0) mean = line.substr(11);
        if (line.rfind("var_coeff,", 0) == 0) var = line.substr(10);
        if (line.rfind("x_at_1,", 0) == 0) x1 = line.substr(7);
    }
    REQUIRE(!mean.empty());
    REQUIRE(mean == x1);
    REQUIRE(mean == var);
    REQUIRE(mean.substr(0, 6) == "0.0367");
}

TEST_CASE("verify passes clean and fails under fault injection") {
    std::string knobs = " --order 6 --oracle-nmax 3 --format csv --no-header";
    RunResult clean = run_cli("verify" + knobs);
    REQUIRE(clean.code == 0);
    CHECK(contains(clean.out, "RESULT pass (11/11)"));
    CHECK(contains(clean.out, "d-residual"));
    CHECK(!contains(clean.out, "FAIL"));

    RunResult fault = run_cli("verify" + knobs, "PLANARCOUNT_INJECT_FAULT=d-residual");
    REQUIRE(fault.code == 1);
    CHECK(contains(fault.out, "FAIL d-residual"));
    CHECK(contains(fault.out, "RESULT fail (10/11)"));
    CHECK(contains(fault.out, "verification check failed: d-residual"));
}

TEST_CASE("unwritable output path exits with code 2") {
    RunResult r = run_cli("law edges --out /nonexistent-dir-planarcount/x.json");
    REQUIRE(r.code == 2);
}
