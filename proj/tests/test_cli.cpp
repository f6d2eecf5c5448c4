// Copyright 2026 The somdms Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "somdms/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using somdms::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

// Fresh scratch directory, also made the working directory so default
// manifest paths land inside it.
struct Scratch {
    fs::path dir;
    fs::path previous;
    explicit Scratch(const std::string& name) {
        dir = fs::temp_directory_path() / ("somdms_cli_" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
        previous = fs::current_path();
        fs::current_path(dir);
    }
    ~Scratch() {
        fs::current_path(previous);
        fs::remove_all(dir);
    }
    std::string operator/(const std::string& f) const { return (dir / f).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

}  // namespace

TEST_CASE("help and version exit cleanly") {
    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({"sweep", "--help"}).code == 0);
    const Result v = invoke({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out.find(somdms::cli::kVersion) != std::string::npos);
}

TEST_CASE("bad arguments exit with 2") {
    Scratch s("bad");
    spit(s / "broken.circuit", "version 1\nsource a weight=1 pol=Q mode=h\nsink a\n");
    const std::vector<std::vector<std::string>> cases = {
        {},
        {"frobnicate"},
        {"correlations"},
        {"correlations", "--family", "rank5"},
        {"correlations", "--family", "rank2", "--m", "0.3"},
        {"correlations", "--family", "rank3", "--p", "0.3"},
        {"correlations", "--family", "rank2", "--p", "1.5"},
        {"correlations", "--family", "rank2", "--circuit", "x.circuit"},
        {"correlations", "--circuit", s / "missing.circuit"},
        {"correlations", "--circuit", s / "broken.circuit"},
        {"correlations", "--circuit", s / "broken.circuit", "--eps", "0.2"},
        {"correlations", "--family", "rank2", "--grid-theta", "1"},
        {"sweep", "--family", "rank2", "--var", "m"},
        {"sweep", "--family", "rank2", "--var", "eps", "--eps", "0.3"},
        {"sweep", "--family", "rank2", "--step", "-1"},
        {"sweep", "--family", "rank2", "--noise", "--runs", "1"},
        {"sweep", "--family", "rank2", "--noise", "--bs-r", "0"},
        {"scatter", "--step", "0.5"},
        {"profile", "--family", "rank2"},
        {"profile", "--family", "rank2", "-o", s / "x.pgm", "--samples", "0"},
        {"tomography", "--family", "rank2", "--runs", "1"},
        {"replay", s / "missing.json"},
        {"replay", s / "broken.circuit"},
    };
    for (const auto& args : cases) {
        const Result r = invoke(args);
        const std::string label = args.empty() ? std::string("<none>") : args.front();
        INFO(label);
        CHECK(r.code == somdms::cli::kExitBadArguments);
        CHECK(!r.err.empty());
    }
}

TEST_CASE("circuit parse errors carry a location") {
    Scratch s("diag");
    spit(s / "broken.circuit", "version 1\nsource a weight=1 pol=Q mode=h\nsink a\n");
    const Result r = invoke({"correlations", "--circuit", s / "broken.circuit"});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("a blocked sink exits with 3") {
    Scratch s("degenerate");
    spit(s / "dark.circuit", "version 1\nsource a weight=1 pol=H mode=h\nelement BLOCK on a\nsink a\n");
    const Result r = invoke({"correlations", "--circuit", s / "dark.circuit"});
    CHECK(r.code == somdms::cli::kExitDegenerateState);
    CHECK(invoke({"tomography", "--circuit", s / "dark.circuit"}).code == 3);
    CHECK(invoke({"profile", "--circuit", s / "dark.circuit", "-o", s / "d.pgm"}).code == 3);
}

TEST_CASE("correlations JSON for the Bell state") {
    Scratch s("bell");
    const Result r = invoke({"correlations", "--family", "rank2", "--p", "0.5", "--eps", "1"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["mutual_information"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(j["classical_correlation"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(j["discord"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(j["concurrence"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    // stdout output still leaves a manifest behind
    CHECK(fs::exists(s / "somdms-correlations.manifest.json"));
}

TEST_CASE("family and shipped circuit agree") {
    Scratch s("circuit");
    const Result fam = invoke({"correlations", "--family", "rank3", "--m", "0.5", "--eps", "0.4"});
    const Result cir = invoke({"correlations", "--circuit", std::string(SOMDMS_CIRCUIT_DIR) + "/fig1.circuit"});
    REQUIRE(fam.code == 0);
    REQUIRE(cir.code == 0);
    const json a = json::parse(fam.out);
    const json b = json::parse(cir.out);
    for (const char* key : {"mutual_information", "classical_correlation", "discord", "concurrence"}) {
        CHECK(a[key].get<double>() == doctest::Approx(b[key].get<double>()).epsilon(1e-6));
    }
}

TEST_CASE("manifest records the invocation") {
    Scratch s("manifest");
    const std::string out = s / "sweep.csv";
    const Result r = invoke({"sweep", "--family", "rank2", "--step", "0.5", "--output", out});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(fs::exists(out + ".gp"));
    const json m = json::parse(slurp(out + ".manifest.json"));
    CHECK(m["command"] == "sweep");
    CHECK(m["version"] == somdms::cli::kVersion);
    CHECK(m["args"][0] == "sweep");
    CHECK(m["seed"].is_null());
    CHECK(m["parameters"]["family"] == "rank2");
    CHECK(m["parameters"]["variable"] == "epsilon");
    CHECK(m["outputs"].size() == 2);
    CHECK(m["duration_seconds"].get<double>() >= 0.0);
}

TEST_CASE("replay reproduces noisy outputs byte for byte") {
    Scratch s("replay");
    const std::string first = s / "first.csv";
    REQUIRE(invoke({"sweep", "--family", "rank3", "--m", "0.5", "--from", "0.3", "--to", "0.7", "--step", "0.2",
                    "--noise", "--runs", "4", "--seed", "99", "-o", first})
                .code == 0);
    const std::string second = s / "second.csv";
    REQUIRE(invoke({"replay", first + ".manifest.json", "--output", second, "--manifest", s / "second.json"}).code == 0);
    CHECK(slurp(first) == slurp(second));

    const std::string t1 = s / "t1.json";
    REQUIRE(invoke({"tomography", "--family", "rank2", "--p", "0.3", "--eps", "0.7", "--runs", "3", "-o", t1}).code ==
            0);
    const std::string t2 = s / "t2.json";
    REQUIRE(invoke({"replay", t1 + ".manifest.json", "-o", t2}).code == 0);
    CHECK(slurp(t1) == slurp(t2));
    CHECK(fs::exists(t2 + ".manifest.json"));
}

TEST_CASE("seed comes from the environment when not given") {
    Scratch s("seed");
    ::setenv(somdms::cli::kSeedVariable, "5", 1);
    REQUIRE(invoke({"tomography", "--family", "rank3", "--eps", "0.2", "--runs", "2", "-o", s / "a.json"}).code == 0);
    const json m = json::parse(slurp(s / "a.json.manifest.json"));
    CHECK(m["seed"] == 5);
    CHECK(json::parse(slurp(s / "a.json"))["stats"]["Q"]["values"].size() == 2);
    ::setenv(somdms::cli::kSeedVariable, "five", 1);
    CHECK(invoke({"tomography", "--family", "rank3", "--eps", "0.2", "--runs", "2", "-o", s / "b.json"}).code == 2);
    ::unsetenv(somdms::cli::kSeedVariable);
    REQUIRE(invoke({"tomography", "--family", "rank3", "--eps", "0.2", "--runs", "2", "-o", s / "c.json"}).code == 0);
    CHECK(json::parse(slurp(s / "c.json.manifest.json"))["seed"] == 1);
}

TEST_CASE("tomography report layout") {
    Scratch s("tomo");
    const Result r = invoke({"tomography", "--family", "rank2", "--p", "0.5", "--eps", "1", "--runs", "3",
                             "--hwp-jitter", "0", "--bs-r", "0.5", "--bs-t", "0.5"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["truth"]["re"].size() == 4);
    CHECK(j["reconstructed"]["im"][0].size() == 4);
    // ideal analysis optics reconstruct exactly
    CHECK(j["fidelity"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    for (const char* key : {"C", "Cprime", "Q", "Im", "fidelity"}) {
        CHECK(j["stats"][key]["values"].size() == 3);
        CHECK(j["stats"][key]["std"].get<double>() < 1e-6);
    }
}

TEST_CASE("profile formats") {
    Scratch s("profile");
    REQUIRE(invoke({"profile", "--family", "rank3", "--m", "0.25", "--samples", "16", "-o", s / "a.pgm"}).code == 0);
    CHECK(slurp(s / "a.pgm").rfind("P2\n16 16\n65535\n", 0) == 0);
    REQUIRE(invoke({"profile", "--family", "rank3", "--m", "0.25", "--samples", "16", "-o", s / "a.csv"}).code == 0);
    const std::string csv = slurp(s / "a.csv");
    CHECK(csv.rfind("x,y,intensity\n", 0) == 0);
    REQUIRE(invoke({"profile", "--family", "rank2", "--samples", "16", "--format", "csv", "-o", s / "b.dat"}).code == 0);
    CHECK(slurp(s / "b.dat").rfind("x,y,intensity\n", 0) == 0);
}

TEST_CASE("scatter CSV") {
    Scratch s("scatter");
    REQUIRE(invoke({"scatter", "--step", "0.1", "-o", s / "sc.csv"}).code == 0);
    const std::string csv = slurp(s / "sc.csv");
    CHECK(csv.rfind("family,p,m,epsilon,C,Q\n", 0) == 0);
    CHECK(fs::exists(s / "sc.csv.gp"));
}
