#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "doctest.h"
#include "ncarea/cli.hpp"
#include "ncarea/io.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("ncarea_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int counter;
};
int TempDir::counter = 0;

// Captures stdout around a CLI invocation.
struct Capture {
    std::stringstream buffer;
    std::streambuf* old = nullptr;
    Capture() { old = std::cout.rdbuf(buffer.rdbuf()); }
    ~Capture() { std::cout.rdbuf(old); }
};

int run_cli(const std::vector<std::string>& args, std::string* out = nullptr) {
    Capture cap;
    const int rc = ncarea::cli::run(args);
    if (out) *out = cap.buffer.str();
    return rc;
}

}  // namespace

TEST_CASE("area subcommand reports both routes for closed-form families") {
    std::string out;
    const int rc = run_cli({"area", "--state", "fock:n=2"}, &out);
    CHECK(rc == 0);
    CHECK(out.find("sigma (numeric):") != std::string::npos);
    CHECK(out.find("sigma (analytic):") != std::string::npos);
    // sqrt(10) pi
    CHECK(out.find("9.93458826579") != std::string::npos);
}

TEST_CASE("area subcommand handles numeric-only families") {
    std::string out;
    const int rc = run_cli({"area", "--state", "cat:alpha=2,h=1", "--format", "json"},
                           &out);
    CHECK(rc == 0);
    CHECK(out.find("\"numeric\"") != std::string::npos);
    CHECK(out.find("\"analytic\"") == std::string::npos);
    CHECK(out.find("error_estimate") != std::string::npos);
}

TEST_CASE("parse failures exit with code 2") {
    std::string out;
    CHECK(run_cli({"area", "--state", "fock:n=oops"}, &out) == 2);
    CHECK(run_cli({"area", "--state", "sqvac:r=-1"}, &out) == 2);
    CHECK(run_cli({"area"}, &out) == 2);             // missing --state
    CHECK(run_cli({"frobnicate"}, &out) == 2);       // unknown subcommand
    CHECK(run_cli({"area", "--state", "cat:alpha=1,h=7"}, &out) == 2);
}

TEST_CASE("numerical failures exit with code 3") {
    std::string out;
    // Squeezing far beyond the truncation budget.
    CHECK(run_cli({"area", "--state", "sqvac:r=2.8"}, &out) == 3);
}

TEST_CASE("profile and tomogram write csv files") {
    TempDir tmp;
    const std::string profile_path = (tmp.path / "profile.csv").string();
    std::string out;
    CHECK(run_cli({"profile", "--state", "coherent:alpha=1.5", "--theta-points",
                   "25", "--out", profile_path},
                  &out) == 0);
    const std::string profile = ncarea::read_text_file(profile_path);
    CHECK(profile.rfind("theta,mean,std\n", 0) == 0);
    CHECK(std::count(profile.begin(), profile.end(), '\n') == 26);
    // 1/sqrt(2) everywhere for coherent light.
    CHECK(profile.find("0.7071067811865") != std::string::npos);

    const std::string tomo_path = (tmp.path / "tomo.csv").string();
    CHECK(run_cli({"tomogram", "--state", "fock:n=1", "--theta-points", "3",
                   "--x-points", "201", "--out", tomo_path},
                  &out) == 0);
    const std::string tomo = ncarea::read_text_file(tomo_path);
    CHECK(tomo.rfind("theta,x,omega\n", 0) == 0);
    CHECK(std::count(tomo.begin(), tomo.end(), '\n') == 1 + 3 * 201);
}

TEST_CASE("sweep emits csv, manifest, and passing assertions") {
    TempDir tmp;
    std::string out;
    const int rc = run_cli({"sweep", "--figure", "fock-n", "--n-max", "4", "--out",
                            tmp.path.string()},
                           &out);
    CHECK(rc == 0);
    CHECK(out.find("[PASS] area-increasing-in-n") != std::string::npos);
    CHECK(fs::exists(tmp.path / "fock-n.csv"));
    CHECK(fs::exists(tmp.path / "fock-n.manifest.json"));
    const std::string csv = ncarea::read_text_file((tmp.path / "fock-n.csv").string());
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);  // header + 5 rows
}

TEST_CASE("sample and estimate round-trip through files") {
    TempDir tmp;
    const std::string prefix = (tmp.path / "f1").string();
    std::string out;
    CHECK(run_cli({"sample", "--state", "fock:n=1", "--angles", "8", "--samples",
                   "2000", "--seed", "7", "--out", prefix},
                  &out) == 0);
    CHECK(fs::exists(prefix + ".csv"));
    CHECK(fs::exists(prefix + ".manifest.json"));
    const std::string csv = ncarea::read_text_file(prefix + ".csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 8 * 2000);

    std::string est;
    CHECK(run_cli({"estimate", "--data", prefix + ".csv"}, &est) == 0);
    CHECK(est.find("sigma (sampled):") != std::string::npos);
    CHECK(est.find("fock:n=1") != std::string::npos);

    // A truncated dataset (missing rows at one angle) is insufficient.
    std::string truncated = csv;
    truncated.resize(truncated.rfind('\n', truncated.size() - 2) + 1);
    ncarea::write_text_file(prefix + "_cut.csv", truncated);
    CHECK(run_cli({"estimate", "--data", prefix + "_cut.csv"}, &est) == 3);
}

TEST_CASE("sample outputs are byte-identical across reruns") {
    TempDir tmp;
    const std::string a = (tmp.path / "a").string();
    const std::string b = (tmp.path / "b").string();
    std::string out;
    for (const auto& prefix : {a, b})
        CHECK(run_cli({"sample", "--state", "sqvac:r=0.4", "--angles", "4",
                       "--samples", "500", "--seed", "3", "--out", prefix},
                      &out) == 0);
    CHECK(ncarea::read_text_file(a + ".csv") == ncarea::read_text_file(b + ".csv"));
}

TEST_CASE("check subcommand reports invariants and honors the perturb hook") {
    std::string out;
    CHECK(run_cli({"check", "--families", "coherent,fock", "--cases", "2"}, &out) == 0);
    CHECK(out.find("[PASS]") != std::string::npos);
    CHECK(out.find("[FAIL]") == std::string::npos);

    CHECK(run_cli({"check", "--families", "coherent", "--cases", "2",
                   "--perturb-index", "0", "--perturb-scale", "1.1"},
                  &out) == 1);
    CHECK(out.find("[FAIL]") != std::string::npos);
}

TEST_CASE("NCAREA_OUT_DIR provides the default output directory") {
    TempDir tmp;
    setenv("NCAREA_OUT_DIR", tmp.path.c_str(), 1);
    std::string out;
    CHECK(run_cli({"profile", "--state", "fock:n=0", "--theta-points", "11", "--out",
                   "envtest.csv"},
                  &out) == 0);
    unsetenv("NCAREA_OUT_DIR");
    CHECK(fs::exists(tmp.path / "envtest.csv"));
}
