#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "assocmem/cli.hpp"
#include "assocmem/harness.hpp"
#include "assocmem/serialize.hpp"

using namespace assocmem;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "assocmem");
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& f) const { return (path / f).string(); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("hopfield gen, learn, recall pipeline") {
    TempDir d("assocmem_cli_hopfield");
    REQUIRE(run({"gen", "--kind", "real", "--n", "100", "--p", "3", "--seed", "4", "--out", d / "p.json"}).code == 0);
    REQUIRE(run({"gen", "--from", d / "p.json", "--index", "1", "--flip", "0.1", "--seed", "9", "--out", d / "k.json"}).code == 0);
    REQUIRE(run({"learn", "--model", "hopfield", "--patterns", d / "p.json", "--zero-diagonal", "--out", d / "m.json"}).code == 0);
    const auto r = run({"recall", "--model", "hopfield", "--memory", d / "m.json", "--key", d / "k.json"});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["winner"] == 1);
    CHECK(j["signal_A"].get<double>() > 0.7);
    CHECK(j["converged"] == true);

    // Same answer from the library directly, byte for byte.
    const auto stored = hebb_from_json(read_json_file(d / "m.json"));
    const auto key = real_patterns_from_json(read_json_file(d / "k.json"))[0];
    const auto direct = recall_iterate(stored.matrix, stored.patterns, key, {});
    CHECK(r.out == cli::recall_report(direct).dump(2) + "\n");
}

TEST_CASE("quantum deterministic recall reports winner, signal and noise") {
    TempDir d("assocmem_cli_quantum");
    REQUIRE(run({"gen", "--kind", "complex", "--n", "64", "--p", "4", "--seed", "2", "--orthogonalize", "--out", d / "s.json"}).code == 0);
    REQUIRE(run({"gen", "--from", d / "s.json", "--index", "2", "--phase-sigma", "0.2", "--seed", "5", "--out", d / "k.json"}).code == 0);
    REQUIRE(run({"learn", "--model", "quantum", "--patterns", d / "s.json", "--out", d / "g.json"}).code == 0);
    const auto r = run({"recall", "--model", "quantum", "--memory", d / "g.json", "--key", d / "k.json", "--mode", "deterministic"});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["winner"] == 2);
    CHECK(j.contains("signal_A"));
    CHECK(j.contains("noise_B"));
    CHECK_FALSE(j.contains("collapse"));

    const auto G = green_from_json(read_json_file(d / "g.json"));
    const auto key = complex_states_from_json(read_json_file(d / "k.json"))[0];
    CHECK(r.out == cli::recall_report(recall(G, key)).dump(2) + "\n");

    const auto s = run({"recall", "--model", "quantum", "--memory", d / "g.json", "--key", d / "k.json", "--mode", "sampled", "--seed", "3"});
    REQUIRE(s.code == 0);
    CHECK(Json::parse(s.out).contains("collapse"));
    CHECK(s.out == cli::recall_report(recall(G, key, RecallMode::sampled, 3)).dump(2) + "\n");
}

TEST_CASE("holographic self-association pipeline") {
    TempDir d("assocmem_cli_holo");
    REQUIRE(run({"gen", "--kind", "complex", "--n", "32", "--p", "3", "--seed", "8", "--out", d / "s.json"}).code == 0);
    REQUIRE(run({"gen", "--from", d / "s.json", "--index", "0", "--phase-sigma", "0.1", "--seed", "1", "--out", d / "k.json"}).code == 0);
    REQUIRE(run({"learn", "--model", "holographic", "--patterns", d / "s.json", "--out", d / "h.json"}).code == 0);
    const auto r = run({"recall", "--model", "holographic", "--memory", d / "h.json", "--key", d / "k.json"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["winner"] == 0);
}

TEST_CASE("orthogonal probe is a no-recall domain error") {
    TempDir d("assocmem_cli_norecall");
    REQUIRE(run({"gen", "--kind", "complex", "--n", "8", "--p", "3", "--seed", "1", "--orthogonalize", "--out", d / "all.json"}).code == 0);
    auto all = read_json_file(d / "all.json");
    auto stored = all;
    stored["p"] = 2;
    stored["patterns"].erase(2);
    auto probe = all;
    probe["p"] = 1;
    probe["patterns"].erase(0);
    probe["patterns"].erase(0);
    write_text_file(d / "stored.json", stored.dump());
    write_text_file(d / "probe.json", probe.dump());
    REQUIRE(run({"learn", "--model", "quantum", "--patterns", d / "stored.json", "--out", d / "g.json"}).code == 0);
    const auto r = run({"recall", "--model", "quantum", "--memory", d / "g.json", "--key", d / "probe.json"});
    CHECK(r.code == cli::kDomainError);
    CHECK(r.err.find("no-recall") != std::string::npos);
}

TEST_CASE("correspond exits cleanly on the reference case") {
    const auto r = run({"correspond", "--n", "16", "--p", "4", "--seed", "1"});
    CHECK(r.code == cli::kOk);
    CHECK(Json::parse(r.out)["passed"] == true);

    const auto bad = run({"correspond", "--phase-sigma", "0.5"});
    CHECK(bad.code == cli::kDomainError);
    CHECK(bad.err.find("hebb_matrix_vs_green_kernel") != std::string::npos);
}

TEST_CASE("usage and I/O errors") {
    CHECK(run({"gen", "--bogus"}).code == cli::kUsageError);
    CHECK(run({}).code == cli::kUsageError);
    CHECK(run({"recall", "--model", "boltzmann", "--memory", "a", "--key", "b"}).code == cli::kUsageError);
    CHECK(run({"--help"}).code == cli::kOk);

    const auto missing = run({"learn", "--patterns", "/nonexistent/assocmem/p.json"});
    CHECK(missing.code == cli::kDomainError);
    CHECK(missing.err.find("/nonexistent/assocmem/p.json") != std::string::npos);
}

TEST_CASE("sweep writes CSV, sidecar and echoes resolved options") {
    TempDir d("assocmem_cli_sweep");
    ExperimentConfig cfg;
    cfg.n = 50;
    cfg.p_values = {2, 10};
    cfg.levels = {0.0, 0.1};
    cfg.trials = 10;
    write_text_file(d / "cfg.json", to_json(cfg).dump(2));

    const auto r = run({"sweep", "--config", d / "cfg.json", "--out", d / "a.csv", "--threads", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "wrote " + (d / "a.csv") + "\n");
    CHECK(r.err.find("# resolved options") != std::string::npos);
    CHECK(r.err.find("threads") != std::string::npos);
    const auto csv = slurp(d / "a.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(fs::exists(d / "a.csv.config.json"));

    REQUIRE(run({"sweep", "--config", d / "cfg.json", "--out", d / "b.csv", "--threads", "1"}).code == 0);
    CHECK(slurp(d / "b.csv") == csv);

    const auto j = run({"sweep", "--config", d / "cfg.json", "--out", d / "c.csv", "--format", "json"});
    REQUIRE(j.code == 0);
    CHECK(fs::exists(d / "c.json"));
    CHECK(read_json_file(d / "c.json").size() == 4);
}
