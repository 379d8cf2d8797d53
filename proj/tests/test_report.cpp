#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "pseudoboson/run.hpp"
#include "pseudoboson/serialize.hpp"

using namespace pseudoboson;

namespace {
RunConfig small_verify() {
    RunConfig cfg;
    cfg.command = "gll-verify";
    cfg.k1 = 0.2;
    cfg.k2 = -0.3;
    cfg.nmax = 3;
    cfg.lmax = 3;
    return cfg;
}
}  // namespace

TEST_CASE("gll-verify run passes and reports the schema") {
    const Report rep = run(small_verify());
    CHECK(rep.failures == 0);
    CHECK(exit_code_for(rep) == 0);
    CHECK(rep.body["schema"] == kReportSchema);
    CHECK(rep.body["version"] == kArtifactVersion);
    CHECK(rep.body["verdict"] == "norm growth detected");
    CHECK(rep.gram.rows == 16);

    // every check carries an equation tag
    for (const auto& c : rep.body["checks"]) {
        CHECK(c["tag"].get<std::string>().rfind("Eq.", 0) == 0);
        CHECK(c["wall_ms"].get<double>() == 0.0);
    }
}

TEST_CASE("baseline run degenerates to the orthonormal picture") {
    RunConfig cfg;
    cfg.command = "sll-baseline";
    cfg.nmax = 3;
    cfg.lmax = 3;
    cfg.nodes = 8;
    const Report rep = run(cfg);
    CHECK(rep.failures == 0);
    CHECK(rep.body["verdict"] == "Riesz-compatible");
    for (double r : rep.body["r_sequence"].get<std::vector<double>>())
        CHECK(std::abs(r - 1.0) < 1e-10);
}

TEST_CASE("dho commands") {
    RunConfig cfg;
    cfg.command = "dho-check";
    cfg.m = 1.0;
    cfg.gamma = 1.0;
    cfg.k = 1.0;
    const Report rep = run(cfg);
    CHECK(rep.failures == 0);
    CHECK(rep.body["normalizable"] == false);
    CHECK(rep.body["config"]["delta"].is_array());  // solver result echoed

    RunConfig sweep;
    sweep.command = "dho-sweep";
    sweep.n = 50;
    sweep.seed = 7;
    const Report srep = run(sweep);
    CHECK(srep.failures == 0);
    CHECK(srep.body["normalizable_false"] == 50);
}

TEST_CASE("reports are byte-deterministic given config and seed") {
    const Report a = run(small_verify());
    const Report b = run(small_verify());
    CHECK(render_json(a.body) == render_json(b.body));
}

TEST_CASE("config echo round-trips to an identical report") {
    const Report a = run(small_verify());
    RunConfig cfg;
    apply_json_config(cfg, nlohmann::json::parse(a.body["config"].dump()));
    const Report b = run(cfg);
    CHECK(render_json(a.body) == render_json(b.body));
}

TEST_CASE("unknown keys and bad ranges are rejected") {
    RunConfig cfg;
    CHECK_THROWS_AS(apply_json_config(cfg, nlohmann::json{{"k3", 1.0}}), ConfigError);

    RunConfig bad = small_verify();
    bad.k1 = 0.5;
    CHECK_THROWS_AS(run(bad), ConfigError);
    bad = small_verify();
    bad.nmax = 30;
    CHECK_THROWS_AS(run(bad), ConfigError);
    bad = small_verify();
    bad.format = "xml";
    CHECK_THROWS_AS(run(bad), ConfigError);
    bad = small_verify();
    bad.format = "csv";  // csv with no output path
    CHECK_THROWS_AS(run(bad), ConfigError);
    bad = small_verify();
    bad.command = "gll-unknown";
    CHECK_THROWS_AS(run(bad), ConfigError);
}

TEST_CASE("float rendering uses 17 significant digits") {
    nlohmann::ordered_json j;
    j["x"] = 0.1;
    j["n"] = 42;
    j["s"] = "a\"b";
    const std::string text = render_json(j);
    CHECK(text.find("0.10000000000000001") != std::string::npos);
    CHECK(text.find("42") != std::string::npos);
    CHECK(text.find("\"a\\\"b\"") != std::string::npos);
}

TEST_CASE("gram csv export") {
    ComplexMatrix g(2, 2);
    g.at(0, 0) = 1.0;
    g.at(0, 1) = Complex(0.0, -0.5);
    g.at(1, 1) = 1.0;
    const std::string csv = render_gram_csv(g, {"0.0", "0.1"});
    CHECK(csv.rfind("n.l,0.0,0.1\n", 0) == 0);
    CHECK(csv.find("-0.5j") != std::string::npos);
    CHECK(csv.find("0.0,1") != std::string::npos);
}

TEST_CASE("atomic write leaves no temp file and parses back") {
    const std::string path = (std::filesystem::temp_directory_path() / "pb_report.json").string();
    const Report rep = run(small_verify());
    write_file_atomic(path, render_json(rep.body));
    CHECK(std::filesystem::exists(path));
    CHECK(!std::filesystem::exists(path + ".tmp"));
    std::ifstream f(path);
    nlohmann::json parsed;
    f >> parsed;
    CHECK(parsed["schema"] == kReportSchema);
    std::filesystem::remove(path);
}

TEST_CASE("state and operator serialization") {
    const PolyGauss f(CoeffMap{{{0, 0}, Complex(0.5, -0.25)}, {{2, 1}, 1.0}},
                      QuadExponent{0.25, 0.5, 0.0, Complex(0, 1), 0.0, 0.0});
    const auto j = to_json(f);
    CHECK(j["coeffs"].size() == 2);
    CHECK(j["coeffs"][0] == nlohmann::json::parse("[0, 0, [0.5, -0.25]]"));
    CHECK(j["coeffs"][1][0] == 2);
    CHECK(j["coeffs"][1][1] == 1);
    CHECK(j["exponent"].size() == 6);
    CHECK(j["exponent"][0] == nlohmann::json::parse("[0.25, 0.0]"));
    CHECK(j["exponent"][3] == nlohmann::json::parse("[0.0, 1.0]"));

    const AffineOp op{Complex(1, 2), 0.0, Complex(0, -1), 3.0, 0.0};
    const auto oj = to_json(op);
    REQUIRE(oj.size() == 5);
    CHECK(oj[0] == nlohmann::json::parse("[1.0, 2.0]"));
    CHECK(oj[2] == nlohmann::json::parse("[0.0, -1.0]"));
    CHECK(oj[3] == nlohmann::json::parse("[3.0, 0.0]"));

    // the coherent report embeds both serialized states
    RunConfig cfg;
    cfg.command = "gll-coherent";
    cfg.k1 = 0.1;
    cfg.k2 = 0.1;
    cfg.z = Complex(1.0, 0.0);
    cfg.zp = Complex(0.0, 1.0);
    cfg.nmax = cfg.lmax = 4;
    const Report rep = run(cfg);
    CHECK(rep.failures == 0);
    CHECK(rep.body["phi_t"]["coeffs"].size() == 1);
    CHECK(rep.body["phi_t"]["exponent"].size() == 6);
    CHECK(rep.body["overlap"].is_array());

    RunConfig dcfg;
    dcfg.command = "dho-check";
    const Report drep = run(dcfg);
    CHECK(drep.body["operators"]["a_plus"].size() == 5);
}

TEST_CASE("complex flag parsing") {
    CHECK(parse_complex("1.5") == Complex(1.5, 0.0));
    CHECK(parse_complex("0.5,-2") == Complex(0.5, -2.0));
    CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
    CHECK_THROWS_AS(parse_complex("1;2"), ConfigError);
}
