#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "groupoids/cli.hpp"

namespace stdfs = std::filesystem;
using oracle::enumerate_groupoids;

namespace {

const stdfs::path kFixtures = TEST_FIXTURE_DIR;

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

stdfs::path scratch_dir() {
    auto dir = stdfs::temp_directory_path() / "groupoid_cli_tests";
    stdfs::create_directories(dir);
    return dir;
}

stdfs::path write_file(const std::string& name, const std::string& content) {
    auto path = scratch_dir() / name;
    std::ofstream(path) << content;
    return path;
}

std::string slurp(const stdfs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("golden round trips for the fixtures") {
    for (const std::string name : {"one.json", "bz2.json", "d2.json", "i2.json"}) {
        auto gl = cli::load_groupoid_file(kFixtures / name);
        REQUIRE(gl.groupoid.has_value());
        CHECK(gpd::validate_groupoid(*gl.groupoid).empty());
        auto printed = cli::groupoid_to_json(*gl.groupoid).dump(2) + "\n";
        CHECK(printed == slurp(kFixtures / "golden" / name));
        auto reparsed = cli::groupoid_from_json(nlohmann::json::parse(printed));
        REQUIRE(reparsed.groupoid.has_value());
        CHECK(*reparsed.groupoid == *gl.groupoid);
    }
    auto fl = cli::load_functor_file(kFixtures / "f_one_to_bz2.json");
    REQUIRE(fl.functor.has_value());
    auto printed = cli::functor_to_json(*fl.functor, std::nullopt, std::nullopt);
    auto reparsed = cli::functor_from_json(printed, kFixtures);
    REQUIRE(reparsed.functor.has_value());
    CHECK(*reparsed.functor == *fl.functor);
}

TEST_CASE("printing and reparsing is the identity on enumerated groupoids") {
    for (const auto& g : enumerate_groupoids({2, 2, 3, 6})) {
        auto doc = cli::groupoid_to_json(g);
        auto back = cli::groupoid_from_json(doc);
        REQUIRE(back.groupoid.has_value());
        CHECK(*back.groupoid == g);
    }
}

TEST_CASE("validate honors the exit-code contract") {
    CHECK(run_cli({"validate", (kFixtures / "bz2.json").string()}).code == 0);
    CHECK(run_cli({"validate", (kFixtures / "f_one_to_bz2.json").string()}).code == 0);

    auto missing_inv = write_file("missing_inv.json", R"({
      "objects": ["*"],
      "arrows": [{"name": "1", "d": "*", "c": "*"}, {"name": "s", "d": "*", "c": "*"}],
      "inv": {"1": "1"},
      "comp": [["1","1","1"],["1","s","s"],["s","1","s"],["s","s","1"]],
      "units": {"*": "1"}
    })");
    auto r = run_cli({"validate", missing_inv.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("'s'") != std::string::npos);

    auto malformed = write_file("malformed.json", "{ not json");
    CHECK(run_cli({"validate", malformed.string()}).code == 1);

    CHECK(run_cli({"validate", (scratch_dir() / "no_such_file.json").string()}).code == 1);

    auto bad_axiom = write_file("bad_axiom.json", R"({
      "objects": ["*"],
      "arrows": [{"name": "1", "d": "*", "c": "*"}, {"name": "s", "d": "*", "c": "*"}],
      "inv": {"1": "1", "s": "s"},
      "comp": [["1","1","1"],["1","s","s"],["s","1","s"],["s","s","s"]],
      "units": {"*": "1"}
    })");
    CHECK(run_cli({"validate", bad_axiom.string()}).code == 2);

    CHECK(run_cli({"frobnicate"}).code == 1);
}

TEST_CASE("analyze reports the expected classification") {
    SUBCASE("point into BZ2") {
        auto out_file = scratch_dir() / "report.json";
        auto r = run_cli({"analyze", (kFixtures / "f_one_to_bz2.json").string(), "--out",
                          out_file.string()});
        CHECK(r.code == 0);
        CHECK(r.out.find("full:                   no") != std::string::npos);
        CHECK(r.out.find("faithful:               yes") != std::string::npos);
        CHECK(r.out.find("essentially surjective: yes") != std::string::npos);
        CHECK(r.out.find("final (comma):          no") != std::string::npos);
        CHECK(r.out.find("agreement:              yes") != std::string::npos);
        auto report = nlohmann::json::parse(slurp(out_file));
        CHECK(report["agreement"] == true);
        CHECK(report["full"] == false);
        CHECK(report["final_by_support"] == false);
    }
    SUBCASE("discrete into codiscrete: pi0 is 2 -> 1 and not final") {
        auto r = run_cli({"analyze", (kFixtures / "f_d2_to_i2.json").string()});
        CHECK(r.code == 0);
        CHECK(r.out.find("final (decalage):       no") != std::string::npos);
        CHECK(r.out.find("pi0: 2 -> 1") != std::string::npos);
    }
    SUBCASE("identity functor: everything positive") {
        auto id_doc = write_file("id_bz2.json", R"({
          "dom": ")" + (kFixtures / "bz2.json").string() + R"(",
          "cod": ")" + (kFixtures / "bz2.json").string() + R"(",
          "f0": {"*": "*"},
          "f1": {"1": "1", "s": "s"}
        })");
        auto r = run_cli({"analyze", id_doc.string()});
        CHECK(r.code == 0);
        CHECK(r.out.find("full:                   yes") != std::string::npos);
        CHECK(r.out.find("discrete fibration:     yes") != std::string::npos);
        CHECK(r.out.find("final (fullness):       yes") != std::string::npos);
    }
}

TEST_CASE("factorize writes validating documents") {
    auto dir = scratch_dir() / "fact_out";
    stdfs::remove_all(dir);
    auto r = run_cli({"factorize", (kFixtures / "f_one_to_bz2.json").string(), "--out",
                      dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("T0: 2 objects") != std::string::npos);
    CHECK(r.out.find("T1: 4 arrows") != std::string::npos);
    CHECK(r.out.find("K . J = F: ok") != std::string::npos);
    CHECK(r.out.find("K discrete fibration: ok") != std::string::npos);
    CHECK(r.out.find("J final: ok") != std::string::npos);

    CHECK(run_cli({"validate", (dir / "T.json").string()}).code == 0);
    CHECK(run_cli({"validate", (dir / "J.json").string()}).code == 0);
    CHECK(run_cli({"validate", (dir / "K.json").string()}).code == 0);

    SUBCASE("a discrete fibration input reports J as iso") {
        auto dir2 = scratch_dir() / "fact_id";
        stdfs::remove_all(dir2);
        auto id_doc = write_file("id_bz2_f.json", R"({
          "dom": ")" + (kFixtures / "bz2.json").string() + R"(",
          "cod": ")" + (kFixtures / "bz2.json").string() + R"(",
          "f0": {"*": "*"},
          "f1": {"1": "1", "s": "s"}
        })");
        auto r2 = run_cli({"factorize", id_doc.string(), "--out", dir2.string()});
        CHECK(r2.code == 0);
        CHECK(r2.out.find("J iso: yes") != std::string::npos);
    }
}

TEST_CASE("pi0, dec, support and lift commands") {
    CHECK(run_cli({"pi0", (kFixtures / "d2.json").string()}).out.find("2 component(s)") !=
          std::string::npos);
    CHECK(run_cli({"pi0", (kFixtures / "i2.json").string()}).out.find("1 component(s)") !=
          std::string::npos);

    auto dec_out = scratch_dir() / "dec_bz2.json";
    auto r = run_cli({"dec", (kFixtures / "bz2.json").string(), "--out", dec_out.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("2 objects, 4 arrows") != std::string::npos);
    CHECK(run_cli({"validate", dec_out.string()}).code == 0);

    CHECK(run_cli({"support", (kFixtures / "bz2.json").string()}).out.find("1 related pair") !=
          std::string::npos);

    auto lift_in = write_file("lift_in.json", R"({
      "objects": ["p", "q"],
      "map": {"p": "*", "q": "*"},
      "cod": ")" + (kFixtures / "bz2.json").string() + R"("
    })");
    auto lift_dir = scratch_dir() / "lift_out";
    stdfs::remove_all(lift_dir);
    auto lr = run_cli({"lift", lift_in.string(), "--out", lift_dir.string()});
    CHECK(lr.code == 0);
    CHECK(lr.out.find("2 objects, 8 arrows") != std::string::npos);
    CHECK(lr.out.find("fully faithful: yes") != std::string::npos);
    CHECK(run_cli({"validate", (lift_dir / "lifted.json").string()}).code == 0);
    CHECK(run_cli({"validate", (lift_dir / "to_base.json").string()}).code == 0);
}

TEST_CASE("boff command") {
    auto dir = scratch_dir() / "boff_out";
    stdfs::remove_all(dir);
    auto r = run_cli({"boff", (kFixtures / "f_one_to_bz2.json").string(), "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("phi mono (faithful): yes") != std::string::npos);
    CHECK(r.out.find("phi regular epi (full): no") != std::string::npos);
    CHECK(run_cli({"validate", (dir / "middle.json").string()}).code == 0);
    CHECK(run_cli({"validate", (dir / "bo.json").string()}).code == 0);
    CHECK(run_cli({"validate", (dir / "ff.json").string()}).code == 0);
}

TEST_CASE("sweep command") {
    SUBCASE("tiny bounds emit the exact instance count") {
        auto r = run_cli({"sweep", "--max-components", "1", "--max-objects-per-component", "1",
                          "--max-group-order", "2"});
        CHECK(r.code == 0);
        CHECK(r.out.find("groupoids: 2") != std::string::npos);
        CHECK(r.out.find("functor instances: 5") != std::string::npos);
        CHECK(r.out.find("finality disagreements: 0") != std::string::npos);
    }
    SUBCASE("zero arrow budget is an empty, successful sweep") {
        auto r = run_cli({"sweep", "--max-total-arrows", "0"});
        CHECK(r.code == 0);
        CHECK(r.out.find("functor instances: 0") != std::string::npos);
    }
    SUBCASE("group order above the table is a usage error") {
        CHECK(run_cli({"sweep", "--max-group-order", "7"}).code == 1);
    }
    SUBCASE("parallel jobs give the same counts") {
        auto serial = run_cli({"sweep", "--max-components", "2", "--max-objects-per-component",
                               "1", "--max-group-order", "2", "--jobs", "1"});
        auto parallel = run_cli({"sweep", "--max-components", "2", "--max-objects-per-component",
                                 "1", "--max-group-order", "2", "--jobs", "2"});
        CHECK(serial.code == 0);
        CHECK(parallel.code == 0);
        CHECK(serial.out == parallel.out);
    }
}
