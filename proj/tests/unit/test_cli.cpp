#include "schreier/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = schreier::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    const Result r = run(std::move(args));
    REQUIRE(r.code == 0);
    return json::parse(r.out);
}

}  // namespace

TEST_CASE("fold output") {
    const json j = run_json({"fold", "--gens", "aa,ab,bA"});
    CHECK(j["schema_version"] == 1);
    CHECK(j["command"] == "fold");
    CHECK(j["index"] == 2);
    CHECK(j["rank"] == 3);
    CHECK(j["complete"] == true);
    CHECK(j["canonical_hash"].get<std::string>().size() == 16);
    // the same subgroup from another generating set hashes the same
    CHECK(run_json({"fold", "--gens", "bA,aa,ab,abab"})["canonical_hash"] == j["canonical_hash"]);
    CHECK(run_json({"fold", "--gens", "a"})["index"].is_null());
}

TEST_CASE("fold output reads back as a graph file") {
    const Result r = run({"fold", "--gens", "abAB,aab"});
    REQUIRE(r.code == 0);
    const std::string path = "cli_roundtrip_graph.json";
    {
        std::ofstream f(path);
        f << r.out;
    }
    const json j = run_json({"analyze", "--graph", path, "--depth", "6"});
    CHECK(j["verdict"]["classification"] == "completely_dissipative");
    std::remove(path.c_str());
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"nosuch"}).code == 2);
    CHECK(run({"fold", "--gens", "az"}).code == 2);
    CHECK(run({"theta", "--gens", "a"}).code == 2);
    CHECK(run({"spheres", "--gens", "a", "--family", "ladder"}).code == 2);
    CHECK(run({"fold", "--gens", "a", "--format", "tsv"}).code == 2);
    CHECK(run({"analyze", "--graph", "/nonexistent.json"}).code == 2);
    CHECK(run({"analyze", "--family", "ladder", "--depth", "8", "--require-certified"}).code == 3);
    CHECK(run({"analyze", "--gens", "aa,ab,bA", "--require-certified"}).code == 0);
    CHECK(run({"boundary", "classify", "--family", "ladder", "--depth", "3", "--point", "|A",
               "--require-certified"})
              .code == 3);
    const Result bad = run({"fold", "--gens", "ab,c"});
    CHECK(bad.err.find("position 3") != std::string::npos);
}

TEST_CASE("rewrite round trip through the CLI") {
    const json to = run_json({"rewrite", "--gens", "aa,ab,bA", "--word", "aaabAB"});
    const std::string basis_word = to["basis_word"];
    const json back = run_json({"rewrite", "--gens", "aa,ab,bA", "--basis-word", basis_word});
    CHECK(back["word"] == "aaabAB");
    CHECK(run_json({"membership", "--gens", "a", "--word", "aaa"})["member"] == true);
    CHECK(run_json({"membership", "--gens", "a", "--word", "ab"})["member"] == false);
}

TEST_CASE("tables") {
    const Result tsv = run({"spheres", "--gens", "a", "--depth", "4", "--format", "tsv"});
    REQUIRE(tsv.code == 0);
    CHECK(tsv.out.find("n\tsphere\tgamma\ta_ratio\ta_sum") != std::string::npos);
    CHECK(tsv.out.find("4\t54\t0\t1/2\t1/2") != std::string::npos);
    const json c = run_json({"cogrowth", "--gens", "aa,ab,bA", "--depth", "4", "--rho-steps", "2"});
    CHECK(c["depth"] == 4);
    CHECK(c["counts"][2] == "12");
    CHECK(c["vH"]["certified"] == true);
    const json p = run_json({"partition", "--gens", "a", "--depth", "3"});
    CHECK(p["total_measure"] == "1/1");
}

TEST_CASE("stochastic output records the seed and ignores the thread count") {
    const std::vector<std::string> base{"simulate", "--family", "amendiss", "--steps", "200", "--trials", "50",
                                        "--seed", "5"};
    auto one = base, many = base;
    one.insert(one.end(), {"--threads", "1"});
    many.insert(many.end(), {"--threads", "4"});
    const Result a = run(one), b = run(many);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(json::parse(a.out)["seed"] == 5);
    const json cyc = run_json({"simulate", "--gens", "aa,ab,bA", "--chain", "cycle", "--trials", "100"});
    CHECK(cyc["cylinders"].size() == 12);
}

TEST_CASE("family commands") {
    const json list = run_json({"family", "list"});
    CHECK(list["families"].size() >= 11);
    const json inst = run_json({"family", "instantiate", "--name", "looped_ray", "--params", "d=n^2", "--depth", "3"});
    CHECK(inst["depth"] == 3);
    CHECK(inst["family"]["params"]["d"] == "n^2");
    const json fin = run_json({"family", "instantiate", "--name", "even_kernel"});
    CHECK(fin["graph"]["edges"].size() == 4);
    const json rep = run_json({"family", "report", "--name", "ladder", "--n-max", "8"});
    CHECK(rep["rows"].size() == 3);
}
