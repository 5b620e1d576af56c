#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "ascentlab/io.hpp"
#include "oracles.hpp"

using namespace ascentlab;
using namespace ascentlab::build;
using ascentlab::io::json;

namespace {

fitness_t two_pow(int k)
{
    fitness_t v = 1;
    for (int i = 0; i < k; ++i) v *= 2;
    return v;
}

} // namespace

TEST_CASE("fitness values beyond int64 become strings")
{
    CHECK(io::fitness_to_json(42) == json(42));
    CHECK(io::fitness_to_json(-7) == json(-7));
    const fitness_t big = two_pow(100) + 3;
    const json j = io::fitness_to_json(big);
    REQUIRE(j.is_string());
    CHECK(j.get<std::string>() == "1267650600228229401496703205379");
    CHECK(io::fitness_from_json(j) == big);
    CHECK(io::fitness_from_json(io::fitness_to_json(-big)) == -big);
    CHECK(io::fitness_from_json(json("12")) == 12);
    CHECK_THROWS_AS(io::fitness_from_json(json("12x")), ValidationError);
    CHECK_THROWS_AS(io::fitness_from_json(json(1.5)), ValidationError);
    CHECK_THROWS_AS(io::fitness_from_json(json::array()), ValidationError);
}

TEST_CASE("instances round trip")
{
    for (const auto& inst : {build_2by3(5), build_3by5(4), build_boolean_pw4(3).instance}) {
        const json j = io::instance_to_json(inst);
        const VcspInstance back = io::instance_from_json(j);
        CHECK(io::instance_to_json(back) == j);
        CHECK(back.var_count() == inst.var_count());
        CHECK(back.meta().family == inst.meta().family);
        CHECK(back.meta().n == inst.meta().n);
        // and through text
        CHECK(io::instance_to_json(io::instance_from_json(json::parse(j.dump()))) == j);
    }
}

TEST_CASE("a wide instance keeps its large weights")
{
    const VcspInstance inst = build_2by3(130);
    const json j = io::instance_to_json(inst);
    bool saw_string = false;
    for (const auto& c : j["constraints"])
        for (const auto& v : c["values"]) saw_string = saw_string || v.is_string();
    CHECK(saw_string);
    const VcspInstance back = io::instance_from_json(json::parse(j.dump()));
    CHECK(evaluate_fitness(back, Assignment(130, 1)) == evaluate_fitness(inst, Assignment(130, 1)));
}

TEST_CASE("property: 1000 random assignments survive a round trip")
{
    std::mt19937_64 rng(37);
    const VcspInstance inst = io::instance_from_json(io::instance_to_json(build_3by5(8)));
    const VcspInstance orig = build_3by5(8);
    for (int i = 0; i < 1000; ++i) {
        const Assignment x = oracle::random_assignment(orig, rng);
        const json labels = io::assignment_to_json(orig, x);
        CHECK(io::assignment_from_json(inst, json::parse(labels.dump())) == x);
        CHECK(io::assignment_from_json(inst, json(x)) == x);
        CHECK(evaluate_fitness(inst, x) == evaluate_fitness(orig, x));
    }
}

TEST_CASE("malformed input is rejected")
{
    const json good = io::instance_to_json(build_2by3(2));
    auto without = [&](const std::string& key) {
        json j = good;
        j.erase(key);
        return j;
    };
    CHECK_THROWS_AS(io::instance_from_json(json::array()), ValidationError);
    CHECK_THROWS_AS(io::instance_from_json(without("variables")), ValidationError);
    CHECK_THROWS_AS(io::instance_from_json(without("constraints")), ValidationError);
    CHECK_THROWS_AS(io::instance_from_json(without("version")), ValidationError);
    json v2 = good;
    v2["version"] = 2;
    CHECK_THROWS_AS(io::instance_from_json(v2), ValidationError);
    json short_table = good;
    short_table["constraints"][0]["values"].erase(0);
    CHECK_THROWS_AS(io::instance_from_json(short_table), ValidationError);
    json bad_scope = good;
    bad_scope["constraints"][0]["scope"] = {7};
    CHECK_THROWS_AS(io::instance_from_json(bad_scope), ValidationError);
    json self_loop = good;
    self_loop["variables"][0]["transitions"].push_back({1, 1});
    CHECK_THROWS_AS(io::instance_from_json(self_loop), ValidationError);
    json bad_pair = good;
    bad_pair["variables"][0]["transitions"].push_back({1});
    CHECK_THROWS_AS(io::instance_from_json(bad_pair), ValidationError);

    const VcspInstance inst = build_2by3(2);
    CHECK_THROWS_AS(io::assignment_from_json(inst, json({"A"})), ValidationError);
    CHECK_THROWS_AS(io::assignment_from_json(inst, json({"A", "Z"})), ValidationError);
    CHECK_THROWS_AS(io::assignment_from_json(inst, json({0, 9})), ValidationError);
    CHECK_THROWS_AS(io::assignment_from_json(inst, json({0, true})), ValidationError);
    CHECK_THROWS_AS(io::assignment_from_json(inst, json::object()), ValidationError);
}

TEST_CASE("files: missing paths and bad text")
{
    const auto dir = std::filesystem::temp_directory_path() / "ascentlab_test_io";
    std::filesystem::create_directories(dir);
    CHECK_THROWS_AS(io::read_json_file(dir / "absent.json"), io::IoError);
    {
        std::ofstream(dir / "broken.json") << "{\"version\": 1,";
    }
    CHECK_THROWS_AS(io::read_json_file(dir / "broken.json"), ValidationError);
    io::write_instance(dir / "i.json", build_2by3(3));
    CHECK(io::instance_to_json(io::read_instance(dir / "i.json")) == io::instance_to_json(build_2by3(3)));
    CHECK_THROWS_AS(io::write_json_file(dir / "no" / "such" / "dir.json", json::object()), io::IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("codec and decomposition sidecars round trip")
{
    const BooleanInstance b = build_boolean_pw4(5);
    const json cj = io::codec_to_json(b.codec);
    const BooleanCodec codec = io::codec_from_json(json::parse(cj.dump()));
    CHECK(io::codec_to_json(codec) == cj);
    CHECK(codec.bit_count() == b.codec.bit_count());
    for_each_assignment(build_2by3(5).domains(), [&](const Assignment& x) {
        CHECK(codec.encode(x) == b.codec.encode(x));
    });
    const PathDecomposition d = io::decomposition_from_json(io::decomposition_to_json(b.decomposition));
    CHECK(d.bags == b.decomposition.bags);
    CHECK_THROWS_AS(io::decomposition_from_json(json{{"bags", "x"}}), ValidationError);
    json bad = cj;
    bad["collections"][0]["codes"]["10"] = "Q";
    CHECK_THROWS_AS(io::codec_from_json(bad), ValidationError);
}

TEST_CASE("trace CSV")
{
    const VcspInstance inst = build_2by3(2);
    const auto t = ordered_ascent(inst, canonical_start(family_2by3, 2), identity_order(2));
    std::ostringstream out;
    io::write_trace_csv(out, inst, t);
    std::istringstream in(out.str());
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == t.length() + 1);
    CHECK(lines[0] == "step,var,from,to,fitness");
    CHECK(lines[1] == "1,0,A,B,1");
    CHECK(lines.back().rfind(std::to_string(t.length()) + ",", 0) == 0);

    const json tj = io::trace_to_json(inst, t);
    CHECK(tj["length"] == t.length());
    CHECK(tj["policy"] == "ordered");
    CHECK(tj["steps"].size() == t.length());
    CHECK(tj["terminal"] == true);
}

TEST_CASE("reports carry counterexamples")
{
    verify::CheckReport r;
    r.name = "padding";
    r.params.emplace_back("n_max", "4");
    CHECK(io::report_to_json(r)["verdict"] == "pass");
    CHECK_FALSE(io::report_to_json(r).contains("counterexample"));
    verify::Counterexample c;
    c.assignment = {1, 2};
    c.expected = 5;
    c.actual = two_pow(90);
    c.detail = "mismatch";
    r.fail(c);
    const json j = io::report_to_json(r);
    CHECK(j["verdict"] == "fail");
    CHECK(j["counterexample"]["assignment"] == json({1, 2}));
    CHECK(j["counterexample"]["expected"] == 5);
    CHECK(j["counterexample"]["actual"].is_string());
    CHECK(j["params"]["n_max"] == "4");
}

TEST_CASE("summary JSON")
{
    io::RunSummary s;
    s.family = "2by3";
    s.n = 4;
    s.engine = "ordered";
    s.start = "canonical";
    s.steps = 22;
    s.terminal = true;
    s.final_fitness = 22;
    const json j = io::summary_to_json(s);
    CHECK(j["steps"] == 22);
    CHECK(j["final_fitness"] == 22);
    CHECK(j["steps_per_second"] == 0.0);
}
