#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "oracles.hpp"

using json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(ASCENTLAB_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

std::filesystem::path scratch()
{
    const auto dir = std::filesystem::temp_directory_path() / "ascentlab_test_cli";
    std::filesystem::create_directories(dir);
    return dir;
}

json read_json(const std::filesystem::path& p)
{
    std::ifstream in(p);
    return json::parse(in);
}

} // namespace

TEST_CASE("gen writes instances")
{
    const Run r = run("gen --family 2by3 --n 2");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["variables"].size() == 2);
    CHECK(j["meta"]["family"] == "2by3");

    const auto dir = scratch();
    REQUIRE(run("gen --family bool-pw4 --n 4 --out " + (dir / "pw.json").string()).code == 0);
    const json inst = read_json(dir / "pw.json");
    CHECK(inst["variables"].size() == 10);
    std::size_t arity = 0;
    for (const auto& c : inst["constraints"]) arity = std::max(arity, c["scope"].size());
    CHECK(arity == 5);
    CHECK(read_json(dir / "pw.codec.json")["collections"].size() == 4);
    std::size_t width = 0;
    const json bags = read_json(dir / "pw.decomposition.json")["bags"];
    for (const auto& b : bags) width = std::max(width, b.size());
    CHECK(width == 5);
}

TEST_CASE("usage errors exit 2")
{
    CHECK(run("gen --family 2by3 --n 1").code == 2);
    CHECK(run("gen --family nope --n 3").code == 2);
    CHECK(run("ascend --family 2by3 --n 3 --engine sideways").code == 2);
    CHECK(run("ascend /no/such/file.json").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("ascend reports exact step counts")
{
    const Run ordered = run("ascend --family 2by3 --n 4 --engine ordered");
    REQUIRE(ordered.code == 0);
    const json o = json::parse(ordered.out);
    CHECK(o["steps"] == 22);
    CHECK(o["final_fitness"] == 22);
    CHECK(o["terminal"] == true);

    const Run steep = run("ascend --family 3by5 --n 4 --engine steepest");
    REQUIRE(steep.code == 0);
    CHECK(json::parse(steep.out)["steps"] == 44);

    const auto dir = scratch();
    const auto file = (dir / "x.json").string();
    REQUIRE(run("gen --family 2by3 --n 5 --out " + file).code == 0);
    const Run from_file = run("ascend " + file + " --engine ordered");
    REQUIRE(from_file.code == 0);
    CHECK(json::parse(from_file.out)["steps"] == oracle::f_max_closed(5));
}

TEST_CASE("step limit exits 3 and keeps the partial trace")
{
    const auto csv = (scratch() / "t.csv").string();
    const Run r = run("ascend --family 2by3 --n 4 --step-limit 1 --trace " + csv);
    CHECK(r.code == 3);
    CHECK(json::parse(r.out)["terminal"] == false);
    std::ifstream in(csv);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto rows = lines_of(ss.str());
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "step,var,from,to,fitness");
}

TEST_CASE("JSON trace")
{
    const auto path = scratch() / "t.json";
    REQUIRE(run("ascend --family 2by3 --n 3 --engine ordered --trace " + path.string()).code == 0);
    const json t = read_json(path);
    CHECK(t["length"] == 10);
    CHECK(t["steps"].size() == 10);
}

TEST_CASE("verify")
{
    const Run r = run("verify --check rank1");
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["verdict"] == "pass");
    CHECK(run("verify --check nope").code == 2);
    const Run all = run("verify --check all --cap 4");
    CHECK(all.code == 0);
    CHECK(lines_of(all.out).size() == 8);
}

TEST_CASE("bench")
{
    const Run empty = run("bench --family 2by3 --n \"\"");
    CHECK(empty.code == 0);
    CHECK(lines_of(empty.out) == std::vector<std::string>{"family,n,steps,seconds,steps_per_sec"});

    const Run r = run("bench --family 2by3 --n 2..20");
    REQUIRE(r.code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 20);
    for (int n = 2; n <= 20; ++n) {
        std::istringstream row(rows[static_cast<std::size_t>(n - 1)]);
        std::string family, nn, steps;
        std::getline(row, family, ',');
        std::getline(row, nn, ',');
        std::getline(row, steps, ',');
        CHECK(family == "2by3");
        CHECK(std::stoi(nn) == n);
        CHECK(static_cast<long long>(std::stoll(steps)) == static_cast<long long>(oracle::f_max_closed(n)));
    }
    CHECK(lines_of(run("bench --family 3by5 --n 3,5").out).size() == 3);
}
