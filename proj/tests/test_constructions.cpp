#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ascentlab/constructions.hpp"
#include "oracles.hpp"

using namespace ascentlab;
using namespace ascentlab::build;

TEST_CASE("weight schedule")
{
    const auto m = weight_schedule(12);
    REQUIRE(m.size() == 12);
    CHECK(m[0] == 1);
    CHECK(m[1] == 5);
    CHECK(m[2] == 13);
    for (int k = 1; k <= 12; ++k) {
        CHECK(m[k - 1] == weight_m(k));
        CHECK(weight_m(k) == oracle::m_weight(k));
    }
    CHECK_THROWS(weight_m(0));
}

TEST_CASE("f_max spot values and closed form")
{
    const fitness_t expected[] = {5, 10, 22, 35, 63, 92, 152};
    for (int n = 2; n <= 8; ++n) CHECK(f_max(n) == expected[n - 2]);
    for (int n = 2; n <= 100; ++n) CHECK(f_max(n) == oracle::f_max_closed(n));
    CHECK(f_max(40) == 12582760);
    CHECK(f_max(40) == 3 * (fitness_t{1} << 22) - 152);
    CHECK_THROWS(f_max(1));
}

TEST_CASE("f_max doubling recurrences")
{
    for (int h = 1; 2 * h + 3 <= 120; ++h) {
        CHECK(f_max(2 * h + 2) == 2 * f_max(2 * h) + 7 * h + 5);
        CHECK(f_max(2 * h + 3) == 2 * f_max(2 * h + 1) + 7 * h + 8);
    }
}

TEST_CASE("literal tables")
{
    CHECK(tables::L() == make_matrix(3, 2, {0, 2, 1, 1, 2, 0}));
    CHECK(tables::M() == make_matrix(2, 3, {0, 1, 0, 1, 0, 1}));
    CHECK(tables::P() == make_matrix(3, 3, {0, 2, 0, 1, 1, 1, 2, 0, 2}));
    CHECK(tables::Q(5) == make_matrix(2, 2, {0, 11, 5, 6}));
    CHECK(tables::R(5) == make_matrix(2, 2, {11, 0, 6, 5}));
}

TEST_CASE("min tables are minima over the middle variable")
{
    // (m+1) P(u, v) = min over h in {A,B} of (m+1) L(u, h) + m' M(h, v), where m' = 2m+3 is
    // the next weight.
    const Matrix L = tables::L(), M = tables::M(), P = tables::P();
    for (fitness_t m : {1, 5, 13, 29}) {
        const fitness_t next = 2 * m + 3;
        for (std::size_t u = 0; u < 3; ++u)
            for (std::size_t v = 0; v < 3; ++v) {
                auto val = [&](std::size_t h) { return (m + 1) * L.at(u, h) + next * M.at(h, v); };
                CHECK((m + 1) * P.at(u, v) == std::min(val(0), val(1)));
            }
    }
    // Q/R: min over the two flanking main states of the even variable, weight m on M and
    // m+1 on L. Rows are the odd variable on the left, columns the odd variable on the right.
    for (fitness_t m : {1, 5, 13}) {
        for (std::size_t u = 0; u < 2; ++u)
            for (std::size_t v = 0; v < 2; ++v) {
                auto val = [&](std::size_t x) { return m * M.at(u, x) + (m + 1) * L.at(x, v); };
                CHECK(tables::Q(m).at(u, v) == std::min(val(0), val(1)));
                CHECK(tables::R(m).at(u, v) == std::min(val(1), val(2)));
            }
    }
}

TEST_CASE("2by3 fitness matches the direct table formula everywhere")
{
    for (int n = 2; n <= 7; ++n) {
        const VcspInstance inst = build_2by3(n);
        CHECK(inst.var_count() == static_cast<std::size_t>(n));
        for_each_assignment(inst.domains(),
                            [&](const Assignment& x) { CHECK(evaluate_fitness(inst, x) == oracle::path_fitness(x)); });
    }
}

TEST_CASE("f_max is the brute-force maximum")
{
    for (int n = 2; n <= 6; ++n) CHECK(oracle::brute_force_max(build_2by3(n)) == f_max(n));
}

TEST_CASE("ordered ascent is long, shortest ascent is not")
{
    for (int n = 2; n <= 5; ++n) {
        const VcspInstance inst = build_2by3(n);
        const auto start = canonical_start(family_2by3, n);
        const auto dag = oracle::ascent_extremes(inst, start);
        const auto ordered = ordered_ascent(inst, start, identity_order(inst.var_count()));
        CHECK(static_cast<fitness_t>(ordered.length()) == f_max(n));
        CHECK(dag.longest >= ordered.length());
        CHECK(dag.shortest <= steepest_ascent(inst, start).length());
        if (n == 4) CHECK(dag.shortest < 22);
    }
}

TEST_CASE("2by3 domains and labels")
{
    const VcspInstance inst = build_2by3(3);
    CHECK(inst.domain(0).states == std::vector<std::string>{"A", "B"});
    CHECK(inst.domain(1).states == std::vector<std::string>{"A", "B", "C"});
    CHECK(inst.domain(1).transitions.size() == 2);
    std::vector<std::string> labels;
    for (const auto& c : inst.constraints()) labels.push_back(c.label);
    CHECK(labels == std::vector<std::string>{"M^1", "L^1", "M^2(-,A)"});
}

TEST_CASE("range selection rejects oversized instances")
{
    CHECK_NOTHROW(build_2by3(100, IntRange::int64()));
    CHECK_THROWS_AS(build_2by3(140, IntRange::int64()), RangeError);
    CHECK_NOTHROW(build_2by3(140, IntRange::wide()));
    CHECK_THROWS_AS(build_2by3(260, IntRange::wide()), RangeError);
    CHECK_THROWS_AS(build_2by3(1), std::invalid_argument);
}

TEST_CASE("expansion map")
{
    const ExpansionMap map(build_2by3(2).domains());
    CHECK(map.expanded_domain(0).states == std::vector<std::string>{"A", "B", "s_AB"});
    CHECK(map.expanded_domain(1).states == std::vector<std::string>{"A", "B", "C", "s_AB", "s_BC"});
    CHECK(map.intermediate(1, 2, 1) == 4);
    CHECK(map.intermediate(1, 1, 2) == 4);
    CHECK(map.endpoints(1, 3) == std::pair<StateId, StateId>{0, 1});
    CHECK_THROWS(map.intermediate(1, 0, 2));
    CHECK_THROWS(map.endpoints(1, 1));
    // Expanded transitions chain A - s_AB - B - s_BC - C.
    const VcspInstance probe([&] {
        InstanceData d;
        d.domains = map.expanded_domains();
        return d;
    }());
    CHECK(probe.adjacent(1, 1).size() == 2);
    CHECK_FALSE(probe.permits(1, 0, 1));
}

TEST_CASE("padded landscape on hand-computed assignments")
{
    const int n = 3;
    const VcspInstance base = build_2by3(n);
    const ExpandedLandscape land = expand_landscape(base, identity_order(n));
    CHECK(land.scale() == 7);
    // all main
    const Assignment main{1, 2, 0};
    CHECK(land.fitness(main) == 7 * oracle::path_fitness(main));
    // one intermediate at 1-based position 2 between B and C
    const Assignment one{1, 4, 0};
    const fitness_t fb = oracle::path_fitness({1, 1, 0});
    const fitness_t fc = oracle::path_fitness({1, 2, 0});
    REQUIRE(fb != fc);
    CHECK(land.fitness(one) == (n - 2 + 1) + 7 * std::min(fb, fc));
    // two intermediates: min over four completions, bound adds 2n - (j + k) + 2
    const Assignment two{2, 3, 0};
    fitness_t lo = oracle::path_fitness({0, 0, 0});
    for (StateId a : {0u, 1u})
        for (StateId b : {0u, 1u}) lo = std::min(lo, oracle::path_fitness({a, b, 0}));
    CHECK(land.fitness(two) == 7 * lo);
    CHECK(land.two_intermediate_bound(two) == 2 * n - (1 + 2) + 2 + 7 * lo);
    CHECK_FALSE(land.two_intermediate_bound(one).has_value());
    CHECK_THROWS_AS(land.fitness(Assignment{9, 0, 0}), ValidationError);
}

TEST_CASE("equal completions drop the positional bonus")
{
    InstanceData d;
    d.domains = {DomainSpec{"x", {"A", "B"}, {{0, 1}}}, DomainSpec{"y", {"A", "B"}, {{0, 1}}}};
    d.constraints = {{"flat-x", {0}, {4, 4}}, {"y", {1}, {0, 1}}};
    const VcspInstance base(std::move(d));
    const ExpandedLandscape land = expand_landscape(base, identity_order(2));
    // x at s_AB: completions are equal, so the value is (2n+1) * min only.
    CHECK(land.fitness(Assignment{2, 0}) == 5 * 4);
    // y at s_AB: completions differ, so n - k + 1 = 1 is added.
    CHECK(land.fitness(Assignment{0, 2}) == 1 + 5 * 4);
}

TEST_CASE("order positions drive the bonus")
{
    const VcspInstance base = build_2by3(3);
    const std::vector<VarId> order = {2, 0, 1};
    const ExpandedLandscape land = expand_landscape(base, order);
    CHECK(land.position(2) == 1);
    CHECK(land.position(1) == 3);
    const fitness_t fa = oracle::path_fitness({0, 0, 0}), fb = oracle::path_fitness({0, 0, 1});
    CHECK(land.fitness(Assignment{0, 0, 2}) == 3 + 7 * std::min(fa, fb));
    CHECK_THROWS_AS(expand_landscape(base, std::vector<VarId>{0, 0, 1}), ValidationError);
}

TEST_CASE("simulated ascent doubles the walk")
{
    for (int n = 2; n <= 6; ++n) {
        const VcspInstance base = build_2by3(n);
        const auto order = identity_order(n);
        const auto ord = ordered_ascent(base, canonical_start(family_2by3, n), order);
        const ExpandedLandscape land = expand_landscape(base, order);
        const auto sim = simulate_ascent(ord, land);
        CHECK(sim.length() == 2 * ord.length());
        CHECK(sim.policy == AscentPolicy::Simulated);
        for (std::size_t t = 0; t <= ord.length(); ++t) CHECK(sim.state_at(2 * t) == ord.state_at(t));
        for (std::size_t t = 0; t < sim.length(); ++t) CHECK(sim.steps[t].fitness_after == land.fitness(sim.state_at(t + 1)));
    }
}

TEST_CASE("single-step base ascent gives a two-step simulation")
{
    InstanceData d;
    d.domains = {DomainSpec{"x", {"A", "B"}, {{0, 1}}}};
    d.constraints = {{"u", {0}, {0, 1}}};
    const VcspInstance base(std::move(d));
    const auto walk = ordered_ascent(base, {0}, identity_order(1));
    REQUIRE(walk.length() == 1);
    const auto sim = simulate_ascent(walk, expand_landscape(base, identity_order(1)));
    REQUIRE(sim.length() == 2);
    CHECK(sim.steps[0].to == 2);
    CHECK(sim.steps[1].to == 1);
}

TEST_CASE("simulate rejects a non-ascent")
{
    const VcspInstance base = build_2by3(2);
    auto walk = ordered_ascent(base, {0, 0}, identity_order(2));
    walk.steps[0].fitness_after += 1;
    CHECK_THROWS_AS(simulate_ascent(walk, expand_landscape(base, identity_order(2))), ValidationError);
}

TEST_CASE("3by5 structure")
{
    for (int n = 2; n <= 9; ++n) {
        const VcspInstance inst = build_3by5(n);
        CHECK(max_arity(inst) <= 3);
        for (VarId k = 0; k < inst.var_count(); ++k) CHECK(inst.domain(k).size() == (k % 2 == 0 ? 3u : 5u));
    }
    const VcspInstance four = build_3by5(4);
    bool has_t = false, has_s = false, has_u = false;
    for (const auto& c : four.constraints()) {
        has_t = has_t || c.label.rfind("That", 0) == 0;
        has_s = has_s || c.label.rfind("Shat", 0) == 0;
        has_u = has_u || c.label.rfind("Uhat", 0) == 0;
    }
    CHECK(has_t);
    CHECK(has_s);
    CHECK(has_u);
}

TEST_CASE("3by5 steepest ascent equals the simulated ordered ascent")
{
    for (int n = 2; n <= 8; ++n) {
        const VcspInstance base = build_2by3(n);
        const auto order = identity_order(n);
        const auto sim = simulate_ascent(ordered_ascent(base, canonical_start(family_2by3, n), order),
                                         expand_landscape(base, order));
        const auto steep = steepest_ascent(build_3by5(n), canonical_start(family_3by5, n));
        CHECK(same_walk(sim, steep));
        CHECK(static_cast<fitness_t>(steep.length()) == 2 * f_max(n));
        CHECK_FALSE(steep.tie);
    }
}

TEST_CASE("canonical starts")
{
    CHECK(canonical_start(family_2by3, 3) == Assignment{0, 0, 0});
    CHECK(canonical_start(family_pw4, 3) == Assignment{1, 0, 1, 0, 0, 1, 0});
    CHECK_THROWS(canonical_start("nope", 3));
    CHECK_THROWS(canonical_start(family_3by5, 1));
}
