#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ascentlab/ascent.hpp"
#include "ascentlab/verification.hpp"
#include "oracles.hpp"

using namespace ascentlab;

namespace {

DomainSpec chain(std::string name, std::size_t size)
{
    DomainSpec d{std::move(name), {}, {}};
    for (std::size_t i = 0; i < size; ++i) d.states.push_back("s" + std::to_string(i));
    for (std::size_t i = 0; i + 1 < size; ++i) d.transitions.emplace_back(i, i + 1);
    return d;
}

/// Two independent bits; flipping bit 1 gains 2, bit 0 gains 1.
VcspInstance two_bits()
{
    InstanceData d;
    d.domains = {chain("a", 2), chain("b", 2)};
    d.constraints = {{"a", {0}, {0, 1}}, {"b", {1}, {0, 2}}};
    return VcspInstance(std::move(d));
}

/// Two bits whose flips gain the same amount.
VcspInstance tied_bits()
{
    InstanceData d;
    d.domains = {chain("a", 2), chain("b", 2)};
    d.constraints = {{"a", {0}, {0, 3}}, {"b", {1}, {0, 3}}};
    return VcspInstance(std::move(d));
}

} // namespace

TEST_CASE("policy names round trip")
{
    for (auto p : {AscentPolicy::Steepest, AscentPolicy::Ordered, AscentPolicy::FirstImprovement,
                   AscentPolicy::Simulated, AscentPolicy::Oracle})
        CHECK(parse_policy(to_string(p)) == p);
    CHECK_FALSE(parse_policy("sideways").has_value());
}

TEST_CASE("steepest takes the largest gain first")
{
    const auto inst = two_bits();
    const auto t = steepest_ascent(inst, {0, 0});
    REQUIRE(t.length() == 2);
    CHECK(t.steps[0].var == 1);
    CHECK(t.steps[0].fitness_after == 2);
    CHECK(t.steps[1].var == 0);
    CHECK(t.final_fitness() == 3);
    CHECK(t.terminal);
    CHECK_FALSE(t.tie);
    CHECK_FALSE(verify_steepest(inst, t).has_value());
}

TEST_CASE("ordered follows the order, not the gain")
{
    const auto inst = two_bits();
    const auto t = ordered_ascent(inst, {0, 0}, identity_order(2));
    REQUIRE(t.length() == 2);
    CHECK(t.steps[0].var == 0);
    CHECK(t.steps[1].var == 1);
    const std::vector<VarId> reversed = {1, 0};
    const auto r = ordered_ascent(inst, {0, 0}, reversed);
    CHECK(r.steps[0].var == 1);
    CHECK_FALSE(verify_ordered(inst, r, reversed).has_value());
    CHECK(verify_ordered(inst, t, reversed).has_value());
    // Steepest trace is also not an identity-ordered trace here.
    CHECK(verify_ordered(inst, steepest_ascent(inst, {0, 0}), identity_order(2)).has_value());
}

TEST_CASE("ties break to the lowest variable and are flagged")
{
    const auto inst = tied_bits();
    const auto t = steepest_ascent(inst, {0, 0});
    REQUIRE(t.length() == 2);
    CHECK(t.steps[0].var == 0);
    CHECK(t.tie);
    const auto o = verify::exhaustive_steepest_oracle(inst, {0, 0});
    CHECK(same_walk(o, t));
}

TEST_CASE("ambiguity flag on ordered walks")
{
    InstanceData d;
    DomainSpec star{"x", {"c", "l", "r"}, {{0, 1}, {0, 2}}};
    d.domains = {star};
    d.constraints = {{"u", {0}, {0, 1, 2}}};
    const VcspInstance inst(std::move(d));
    const auto t = ordered_ascent(inst, {0}, identity_order(1));
    REQUIRE(t.length() == 1);
    CHECK(t.steps[0].to == 2);
    CHECK(t.ambiguous);
}

TEST_CASE("local solution gives an empty terminal trace")
{
    const auto inst = two_bits();
    for (const auto& t : {steepest_ascent(inst, {1, 1}), ordered_ascent(inst, {1, 1}, identity_order(2)),
                          first_improvement_ascent(inst, {1, 1}, unlimited_steps, 5),
                          verify::exhaustive_steepest_oracle(inst, {1, 1})}) {
        CHECK(t.length() == 0);
        CHECK(t.terminal);
        CHECK(t.final_fitness() == 3);
    }
}

TEST_CASE("step limit stops early without the terminal flag")
{
    const auto inst = two_bits();
    const auto t = steepest_ascent(inst, {0, 0}, 1);
    CHECK(t.length() == 1);
    CHECK_FALSE(t.terminal);
    const auto z = steepest_ascent(inst, {0, 0}, 0);
    CHECK(z.length() == 0);
    CHECK_FALSE(z.terminal);
    // A limit equal to the exact length still reports a terminal walk.
    CHECK(steepest_ascent(inst, {0, 0}, 2).terminal);
}

TEST_CASE("state_at replays steps")
{
    const auto inst = two_bits();
    const auto t = steepest_ascent(inst, {0, 0});
    CHECK(t.state_at(0) == Assignment{0, 0});
    CHECK(t.state_at(1) == Assignment{0, 1});
    CHECK(t.state_at(2) == Assignment{1, 1});
    CHECK(t.final_assignment() == Assignment{1, 1});
}

TEST_CASE("verifiers catch tampered traces")
{
    const auto inst = two_bits();
    auto t = steepest_ascent(inst, {0, 0});
    SUBCASE("wrong fitness")
    {
        t.steps[0].fitness_after = 7;
        CHECK(verify_ascent(inst, t).has_value());
    }
    SUBCASE("wrong from-state")
    {
        t.steps[1].from = 1;
        CHECK(verify_ascent(inst, t).has_value());
    }
    SUBCASE("non-steepest step")
    {
        auto o = ordered_ascent(inst, {0, 0}, identity_order(2));
        const auto v = verify_steepest(inst, o);
        REQUIRE(v.has_value());
        CHECK(v->step == 0);
        REQUIRE(v->witness.has_value());
        CHECK(v->witness->var == 1);
    }
    SUBCASE("premature terminal flag")
    {
        t.steps.pop_back();
        CHECK(verify_ascent(inst, t).has_value());
    }
    SUBCASE("bad start")
    {
        t.start = {0};
        CHECK(verify_ascent(inst, t).has_value());
    }
}

TEST_CASE("first improvement is deterministic per seed and still an ascent")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = oracle::random_instance(rng, 5, 4, 6, 3);
        const auto x = oracle::random_assignment(inst, rng);
        const auto a = first_improvement_ascent(inst, x, unlimited_steps, 99);
        const auto b = first_improvement_ascent(inst, x, unlimited_steps, 99);
        CHECK(same_walk(a, b));
        CHECK(a.terminal);
        CHECK_FALSE(verify_ascent(inst, a).has_value());
        CHECK(is_local_solution(inst, a.final_assignment()));
    }
}

TEST_CASE("property: engines agree with the from-scratch oracle on random instances")
{
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        const auto inst = oracle::random_instance(rng, 6, 4, 8, 3);
        const auto x = oracle::random_assignment(inst, rng);
        const auto s = steepest_ascent(inst, x);
        CHECK(same_walk(verify::exhaustive_steepest_oracle(inst, x), s));
        CHECK_FALSE(verify_steepest(inst, s).has_value());
        const auto order = identity_order(inst.var_count());
        const auto o = ordered_ascent(inst, x, order);
        CHECK_FALSE(verify_ordered(inst, o, order).has_value());
        CHECK(o.terminal);
    }
}

TEST_CASE("streaming walk matches stored trace")
{
    std::mt19937_64 rng(31);
    const auto inst = oracle::random_instance(rng, 6, 3, 8, 3);
    const auto x = oracle::random_assignment(inst, rng);
    std::vector<StepRecord> seen;
    const auto w = walk_steepest(inst, x, unlimited_steps, [&](const StepRecord& s) { seen.push_back(s); });
    const auto t = steepest_ascent(inst, x);
    CHECK(seen == t.steps);
    CHECK(w.steps == t.length());
    CHECK(w.final_fitness == t.final_fitness());
    CHECK(w.final_assignment == t.final_assignment());
}

TEST_CASE("engines reject bad input")
{
    const auto inst = two_bits();
    CHECK_THROWS_AS(steepest_ascent(inst, {0}), ValidationError);
    const std::vector<VarId> bad_order = {0, 0};
    CHECK_THROWS(ordered_ascent(inst, {0, 0}, bad_order));
}
