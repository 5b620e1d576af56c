#ifndef ASCENTLAB_ASCENT_HPP
#define ASCENTLAB_ASCENT_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ascentlab/model.hpp"

namespace ascentlab {

enum class AscentPolicy { Steepest, Ordered, FirstImprovement, Simulated, Oracle };

std::string_view to_string(AscentPolicy policy);
std::optional<AscentPolicy> parse_policy(std::string_view text);

struct StepRecord {
    VarId var = 0;
    StateId from = 0;
    StateId to = 0;
    fitness_t fitness_after = 0;

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

/// An ascent x^0 .. x^T stored as its start plus the T single-variable steps.
struct AscentTrace {
    AscentPolicy policy = AscentPolicy::Steepest;
    Assignment start;
    fitness_t start_fitness = 0;
    std::vector<StepRecord> steps;
    /// True iff the walk stopped at a local solution; false iff the step limit was hit.
    bool terminal = false;
    /// Steepest and oracle walks: some step had more than one maximal neighbour.
    bool tie = false;
    /// Ordered walks: some step had more than one improving state at the chosen variable.
    bool ambiguous = false;
    std::vector<VarId> order;  // ordered walks only
    std::uint64_t seed = 0;    // first-improvement walks only

    std::size_t length() const { return steps.size(); }
    Assignment final_assignment() const;
    fitness_t final_fitness() const { return steps.empty() ? start_fitness : steps.back().fitness_after; }
    /// Assignment after `t` steps, 0 <= t <= length().
    Assignment state_at(std::size_t t) const;
};

/// Same walk and flags as two traces describe; policy and bookkeeping fields are ignored.
bool same_walk(const AscentTrace& a, const AscentTrace& b);

/// Outcome of a walk that streamed its steps to a sink instead of storing them.
struct WalkSummary {
    Assignment final_assignment;
    fitness_t start_fitness = 0;
    fitness_t final_fitness = 0;
    std::uint64_t steps = 0;
    bool terminal = false;
    bool tie = false;
    bool ambiguous = false;
};

using StepSink = std::function<void(const StepRecord&)>;

inline constexpr std::uint64_t unlimited_steps = std::numeric_limits<std::uint64_t>::max();

std::vector<VarId> identity_order(std::size_t n);

// Streaming engines. Each keeps a cached best move per variable and refreshes only the
// variables that share a constraint with the one that moved.
WalkSummary walk_steepest(const VcspInstance& instance, Assignment start, std::uint64_t step_limit,
                          const StepSink& sink = {});
WalkSummary walk_ordered(const VcspInstance& instance, Assignment start, std::span<const VarId> order,
                         std::uint64_t step_limit, const StepSink& sink = {});
WalkSummary walk_first_improvement(const VcspInstance& instance, Assignment start,
                                   std::uint64_t step_limit, std::uint64_t seed,
                                   const StepSink& sink = {});

/// Moves to a maximum-fitness improving neighbour; ties go to the lowest variable, then
/// the lowest state.
AscentTrace steepest_ascent(const VcspInstance& instance, const Assignment& start,
                            std::uint64_t step_limit = unlimited_steps);

/// Changes the order-minimal variable that has an improving move, taking its best state
/// (lowest state on ties). `order[i]` is the variable ranked i.
AscentTrace ordered_ascent(const VcspInstance& instance, const Assignment& start,
                           std::span<const VarId> order, std::uint64_t step_limit = unlimited_steps);

/// Takes the first improving neighbour of a seeded random scan.
AscentTrace first_improvement_ascent(const VcspInstance& instance, const Assignment& start,
                                     std::uint64_t step_limit, std::uint64_t seed);

struct TraceViolation {
    std::size_t step = 0;
    std::string reason;
    std::optional<Move> witness;
};

// The verifiers re-evaluate every assignment from scratch; they never use delta evaluation.
std::optional<TraceViolation> verify_ascent(const VcspInstance& instance, const AscentTrace& trace);
std::optional<TraceViolation> verify_steepest(const VcspInstance& instance, const AscentTrace& trace);
std::optional<TraceViolation> verify_ordered(const VcspInstance& instance, const AscentTrace& trace,
                                             std::span<const VarId> order);

} // namespace ascentlab

#endif
