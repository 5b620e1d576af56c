#ifndef ASCENTLAB_MODEL_HPP
#define ASCENTLAB_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ascentlab/integer.hpp"

namespace ascentlab {

using VarId = std::uint32_t;
using StateId = std::uint32_t;

/// One entry per variable; entry k is a state index into domain k.
using Assignment = std::vector<StateId>;

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A requested move is not allowed by the transition relation.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A variable's states plus its undirected transition relation. Self-loops are not allowed;
/// (u,v) and (v,u) denote the same transition.
struct DomainSpec {
    std::string name;
    std::vector<std::string> states;
    std::vector<std::pair<StateId, StateId>> transitions;

    std::size_t size() const { return states.size(); }
    /// Index of a state label, if present.
    std::optional<StateId> find_state(std::string_view label) const;
};

/// Dense integer tensor over the scope's states, row-major in scope order
/// (the last scope variable varies fastest).
struct ValuedConstraint {
    std::string label;
    std::vector<VarId> scope;
    std::vector<fitness_t> values;
};

struct InstanceMeta {
    std::string family;
    int n = 0;
    IntRange range = IntRange::wide();
};

/// Unvalidated instance contents, as produced by builders and parsers.
struct InstanceData {
    std::vector<DomainSpec> domains;
    std::vector<ValuedConstraint> constraints;
    InstanceMeta meta;
};

struct Defect {
    std::string where;
    std::string what;

    std::string to_string() const { return where + ": " + what; }
};

/// Checks every structural invariant and the integer-range bound. Never throws.
std::vector<Defect> validate_instance(const InstanceData& data);

/// Sum of max-|value| over all constraints, saturated at the 128-bit maximum.
fitness_t worst_case_magnitude(const InstanceData& data);

struct Move {
    VarId var = 0;
    StateId state = 0;

    friend bool operator==(const Move&, const Move&) = default;
};

/// Immutable, validated VCSP. Construction throws ValidationError listing all defects.
class VcspInstance {
public:
    struct Incidence {
        std::size_t constraint;
        std::size_t stride;
    };

    explicit VcspInstance(InstanceData data);

    const InstanceData& data() const { return data_; }
    const InstanceMeta& meta() const { return data_.meta; }
    std::size_t var_count() const { return data_.domains.size(); }
    const DomainSpec& domain(VarId k) const { return data_.domains[k]; }
    const std::vector<DomainSpec>& domains() const { return data_.domains; }
    const std::vector<ValuedConstraint>& constraints() const { return data_.constraints; }

    /// Constraints whose scope contains k, with k's stride in each tensor.
    std::span<const Incidence> incidences(VarId k) const { return incidence_[k]; }
    /// Variables sharing at least one constraint with k, including k itself, ascending.
    std::span<const VarId> interacting(VarId k) const { return interacting_[k]; }
    /// States reachable from s in one permitted transition, ascending.
    std::span<const StateId> adjacent(VarId k, StateId s) const { return adjacency_[k][s]; }
    bool permits(VarId k, StateId from, StateId to) const;

    /// Row-major tensor offset of constraint c at assignment x.
    std::size_t offset(std::size_t c, std::span<const StateId> x) const;

    fitness_t worst_case_magnitude() const { return bound_; }

private:
    InstanceData data_;
    std::vector<std::vector<std::size_t>> strides_;
    std::vector<std::vector<Incidence>> incidence_;
    std::vector<std::vector<VarId>> interacting_;
    std::vector<std::vector<std::vector<StateId>>> adjacency_;
    fitness_t bound_ = 0;
};

/// Throws ValidationError unless x has one in-range state per variable.
void validate_assignment(const VcspInstance& instance, std::span<const StateId> x);

fitness_t evaluate_fitness(const VcspInstance& instance, std::span<const StateId> x);

/// Sum over the constraints whose scope contains k.
fitness_t restricted_fitness(const VcspInstance& instance, VarId k, std::span<const StateId> x);

/// f(x[k:v]) - f(x), touching only constraints that contain k. v must equal x_k or be
/// reachable from it by a permitted transition.
fitness_t delta_fitness(const VcspInstance& instance, std::span<const StateId> x, VarId k,
                        StateId v);

/// All permitted single-variable changes, ascending by variable then state.
std::vector<Move> neighbors(const VcspInstance& instance, std::span<const StateId> x);

bool is_local_solution(const VcspInstance& instance, std::span<const StateId> x);

struct Hyperedge {
    std::string label;
    std::vector<VarId> vars;  // sorted
};

std::vector<Hyperedge> constraint_hypergraph(const VcspInstance& instance);

std::size_t max_arity(const VcspInstance& instance);

struct PathDecomposition {
    std::vector<std::vector<VarId>> bags;
};

struct DecompositionViolation {
    enum class Kind { UncoveredScope, BrokenInterval };

    Kind kind = Kind::UncoveredScope;
    std::size_t constraint = 0;       // UncoveredScope
    VarId var = 0;                    // BrokenInterval
    std::vector<std::size_t> bags;    // bags containing the variable (BrokenInterval)
    std::string message;
};

struct DecompositionCheck {
    int width = -1;
    std::optional<DecompositionViolation> violation;

    bool ok() const { return !violation.has_value(); }
};

/// Validates scope coverage and contiguity of every variable's bag interval.
/// On success `width` is the largest bag size minus one. Throws ValidationError if a bag
/// names a variable outside the instance.
DecompositionCheck check_path_decomposition(const VcspInstance& instance,
                                            const PathDecomposition& decomposition);

/// Total number of assignments, or nullopt if it exceeds `cap`.
std::optional<std::uint64_t> assignment_count(const VcspInstance& instance, std::uint64_t cap);

/// Visits every assignment in lexicographic order (last variable fastest).
template <typename Visitor>
void for_each_assignment(const std::vector<DomainSpec>& domains, Visitor&& visit)
{
    Assignment x(domains.size(), 0);
    for (const auto& d : domains)
        if (d.size() == 0) return;
    while (true) {
        visit(std::as_const(x));
        std::size_t k = x.size();
        while (k > 0) {
            --k;
            if (++x[k] < domains[k].size()) break;
            x[k] = 0;
            if (k == 0) return;
        }
        if (x.empty()) return;
    }
}

} // namespace ascentlab

#endif
