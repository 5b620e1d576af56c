#include "ascentlab/model.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace ascentlab {

std::optional<StateId> DomainSpec::find_state(std::string_view label) const
{
    for (std::size_t s = 0; s < states.size(); ++s)
        if (states[s] == label) return static_cast<StateId>(s);
    return std::nullopt;
}

namespace {

std::string var_where(std::size_t k, const DomainSpec& d)
{
    return "variable " + std::to_string(k) + (d.name.empty() ? "" : " (" + d.name + ")");
}

std::string constraint_where(std::size_t c, const ValuedConstraint& con)
{
    return "constraint " + std::to_string(c) + (con.label.empty() ? "" : " (" + con.label + ")");
}

fitness_t saturating_add(fitness_t a, fitness_t b)
{
    fitness_t r;
    if (__builtin_add_overflow(a, b, &r)) return std::numeric_limits<fitness_t>::max();
    return r;
}

fitness_t max_magnitude(const ValuedConstraint& c)
{
    fitness_t best = 0;
    for (fitness_t v : c.values) {
        const fitness_t m = v == std::numeric_limits<fitness_t>::min()
                                ? std::numeric_limits<fitness_t>::max()
                                : (v < 0 ? -v : v);
        best = std::max(best, m);
    }
    return best;
}

} // namespace

fitness_t worst_case_magnitude(const InstanceData& data)
{
    fitness_t total = 0;
    for (const auto& c : data.constraints) total = saturating_add(total, max_magnitude(c));
    return total;
}

std::vector<Defect> validate_instance(const InstanceData& data)
{
    std::vector<Defect> defects;
    const std::size_t n = data.domains.size();

    for (std::size_t k = 0; k < n; ++k) {
        const DomainSpec& d = data.domains[k];
        const std::string where = var_where(k, d);
        if (d.states.empty()) defects.push_back({where, "domain has no states"});
        std::set<std::string> labels;
        for (const auto& s : d.states)
            if (!labels.insert(s).second) defects.push_back({where, "duplicate state label \"" + s + "\""});
        std::set<std::pair<StateId, StateId>> seen;
        for (const auto& [a, b] : d.transitions) {
            const std::string pair = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
            if (a >= d.size() || b >= d.size()) {
                defects.push_back({where, "transition " + pair + " references a state out of range"});
                continue;
            }
            if (a == b) {
                defects.push_back({where, "self-loop transition " + pair});
                continue;
            }
            if (!seen.insert(std::minmax(a, b)).second)
                defects.push_back({where, "duplicate transition " + pair});
        }
    }

    for (std::size_t c = 0; c < data.constraints.size(); ++c) {
        const ValuedConstraint& con = data.constraints[c];
        const std::string where = constraint_where(c, con);
        bool scope_ok = true;
        std::set<VarId> seen;
        for (VarId v : con.scope) {
            if (v >= n) {
                defects.push_back({where, "scope references variable " + std::to_string(v) +
                                              " but the instance has " + std::to_string(n)});
                scope_ok = false;
            } else if (!seen.insert(v).second) {
                defects.push_back({where, "variable " + std::to_string(v) + " repeated in scope"});
                scope_ok = false;
            }
        }
        if (!scope_ok) continue;
        std::size_t expected = 1;
        bool too_big = false;
        for (VarId v : con.scope) {
            if (__builtin_mul_overflow(expected, data.domains[v].size(), &expected)) {
                too_big = true;
                break;
            }
        }
        if (too_big) {
            defects.push_back({where, "tensor size overflows"});
        } else if (con.values.size() != expected) {
            defects.push_back({where, "tensor has " + std::to_string(con.values.size()) +
                                          " entries, expected " + std::to_string(expected)});
        }
    }

    const fitness_t bound = worst_case_magnitude(data);
    if (bound > data.meta.range.limit) {
        defects.push_back({"instance", "worst-case fitness magnitude " + to_string(bound) +
                                           " exceeds the declared " +
                                           std::string(data.meta.range.name()) + " integer range"});
    }
    return defects;
}

VcspInstance::VcspInstance(InstanceData data) : data_(std::move(data))
{
    const auto defects = validate_instance(data_);
    if (!defects.empty()) {
        std::ostringstream msg;
        msg << "invalid instance:";
        for (const auto& d : defects) msg << "\n  " << d.to_string();
        throw ValidationError(msg.str());
    }
    bound_ = ascentlab::worst_case_magnitude(data_);

    const std::size_t n = data_.domains.size();
    adjacency_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        auto& adj = adjacency_[k];
        adj.resize(data_.domains[k].size());
        for (const auto& [a, b] : data_.domains[k].transitions) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        for (auto& list : adj) std::sort(list.begin(), list.end());
    }

    incidence_.resize(n);
    interacting_.resize(n);
    strides_.resize(data_.constraints.size());
    std::vector<std::set<VarId>> touching(n);
    for (std::size_t c = 0; c < data_.constraints.size(); ++c) {
        const auto& scope = data_.constraints[c].scope;
        auto& strides = strides_[c];
        strides.assign(scope.size(), 1);
        for (std::size_t i = scope.size(); i-- > 1;)
            strides[i - 1] = strides[i] * data_.domains[scope[i]].size();
        for (std::size_t i = 0; i < scope.size(); ++i) {
            incidence_[scope[i]].push_back({c, strides[i]});
            for (VarId other : scope) touching[scope[i]].insert(other);
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        touching[k].insert(static_cast<VarId>(k));
        interacting_[k].assign(touching[k].begin(), touching[k].end());
    }
}

bool VcspInstance::permits(VarId k, StateId from, StateId to) const
{
    if (k >= var_count() || from >= adjacency_[k].size()) return false;
    const auto& adj = adjacency_[k][from];
    return std::binary_search(adj.begin(), adj.end(), to);
}

std::size_t VcspInstance::offset(std::size_t c, std::span<const StateId> x) const
{
    const auto& scope = data_.constraints[c].scope;
    const auto& strides = strides_[c];
    std::size_t off = 0;
    for (std::size_t i = 0; i < scope.size(); ++i) off += x[scope[i]] * strides[i];
    return off;
}

void validate_assignment(const VcspInstance& instance, std::span<const StateId> x)
{
    if (x.size() != instance.var_count()) {
        throw ValidationError("assignment has " + std::to_string(x.size()) + " entries, instance has " +
                              std::to_string(instance.var_count()) + " variables");
    }
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] >= instance.domain(static_cast<VarId>(k)).size()) {
            throw ValidationError("assignment entry " + std::to_string(k) + " = " + std::to_string(x[k]) +
                                  " is not a state of " + var_where(k, instance.domain(static_cast<VarId>(k))));
        }
    }
}

fitness_t evaluate_fitness(const VcspInstance& instance, std::span<const StateId> x)
{
    validate_assignment(instance, x);
    fitness_t total = 0;
    const auto& cons = instance.constraints();
    for (std::size_t c = 0; c < cons.size(); ++c) total += cons[c].values[instance.offset(c, x)];
    return total;
}

fitness_t restricted_fitness(const VcspInstance& instance, VarId k, std::span<const StateId> x)
{
    validate_assignment(instance, x);
    if (k >= instance.var_count()) throw ValidationError("variable " + std::to_string(k) + " out of range");
    fitness_t total = 0;
    for (const auto& inc : instance.incidences(k))
        total += instance.constraints()[inc.constraint].values[instance.offset(inc.constraint, x)];
    return total;
}

fitness_t delta_fitness(const VcspInstance& instance, std::span<const StateId> x, VarId k, StateId v)
{
    validate_assignment(instance, x);
    if (k >= instance.var_count()) throw ValidationError("variable " + std::to_string(k) + " out of range");
    const StateId from = x[k];
    if (v == from) return 0;
    if (!instance.permits(k, from, v)) {
        throw PreconditionError("transition " + std::to_string(from) + " -> " + std::to_string(v) +
                                " is not permitted for variable " + std::to_string(k));
    }
    const std::ptrdiff_t shift = (static_cast<std::ptrdiff_t>(v) - static_cast<std::ptrdiff_t>(from));
    fitness_t delta = 0;
    for (const auto& inc : instance.incidences(k)) {
        const auto& values = instance.constraints()[inc.constraint].values;
        const std::size_t off = instance.offset(inc.constraint, x);
        delta += values[off + shift * static_cast<std::ptrdiff_t>(inc.stride)] - values[off];
    }
    return delta;
}

std::vector<Move> neighbors(const VcspInstance& instance, std::span<const StateId> x)
{
    validate_assignment(instance, x);
    std::vector<Move> out;
    for (VarId k = 0; k < instance.var_count(); ++k)
        for (StateId s : instance.adjacent(k, x[k])) out.push_back({k, s});
    return out;
}

bool is_local_solution(const VcspInstance& instance, std::span<const StateId> x)
{
    for (const Move& m : neighbors(instance, x))
        if (delta_fitness(instance, x, m.var, m.state) > 0) return false;
    return true;
}

std::vector<Hyperedge> constraint_hypergraph(const VcspInstance& instance)
{
    std::vector<Hyperedge> edges;
    edges.reserve(instance.constraints().size());
    for (const auto& c : instance.constraints()) {
        Hyperedge e{c.label, c.scope};
        std::sort(e.vars.begin(), e.vars.end());
        edges.push_back(std::move(e));
    }
    return edges;
}

std::size_t max_arity(const VcspInstance& instance)
{
    std::size_t best = 0;
    for (const auto& c : instance.constraints()) best = std::max(best, c.scope.size());
    return best;
}

DecompositionCheck check_path_decomposition(const VcspInstance& instance,
                                            const PathDecomposition& decomposition)
{
    const std::size_t n = instance.var_count();
    std::vector<std::vector<std::size_t>> bags_of(n);
    DecompositionCheck result;
    for (std::size_t b = 0; b < decomposition.bags.size(); ++b) {
        std::vector<VarId> bag = decomposition.bags[b];
        std::sort(bag.begin(), bag.end());
        bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
        for (VarId v : bag) {
            if (v >= n) {
                throw ValidationError("bag " + std::to_string(b) + " references variable " + std::to_string(v) +
                                      " outside the instance");
            }
            bags_of[v].push_back(b);
        }
        result.width = std::max(result.width, static_cast<int>(bag.size()) - 1);
    }

    const auto& cons = instance.constraints();
    for (std::size_t c = 0; c < cons.size(); ++c) {
        const auto& scope = cons[c].scope;
        if (scope.empty()) continue;
        std::vector<std::size_t> common = bags_of[scope[0]];
        for (std::size_t i = 1; i < scope.size() && !common.empty(); ++i) {
            std::vector<std::size_t> next;
            std::set_intersection(common.begin(), common.end(), bags_of[scope[i]].begin(),
                                  bags_of[scope[i]].end(), std::back_inserter(next));
            common = std::move(next);
        }
        if (common.empty()) {
            DecompositionViolation v;
            v.kind = DecompositionViolation::Kind::UncoveredScope;
            v.constraint = c;
            v.message = "scope of constraint " + std::to_string(c) + " (" + cons[c].label +
                        ") is not contained in any bag";
            result.violation = std::move(v);
            return result;
        }
    }

    for (std::size_t k = 0; k < n; ++k) {
        const auto& list = bags_of[k];
        if (!list.empty() && list.back() - list.front() + 1 != list.size()) {
            DecompositionViolation v;
            v.kind = DecompositionViolation::Kind::BrokenInterval;
            v.var = static_cast<VarId>(k);
            v.bags = list;
            std::ostringstream msg;
            msg << "variable " << k << " appears in non-contiguous bags";
            for (std::size_t b : list) msg << ' ' << b;
            v.message = msg.str();
            result.violation = std::move(v);
            return result;
        }
    }
    return result;
}

std::optional<std::uint64_t> assignment_count(const VcspInstance& instance, std::uint64_t cap)
{
    std::uint64_t total = 1;
    for (const auto& d : instance.domains()) {
        if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(d.size()), &total) || total > cap)
            return std::nullopt;
    }
    return total;
}

} // namespace ascentlab
