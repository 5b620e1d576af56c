#include "ascentlab/ascent.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace ascentlab {

std::string_view to_string(AscentPolicy policy)
{
    switch (policy) {
    case AscentPolicy::Steepest: return "steepest";
    case AscentPolicy::Ordered: return "ordered";
    case AscentPolicy::FirstImprovement: return "first";
    case AscentPolicy::Simulated: return "simulated";
    case AscentPolicy::Oracle: return "oracle";
    }
    return "unknown";
}

std::optional<AscentPolicy> parse_policy(std::string_view text)
{
    for (auto p : {AscentPolicy::Steepest, AscentPolicy::Ordered, AscentPolicy::FirstImprovement,
                   AscentPolicy::Simulated, AscentPolicy::Oracle})
        if (to_string(p) == text) return p;
    return std::nullopt;
}

Assignment AscentTrace::state_at(std::size_t t) const
{
    Assignment x = start;
    for (std::size_t i = 0; i < t && i < steps.size(); ++i) x.at(steps[i].var) = steps[i].to;
    return x;
}

Assignment AscentTrace::final_assignment() const { return state_at(steps.size()); }

bool same_walk(const AscentTrace& a, const AscentTrace& b)
{
    return a.start == b.start && a.start_fitness == b.start_fitness && a.steps == b.steps &&
           a.terminal == b.terminal;
}

std::vector<VarId> identity_order(std::size_t n)
{
    std::vector<VarId> order(n);
    std::iota(order.begin(), order.end(), VarId{0});
    return order;
}

namespace {

struct BestMove {
    fitness_t gain = 0;
    StateId state = 0;
    std::uint32_t at_best = 0;    // neighbours attaining `gain`
    std::uint32_t improving = 0;  // neighbours with positive gain
};

/// Best permitted change of variable k at x. Offsets are computed once per constraint.
BestMove best_move(const VcspInstance& instance, const Assignment& x, VarId k)
{
    BestMove best;
    const auto adj = instance.adjacent(k, x[k]);
    if (adj.empty()) return best;
    const auto incs = instance.incidences(k);
    thread_local std::vector<std::size_t> offsets;
    offsets.resize(incs.size());
    for (std::size_t i = 0; i < incs.size(); ++i) offsets[i] = instance.offset(incs[i].constraint, x);

    bool first = true;
    for (StateId s : adj) {
        const std::ptrdiff_t shift = static_cast<std::ptrdiff_t>(s) - static_cast<std::ptrdiff_t>(x[k]);
        fitness_t gain = 0;
        for (std::size_t i = 0; i < incs.size(); ++i) {
            const auto& values = instance.constraints()[incs[i].constraint].values;
            gain += values[offsets[i] + shift * static_cast<std::ptrdiff_t>(incs[i].stride)] - values[offsets[i]];
        }
        if (gain > 0) ++best.improving;
        if (first || gain > best.gain) {
            best.gain = gain;
            best.state = s;
            best.at_best = 1;
            first = false;
        } else if (gain == best.gain) {
            ++best.at_best;
        }
    }
    return best;
}

void check_start(const VcspInstance& instance, const Assignment& start)
{
    validate_assignment(instance, start);
}

} // namespace

WalkSummary walk_steepest(const VcspInstance& instance, Assignment x, std::uint64_t step_limit,
                          const StepSink& sink)
{
    check_start(instance, x);
    const std::size_t n = instance.var_count();
    WalkSummary out;
    out.start_fitness = evaluate_fitness(instance, x);
    fitness_t fitness = out.start_fitness;

    // Improving variables keyed by (-gain, var): begin() is the steepest move with the
    // lowest variable among equals.
    using Key = std::pair<fitness_t, VarId>;
    std::set<Key> queue;
    std::vector<BestMove> cache(n);
    auto refresh = [&](VarId k) {
        if (cache[k].improving > 0) queue.erase({-cache[k].gain, k});
        cache[k] = best_move(instance, x, k);
        if (cache[k].improving > 0) queue.insert({-cache[k].gain, k});
    };
    for (VarId k = 0; k < n; ++k) refresh(k);

    while (true) {
        if (queue.empty()) {
            out.terminal = true;
            break;
        }
        if (out.steps == step_limit) break;
        const auto top = queue.begin();
        const VarId k = top->second;
        const BestMove& mv = cache[k];
        if (mv.at_best > 1) out.tie = true;
        if (auto next = std::next(top); next != queue.end() && next->first == top->first) out.tie = true;

        const StepRecord rec{k, x[k], mv.state, fitness + mv.gain};
        x[k] = mv.state;
        fitness = rec.fitness_after;
        ++out.steps;
        if (sink) sink(rec);
        for (VarId j : instance.interacting(k)) refresh(j);
    }
    out.final_assignment = std::move(x);
    out.final_fitness = fitness;
    return out;
}

WalkSummary walk_ordered(const VcspInstance& instance, Assignment x, std::span<const VarId> order,
                         std::uint64_t step_limit, const StepSink& sink)
{
    check_start(instance, x);
    const std::size_t n = instance.var_count();
    if (order.size() != n) throw ValidationError("order must list every variable exactly once");
    std::vector<std::size_t> rank(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (order[i] >= n || rank[order[i]] != n) throw ValidationError("order is not a permutation");
        rank[order[i]] = i;
    }

    WalkSummary out;
    out.start_fitness = evaluate_fitness(instance, x);
    fitness_t fitness = out.start_fitness;
    std::set<std::size_t> improving;  // ranks of variables with an improving move
    std::vector<BestMove> cache(n);
    auto refresh = [&](VarId k) {
        cache[k] = best_move(instance, x, k);
        if (cache[k].improving > 0)
            improving.insert(rank[k]);
        else
            improving.erase(rank[k]);
    };
    for (VarId k = 0; k < n; ++k) refresh(k);

    while (true) {
        if (improving.empty()) {
            out.terminal = true;
            break;
        }
        if (out.steps == step_limit) break;
        const VarId k = order[*improving.begin()];
        const BestMove& mv = cache[k];
        if (mv.improving > 1) out.ambiguous = true;

        const StepRecord rec{k, x[k], mv.state, fitness + mv.gain};
        x[k] = mv.state;
        fitness = rec.fitness_after;
        ++out.steps;
        if (sink) sink(rec);
        for (VarId j : instance.interacting(k)) refresh(j);
    }
    out.final_assignment = std::move(x);
    out.final_fitness = fitness;
    return out;
}

WalkSummary walk_first_improvement(const VcspInstance& instance, Assignment x, std::uint64_t step_limit,
                                   std::uint64_t seed, const StepSink& sink)
{
    check_start(instance, x);
    WalkSummary out;
    out.start_fitness = evaluate_fitness(instance, x);
    fitness_t fitness = out.start_fitness;
    std::mt19937_64 rng(seed);

    while (true) {
        auto moves = neighbors(instance, x);
        std::shuffle(moves.begin(), moves.end(), rng);
        std::optional<std::pair<Move, fitness_t>> chosen;
        for (const Move& m : moves) {
            const fitness_t d = delta_fitness(instance, x, m.var, m.state);
            if (d > 0) {
                chosen = {m, d};
                break;
            }
        }
        if (!chosen) {
            out.terminal = true;
            break;
        }
        if (out.steps == step_limit) break;
        const auto [m, gain] = *chosen;
        const StepRecord rec{m.var, x[m.var], m.state, fitness + gain};
        x[m.var] = m.state;
        fitness = rec.fitness_after;
        ++out.steps;
        if (sink) sink(rec);
    }
    out.final_assignment = std::move(x);
    out.final_fitness = fitness;
    return out;
}

namespace {

AscentTrace collect(AscentPolicy policy, const Assignment& start,
                    const std::function<WalkSummary(const StepSink&)>& run)
{
    AscentTrace trace;
    trace.policy = policy;
    trace.start = start;
    const WalkSummary s = run([&](const StepRecord& r) { trace.steps.push_back(r); });
    trace.start_fitness = s.start_fitness;
    trace.terminal = s.terminal;
    trace.tie = s.tie;
    trace.ambiguous = s.ambiguous;
    return trace;
}

} // namespace

AscentTrace steepest_ascent(const VcspInstance& instance, const Assignment& start, std::uint64_t step_limit)
{
    return collect(AscentPolicy::Steepest, start,
                   [&](const StepSink& sink) { return walk_steepest(instance, start, step_limit, sink); });
}

AscentTrace ordered_ascent(const VcspInstance& instance, const Assignment& start, std::span<const VarId> order,
                           std::uint64_t step_limit)
{
    auto trace = collect(AscentPolicy::Ordered, start, [&](const StepSink& sink) {
        return walk_ordered(instance, start, order, step_limit, sink);
    });
    trace.order.assign(order.begin(), order.end());
    return trace;
}

AscentTrace first_improvement_ascent(const VcspInstance& instance, const Assignment& start,
                                     std::uint64_t step_limit, std::uint64_t seed)
{
    auto trace = collect(AscentPolicy::FirstImprovement, start, [&](const StepSink& sink) {
        return walk_first_improvement(instance, start, step_limit, seed, sink);
    });
    trace.seed = seed;
    return trace;
}

namespace {

/// Fitness of x[k:v] from scratch.
fitness_t fitness_after_change(const VcspInstance& instance, Assignment& x, VarId k, StateId v)
{
    const StateId old = x[k];
    x[k] = v;
    const fitness_t f = evaluate_fitness(instance, x);
    x[k] = old;
    return f;
}

} // namespace

std::optional<TraceViolation> verify_ascent(const VcspInstance& instance, const AscentTrace& trace)
{
    try {
        validate_assignment(instance, trace.start);
    } catch (const ValidationError& e) {
        return TraceViolation{0, std::string("invalid start: ") + e.what(), std::nullopt};
    }
    Assignment x = trace.start;
    fitness_t f = evaluate_fitness(instance, x);
    if (f != trace.start_fitness)
        return TraceViolation{0, "recorded start fitness " + to_string(trace.start_fitness) +
                                     " differs from evaluated " + to_string(f), std::nullopt};
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
        const StepRecord& s = trace.steps[t];
        if (s.var >= instance.var_count())
            return TraceViolation{t, "variable out of range", std::nullopt};
        if (x[s.var] != s.from)
            return TraceViolation{t, "recorded from-state does not match the current assignment", std::nullopt};
        if (!instance.permits(s.var, s.from, s.to))
            return TraceViolation{t, "transition not permitted", Move{s.var, s.to}};
        x[s.var] = s.to;
        const fitness_t next = evaluate_fitness(instance, x);
        if (next != s.fitness_after)
            return TraceViolation{t, "recorded fitness " + to_string(s.fitness_after) + " differs from evaluated " +
                                         to_string(next), std::nullopt};
        if (next <= f)
            return TraceViolation{t, "fitness does not strictly increase", Move{s.var, s.to}};
        f = next;
    }
    if (trace.terminal) {
        for (const Move& m : neighbors(instance, x)) {
            if (fitness_after_change(instance, x, m.var, m.state) > f)
                return TraceViolation{trace.steps.size(), "trace marked terminal but the final assignment has an "
                                                          "improving neighbour", m};
        }
    }
    return std::nullopt;
}

std::optional<TraceViolation> verify_steepest(const VcspInstance& instance, const AscentTrace& trace)
{
    if (auto v = verify_ascent(instance, trace)) return v;
    Assignment x = trace.start;
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
        const StepRecord& s = trace.steps[t];
        std::optional<Move> best;
        fitness_t best_f = 0;
        for (const Move& m : neighbors(instance, x)) {
            const fitness_t f = fitness_after_change(instance, x, m.var, m.state);
            if (!best || f > best_f) {
                best = m;
                best_f = f;
            }
        }
        if (best && best_f > s.fitness_after)
            return TraceViolation{t, "a neighbour has fitness " + to_string(best_f) + " above the chosen " +
                                         to_string(s.fitness_after), best};
        x[s.var] = s.to;
    }
    return std::nullopt;
}

std::optional<TraceViolation> verify_ordered(const VcspInstance& instance, const AscentTrace& trace,
                                             std::span<const VarId> order)
{
    if (auto v = verify_ascent(instance, trace)) return v;
    const std::size_t n = instance.var_count();
    std::vector<std::size_t> rank(n, n);
    for (std::size_t i = 0; i < order.size(); ++i)
        if (order[i] < n) rank[order[i]] = i;
    if (order.size() != n || std::count(rank.begin(), rank.end(), n) != 0)
        throw ValidationError("order is not a permutation");

    Assignment x = trace.start;
    fitness_t f = trace.start_fitness;
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
        const StepRecord& s = trace.steps[t];
        for (std::size_t r = 0; r < rank[s.var]; ++r) {
            const VarId j = order[r];
            for (StateId u : instance.adjacent(j, x[j])) {
                if (fitness_after_change(instance, x, j, u) > f)
                    return TraceViolation{t, "variable " + std::to_string(j) + " precedes the chosen variable " +
                                                 std::to_string(s.var) + " and has an improving change",
                                          Move{j, u}};
            }
        }
        x[s.var] = s.to;
        f = s.fitness_after;
    }
    return std::nullopt;
}

} // namespace ascentlab
