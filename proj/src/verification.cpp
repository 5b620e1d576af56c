#include "ascentlab/verification.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

namespace ascentlab::verify {

using namespace ascentlab::build;

namespace {

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CheckReport begin(std::string name, std::vector<std::pair<std::string, std::string>> params)
{
    CheckReport r;
    r.name = std::move(name);
    r.params = std::move(params);
    return r;
}

std::string tag(std::string_view family, int n) { return std::string(family) + " n=" + std::to_string(n); }

Counterexample evidence(std::string detail, Assignment x = {}, std::optional<std::size_t> step = {},
                        std::optional<fitness_t> expected = {}, std::optional<fitness_t> actual = {})
{
    return Counterexample{std::move(x), step, expected, actual, std::move(detail)};
}

/// First index where two walks differ, comparing starts, steps and length.
std::optional<std::size_t> first_divergence(const AscentTrace& a, const AscentTrace& b)
{
    if (a.start != b.start) return 0;
    const std::size_t common = std::min(a.length(), b.length());
    for (std::size_t t = 0; t < common; ++t)
        if (!(a.steps[t] == b.steps[t])) return t;
    if (a.length() != b.length()) return common;
    return std::nullopt;
}

/// Report a pair of traces that should be identical.
Counterexample walk_mismatch(std::string what, const AscentTrace& expected, const AscentTrace& actual)
{
    const std::size_t t = first_divergence(expected, actual).value_or(expected.length());
    std::ostringstream msg;
    msg << what << ": walks diverge at step " << t << " (expected length " << expected.length() << ", got "
        << actual.length() << ")";
    if (expected.tie != actual.tie) msg << "; tie flag expected " << expected.tie << ", got " << actual.tie;
    if (expected.terminal != actual.terminal) msg << "; terminal flag differs";
    std::optional<fitness_t> e, a;
    if (t < expected.length()) e = expected.steps[t].fitness_after;
    if (t < actual.length()) a = actual.steps[t].fitness_after;
    return evidence(msg.str(), expected.state_at(std::min(t, expected.length())), t, e, a);
}


} // namespace

AscentTrace exhaustive_steepest_oracle(const VcspInstance& instance, const Assignment& start,
                                       std::uint64_t step_limit)
{
    validate_assignment(instance, start);
    AscentTrace trace;
    trace.policy = AscentPolicy::Oracle;
    trace.start = start;
    Assignment x = start;
    fitness_t fx = evaluate_fitness(instance, x);
    trace.start_fitness = fx;
    while (true) {
        std::optional<Move> best;
        fitness_t best_value = fx;
        bool tied = false;
        for (const Move& mv : neighbors(instance, x)) {
            Assignment y = x;
            y[mv.var] = mv.state;
            const fitness_t fy = evaluate_fitness(instance, y);
            if (fy > best_value) {
                best = mv;
                best_value = fy;
                tied = false;
            } else if (best && fy == best_value) {
                tied = true;
            }
        }
        if (!best) {
            trace.terminal = true;
            return trace;
        }
        if (trace.length() >= step_limit) return trace;
        trace.tie = trace.tie || tied;
        trace.steps.push_back({best->var, x[best->var], best->state, best_value});
        x[best->var] = best->state;
        fx = best_value;
    }
}

CheckReport brute_force_check_prop11(int n_max, int brute_max)
{
    Stopwatch clock;
    CheckReport r = begin("prop11", {{"family", std::string(family_2by3)},
                                     {"n_max", std::to_string(n_max)},
                                     {"brute_max", std::to_string(brute_max)}});
    std::vector<fitness_t> lengths(static_cast<std::size_t>(std::max(n_max, 1) + 1), -1);
    for (int n = 2; n <= n_max && r.pass; ++n) {
        const VcspInstance inst = build_2by3(n);
        const Assignment start = canonical_start(family_2by3, n);
        const AscentTrace t = ordered_ascent(inst, start, identity_order(inst.var_count()));
        const fitness_t target = f_max(n);
        lengths[n] = static_cast<fitness_t>(t.length());
        if (!t.terminal) {
            r.fail(evidence(tag(family_2by3, n) + ": ascent did not terminate", t.final_assignment(), t.length()));
        } else if (t.start_fitness != 0) {
            r.fail(evidence(tag(family_2by3, n) + ": start fitness is not 0", start, 0, 0, t.start_fitness));
        } else if (t.ambiguous) {
            r.fail(evidence(tag(family_2by3, n) + ": more than one improving state at the chosen variable", start));
        } else if (static_cast<fitness_t>(t.length()) != target) {
            r.fail(evidence(tag(family_2by3, n) + ": ordered-ascent length differs from f_max",
                            t.final_assignment(), t.length(), target, static_cast<fitness_t>(t.length())));
        } else if (t.final_fitness() != target) {
            r.fail(evidence(tag(family_2by3, n) + ": terminal fitness differs from f_max", t.final_assignment(),
                            t.length(), target, t.final_fitness()));
        } else if (auto v = verify_ordered(inst, t, identity_order(inst.var_count()))) {
            r.fail(evidence(tag(family_2by3, n) + ": " + v->reason, t.state_at(v->step), v->step));
        } else {
            fitness_t prev = t.start_fitness;
            for (std::size_t s = 0; s < t.length(); ++s) {
                if (t.steps[s].fitness_after != prev + 1) {
                    r.fail(evidence(tag(family_2by3, n) + ": step gain is not +1", t.state_at(s), s, prev + 1,
                                    t.steps[s].fitness_after));
                    break;
                }
                prev = t.steps[s].fitness_after;
            }
        }
        if (r.pass && n <= brute_max) {
            fitness_t best = evaluate_fitness(inst, start);
            Assignment argmax = start;
            for_each_assignment(inst.domains(), [&](const Assignment& x) {
                const fitness_t f = evaluate_fitness(inst, x);
                if (f > best) {
                    best = f;
                    argmax = x;
                }
            });
            if (best != target)
                r.fail(evidence(tag(family_2by3, n) + ": brute-force maximum differs from f_max", argmax, {}, target,
                                best));
        }
    }
    // Doubling: f_max(2h+2) = 2 f_max(2h) + 7h + 5, f_max(2h+3) = 2 f_max(2h+1) + 7h + 8,
    // checked against the measured lengths.
    for (int n = 2; n + 2 <= n_max && r.pass; ++n) {
        const int h = n / 2;
        const fitness_t expected = 2 * lengths[n] + (n % 2 == 0 ? 7 * h + 5 : 7 * h + 8);
        if (lengths[n + 2] != expected)
            r.fail(evidence("doubling recurrence fails from n=" + std::to_string(n) + " to n=" +
                                std::to_string(n + 2),
                            {}, {}, expected, lengths[n + 2]));
    }
    r.details.emplace_back("lengths_checked", std::to_string(std::max(0, n_max - 1)));
    r.seconds = clock.seconds();
    return r;
}

CheckReport check_exponential_length(int n)
{
    Stopwatch clock;
    CheckReport r = begin("exponential", {{"family", std::string(family_2by3)}, {"n", std::to_string(n)}});
    const VcspInstance inst = build_2by3(n);
    const fitness_t target = f_max(n);
    fitness_t prev = 0;
    std::uint64_t count = 0;
    std::optional<Counterexample> bad;
    const WalkSummary s = walk_ordered(inst, canonical_start(family_2by3, n), identity_order(inst.var_count()),
                                       unlimited_steps, [&](const StepRecord& step) {
                                           if (!bad && step.fitness_after != prev + 1)
                                               bad = evidence("step gain is not +1", {}, count, prev + 1,
                                                              step.fitness_after);
                                           prev = step.fitness_after;
                                           ++count;
                                       });
    if (bad) {
        r.fail(*bad);
    } else if (!s.terminal) {
        r.fail(evidence("ascent did not terminate", s.final_assignment, s.steps));
    } else if (static_cast<fitness_t>(s.steps) != target) {
        r.fail(evidence("ordered-ascent length differs from f_max", s.final_assignment, s.steps, target,
                        static_cast<fitness_t>(s.steps)));
    } else if (s.ambiguous) {
        r.fail(evidence("more than one improving state at the chosen variable", s.final_assignment));
    }
    r.details.emplace_back("steps", std::to_string(s.steps));
    r.details.emplace_back("f_max", to_string(target));
    r.seconds = clock.seconds();
    return r;
}

CheckReport check_theorem8(int n_max, int verify_max)
{
    Stopwatch clock;
    CheckReport r = begin("theorem8", {{"family", std::string(family_3by5)},
                                       {"n_max", std::to_string(n_max)},
                                       {"verify_max", std::to_string(verify_max)}});
    for (int n = 2; n <= n_max && r.pass; ++n) {
        const VcspInstance base = build_2by3(n);
        const auto order = identity_order(base.var_count());
        const AscentTrace ordered = ordered_ascent(base, canonical_start(family_2by3, n), order);
        const AscentTrace simulated = simulate_ascent(ordered, expand_landscape(base, order));
        const VcspInstance padded = build_3by5(n);
        const AscentTrace steep = steepest_ascent(padded, canonical_start(family_3by5, n));
        const fitness_t target = 2 * f_max(n);
        if (!same_walk(simulated, steep)) {
            r.fail(walk_mismatch(tag(family_3by5, n) + ": steepest ascent is not the simulated ordered ascent",
                                 simulated, steep));
        } else if (static_cast<fitness_t>(steep.length()) != target) {
            r.fail(evidence(tag(family_3by5, n) + ": length is not 2 f_max", steep.final_assignment(),
                            steep.length(), target, static_cast<fitness_t>(steep.length())));
        } else if (steep.tie) {
            r.fail(evidence(tag(family_3by5, n) + ": steepest step with more than one maximal neighbour",
                            steep.start));
        } else if (n <= verify_max) {
            if (auto v = verify_steepest(padded, steep)) {
                Counterexample c = evidence(tag(family_3by5, n) + ": " + v->reason, steep.state_at(v->step), v->step);
                r.fail(std::move(c));
            }
        }
    }
    r.seconds = clock.seconds();
    return r;
}

PaddingScan scan_padding(const VcspInstance& expanded, const ExpandedLandscape& oracle)
{
    if (expanded.var_count() != oracle.map().var_count())
        throw ValidationError("scan_padding: instance and oracle have different variable counts");
    for (VarId k = 0; k < expanded.var_count(); ++k)
        if (expanded.domain(k).size() != oracle.map().expanded_domain(k).size())
            throw ValidationError("scan_padding: domain mismatch at variable " + std::to_string(k));
    PaddingScan scan;
    const VcspInstance& base = oracle.base();
    for_each_assignment(expanded.domains(), [&](const Assignment& x) {
        if (scan.failure) return;
        ++scan.assignments;
        const auto inter = oracle.intermediates(x);
        const fitness_t actual = evaluate_fitness(expanded, x);
        if (inter.size() >= 3) {
            ++scan.skipped;
            return;
        }
        if (inter.size() == 2) {
            ++scan.two_intermediates;
            const fitness_t bound = *oracle.two_intermediate_bound(x);
            if (actual > bound)
                scan.failure = evidence("two-intermediate upper bound exceeded", x, {}, bound, actual);
            return;
        }
        const fitness_t expected = oracle.fitness(x);
        if (inter.empty()) {
            ++scan.main_only;
            if (actual != expected) scan.failure = evidence("main-state equality fails", x, {}, expected, actual);
            return;
        }
        ++scan.one_intermediate;
        const VarId k = inter.front();
        const auto [u, v] = oracle.map().endpoints(k, x[k]);
        Assignment y = x;
        y[k] = u;
        const fitness_t fu = evaluate_fitness(base, y);
        y[k] = v;
        const fitness_t fv = evaluate_fitness(base, y);
        const bool equal = fu == fv;
        if (equal) ++scan.equal_completion;
        if (actual != expected)
            scan.failure = evidence(equal ? "one-intermediate equality fails (equal completions)"
                                          : "one-intermediate equality fails",
                                    x, {}, expected, actual);
    });
    return scan;
}

namespace {

void record_scan(CheckReport& r, const PaddingScan& scan)
{
    r.details.emplace_back("assignments", std::to_string(scan.assignments));
    r.details.emplace_back("main_only", std::to_string(scan.main_only));
    r.details.emplace_back("one_intermediate", std::to_string(scan.one_intermediate));
    r.details.emplace_back("equal_completion", std::to_string(scan.equal_completion));
    r.details.emplace_back("two_intermediates", std::to_string(scan.two_intermediates));
    r.details.emplace_back("three_or_more_skipped", std::to_string(scan.skipped));
}

} // namespace

CheckReport check_padding_equations(int n_max)
{
    Stopwatch clock;
    CheckReport r = begin("padding", {{"family", std::string(family_3by5)}, {"n_max", std::to_string(n_max)}});
    PaddingScan total;
    for (int n = 2; n <= n_max && r.pass; ++n) {
        const VcspInstance base = build_2by3(n);
        const PaddingScan scan =
            scan_padding(build_3by5(n), expand_landscape(base, identity_order(base.var_count())));
        total.assignments += scan.assignments;
        total.main_only += scan.main_only;
        total.one_intermediate += scan.one_intermediate;
        total.equal_completion += scan.equal_completion;
        total.two_intermediates += scan.two_intermediates;
        total.skipped += scan.skipped;
        if (scan.failure) {
            Counterexample c = *scan.failure;
            c.detail = tag(family_3by5, n) + ": " + c.detail;
            r.fail(std::move(c));
        }
    }
    record_scan(r, total);
    r.seconds = clock.seconds();
    return r;
}

CheckReport check_padding_equations(const VcspInstance& expanded, const ExpandedLandscape& oracle)
{
    Stopwatch clock;
    CheckReport r = begin("padding", {{"family", expanded.meta().family}, {"n", std::to_string(expanded.meta().n)}});
    const PaddingScan scan = scan_padding(expanded, oracle);
    if (scan.failure) r.fail(*scan.failure);
    record_scan(r, scan);
    r.seconds = clock.seconds();
    return r;
}

CheckReport check_boolean_equivalence(int exhaustive_max, int ascent_max, const Pw4Options& options)
{
    Stopwatch clock;
    CheckReport r = begin("boolean", {{"family", std::string(family_pw4)},
                                      {"exhaustive_max", std::to_string(exhaustive_max)},
                                      {"ascent_max", std::to_string(ascent_max)},
                                      {"j_penalty", options.include_j ? "on" : "off"},
                                      {"j_mirror", options.mirror_j ? "on" : "off"},
                                      {"j_scaled", options.scale_j ? "on" : "off"}});
    Pw4Options opts = options;
    opts.self_check = false;
    std::uint64_t scanned = 0, two = 0, junk = 0;
    bool tie_seen = false;
    for (int n = 2; n <= std::max(exhaustive_max, ascent_max) && r.pass; ++n) {
        const BooleanInstance b = build_boolean_pw4(n, opts);
        const VcspInstance base = build_2by3(n);
        const auto order = identity_order(base.var_count());
        const ExpandedLandscape oracle = expand_landscape(base, order);
        if (n <= exhaustive_max) {
            const EquivalenceScan scan = scan_boolean_equivalence(b.instance, b.codec, oracle);
            scanned += scan.assignments;
            two += scan.two_intermediates;
            junk += scan.junk;
            if (scan.failure) {
                r.fail(evidence(tag(family_pw4, n) + ": " + scan.failure->rule, scan.failure->bits, {},
                                scan.failure->expected, scan.failure->actual));
                break;
            }
        }
        if (n > ascent_max) continue;
        const AscentTrace sim =
            simulate_ascent(ordered_ascent(base, canonical_start(family_2by3, n), order), oracle);
        const AscentTrace steep = steepest_ascent(b.instance, b.start);
        tie_seen = tie_seen || steep.tie;
        if (steep.length() != sim.length() || !steep.terminal) {
            r.fail(evidence(tag(family_pw4, n) + ": Boolean ascent length differs from the simulated trace",
                            steep.final_assignment(), steep.length(), static_cast<fitness_t>(sim.length()),
                            static_cast<fitness_t>(steep.length())));
            break;
        }
        Assignment bits = steep.start;
        for (std::size_t t = 0; t <= steep.length(); ++t) {
            if (t > 0) bits[steep.steps[t - 1].var] = steep.steps[t - 1].to;
            const auto decoded = b.codec.decode_states(bits);
            const Assignment want = sim.state_at(t);
            if (!decoded || *decoded != want) {
                r.fail(evidence(tag(family_pw4, n) + ": decoded Boolean state differs from the simulated trace",
                                bits, t));
                break;
            }
        }
    }
    r.details.emplace_back("assignments", std::to_string(scanned));
    r.details.emplace_back("two_intermediates", std::to_string(two));
    r.details.emplace_back("junk", std::to_string(junk));
    r.details.emplace_back("ascent_ties", tie_seen ? "present (equal-valued dual codes)" : "none");
    r.seconds = clock.seconds();
    return r;
}

Rank1Result check_rank1_impossibility(const Matrix& m)
{
    if (m.rows == 0 || m.cols == 0 || m.values.size() != m.rows * m.cols)
        throw std::invalid_argument("check_rank1_impossibility: matrix must be rectangular and non-empty");
    Rank1Result out;
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t k = i + 1; k < m.rows; ++k)
            for (std::size_t j = 0; j < m.cols; ++j)
                for (std::size_t l = j + 1; l < m.cols; ++l) {
                    const fitness_t d = checked_add(m.at(i, j), m.at(k, l));
                    const fitness_t a = checked_add(m.at(i, l), m.at(k, j));
                    if (d != a) {
                        out.i = i, out.k = k, out.j = j, out.l = l;
                        out.diagonal = d;
                        out.anti_diagonal = a;
                        return out;
                    }
                }
    out.feasible = true;
    for (std::size_t i = 0; i < m.rows; ++i) out.column.push_back(checked_sub(m.at(i, 0), m.at(0, 0)));
    for (std::size_t j = 0; j < m.cols; ++j) out.row.push_back(m.at(0, j));
    return out;
}

Matrix non_additive_matrix() { return make_matrix(3, 3, {0, 1, 2, 2, 1, 0, 0, 1, 2}); }

CheckReport check_rank1()
{
    Stopwatch clock;
    CheckReport r = begin("rank1", {{"matrix", "[[0,1,2],[2,1,0],[0,1,2]]"}});
    const Rank1Result res = check_rank1_impossibility(non_additive_matrix());
    if (res.feasible) {
        r.fail(evidence("non-additive matrix reported feasible"));
    } else if (res.diagonal != 1 || res.anti_diagonal != 3) {
        r.fail(evidence("unexpected violating minor", {}, {}, 1, res.diagonal));
    } else {
        std::ostringstream minor;
        minor << "rows " << res.i + 1 << "," << res.k + 1 << " columns " << res.j + 1 << "," << res.l + 1 << ": "
              << to_string(res.diagonal) << " != " << to_string(res.anti_diagonal);
        r.details.emplace_back("verdict", "infeasible");
        r.details.emplace_back("minor", minor.str());
    }
    // Controls: c 1^T + 1 r^T must come back feasible with a reproducing witness.
    const std::vector<Matrix> controls = {make_matrix(2, 2, {0, 0, 0, 0}), make_matrix(2, 2, {0, 1, 1, 2}),
                                          make_matrix(3, 4, {5, 7, -1, 0, 2, 4, -4, -3, 10, 12, 4, 5})};
    for (std::size_t idx = 0; idx < controls.size() && r.pass; ++idx) {
        const Matrix& m = controls[idx];
        const Rank1Result c = check_rank1_impossibility(m);
        if (!c.feasible) {
            r.fail(evidence("additive control matrix " + std::to_string(idx) + " reported infeasible"));
            break;
        }
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j)
                if (c.column[i] + c.row[j] != m.at(i, j) && r.pass)
                    r.fail(evidence("witness does not reproduce control matrix " + std::to_string(idx), {}, {},
                                    m.at(i, j), c.column[i] + c.row[j]));
    }
    r.details.emplace_back("controls_feasible", std::to_string(controls.size()));
    r.seconds = clock.seconds();
    return r;
}

CheckReport check_pathwidth(const VcspInstance& instance, const PathDecomposition& decomposition)
{
    Stopwatch clock;
    CheckReport r = begin("pathwidth", {{"family", instance.meta().family}, {"n", std::to_string(instance.meta().n)}});
    const DecompositionCheck c = check_path_decomposition(instance, decomposition);
    if (!c.ok()) {
        const auto& v = *c.violation;
        Counterexample ce = evidence(v.message);
        if (v.kind == DecompositionViolation::Kind::UncoveredScope) {
            for (VarId x : instance.constraints()[v.constraint].scope) ce.assignment.push_back(x);
            ce.detail += " (assignment field lists the uncovered scope)";
        } else {
            for (std::size_t b : v.bags) ce.assignment.push_back(static_cast<StateId>(b));
            ce.detail += " (assignment field lists the bags holding the variable)";
        }
        r.fail(std::move(ce));
    } else if (c.width != 4) {
        r.fail(evidence("decomposition width is not 4", {}, {}, 4, c.width));
    }
    r.details.emplace_back("width", std::to_string(c.width));
    r.seconds = clock.seconds();
    return r;
}

CheckReport check_pathwidth(int n_max)
{
    Stopwatch clock;
    CheckReport r = begin("pathwidth", {{"family", std::string(family_pw4)}, {"n_max", std::to_string(n_max)}});
    Pw4Options opts;
    opts.self_check = false;
    for (int n = 2; n <= n_max && r.pass; ++n) {
        const BooleanInstance b = build_boolean_pw4(n, opts);
        const std::size_t arity = max_arity(b.instance);
        if (arity != 5) {
            r.fail(evidence(tag(family_pw4, n) + ": max arity is not 5", {}, {}, 5, static_cast<fitness_t>(arity)));
            break;
        }
        CheckReport one = check_pathwidth(b.instance, b.decomposition);
        if (!one.pass) {
            Counterexample c = *one.counterexample;
            c.detail = tag(family_pw4, n) + ": " + c.detail;
            r.fail(std::move(c));
        }
    }
    r.details.emplace_back("width", r.pass ? "4" : "-");
    r.details.emplace_back("arity", r.pass ? "5" : "-");
    r.seconds = clock.seconds();
    return r;
}

namespace {

struct FamilyInstance {
    VcspInstance instance;
    Assignment start;
};

FamilyInstance make_family(std::string_view family, int n)
{
    if (family == family_2by3) return {build_2by3(n), canonical_start(family, n)};
    if (family == family_3by5) return {build_3by5(n), canonical_start(family, n)};
    Pw4Options opts;
    opts.self_check = false;
    BooleanInstance b = build_boolean_pw4(n, opts);
    return {std::move(b.instance), std::move(b.start)};
}

} // namespace

CheckReport check_oracle_equivalence(int all_starts_max, int canonical_max)
{
    Stopwatch clock;
    CheckReport r = begin("oracle", {{"all_starts_max", std::to_string(all_starts_max)},
                                     {"canonical_max", std::to_string(canonical_max)}});
    std::uint64_t compared = 0;
    for (std::string_view family : {family_2by3, family_3by5, family_pw4}) {
        for (int n = 2; n <= std::max(all_starts_max, canonical_max) && r.pass; ++n) {
            const FamilyInstance fi = make_family(family, n);
            auto compare = [&](const Assignment& start) {
                if (!r.pass) return;
                ++compared;
                const AscentTrace engine = steepest_ascent(fi.instance, start);
                const AscentTrace oracle = exhaustive_steepest_oracle(fi.instance, start);
                if (!same_walk(oracle, engine))
                    r.fail(walk_mismatch(tag(family, n) + ": engine differs from the from-scratch oracle", oracle,
                                         engine));
            };
            if (n <= all_starts_max)
                for_each_assignment(fi.instance.domains(), compare);
            else
                compare(fi.start);
        }
    }
    r.details.emplace_back("walks_compared", std::to_string(compared));
    r.seconds = clock.seconds();
    return r;
}

CheckReport run_check(const std::string& name, const Caps& caps)
{
    if (name == "prop11") return brute_force_check_prop11(caps.prop11, caps.prop11_brute);
    if (name == "exponential") return check_exponential_length(caps.exponential_n);
    if (name == "theorem8") return check_theorem8(caps.theorem8, caps.theorem8_verify);
    if (name == "padding") return check_padding_equations(caps.padding);
    if (name == "boolean") return check_boolean_equivalence(caps.boolean_exhaustive, caps.boolean_ascent);
    if (name == "pathwidth") return check_pathwidth(caps.pathwidth);
    if (name == "rank1") return check_rank1();
    if (name == "oracle") return check_oracle_equivalence(caps.oracle_all_starts, caps.oracle_canonical);
    throw std::invalid_argument("unknown check: " + name);
}

std::vector<CheckReport> run_all(const Caps& caps)
{
    std::vector<CheckReport> out;
    for (const auto& name : check_names()) out.push_back(run_check(name, caps));
    return out;
}

VcspInstance perturb_weight(const VcspInstance& instance, std::size_t c, fitness_t delta)
{
    InstanceData data = instance.data();
    if (c >= data.constraints.size()) throw std::out_of_range("perturb_weight: no such constraint");
    auto& values = data.constraints[c].values;
    fitness_t w = 0;
    for (fitness_t v : values) w = std::max(w, abs_value(v));
    if (w == 0) throw std::invalid_argument("perturb_weight: constraint is identically zero");
    for (fitness_t& v : values) {
        if (v % w != 0) throw std::invalid_argument("perturb_weight: entries are not multiples of the weight");
        v = checked_mul(v / w, checked_add(w, delta));
    }
    return VcspInstance(std::move(data));
}

} // namespace ascentlab::verify
