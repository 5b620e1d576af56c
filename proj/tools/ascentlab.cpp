// ascentlab: generate constructions, run ascents, export traces, run the checks.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ascentlab/ascent.hpp"
#include "ascentlab/boolean.hpp"
#include "ascentlab/constructions.hpp"
#include "ascentlab/io.hpp"
#include "ascentlab/verification.hpp"

using namespace ascentlab;
namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_step_limit = 3;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> families = {std::string(build::family_2by3), std::string(build::family_3by5),
                                           std::string(build::family_pw4)};

struct Built {
    VcspInstance instance;
    std::optional<build::BooleanInstance> boolean;
};

Built build_family(const std::string& family, int n)
{
    if (n < 2) throw UsageError("--n must be at least 2");
    const IntRange range = IntRange::from_environment();
    if (family == build::family_2by3) return {build::build_2by3(n, range), std::nullopt};
    if (family == build::family_3by5) return {build::build_3by5(n, range), std::nullopt};
    if (family == build::family_pw4) {
        build::Pw4Options opts;
        opts.range = range;
        build::BooleanInstance b = build::build_boolean_pw4(n, opts);
        VcspInstance copy = b.instance;
        return {std::move(copy), std::move(b)};
    }
    throw UsageError("unknown family: " + family);
}

fs::path sidecar(const fs::path& out, const std::string& kind)
{
    fs::path p = out;
    p.replace_extension();
    return p.string() + "." + kind + ".json";
}

// ---- gen ----

struct GenArgs {
    std::string family;
    int n = 0;
    std::string out;
};

int cmd_gen(const GenArgs& a)
{
    const Built b = build_family(a.family, a.n);
    if (a.out.empty()) {
        std::cout << io::instance_to_json(b.instance).dump(1) << '\n';
        return exit_ok;
    }
    io::write_instance(a.out, b.instance);
    if (b.boolean) {
        io::write_json_file(sidecar(a.out, "codec"), io::codec_to_json(b.boolean->codec));
        io::write_json_file(sidecar(a.out, "decomposition"), io::decomposition_to_json(b.boolean->decomposition));
    }
    return exit_ok;
}

// ---- ascend ----

struct AscendArgs {
    std::string instance_path;
    std::string family;
    int n = 0;
    std::string engine = "steepest";
    std::string start = "canonical";
    std::uint64_t step_limit = unlimited_steps;
    std::string trace;
    bool summary_only = false;
    std::uint64_t seed = 0;
};

Assignment resolve_start(const VcspInstance& inst, const std::string& start)
{
    if (start == "canonical") {
        const auto& fam = inst.meta().family;
        if (std::find(families.begin(), families.end(), fam) == families.end())
            throw UsageError("no canonical start for family \"" + fam + "\"; pass --start FILE");
        Assignment x = build::canonical_start(fam, inst.meta().n);
        validate_assignment(inst, x);
        return x;
    }
    return io::assignment_from_json(inst, io::read_json_file(start));
}

int cmd_ascend(const AscendArgs& a)
{
    std::optional<VcspInstance> loaded;
    if (!a.instance_path.empty()) {
        if (!a.family.empty()) throw UsageError("give either an instance file or --family, not both");
        loaded = io::read_instance(a.instance_path);
    } else {
        if (a.family.empty()) throw UsageError("ascend needs an instance file or --family and --n");
        loaded = build_family(a.family, a.n).instance;
    }
    const VcspInstance& inst = *loaded;
    const auto policy = parse_policy(a.engine);
    if (!policy || (*policy != AscentPolicy::Steepest && *policy != AscentPolicy::Ordered &&
                    *policy != AscentPolicy::FirstImprovement))
        throw UsageError("--engine must be steepest, ordered or first");
    const Assignment start = resolve_start(inst, a.start);
    const auto order = identity_order(inst.var_count());

    const bool want_trace = !a.trace.empty() && !a.summary_only;
    const bool json_trace = want_trace && fs::path(a.trace).extension() == ".json";
    std::ofstream csv;
    std::optional<io::TraceCsvWriter> writer;
    if (want_trace && !json_trace) {
        csv.open(a.trace);
        if (!csv) throw io::IoError("cannot write " + a.trace);
        writer.emplace(csv, inst);
    }
    StepSink sink;
    if (writer) sink = [&](const StepRecord& s) { writer->write(s); };

    const auto t0 = std::chrono::steady_clock::now();
    WalkSummary w;
    if (json_trace) {
        AscentTrace t;
        if (*policy == AscentPolicy::Steepest) t = steepest_ascent(inst, start, a.step_limit);
        else if (*policy == AscentPolicy::Ordered) t = ordered_ascent(inst, start, order, a.step_limit);
        else t = first_improvement_ascent(inst, start, a.step_limit, a.seed);
        io::write_json_file(a.trace, io::trace_to_json(inst, t));
        w = {t.final_assignment(), t.start_fitness, t.final_fitness(), t.length(), t.terminal, t.tie, t.ambiguous};
    } else if (*policy == AscentPolicy::Steepest) {
        w = walk_steepest(inst, start, a.step_limit, sink);
    } else if (*policy == AscentPolicy::Ordered) {
        w = walk_ordered(inst, start, order, a.step_limit, sink);
    } else {
        w = walk_first_improvement(inst, start, a.step_limit, a.seed, sink);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (csv.is_open()) {
        csv.flush();
        if (!csv) throw io::IoError("write failed: " + a.trace);
    }

    io::RunSummary s;
    s.family = inst.meta().family;
    s.n = inst.meta().n;
    s.engine = std::string(to_string(*policy));
    s.start = a.start;
    s.steps = w.steps;
    s.terminal = w.terminal;
    s.start_fitness = w.start_fitness;
    s.final_fitness = w.final_fitness;
    s.seconds = seconds;
    io::json j = io::summary_to_json(s);
    if (*policy == AscentPolicy::FirstImprovement) j["seed"] = a.seed;
    std::cout << j.dump() << '\n';
    return w.terminal ? exit_ok : exit_step_limit;
}

// ---- verify ----

struct VerifyArgs {
    std::string check = "all";
    std::optional<int> cap;
};

void apply_cap(verify::Caps& caps, const std::string& check, int cap)
{
    const bool all = check == "all";
    if (all || check == "prop11") caps.prop11 = cap, caps.prop11_brute = std::min(caps.prop11_brute, cap);
    if (all || check == "exponential") caps.exponential_n = cap;
    if (all || check == "theorem8") caps.theorem8 = cap, caps.theorem8_verify = std::min(caps.theorem8_verify, cap);
    if (all || check == "padding") caps.padding = cap;
    if (all || check == "boolean") caps.boolean_exhaustive = cap, caps.boolean_ascent = std::min(caps.boolean_ascent, cap);
    if (all || check == "pathwidth") caps.pathwidth = cap;
    if (all || check == "oracle")
        caps.oracle_canonical = cap, caps.oracle_all_starts = std::min(caps.oracle_all_starts, cap);
}

int cmd_verify(const VerifyArgs& a)
{
    verify::Caps caps;
    const auto& names = verify::check_names();
    if (a.check != "all" && std::find(names.begin(), names.end(), a.check) == names.end())
        throw UsageError("unknown check: " + a.check);
    if (a.cap) {
        if (*a.cap < 2) throw UsageError("--cap must be at least 2");
        apply_cap(caps, a.check, *a.cap);
    }
    bool ok = true;
    const std::vector<std::string> selected = a.check == "all" ? names : std::vector<std::string>{a.check};
    for (const auto& name : selected) {
        const verify::CheckReport r = verify::run_check(name, caps);
        ok = ok && r.pass;
        std::cout << io::report_to_json(r).dump() << std::endl;
    }
    return ok ? exit_ok : exit_check_failed;
}

// ---- bench ----

struct BenchArgs {
    std::string family;
    std::string n_list;
    std::string engine = "ordered";
    std::uint64_t seed = 0;
    std::string out;
};

std::vector<int> parse_n_list(const std::string& text)
{
    std::vector<int> out;
    if (text.empty()) return out;
    auto to_int = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw UsageError("bad n-list entry: \"" + s + "\"");
        }
    };
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const int lo = to_int(text.substr(0, dots));
        const int hi = to_int(text.substr(dots + 2));
        for (int n = lo; n <= hi; ++n) out.push_back(n);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_int(item));
    return out;
}

int cmd_bench(const BenchArgs& a)
{
    if (std::find(families.begin(), families.end(), a.family) == families.end())
        throw UsageError("unknown family: " + a.family);
    const auto policy = parse_policy(a.engine);
    if (!policy || (*policy != AscentPolicy::Steepest && *policy != AscentPolicy::Ordered &&
                    *policy != AscentPolicy::FirstImprovement))
        throw UsageError("--engine must be steepest, ordered or first");
    const std::vector<int> ns = parse_n_list(a.n_list);
    for (int n : ns)
        if (n < 2) throw UsageError("every n must be at least 2");

    std::ofstream file;
    if (!a.out.empty()) {
        file.open(a.out);
        if (!file) throw io::IoError("cannot write " + a.out);
    }
    std::ostream& out = a.out.empty() ? std::cout : file;
    out << "family,n,steps,seconds,steps_per_sec\n";
    for (int n : ns) {
        const Built b = build_family(a.family, n);
        const Assignment start = build::canonical_start(a.family, n);
        const auto t0 = std::chrono::steady_clock::now();
        WalkSummary w;
        if (*policy == AscentPolicy::Steepest) w = walk_steepest(b.instance, start, unlimited_steps);
        else if (*policy == AscentPolicy::Ordered)
            w = walk_ordered(b.instance, start, identity_order(b.instance.var_count()), unlimited_steps);
        else w = walk_first_improvement(b.instance, start, unlimited_steps, a.seed);
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out << a.family << ',' << n << ',' << w.steps << ',' << s << ','
            << (s > 0 ? static_cast<double>(w.steps) / s : 0.0) << '\n';
    }
    out.flush();
    if (!out) throw io::IoError("write failed");
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Local-search lab for valued constraint instances with long ascents"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Write a construction as instance JSON");
    g->add_option("--family", gen.family, "2by3, 3by5 or bool-pw4")->required()->check(CLI::IsMember(families));
    g->add_option("--n", gen.n, "Number of base variables (>= 2)")->required();
    g->add_option("--out", gen.out, "Output path; bool-pw4 also writes .codec.json and .decomposition.json");

    AscendArgs asc;
    auto* s = app.add_subcommand("ascend", "Run an ascent and print a run summary");
    s->add_option("instance", asc.instance_path, "Instance JSON file");
    s->add_option("--family", asc.family, "Build the instance in memory instead of reading a file")
        ->check(CLI::IsMember(families));
    s->add_option("--n", asc.n, "Number of base variables");
    s->add_option("--engine", asc.engine, "steepest, ordered or first")->capture_default_str();
    s->add_option("--start", asc.start, "\"canonical\" or a JSON file with one state per variable")
        ->capture_default_str();
    s->add_option("--step-limit", asc.step_limit, "Stop after this many steps (exit code 3)");
    s->add_option("--trace", asc.trace, "Trace output; .json writes JSON, anything else CSV");
    s->add_flag("--summary-only", asc.summary_only, "Do not write a trace");
    s->add_option("--seed", asc.seed, "Seed for the first-improvement engine")->capture_default_str();

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "Run checks and print one JSON report per line");
    std::vector<std::string> check_choices = verify::check_names();
    check_choices.push_back("all");
    v->add_option("--check", ver.check, "Check name or \"all\"")->check(CLI::IsMember(check_choices))->capture_default_str();
    v->add_option("--cap", ver.cap, "Largest n for the selected check(s)");

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "Time ascents over a list of n and print CSV");
    b->add_option("--family", bench.family, "2by3, 3by5 or bool-pw4")->required()->check(CLI::IsMember(families));
    b->add_option("--n", bench.n_list, "\"lo..hi\" or a comma list; empty gives a header only");
    b->add_option("--engine", bench.engine, "steepest, ordered or first")->capture_default_str();
    b->add_option("--seed", bench.seed, "Seed for the first-improvement engine");
    b->add_option("--out", bench.out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*g) return cmd_gen(gen);
        if (*s) return cmd_ascend(asc);
        if (*v) return cmd_verify(ver);
        if (*b) return cmd_bench(bench);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const io::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return exit_usage;
    } catch (const RangeError& e) {
        std::cerr << "range error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
