#include "ascentlab/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace ascentlab::io {

namespace {

template <typename T>
T get(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key)) throw ValidationError(where + ": missing \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(where + ": bad \"" + key + "\": " + e.what());
    }
}

const json& member(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key)) throw ValidationError(where + ": missing \"" + key + "\"");
    return j.at(key);
}

} // namespace

json fitness_to_json(fitness_t v)
{
    if (fits_int64(v)) return static_cast<std::int64_t>(v);
    return to_string(v);
}

fitness_t fitness_from_json(const json& j)
{
    if (j.is_number_integer()) return j.is_number_unsigned() ? fitness_t(j.get<std::uint64_t>()) : fitness_t(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return parse_fitness(j.get<std::string>());
        } catch (const std::exception& e) {
            throw ValidationError(std::string("bad integer value: ") + e.what());
        }
    }
    throw ValidationError("expected an integer or a decimal string, got " + j.dump());
}

json instance_to_json(const VcspInstance& instance)
{
    json j;
    j["version"] = 1;
    j["meta"] = {{"family", instance.meta().family}, {"n", instance.meta().n}};
    json vars = json::array();
    for (const DomainSpec& d : instance.domains()) {
        json t = json::array();
        for (const auto& [u, v] : d.transitions) t.push_back({u, v});
        vars.push_back({{"name", d.name}, {"states", d.states}, {"transitions", t}});
    }
    j["variables"] = std::move(vars);
    json cons = json::array();
    for (const ValuedConstraint& c : instance.constraints()) {
        json values = json::array();
        for (fitness_t v : c.values) values.push_back(fitness_to_json(v));
        cons.push_back({{"label", c.label}, {"scope", c.scope}, {"values", std::move(values)}});
    }
    j["constraints"] = std::move(cons);
    return j;
}

VcspInstance instance_from_json(const json& j)
{
    if (!j.is_object()) throw ValidationError("instance: top level must be an object");
    const int version = get<int>(j, "version", "instance");
    if (version != 1) throw ValidationError("instance: unsupported version " + std::to_string(version));
    InstanceData data;
    const json& meta = member(j, "meta", "instance");
    data.meta.family = get<std::string>(meta, "family", "meta");
    data.meta.n = get<int>(meta, "n", "meta");
    data.meta.range = IntRange::from_environment();
    const json& vars = member(j, "variables", "instance");
    if (!vars.is_array()) throw ValidationError("instance: \"variables\" must be an array");
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const std::string where = "variable " + std::to_string(i);
        DomainSpec d;
        d.name = get<std::string>(vars[i], "name", where);
        d.states = get<std::vector<std::string>>(vars[i], "states", where);
        for (const auto& t : get<std::vector<std::vector<long long>>>(vars[i], "transitions", where)) {
            if (t.size() != 2 || t[0] < 0 || t[1] < 0)
                throw ValidationError(where + ": each transition must be a pair of state indices");
            d.transitions.emplace_back(static_cast<StateId>(t[0]), static_cast<StateId>(t[1]));
        }
        data.domains.push_back(std::move(d));
    }
    const json& cons = member(j, "constraints", "instance");
    if (!cons.is_array()) throw ValidationError("instance: \"constraints\" must be an array");
    for (std::size_t i = 0; i < cons.size(); ++i) {
        const std::string where = "constraint " + std::to_string(i);
        ValuedConstraint c;
        c.label = get<std::string>(cons[i], "label", where);
        for (long long v : get<std::vector<long long>>(cons[i], "scope", where)) {
            if (v < 0) throw ValidationError(where + ": negative variable id");
            c.scope.push_back(static_cast<VarId>(v));
        }
        const json& values = member(cons[i], "values", where);
        if (!values.is_array()) throw ValidationError(where + ": \"values\" must be an array");
        for (const json& v : values) c.values.push_back(fitness_from_json(v));
        data.constraints.push_back(std::move(c));
    }
    return VcspInstance(std::move(data));
}

json codec_to_json(const build::BooleanCodec& codec)
{
    json cols = json::array();
    for (const auto& c : codec.collections()) {
        json codes = json::object();
        for (const auto& [code, state] : c.codes) codes[code] = c.state_labels.at(state);
        cols.push_back({{"name", c.name},
                        {"bits", c.bits},
                        {"states", c.state_labels},
                        {"main_states", c.main_count},
                        {"codes", std::move(codes)}});
    }
    return {{"collections", std::move(cols)}};
}

build::BooleanCodec codec_from_json(const json& j)
{
    const json& cols = member(j, "collections", "codec");
    if (!cols.is_array()) throw ValidationError("codec: \"collections\" must be an array");
    std::vector<build::BooleanCodec::Collection> out;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        const std::string where = "collection " + std::to_string(i);
        build::BooleanCodec::Collection c;
        c.name = get<std::string>(cols[i], "name", where);
        c.bits = get<std::size_t>(cols[i], "bits", where);
        c.state_labels = get<std::vector<std::string>>(cols[i], "states", where);
        c.main_count = get<std::size_t>(cols[i], "main_states", where);
        const json& codes = member(cols[i], "codes", where);
        if (!codes.is_object()) throw ValidationError(where + ": \"codes\" must be an object");
        for (const auto& [code, label] : codes.items()) {
            if (!label.is_string()) throw ValidationError(where + ": code " + code + " must map to a state label");
            std::optional<StateId> s;
            for (StateId k = 0; k < c.state_labels.size(); ++k)
                if (c.state_labels[k] == label.get<std::string>()) s = k;
            if (!s) throw ValidationError(where + ": unknown state " + label.dump());
            c.codes.emplace_back(code, *s);
        }
        out.push_back(std::move(c));
    }
    try {
        return build::BooleanCodec(std::move(out));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
}

json decomposition_to_json(const PathDecomposition& d) { return {{"bags", d.bags}}; }

PathDecomposition decomposition_from_json(const json& j)
{
    PathDecomposition d;
    d.bags = get<std::vector<std::vector<VarId>>>(j, "bags", "decomposition");
    return d;
}

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& j)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(1) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

VcspInstance read_instance(const std::filesystem::path& path) { return instance_from_json(read_json_file(path)); }

void write_instance(const std::filesystem::path& path, const VcspInstance& instance)
{
    write_json_file(path, instance_to_json(instance));
}

TraceCsvWriter::TraceCsvWriter(std::ostream& out, const VcspInstance& instance) : out_(out), instance_(instance)
{
    out_ << "step,var,from,to,fitness\n";
}

void TraceCsvWriter::write(const StepRecord& step)
{
    const DomainSpec& d = instance_.domain(step.var);
    out_ << ++rows_ << ',' << step.var << ',' << d.states[step.from] << ',' << d.states[step.to] << ','
         << to_string(step.fitness_after) << '\n';
}

void write_trace_csv(std::ostream& out, const VcspInstance& instance, const AscentTrace& trace)
{
    TraceCsvWriter w(out, instance);
    for (const StepRecord& s : trace.steps) w.write(s);
}

json assignment_to_json(const VcspInstance& instance, const Assignment& x)
{
    json a = json::array();
    for (VarId k = 0; k < x.size(); ++k) a.push_back(instance.domain(k).states.at(x[k]));
    return a;
}

Assignment assignment_from_json(const VcspInstance& instance, const json& j)
{
    if (!j.is_array()) throw ValidationError("assignment must be an array");
    if (j.size() != instance.var_count())
        throw ValidationError("assignment has " + std::to_string(j.size()) + " entries, instance has " +
                              std::to_string(instance.var_count()) + " variables");
    Assignment x;
    for (VarId k = 0; k < j.size(); ++k) {
        if (j[k].is_string()) {
            const auto s = instance.domain(k).find_state(j[k].get<std::string>());
            if (!s) throw ValidationError("variable " + std::to_string(k) + ": unknown state " + j[k].dump());
            x.push_back(*s);
        } else if (j[k].is_number_unsigned()) {
            x.push_back(j[k].get<StateId>());
        } else {
            throw ValidationError("variable " + std::to_string(k) + ": state must be a label or an index");
        }
    }
    validate_assignment(instance, x);
    return x;
}

json trace_to_json(const VcspInstance& instance, const AscentTrace& trace)
{
    json steps = json::array();
    for (const StepRecord& s : trace.steps) {
        const DomainSpec& d = instance.domain(s.var);
        steps.push_back({{"var", s.var},
                         {"from", d.states[s.from]},
                         {"to", d.states[s.to]},
                         {"fitness", fitness_to_json(s.fitness_after)}});
    }
    json j = {{"policy", std::string(to_string(trace.policy))},
              {"start", assignment_to_json(instance, trace.start)},
              {"start_fitness", fitness_to_json(trace.start_fitness)},
              {"steps", std::move(steps)},
              {"length", trace.length()},
              {"final_fitness", fitness_to_json(trace.final_fitness())},
              {"terminal", trace.terminal},
              {"tie", trace.tie},
              {"ambiguous", trace.ambiguous}};
    if (!trace.order.empty()) j["order"] = trace.order;
    if (trace.policy == AscentPolicy::FirstImprovement) j["seed"] = trace.seed;
    return j;
}

json summary_to_json(const RunSummary& s)
{
    return {{"family", s.family},
            {"n", s.n},
            {"engine", s.engine},
            {"start", s.start},
            {"steps", s.steps},
            {"terminal", s.terminal},
            {"start_fitness", fitness_to_json(s.start_fitness)},
            {"final_fitness", fitness_to_json(s.final_fitness)},
            {"seconds", s.seconds},
            {"steps_per_second", s.steps_per_second()}};
}

json report_to_json(const verify::CheckReport& r)
{
    json params = json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    json j = {{"check", r.name}, {"params", std::move(params)}, {"verdict", r.pass ? "pass" : "fail"}};
    if (r.counterexample) {
        const auto& c = *r.counterexample;
        json ce = {{"detail", c.detail}, {"assignment", c.assignment}};
        if (c.step) ce["step"] = *c.step;
        if (c.expected) ce["expected"] = fitness_to_json(*c.expected);
        if (c.actual) ce["actual"] = fitness_to_json(*c.actual);
        j["counterexample"] = std::move(ce);
    }
    json details = json::object();
    for (const auto& [k, v] : r.details) details[k] = v;
    j["details"] = std::move(details);
    j["seconds"] = r.seconds;
    return j;
}

} // namespace ascentlab::io
