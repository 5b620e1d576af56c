#ifndef ASCENTLAB_IO_HPP
#define ASCENTLAB_IO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ascentlab/ascent.hpp"
#include "ascentlab/boolean.hpp"
#include "ascentlab/model.hpp"
#include "ascentlab/verification.hpp"

namespace ascentlab::io {

using json = nlohmann::ordered_json;

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integers that fit in int64 become JSON numbers, wider ones decimal strings.
json fitness_to_json(fitness_t v);
/// Accepts a JSON integer or a decimal string. Throws ValidationError otherwise.
fitness_t fitness_from_json(const json& j);

json instance_to_json(const VcspInstance& instance);
/// Parses and validates. The integer range comes from ASCENTLAB_INT_RANGE.
VcspInstance instance_from_json(const json& j);

json codec_to_json(const build::BooleanCodec& codec);
build::BooleanCodec codec_from_json(const json& j);

json decomposition_to_json(const PathDecomposition& d);
PathDecomposition decomposition_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

VcspInstance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const VcspInstance& instance);

/// Streams trace rows "step,var,from,to,fitness"; steps count from 1, states are labels.
class TraceCsvWriter {
public:
    TraceCsvWriter(std::ostream& out, const VcspInstance& instance);
    void write(const StepRecord& step);
    std::uint64_t rows() const { return rows_; }

private:
    std::ostream& out_;
    const VcspInstance& instance_;
    std::uint64_t rows_ = 0;
};

void write_trace_csv(std::ostream& out, const VcspInstance& instance, const AscentTrace& trace);

json trace_to_json(const VcspInstance& instance, const AscentTrace& trace);

struct RunSummary {
    std::string family;
    int n = 0;
    std::string engine;
    std::string start;
    std::uint64_t steps = 0;
    bool terminal = false;
    fitness_t start_fitness = 0;
    fitness_t final_fitness = 0;
    double seconds = 0;

    double steps_per_second() const { return seconds > 0 ? static_cast<double>(steps) / seconds : 0.0; }
};

json summary_to_json(const RunSummary& s);

json report_to_json(const verify::CheckReport& r);

/// Assignment as state labels.
json assignment_to_json(const VcspInstance& instance, const Assignment& x);
/// Reads state labels or state indices; validates against the instance.
Assignment assignment_from_json(const VcspInstance& instance, const json& j);

} // namespace ascentlab::io

#endif
