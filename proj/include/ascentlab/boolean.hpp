#ifndef ASCENTLAB_BOOLEAN_HPP
#define ASCENTLAB_BOOLEAN_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ascentlab/constructions.hpp"
#include "ascentlab/model.hpp"

namespace ascentlab::build {

struct DecodedCollection {
    enum class Kind { Main, Intermediate, Junk };

    Kind kind = Kind::Junk;
    StateId state = 0;  // expanded state id; meaningless for junk
    std::string code;   // the bits as read, e.g. "00"

    bool junk() const { return kind == Kind::Junk; }
};

/// Groups consecutive Boolean variables into collections, each encoding one expanded
/// variable. A state may own several codes (the first listed is used for encoding);
/// any other bit string decodes to junk.
class BooleanCodec {
public:
    struct Collection {
        std::string name;
        std::size_t first_bit = 0;
        std::size_t bits = 0;
        std::vector<std::string> state_labels;  // expanded states
        std::size_t main_count = 0;
        std::vector<std::pair<std::string, StateId>> codes;
    };

    BooleanCodec() = default;
    explicit BooleanCodec(std::vector<Collection> collections);

    const std::vector<Collection>& collections() const { return collections_; }
    std::size_t bit_count() const;

    std::optional<StateId> decode_code(std::size_t collection, std::string_view code) const;
    /// All codes of a state, primary first.
    std::vector<std::string> codes_of(std::size_t collection, StateId state) const;

    Assignment encode(std::span<const StateId> states) const;
    std::vector<DecodedCollection> decode(std::span<const StateId> bits) const;
    /// Expanded assignment, or nullopt if any collection is junk.
    std::optional<Assignment> decode_states(std::span<const StateId> bits) const;
    std::string code_at(std::span<const StateId> bits, std::size_t collection) const;

private:
    std::vector<Collection> collections_;
};

/// Total decode of a Boolean assignment, one entry per collection.
std::vector<DecodedCollection> decode_assignment(const BooleanCodec& codec, std::span<const StateId> bits);

struct BooleanEncoding {
    VcspInstance instance;
    BooleanCodec codec;
};

/// One-hot main states, two-hot intermediates, |D_k| bits per expanded variable. Every
/// constraint keeps its value on encoded tuples and is 0 when any part is junk.
BooleanEncoding boolean_encode_generic(const VcspInstance& expanded, const ExpansionMap& map);

struct Pw4Options {
    IntRange range = IntRange::wide();
    bool include_j = true;
    /// Also penalise (even, odd) adjacent intermediates.
    bool mirror_j = true;
    /// Multiply the adjacent-intermediate penalty by 2n+1 like the state-valued tables.
    bool scale_j = true;
    /// Exhaustive master-invariant check at build time for n <= self_check_max_n.
    bool self_check = true;
    int self_check_max_n = 4;
};

struct BooleanInstance {
    VcspInstance instance;
    BooleanCodec codec;
    PathDecomposition decomposition;
    Assignment start;
};

/// Arity-5, pathwidth-4 Boolean encoding of the padded 2-by-3 path.
BooleanInstance build_boolean_pw4(int n, const Pw4Options& options = {});

struct EquivalenceFailure {
    Assignment bits;
    std::string rule;
    fitness_t expected = 0;
    fitness_t actual = 0;
};

struct EquivalenceScan {
    std::uint64_t assignments = 0;
    std::uint64_t main_only = 0;
    std::uint64_t one_intermediate = 0;
    std::uint64_t two_intermediates = 0;
    std::uint64_t junk = 0;
    std::optional<EquivalenceFailure> failure;
};

/// Enumerates every Boolean assignment and compares it with the padded oracle:
/// exact equality with no intermediate or one encoded by a unique code, the max-over-codes
/// rule for a dual-coded intermediate, and the two-intermediate upper bound.
/// Stops at the first failure.
EquivalenceScan scan_boolean_equivalence(const VcspInstance& boolean, const BooleanCodec& codec,
                                         const ExpandedLandscape& oracle);

} // namespace ascentlab::build

#endif
