#ifndef ASCENTLAB_VERIFICATION_HPP
#define ASCENTLAB_VERIFICATION_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ascentlab/ascent.hpp"
#include "ascentlab/boolean.hpp"
#include "ascentlab/constructions.hpp"
#include "ascentlab/model.hpp"

namespace ascentlab::verify {

struct Counterexample {
    Assignment assignment;
    std::optional<std::size_t> step;
    std::optional<fitness_t> expected;
    std::optional<fitness_t> actual;
    std::string detail;
};

struct CheckReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> params;
    bool pass = true;
    std::optional<Counterexample> counterexample;  // always set when pass is false
    double seconds = 0;
    std::vector<std::pair<std::string, std::string>> details;

    void fail(Counterexample c)
    {
        pass = false;
        counterexample = std::move(c);
    }
};

/// Steepest ascent that re-evaluates every neighbour from scratch at every step. Same
/// tie-break as the engine: lowest variable, then lowest state.
AscentTrace exhaustive_steepest_oracle(const VcspInstance& instance, const Assignment& start,
                                       std::uint64_t step_limit = unlimited_steps);

/// Ordered ascents of the 2-by-3 path for n = 2..n_max: length f_max(n), every gain +1,
/// no ambiguity, terminal at f_max(n). Also brute-forces the maximum for n <= brute_max and
/// checks the two doubling recurrences of f_max.
CheckReport brute_force_check_prop11(int n_max = 20, int brute_max = 6);

/// Streams the ordered ascent at a single n (no trace storage) and checks its length.
CheckReport check_exponential_length(int n = 40);

/// Steepest ascent of the 3-by-5 instance equals the simulated ordered ascent, with
/// 2 f_max(n) steps and no ties. verify_steepest re-checks every step for n <= verify_max.
CheckReport check_theorem8(int n_max = 14, int verify_max = 10);

struct PaddingScan {
    std::uint64_t assignments = 0;
    std::uint64_t main_only = 0;
    std::uint64_t one_intermediate = 0;
    std::uint64_t equal_completion = 0;
    std::uint64_t two_intermediates = 0;
    std::uint64_t skipped = 0;  // three or more intermediates
    std::optional<Counterexample> failure;
};

/// Exhaustive comparison of an instance over expanded domains with the padded oracle.
PaddingScan scan_padding(const VcspInstance& expanded, const build::ExpandedLandscape& oracle);

CheckReport check_padding_equations(int n_max = 10);
/// Same check against a caller-supplied instance (for injected faults).
CheckReport check_padding_equations(const VcspInstance& expanded, const build::ExpandedLandscape& oracle);

/// (a) exhaustive decode-equivalence for n <= exhaustive_max, (b) decoded steepest ascent
/// replays the 3-by-5 simulated trace for n <= ascent_max, (c) the two-intermediate bound
/// (part of the exhaustive scan).
CheckReport check_boolean_equivalence(int exhaustive_max = 7, int ascent_max = 12,
                                      const build::Pw4Options& options = {});

struct Rank1Result {
    bool feasible = false;
    std::vector<fitness_t> column;  // c, feasible only
    std::vector<fitness_t> row;     // r, feasible only
    /// Violating minor rows (i, k) and columns (j, l), 0-based; infeasible only.
    std::size_t i = 0, k = 0, j = 0, l = 0;
    fitness_t diagonal = 0;       // M[i][j] + M[k][l]
    fitness_t anti_diagonal = 0;  // M[i][l] + M[k][j]
};

/// Decides whether M = c 1^T + 1 r^T over the integers. Minors are scanned in
/// lexicographic order of (i, k, j, l) with i < k and j < l.
Rank1Result check_rank1_impossibility(const build::Matrix& matrix);

/// The 3x3 non-additive matrix is reported infeasible with minor 0+1 != 1+2, and additive control
/// matrices are reported feasible with a witness that reproduces them.
CheckReport check_rank1();

/// Canonical decompositions of build_boolean_pw4(n) for n = 2..n_max have width exactly 4
/// and arity 5. The builder self-check is skipped here; it is not part of this claim.
CheckReport check_pathwidth(int n_max = 200);
CheckReport check_pathwidth(const VcspInstance& instance, const PathDecomposition& decomposition);

/// Engine steepest ascent equals the exhaustive oracle on every start for n <= all_starts_max
/// and on canonical starts for n <= canonical_max, for all three families.
CheckReport check_oracle_equivalence(int all_starts_max = 4, int canonical_max = 10);

struct Caps {
    int prop11 = 20;
    int prop11_brute = 6;
    int exponential_n = 40;
    int theorem8 = 14;
    int theorem8_verify = 10;
    int padding = 10;
    int boolean_exhaustive = 7;
    int boolean_ascent = 12;
    int pathwidth = 200;
    int oracle_all_starts = 4;
    int oracle_canonical = 10;
};

inline const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names = {"prop11", "exponential", "theorem8", "padding",
                                                   "boolean", "pathwidth",  "rank1",    "oracle"};
    return names;
}

/// Runs one named check with the given caps; throws std::invalid_argument on an unknown name.
CheckReport run_check(const std::string& name, const Caps& caps = {});
std::vector<CheckReport> run_all(const Caps& caps = {});

/// Copy of `instance` with constraint `c` scaled from weight w to w + delta. Every nonzero
/// entry of the constraint must be a multiple of its largest absolute entry w.
VcspInstance perturb_weight(const VcspInstance& instance, std::size_t c, fitness_t delta);

/// The matrix whose split into two rank-1 parts is impossible.
build::Matrix non_additive_matrix();

} // namespace ascentlab::verify

#endif
