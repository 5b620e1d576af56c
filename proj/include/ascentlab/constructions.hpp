#ifndef ASCENTLAB_CONSTRUCTIONS_HPP
#define ASCENTLAB_CONSTRUCTIONS_HPP

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ascentlab/ascent.hpp"
#include "ascentlab/model.hpp"

namespace ascentlab::build {

inline constexpr std::string_view family_2by3 = "2by3";
inline constexpr std::string_view family_3by5 = "3by5";
inline constexpr std::string_view family_pw4 = "bool-pw4";

/// m_k = 2^(k+1) - 3, the weight schedule of the alternating path (m_1 = 1, m_{k+1} = 2 m_k + 3).
fitness_t weight_m(int k);

/// m_1 .. m_count computed by the recurrence rather than the closed form.
std::vector<fitness_t> weight_schedule(int count);

/// Maximum fitness of the 2-by-3 path on n variables, which is also the exact length of
/// its ordered ascent from all-A.
fitness_t f_max(int n);

/// Small dense integer matrix, row-major.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<fitness_t> values;

    fitness_t at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    friend bool operator==(const Matrix&, const Matrix&) = default;
};

Matrix make_matrix(std::size_t rows, std::size_t cols, std::initializer_list<fitness_t> values);

/// The literal tables of the constructions. Base-state tables index states A, B, C in order.
/// Boolean tables index rows and columns by `codes3` / `codes2` in the listed order.
namespace tables {

inline constexpr std::array<std::string_view, 8> codes3 = {"100", "010", "001", "110",
                                                           "101", "011", "000", "111"};
inline constexpr std::array<std::string_view, 4> codes2 = {"10", "01", "00", "11"};

Matrix L();                // 3 x 2: rows A,B,C of the 3-state side, columns A,B
Matrix M();                // 2 x 3: rows A,B of the 2-state side, columns A,B,C
Matrix P();                // 3 x 3: min over the odd variable, rows x_{k-1}, columns x_{k+1}
Matrix Q(fitness_t m);     // 2 x 2: min over {A,B} at an even variable
Matrix R(fitness_t m);     // 2 x 2: min over {B,C} at an even variable
Matrix U_hat();            // 1 x 3 over A, B, s_AB
Matrix V_hat();            // 1 x 5 over A, B, C, s_AB, s_BC

Matrix M_tilde(fitness_t m);             // 4 x 8 (reconstructed lift of m * M)
Matrix L_tilde(fitness_t m);             // 8 x 4
Matrix T_tilde_minus(fitness_t m);       // 8 x 4
Matrix T_tilde_plus(fitness_t m);        // 4 x 8
Matrix S_tilde(fitness_t m);             // 8 x 4, columns are flank bits (0,0),(1,0),(0,1),(1,1)
Matrix J_tilde(fitness_t weight);        // 4 x 8, -weight on (intermediate, intermediate)
Matrix U_tilde(fitness_t weight);        // 1 x 4
Matrix V_tilde(fitness_t weight);        // 1 x 8

std::optional<std::size_t> code_index(std::string_view code);

} // namespace tables

/// Alternating path of 2-state (odd) and 3-state (even) variables with an exponentially
/// long ordered ascent.
VcspInstance build_2by3(int n, IntRange range = IntRange::wide());

/// Per-variable map between a base domain and its expansion with one intermediate state
/// per transition pair. Main states keep their ids; intermediates follow in transition order.
class ExpansionMap {
public:
    explicit ExpansionMap(const std::vector<DomainSpec>& base);

    std::size_t var_count() const { return vars_.size(); }
    std::size_t main_count(VarId k) const { return vars_.at(k).main_count; }
    bool is_main(VarId k, StateId s) const { return s < vars_.at(k).main_count; }
    /// Main endpoints (u, v) of an intermediate state.
    std::pair<StateId, StateId> endpoints(VarId k, StateId s) const;
    /// Intermediate state between main states u and v (either order).
    StateId intermediate(VarId k, StateId u, StateId v) const;
    const DomainSpec& expanded_domain(VarId k) const { return vars_.at(k).expanded; }
    std::vector<DomainSpec> expanded_domains() const;

private:
    struct Entry {
        std::size_t main_count = 0;
        std::vector<std::pair<StateId, StateId>> intermediates;
        DomainSpec expanded;
    };
    std::vector<Entry> vars_;
};

/// The padded fitness function over expanded domains, evaluated directly from the base
/// instance. Assignments with two or more intermediates get (2n+1) times the minimum
/// base fitness over all main completions.
class ExpandedLandscape {
public:
    ExpandedLandscape(VcspInstance base, std::vector<VarId> order);

    const VcspInstance& base() const { return base_; }
    const ExpansionMap& map() const { return map_; }
    std::span<const VarId> order() const { return order_; }
    /// 1-based position of variable k in the order.
    std::size_t position(VarId k) const { return position_.at(k); }
    fitness_t scale() const;

    void validate(std::span<const StateId> xhat) const;
    /// Variables holding intermediate states, ascending.
    std::vector<VarId> intermediates(std::span<const StateId> xhat) const;
    /// Minimum base fitness over all main completions of the intermediate positions.
    fitness_t min_over_completions(std::span<const StateId> xhat) const;

    fitness_t fitness(std::span<const StateId> xhat) const;
    /// Upper bound required of assignments with exactly two intermediates; nullopt otherwise.
    std::optional<fitness_t> two_intermediate_bound(std::span<const StateId> xhat) const;

private:
    VcspInstance base_;
    ExpansionMap map_;
    std::vector<VarId> order_;
    std::vector<std::size_t> position_;
};

ExpandedLandscape expand_landscape(const VcspInstance& base, std::span<const VarId> order);

/// The doubled walk that alternates the base walk's main states with the intermediate of
/// each transition. Throws ValidationError if `base_walk` is not a valid ascent.
AscentTrace simulate_ascent(const AscentTrace& base_walk, const ExpandedLandscape& landscape);

/// The padded 2-by-3 path realized by constraints of arity at most 3 over alternating
/// 3-state and 5-state domains.
VcspInstance build_3by5(int n, IntRange range = IntRange::wide());

/// All-A for the 2by3 and 3by5 families, the encoded all-A ("10", "100", ...) for bool-pw4.
Assignment canonical_start(std::string_view family, int n);

} // namespace ascentlab::build

#endif
