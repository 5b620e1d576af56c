#include "ascentlab/constructions.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "tabulate.hpp"

namespace ascentlab::build {

using detail::Slot;
using detail::tabulate;

fitness_t weight_m(int k)
{
    if (k < 1) throw std::invalid_argument("weight_m: k must be at least 1");
    return checked_sub(checked_pow2(k + 1), 3);
}

std::vector<fitness_t> weight_schedule(int count)
{
    std::vector<fitness_t> m;
    if (count <= 0) return m;
    m.push_back(1);
    while (static_cast<int>(m.size()) < count) m.push_back(checked_add(checked_mul(2, m.back()), 3));
    return m;
}

fitness_t f_max(int n)
{
    if (n < 2) throw std::invalid_argument("f_max: n must be at least 2");
    const int h = n / 2;
    if (n % 2 == 0) return checked_sub(checked_mul(3, checked_pow2(h + 2)), fitness_t{7} * h + 12);
    return checked_sub(checked_pow2(h + 4), fitness_t{7} * h + 15);
}

Matrix make_matrix(std::size_t rows, std::size_t cols, std::initializer_list<fitness_t> values)
{
    if (values.size() != rows * cols) throw std::invalid_argument("make_matrix: wrong number of entries");
    return Matrix{rows, cols, std::vector<fitness_t>(values)};
}

namespace tables {

namespace {

Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix{rows, cols, std::vector<fitness_t>(rows * cols, 0)}; }

void put(Matrix& m, std::string_view row, std::string_view col, fitness_t v)
{
    const auto r = m.rows == 1 ? std::optional<std::size_t>(0) : code_index(row);
    const auto c = code_index(col);
    m.values.at(*r * m.cols + *c) = v;
}

} // namespace

std::optional<std::size_t> code_index(std::string_view code)
{
    if (code.size() == 3) {
        for (std::size_t i = 0; i < codes3.size(); ++i)
            if (codes3[i] == code) return i;
    } else if (code.size() == 2) {
        for (std::size_t i = 0; i < codes2.size(); ++i)
            if (codes2[i] == code) return i;
    }
    return std::nullopt;
}

Matrix L() { return make_matrix(3, 2, {0, 2, 1, 1, 2, 0}); }
Matrix M() { return make_matrix(2, 3, {0, 1, 0, 1, 0, 1}); }
Matrix P() { return make_matrix(3, 3, {0, 2, 0, 1, 1, 1, 2, 0, 2}); }
Matrix Q(fitness_t m) { return make_matrix(2, 2, {0, 2 * m + 1, m, m + 1}); }
Matrix R(fitness_t m) { return make_matrix(2, 2, {2 * m + 1, 0, m + 1, m}); }
Matrix U_hat() { return make_matrix(1, 3, {0, 0, 1}); }
Matrix V_hat() { return make_matrix(1, 5, {0, 0, 0, 1, 1}); }

Matrix M_tilde(fitness_t m)
{
    Matrix t = zeros(4, 8);
    put(t, "10", "010", m);
    put(t, "01", "100", m);
    put(t, "01", "001", m);
    return t;
}

Matrix L_tilde(fitness_t m)
{
    Matrix t = zeros(8, 4);
    put(t, "100", "01", 2 * (m + 1));
    put(t, "010", "10", m + 1);
    put(t, "010", "01", m + 1);
    put(t, "001", "10", 2 * (m + 1));
    return t;
}

Matrix T_tilde_minus(fitness_t m)
{
    Matrix t = zeros(8, 4);
    put(t, "100", "11", 2 * (m + 1));
    put(t, "010", "00", m + 1);
    put(t, "010", "11", m + 1);
    put(t, "001", "00", 2 * (m + 1));
    return t;
}

Matrix T_tilde_plus(fitness_t m)
{
    Matrix t = zeros(4, 8);
    const fitness_t w = -2 * (m + 1);
    put(t, "00", "010", w);
    put(t, "11", "100", w);
    put(t, "11", "001", w);
    return t;
}

Matrix S_tilde(fitness_t m)
{
    Matrix t = zeros(8, 4);
    const std::size_t sab = *code_index("110");
    const std::size_t sbc = *code_index("011");
    const fitness_t row_ab[4] = {2 * m + 1, m + 1, 0, m};
    const fitness_t row_bc[4] = {0, m, 2 * m + 1, m + 1};
    for (std::size_t c = 0; c < 4; ++c) {
        t.values[sab * 4 + c] = row_ab[c];
        t.values[sbc * 4 + c] = row_bc[c];
    }
    return t;
}

Matrix J_tilde(fitness_t weight)
{
    Matrix t = zeros(4, 8);
    for (auto row : {"00", "11"})
        for (auto col : {"110", "011"}) put(t, row, col, -weight);
    return t;
}

Matrix U_tilde(fitness_t weight) { return make_matrix(1, 4, {0, 0, weight, weight}); }

Matrix V_tilde(fitness_t weight)
{
    Matrix t = zeros(1, 8);
    put(t, "", "110", weight);
    put(t, "", "011", weight);
    return t;
}

} // namespace tables

namespace {

constexpr StateId kA = 0;

DomainSpec two_state(int i) { return {"x" + std::to_string(i), {"A", "B"}, {{0, 1}}}; }
DomainSpec three_state(int i) { return {"x" + std::to_string(i), {"A", "B", "C"}, {{0, 1}, {1, 2}}}; }

void require_n(int n, std::string_view what)
{
    if (n < 2) throw std::invalid_argument(std::string(what) + ": n must be at least 2, got " + std::to_string(n));
}

/// Slot for the 1-based variable i, or a phantom fixed to A beyond the end of the path.
Slot slot_or_phantom(int i, int n, std::size_t size)
{
    if (i <= n) return Slot::real(static_cast<VarId>(i - 1), size);
    return Slot::phantom(size, kA);
}

void add(InstanceData& data, std::optional<ValuedConstraint> c)
{
    if (c) data.constraints.push_back(std::move(*c));
}

VcspInstance finish(InstanceData data)
{
    const fitness_t bound = worst_case_magnitude(data);
    if (bound > data.meta.range.limit) {
        throw RangeError(data.meta.family + " n=" + std::to_string(data.meta.n) + ": worst-case fitness " +
                         to_string(bound) + " exceeds the " + std::string(data.meta.range.name()) +
                         " integer range");
    }
    return VcspInstance(std::move(data));
}

std::string sup(std::string_view name, int l) { return std::string(name) + "^" + std::to_string(l); }

} // namespace

VcspInstance build_2by3(int n, IntRange range)
{
    require_n(n, "build_2by3");
    InstanceData data;
    data.meta = {std::string(family_2by3), n, range};
    for (int i = 1; i <= n; ++i) data.domains.push_back(i % 2 == 1 ? two_state(i) : three_state(i));

    const Matrix L = tables::L();
    const Matrix M = tables::M();
    for (int l = 1; 2 * l - 1 <= n; ++l) {
        const fitness_t m = weight_m(l);
        const std::string m_label = sup("M", l) + (2 * l > n ? "(-,A)" : "");
        add(data, tabulate(m_label, {slot_or_phantom(2 * l - 1, n, 2), slot_or_phantom(2 * l, n, 3)},
                           [&](std::span<const StateId> s) { return checked_mul(m, M.at(s[0], s[1])); }));
        if (2 * l > n) break;
        const fitness_t w = m + 1;
        const std::string l_label = sup("L", l) + (2 * l + 1 > n ? "(-,A)" : "");
        add(data, tabulate(l_label, {slot_or_phantom(2 * l, n, 3), slot_or_phantom(2 * l + 1, n, 2)},
                           [&](std::span<const StateId> s) { return checked_mul(w, L.at(s[0], s[1])); }));
    }
    return finish(std::move(data));
}

ExpansionMap::ExpansionMap(const std::vector<DomainSpec>& base)
{
    vars_.reserve(base.size());
    for (const DomainSpec& d : base) {
        Entry e;
        e.main_count = d.size();
        e.expanded.name = d.name;
        e.expanded.states = d.states;
        for (const auto& [a, b] : d.transitions) {
            const StateId u = std::min(a, b);
            const StateId v = std::max(a, b);
            const auto sigma = static_cast<StateId>(e.expanded.states.size());
            e.intermediates.emplace_back(u, v);
            e.expanded.states.push_back("s_" + d.states.at(u) + d.states.at(v));
            e.expanded.transitions.emplace_back(u, sigma);
            e.expanded.transitions.emplace_back(sigma, v);
        }
        vars_.push_back(std::move(e));
    }
}

std::pair<StateId, StateId> ExpansionMap::endpoints(VarId k, StateId s) const
{
    const Entry& e = vars_.at(k);
    if (s < e.main_count) throw std::invalid_argument("endpoints: state is not an intermediate");
    return e.intermediates.at(s - e.main_count);
}

StateId ExpansionMap::intermediate(VarId k, StateId u, StateId v) const
{
    const Entry& e = vars_.at(k);
    const auto key = std::minmax(u, v);
    for (std::size_t i = 0; i < e.intermediates.size(); ++i)
        if (e.intermediates[i] == std::pair(key.first, key.second)) return static_cast<StateId>(e.main_count + i);
    throw std::invalid_argument("intermediate: (" + std::to_string(u) + "," + std::to_string(v) +
                                ") is not a transition of variable " + std::to_string(k));
}

std::vector<DomainSpec> ExpansionMap::expanded_domains() const
{
    std::vector<DomainSpec> out;
    out.reserve(vars_.size());
    for (const Entry& e : vars_) out.push_back(e.expanded);
    return out;
}

ExpandedLandscape::ExpandedLandscape(VcspInstance base, std::vector<VarId> order)
    : base_(std::move(base)), map_(base_.domains()), order_(std::move(order))
{
    const std::size_t n = base_.var_count();
    if (order_.size() != n) throw ValidationError("order must list every variable exactly once");
    position_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (order_[i] >= n || position_[order_[i]] != 0) throw ValidationError("order is not a permutation");
        position_[order_[i]] = i + 1;
    }
}

fitness_t ExpandedLandscape::scale() const { return 2 * static_cast<fitness_t>(base_.var_count()) + 1; }

void ExpandedLandscape::validate(std::span<const StateId> xhat) const
{
    if (xhat.size() != base_.var_count())
        throw ValidationError("expanded assignment has the wrong number of entries");
    for (VarId k = 0; k < xhat.size(); ++k)
        if (xhat[k] >= map_.expanded_domain(k).size())
            throw ValidationError("expanded assignment entry " + std::to_string(k) + " out of range");
}

std::vector<VarId> ExpandedLandscape::intermediates(std::span<const StateId> xhat) const
{
    std::vector<VarId> out;
    for (VarId k = 0; k < xhat.size(); ++k)
        if (!map_.is_main(k, xhat[k])) out.push_back(k);
    return out;
}

fitness_t ExpandedLandscape::min_over_completions(std::span<const StateId> xhat) const
{
    validate(xhat);
    const auto inter = intermediates(xhat);
    if (inter.size() > 30) throw std::invalid_argument("too many intermediate states to enumerate completions");
    Assignment x(xhat.begin(), xhat.end());
    std::optional<fitness_t> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inter.size()); ++mask) {
        for (std::size_t i = 0; i < inter.size(); ++i) {
            const auto [u, v] = map_.endpoints(inter[i], xhat[inter[i]]);
            x[inter[i]] = (mask >> i) & 1 ? v : u;
        }
        const fitness_t f = evaluate_fitness(base_, x);
        if (!best || f < *best) best = f;
    }
    return *best;
}

fitness_t ExpandedLandscape::fitness(std::span<const StateId> xhat) const
{
    validate(xhat);
    const auto inter = intermediates(xhat);
    const fitness_t n = static_cast<fitness_t>(base_.var_count());
    if (inter.size() == 1) {
        const VarId k = inter.front();
        const auto [u, v] = map_.endpoints(k, xhat[k]);
        Assignment x(xhat.begin(), xhat.end());
        x[k] = u;
        const fitness_t fu = evaluate_fitness(base_, x);
        x[k] = v;
        const fitness_t fv = evaluate_fitness(base_, x);
        const fitness_t padded = checked_mul(scale(), std::min(fu, fv));
        if (fu == fv) return padded;
        return checked_add(n - static_cast<fitness_t>(position(k)) + 1, padded);
    }
    return checked_mul(scale(), min_over_completions(xhat));
}

std::optional<fitness_t> ExpandedLandscape::two_intermediate_bound(std::span<const StateId> xhat) const
{
    validate(xhat);
    const auto inter = intermediates(xhat);
    if (inter.size() != 2) return std::nullopt;
    const fitness_t n = static_cast<fitness_t>(base_.var_count());
    const fitness_t slack = 2 * n - static_cast<fitness_t>(position(inter[0]) + position(inter[1])) + 2;
    return checked_add(slack, checked_mul(scale(), min_over_completions(xhat)));
}

ExpandedLandscape expand_landscape(const VcspInstance& base, std::span<const VarId> order)
{
    return ExpandedLandscape(base, std::vector<VarId>(order.begin(), order.end()));
}

AscentTrace simulate_ascent(const AscentTrace& base_walk, const ExpandedLandscape& landscape)
{
    if (auto v = verify_ascent(landscape.base(), base_walk))
        throw ValidationError("simulate_ascent: base walk is not an ascent at step " + std::to_string(v->step) +
                              ": " + v->reason);
    AscentTrace out;
    out.policy = AscentPolicy::Simulated;
    out.start = base_walk.start;
    out.start_fitness = checked_mul(landscape.scale(), base_walk.start_fitness);
    out.terminal = base_walk.terminal;
    out.steps.reserve(2 * base_walk.steps.size());
    Assignment x = base_walk.start;
    for (const StepRecord& s : base_walk.steps) {
        const StateId sigma = landscape.map().intermediate(s.var, s.from, s.to);
        x[s.var] = sigma;
        out.steps.push_back({s.var, s.from, sigma, landscape.fitness(x)});
        x[s.var] = s.to;
        out.steps.push_back({s.var, sigma, s.to, checked_mul(landscape.scale(), s.fitness_after)});
    }
    return out;
}

VcspInstance build_3by5(int n, IntRange range)
{
    require_n(n, "build_3by5");
    const VcspInstance base = build_2by3(n, range);
    const ExpansionMap map(base.domains());

    InstanceData data;
    data.meta = {std::string(family_3by5), n, range};
    data.domains = map.expanded_domains();

    const fitness_t scale = 2 * static_cast<fitness_t>(n) + 1;
    const Matrix L = tables::L();
    const Matrix M = tables::M();
    const Matrix P = tables::P();
    constexpr StateId sigma_ab = 0;  // offset of s_AB after the main states
    auto odd = [&](int i) { return slot_or_phantom(i, n, 3); };
    auto even = [&](int i) { return slot_or_phantom(i, n, 5); };
    auto is_main = [](StateId s, std::size_t main_count) { return s < main_count; };

    for (int k = 1; k <= n; ++k) {
        const fitness_t unary_weight = static_cast<fitness_t>(n - k + 1);
        if (k % 2 == 1) {
            const int l = (k - 1) / 2;
            if (l >= 1) {
                const fitness_t w = checked_mul(scale, weight_m(l) + 1);
                add(data, tabulate(sup("That", l), {even(k - 1), even(k + 1), odd(k)},
                                   [&](std::span<const StateId> s) -> fitness_t {
                                       if (!is_main(s[0], 3) || !is_main(s[1], 3) || s[2] != 2 + sigma_ab) return 0;
                                       return checked_mul(w, P.at(s[0], s[1]));
                                   }));
            }
            const Matrix U = tables::U_hat();
            add(data, tabulate("Uhat@x" + std::to_string(k), {odd(k)},
                               [&](std::span<const StateId> s) { return unary_weight * U.at(0, s[0]); }));
            // Edge to the next (even) variable: weight m_{l+1} M.
            const fitness_t w = checked_mul(scale, weight_m(l + 1));
            add(data, tabulate(sup("Mhat", l + 1) + (k + 1 > n ? "(-,A)" : ""), {odd(k), even(k + 1)},
                               [&](std::span<const StateId> s) -> fitness_t {
                                   if (!is_main(s[0], 2) || !is_main(s[1], 3)) return 0;
                                   return checked_mul(w, M.at(s[0], s[1]));
                               }));
        } else {
            const int l = k / 2;
            const fitness_t m = weight_m(l);
            const Matrix Q = tables::Q(m);
            const Matrix R = tables::R(m);
            add(data, tabulate(sup("Shat", l), {odd(k - 1), odd(k + 1), even(k)},
                               [&](std::span<const StateId> s) -> fitness_t {
                                   if (!is_main(s[0], 2) || !is_main(s[1], 2)) return 0;
                                   if (s[2] == 3) return checked_mul(scale, Q.at(s[0], s[1]));
                                   if (s[2] == 4) return checked_mul(scale, R.at(s[0], s[1]));
                                   return 0;
                               }));
            const Matrix V = tables::V_hat();
            add(data, tabulate("Vhat@x" + std::to_string(k), {even(k)},
                               [&](std::span<const StateId> s) { return unary_weight * V.at(0, s[0]); }));
            const fitness_t w = checked_mul(scale, m + 1);
            add(data, tabulate(sup("Lhat", l) + (k + 1 > n ? "(-,A)" : ""), {even(k), odd(k + 1)},
                               [&](std::span<const StateId> s) -> fitness_t {
                                   if (!is_main(s[0], 3) || !is_main(s[1], 2)) return 0;
                                   return checked_mul(w, L.at(s[0], s[1]));
                               }));
        }
    }
    return finish(std::move(data));
}

Assignment canonical_start(std::string_view family, int n)
{
    require_n(n, "canonical_start");
    if (family == family_2by3 || family == family_3by5) return Assignment(static_cast<std::size_t>(n), kA);
    if (family == family_pw4) {
        Assignment bits;
        for (int i = 1; i <= n; ++i) {
            const std::string_view code = i % 2 == 1 ? "10" : "100";
            for (char c : code) bits.push_back(c == '1' ? 1 : 0);
        }
        return bits;
    }
    throw std::invalid_argument("unknown family \"" + std::string(family) + "\"");
}

} // namespace ascentlab::build
