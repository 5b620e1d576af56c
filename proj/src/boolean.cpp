#include "ascentlab/boolean.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

#include "tabulate.hpp"

namespace ascentlab::build {

using detail::Slot;
using detail::tabulate;

BooleanCodec::BooleanCodec(std::vector<Collection> collections) : collections_(std::move(collections))
{
    std::size_t next = 0;
    for (auto& c : collections_) {
        c.first_bit = next;
        next += c.bits;
        for (const auto& [code, state] : c.codes) {
            if (code.size() != c.bits) throw std::invalid_argument("codec: code width mismatch in " + c.name);
            if (state >= c.state_labels.size()) throw std::invalid_argument("codec: code maps to unknown state");
        }
    }
}

std::size_t BooleanCodec::bit_count() const
{
    return collections_.empty() ? 0 : collections_.back().first_bit + collections_.back().bits;
}

std::optional<StateId> BooleanCodec::decode_code(std::size_t collection, std::string_view code) const
{
    for (const auto& [c, s] : collections_.at(collection).codes)
        if (c == code) return s;
    return std::nullopt;
}

std::vector<std::string> BooleanCodec::codes_of(std::size_t collection, StateId state) const
{
    std::vector<std::string> out;
    for (const auto& [c, s] : collections_.at(collection).codes)
        if (s == state) out.push_back(c);
    return out;
}

std::string BooleanCodec::code_at(std::span<const StateId> bits, std::size_t collection) const
{
    const Collection& c = collections_.at(collection);
    std::string code;
    for (std::size_t b = 0; b < c.bits; ++b) code.push_back(bits[c.first_bit + b] ? '1' : '0');
    return code;
}

Assignment BooleanCodec::encode(std::span<const StateId> states) const
{
    if (states.size() != collections_.size()) throw ValidationError("encode: wrong number of collections");
    Assignment bits;
    bits.reserve(bit_count());
    for (std::size_t i = 0; i < collections_.size(); ++i) {
        const auto codes = codes_of(i, states[i]);
        if (codes.empty()) throw ValidationError("encode: state has no code in " + collections_[i].name);
        for (char ch : codes.front()) bits.push_back(ch == '1' ? 1 : 0);
    }
    return bits;
}

std::vector<DecodedCollection> BooleanCodec::decode(std::span<const StateId> bits) const
{
    if (bits.size() != bit_count()) throw ValidationError("decode: wrong number of bits");
    std::vector<DecodedCollection> out;
    out.reserve(collections_.size());
    for (std::size_t i = 0; i < collections_.size(); ++i) {
        DecodedCollection d;
        d.code = code_at(bits, i);
        if (auto s = decode_code(i, d.code)) {
            d.state = *s;
            d.kind = *s < collections_[i].main_count ? DecodedCollection::Kind::Main
                                                     : DecodedCollection::Kind::Intermediate;
        }
        out.push_back(std::move(d));
    }
    return out;
}

std::optional<Assignment> BooleanCodec::decode_states(std::span<const StateId> bits) const
{
    Assignment x;
    x.reserve(collections_.size());
    for (const auto& d : decode(bits)) {
        if (d.junk()) return std::nullopt;
        x.push_back(d.state);
    }
    return x;
}

std::vector<DecodedCollection> decode_assignment(const BooleanCodec& codec, std::span<const StateId> bits)
{
    return codec.decode(bits);
}

namespace {

DomainSpec bit_domain(std::string name) { return {std::move(name), {"0", "1"}, {{0, 1}}}; }

} // namespace

BooleanEncoding boolean_encode_generic(const VcspInstance& expanded, const ExpansionMap& map)
{
    if (expanded.var_count() != map.var_count()) throw ValidationError("encode: expansion map does not match");
    std::vector<BooleanCodec::Collection> collections;
    InstanceData data;
    data.meta = {expanded.meta().family + "-bool", expanded.meta().n, expanded.meta().range};
    std::vector<std::size_t> first_bit;
    for (VarId k = 0; k < expanded.var_count(); ++k) {
        const DomainSpec& d = expanded.domain(k);
        if (d.size() != map.expanded_domain(k).size())
            throw ValidationError("encode: domain of variable " + std::to_string(k) + " does not match the map");
        BooleanCodec::Collection c;
        c.name = d.name;
        c.bits = map.main_count(k);
        c.state_labels = d.states;
        c.main_count = map.main_count(k);
        for (StateId s = 0; s < d.size(); ++s) {
            std::string code(c.bits, '0');
            if (map.is_main(k, s)) {
                code[s] = '1';
            } else {
                const auto [u, v] = map.endpoints(k, s);
                code[u] = '1';
                code[v] = '1';
            }
            c.codes.emplace_back(std::move(code), s);
        }
        first_bit.push_back(data.domains.size());
        for (std::size_t b = 0; b < c.bits; ++b) data.domains.push_back(bit_domain(d.name + "." + std::to_string(b)));
        collections.push_back(std::move(c));
    }
    BooleanCodec codec(std::move(collections));

    for (const ValuedConstraint& con : expanded.constraints()) {
        std::vector<Slot> slots;
        for (VarId v : con.scope)
            for (std::size_t b = 0; b < codec.collections()[v].bits; ++b)
                slots.push_back(Slot::real(static_cast<VarId>(first_bit[v] + b), 2));
        auto lifted = tabulate(con.label, slots, [&](std::span<const StateId> bits) -> fitness_t {
            std::size_t offset = 0;
            std::size_t pos = 0;
            for (VarId v : con.scope) {
                const auto& col = codec.collections()[v];
                std::string code;
                for (std::size_t b = 0; b < col.bits; ++b) code.push_back(bits[pos++] ? '1' : '0');
                const auto s = codec.decode_code(v, code);
                if (!s) return 0;
                offset = offset * expanded.domain(v).size() + *s;
            }
            return con.values[offset];
        });
        if (lifted) {
            data.constraints.push_back(std::move(*lifted));
        } else {
            // Keep the scope visible even when the lift is identically zero.
            ValuedConstraint zero{con.label, {}, {}};
            for (const Slot& s : slots) zero.scope.push_back(*s.var);
            zero.values.assign(std::size_t{1} << zero.scope.size(), 0);
            data.constraints.push_back(std::move(zero));
        }
    }
    return {VcspInstance(std::move(data)), std::move(codec)};
}

namespace {

constexpr std::string_view phantom_odd = "10";
constexpr std::string_view phantom_even = "100";

struct Part {
    int collection;  // 1-based; beyond n means phantom
    std::vector<int> bits;
};

class Pw4Builder {
public:
    explicit Pw4Builder(int n) : n_(n)
    {
        std::size_t next = 0;
        for (int i = 1; i <= n; ++i) {
            offset_.push_back(next);
            next += width(i);
        }
    }

    static std::size_t width(int i) { return i % 2 == 1 ? 2 : 3; }

    std::vector<Part> whole(int i) const
    {
        std::vector<int> bits(width(i));
        for (std::size_t b = 0; b < bits.size(); ++b) bits[b] = static_cast<int>(b);
        return {Part{i, bits}};
    }

    void add(std::string label, const std::vector<Part>& parts,
             const std::function<fitness_t(std::span<const std::string>)>& value)
    {
        std::vector<Slot> slots;
        for (const Part& p : parts) {
            for (int b : p.bits) {
                if (p.collection <= n_) {
                    slots.push_back(Slot::real(bit(p.collection, b), 2));
                } else {
                    const std::string_view code = p.collection % 2 == 1 ? phantom_odd : phantom_even;
                    slots.push_back(Slot::phantom(2, code[b] == '1' ? 1 : 0));
                }
            }
        }
        auto c = tabulate(std::move(label), slots, [&](std::span<const StateId> bits) {
            std::vector<std::string> codes;
            std::size_t pos = 0;
            for (const Part& p : parts) {
                std::string code;
                for (std::size_t b = 0; b < p.bits.size(); ++b) code.push_back(bits[pos++] ? '1' : '0');
                codes.push_back(std::move(code));
            }
            return value(codes);
        });
        if (c) data_.constraints.push_back(std::move(*c));
    }

    std::vector<VarId> bag(const std::vector<Part>& parts) const
    {
        std::vector<VarId> out;
        for (const Part& p : parts)
            if (p.collection <= n_)
                for (int b : p.bits) out.push_back(bit(p.collection, b));
        return out;
    }

    VarId bit(int collection, int b) const { return static_cast<VarId>(offset_[collection - 1] + b); }

    InstanceData& data() { return data_; }

private:
    int n_;
    std::vector<std::size_t> offset_;
    InstanceData data_;
};

std::string sup_label(std::string_view name, int l) { return std::string(name) + "^" + std::to_string(l); }

fitness_t lookup_row(const Matrix& t, std::string_view col) { return t.at(0, *tables::code_index(col)); }

fitness_t lookup(const Matrix& t, std::string_view row, std::string_view col)
{
    return t.at(*tables::code_index(row), *tables::code_index(col));
}

BooleanCodec pw4_codec(int n)
{
    std::vector<BooleanCodec::Collection> cols;
    for (int i = 1; i <= n; ++i) {
        BooleanCodec::Collection c;
        c.name = "G" + std::to_string(i);
        if (i % 2 == 1) {
            c.bits = 2;
            c.state_labels = {"A", "B", "s_AB"};
            c.main_count = 2;
            c.codes = {{"10", 0}, {"01", 1}, {"11", 2}, {"00", 2}};
        } else {
            c.bits = 3;
            c.state_labels = {"A", "B", "C", "s_AB", "s_BC"};
            c.main_count = 3;
            c.codes = {{"100", 0}, {"010", 1}, {"001", 2}, {"110", 3}, {"011", 4}};
        }
        cols.push_back(std::move(c));
    }
    return BooleanCodec(std::move(cols));
}

std::string describe(const EquivalenceFailure& f)
{
    std::string bits;
    for (StateId b : f.bits) bits.push_back(b ? '1' : '0');
    return f.rule + " at bits " + bits + ": expected " + to_string(f.expected) + ", got " + to_string(f.actual);
}

} // namespace

BooleanInstance build_boolean_pw4(int n, const Pw4Options& options)
{
    if (n < 2) throw std::invalid_argument("build_boolean_pw4: n must be at least 2, got " + std::to_string(n));
    Pw4Builder b(n);
    InstanceData& data = b.data();
    data.meta = {std::string(family_pw4), n, options.range};
    for (int i = 1; i <= n; ++i)
        for (std::size_t bit = 0; bit < Pw4Builder::width(i); ++bit)
            data.domains.push_back(bit_domain("G" + std::to_string(i) + "." + std::to_string(bit)));

    const fitness_t scale = 2 * static_cast<fitness_t>(n) + 1;
    const fitness_t j_weight = options.scale_j ? checked_mul(scale, f_max(n)) : f_max(n);
    auto scaled = [&](fitness_t v) { return checked_mul(scale, v); };
    auto pair = [&](int i) {
        auto parts = b.whole(i);
        auto next = b.whole(i + 1);
        parts.insert(parts.end(), next.begin(), next.end());
        return parts;
    };

    PathDecomposition decomposition;
    for (int i = 1; i <= n; ++i) {
        const std::string gi = "G" + std::to_string(i);
        const std::string gj = "G" + std::to_string(i + 1);
        if (i % 2 == 1) {
            const int l = (i - 1) / 2;
            const Matrix U = tables::U_tilde(n - 2 * l);
            b.add(sup_label("U~", l), b.whole(i), [&](std::span<const std::string> c) { return lookup_row(U, c[0]); });
            if (l >= 1) {
                const Matrix T = tables::T_tilde_plus(weight_m(l));
                b.add(sup_label("T~", l) + "+", pair(i),
                      [&](std::span<const std::string> c) { return scaled(lookup(T, c[0], c[1])); });
            }
            const Matrix M = tables::M_tilde(weight_m(l + 1));
            b.add(sup_label("M~", l + 1), pair(i),
                  [&](std::span<const std::string> c) { return scaled(lookup(M, c[0], c[1])); });
            if (options.include_j) {
                const Matrix J = tables::J_tilde(j_weight);
                b.add("J~@" + gi + gj, pair(i), [&](std::span<const std::string> c) { return lookup(J, c[0], c[1]); });
            }
            decomposition.bags.push_back(b.bag(pair(i)));
        } else {
            const int l = i / 2;
            const fitness_t m = weight_m(l);
            const Matrix S = tables::S_tilde(m);
            const std::vector<Part> s_parts = {Part{i - 1, {1}}, Part{i, {0, 1, 2}}, Part{i + 1, {0}}};
            b.add(sup_label("S~", l), s_parts, [&](std::span<const std::string> c) {
                const std::size_t col = (c[0] == "1" ? 1 : 0) + (c[2] == "1" ? 2 : 0);
                return scaled(S.at(*tables::code_index(c[1]), col));
            });
            decomposition.bags.push_back(b.bag(s_parts));
            const Matrix V = tables::V_tilde(n - 2 * l + 1);
            b.add(sup_label("V~", l), b.whole(i), [&](std::span<const std::string> c) { return lookup_row(V, c[0]); });
            const Matrix L = tables::L_tilde(m);
            b.add(sup_label("L~", l), pair(i), [&](std::span<const std::string> c) { return scaled(lookup(L, c[0], c[1])); });
            const Matrix T = tables::T_tilde_minus(m);
            b.add(sup_label("T~", l) + "-", pair(i),
                  [&](std::span<const std::string> c) { return scaled(lookup(T, c[0], c[1])); });
            if (options.include_j && options.mirror_j) {
                const Matrix J = tables::J_tilde(j_weight);
                b.add("J~@" + gi + gj, pair(i), [&](std::span<const std::string> c) { return lookup(J, c[1], c[0]); });
            }
            decomposition.bags.push_back(b.bag(pair(i)));
        }
    }

    const fitness_t bound = worst_case_magnitude(data);
    if (bound > options.range.limit) {
        throw RangeError("bool-pw4 n=" + std::to_string(n) + ": worst-case fitness " + to_string(bound) +
                         " exceeds the " + std::string(options.range.name()) + " integer range");
    }
    BooleanInstance out{VcspInstance(std::move(data)), pw4_codec(n), std::move(decomposition),
                        canonical_start(family_pw4, n)};

    if (options.self_check && n <= options.self_check_max_n) {
        const VcspInstance base = build_2by3(n, options.range);
        const ExpandedLandscape oracle = expand_landscape(base, identity_order(base.var_count()));
        const EquivalenceScan scan = scan_boolean_equivalence(out.instance, out.codec, oracle);
        if (scan.failure)
            throw std::logic_error("bool-pw4 n=" + std::to_string(n) + " fails its master invariant: " +
                                   describe(*scan.failure));
    }
    return out;
}

EquivalenceScan scan_boolean_equivalence(const VcspInstance& boolean, const BooleanCodec& codec,
                                         const ExpandedLandscape& oracle)
{
    const std::size_t bits = codec.bit_count();
    if (bits != boolean.var_count()) throw ValidationError("codec does not match the Boolean instance");
    if (codec.collections().size() != oracle.map().var_count())
        throw ValidationError("codec does not match the oracle's variables");
    if (bits > 30) throw std::invalid_argument("too many Boolean variables to enumerate");

    EquivalenceScan scan;
    Assignment x(bits, 0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
        for (std::size_t b = 0; b < bits; ++b) x[b] = (mask >> (bits - 1 - b)) & 1;
        ++scan.assignments;
        const auto states = codec.decode_states(x);
        if (!states) {
            ++scan.junk;
            continue;
        }
        const fitness_t actual = evaluate_fitness(boolean, x);
        const auto inter = oracle.intermediates(*states);
        auto fail = [&](std::string rule, fitness_t expected) {
            scan.failure = EquivalenceFailure{x, std::move(rule), expected, actual};
        };
        if (inter.empty()) {
            ++scan.main_only;
            const fitness_t expected = oracle.fitness(*states);
            if (actual != expected) fail("main-state equality", expected);
        } else if (inter.size() == 1) {
            ++scan.one_intermediate;
            const fitness_t expected = oracle.fitness(*states);
            const VarId k = inter.front();
            const auto codes = codec.codes_of(k, (*states)[k]);
            if (codes.size() == 1) {
                if (actual != expected) fail("single-intermediate equality", expected);
            } else {
                if (actual > expected) {
                    fail("dual-code upper bound", expected);
                } else {
                    Assignment y = x;
                    const std::size_t first = codec.collections()[k].first_bit;
                    fitness_t best = actual;
                    for (const auto& code : codes) {
                        for (std::size_t b = 0; b < code.size(); ++b) y[first + b] = code[b] == '1' ? 1 : 0;
                        best = std::max(best, evaluate_fitness(boolean, y));
                    }
                    if (best != expected) {
                        scan.failure = EquivalenceFailure{x, "max over dual codes", expected, best};
                    }
                }
            }
        } else if (inter.size() == 2) {
            ++scan.two_intermediates;
            const fitness_t bound = *oracle.two_intermediate_bound(*states);
            if (actual > bound) fail("two-intermediate upper bound", bound);
        }
        if (scan.failure) return scan;
    }
    return scan;
}

} // namespace ascentlab::build
