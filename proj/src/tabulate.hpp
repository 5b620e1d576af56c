#ifndef ASCENTLAB_SRC_TABULATE_HPP
#define ASCENTLAB_SRC_TABULATE_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ascentlab/model.hpp"

namespace ascentlab::build::detail {

/// One argument position of a constraint being tabulated: either a real variable or a
/// phantom neighbour held at a fixed state.
struct Slot {
    std::optional<VarId> var;
    std::size_t size = 0;
    StateId fixed = 0;

    static Slot real(VarId v, std::size_t size) { return {v, size, 0}; }
    static Slot phantom(std::size_t size, StateId state) { return {std::nullopt, size, state}; }
};

/// Builds a dense constraint over the real slots by evaluating `value` on every state
/// tuple (phantom slots fixed). Returns nullopt when every entry is zero.
inline std::optional<ValuedConstraint> tabulate(std::string label, const std::vector<Slot>& slots,
                                                const std::function<fitness_t(std::span<const StateId>)>& value)
{
    ValuedConstraint c;
    c.label = std::move(label);
    std::vector<std::size_t> real;
    std::vector<StateId> states(slots.size());
    std::size_t total = 1;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].var) {
            real.push_back(i);
            c.scope.push_back(*slots[i].var);
            total *= slots[i].size;
            states[i] = 0;
        } else {
            states[i] = slots[i].fixed;
        }
    }
    c.values.reserve(total);
    bool nonzero = false;
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (std::size_t r = real.size(); r-- > 0;) {
            const std::size_t size = slots[real[r]].size;
            states[real[r]] = static_cast<StateId>(rest % size);
            rest /= size;
        }
        const fitness_t v = value(states);
        nonzero = nonzero || v != 0;
        c.values.push_back(v);
    }
    if (!nonzero) return std::nullopt;
    return c;
}

} // namespace ascentlab::build::detail

#endif
