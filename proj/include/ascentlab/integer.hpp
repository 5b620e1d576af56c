#ifndef ASCENTLAB_INTEGER_HPP
#define ASCENTLAB_INTEGER_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ascentlab {

// All fitness values and constraint entries are exact integers stored in 128 bits.
// The declared IntRange decides how large an instance may get; arithmetic inside a
// validated instance can never leave the 128-bit range.
using fitness_t = __int128;

class RangeError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Declared exact-integer range of an instance: the sum of max-|value| over all
/// constraints must not exceed `limit`.
struct IntRange {
    enum class Kind { Int64, Wide };

    Kind kind = Kind::Wide;
    fitness_t limit = wide_limit();

    static constexpr fitness_t wide_limit() { return (fitness_t{1} << 125) - 1; }

    static IntRange int64() { return {Kind::Int64, std::numeric_limits<std::int64_t>::max()}; }
    static IntRange wide() { return {Kind::Wide, wide_limit()}; }

    /// Reads ASCENTLAB_INT_RANGE ("64" or "wide"); unset means wide.
    static IntRange from_environment();

    std::string_view name() const { return kind == Kind::Int64 ? "64" : "wide"; }

    friend bool operator==(const IntRange&, const IntRange&) = default;
};

[[nodiscard]] inline fitness_t checked_add(fitness_t a, fitness_t b)
{
    fitness_t r;
    if (__builtin_add_overflow(a, b, &r)) throw RangeError("integer overflow in addition");
    return r;
}

[[nodiscard]] inline fitness_t checked_sub(fitness_t a, fitness_t b)
{
    fitness_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw RangeError("integer overflow in subtraction");
    return r;
}

[[nodiscard]] inline fitness_t checked_mul(fitness_t a, fitness_t b)
{
    fitness_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw RangeError("integer overflow in multiplication");
    return r;
}

[[nodiscard]] inline fitness_t abs_value(fitness_t a)
{
    if (a == std::numeric_limits<fitness_t>::min()) throw RangeError("integer overflow in abs");
    return a < 0 ? -a : a;
}

/// 2^e, throwing if it does not fit.
[[nodiscard]] fitness_t checked_pow2(int e);

std::string to_string(fitness_t v);

/// Parses an optionally signed decimal integer; throws std::invalid_argument or RangeError.
fitness_t parse_fitness(std::string_view text);

inline bool fits_int64(fitness_t v)
{
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

} // namespace ascentlab

#endif
