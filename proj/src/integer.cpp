#include "ascentlab/integer.hpp"

#include <algorithm>
#include <cstdlib>

namespace ascentlab {

IntRange IntRange::from_environment()
{
    const char* raw = std::getenv("ASCENTLAB_INT_RANGE");
    if (raw == nullptr || *raw == '\0') return wide();
    const std::string_view value(raw);
    if (value == "64") return int64();
    if (value == "wide") return wide();
    throw std::invalid_argument("ASCENTLAB_INT_RANGE must be \"64\" or \"wide\", got \"" +
                                std::string(value) + "\"");
}

fitness_t checked_pow2(int e)
{
    if (e < 0 || e > 126) throw RangeError("2^" + std::to_string(e) + " is outside the 128-bit range");
    return fitness_t{1} << e;
}

std::string to_string(fitness_t v)
{
    if (v == 0) return "0";
    const bool negative = v < 0;
    // Work with negative magnitudes so that the minimum value is representable.
    std::string digits;
    fitness_t rest = negative ? v : -v;
    while (rest != 0) {
        const int digit = static_cast<int>(-(rest % 10));
        digits.push_back(static_cast<char>('0' + digit));
        rest /= 10;
    }
    if (negative) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

fitness_t parse_fitness(std::string_view text)
{
    if (text.empty()) throw std::invalid_argument("empty integer literal");
    bool negative = false;
    std::size_t pos = 0;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        pos = 1;
    }
    if (pos == text.size()) throw std::invalid_argument("integer literal without digits");
    fitness_t value = 0;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c < '0' || c > '9')
            throw std::invalid_argument("invalid character in integer literal: " + std::string(text));
        value = checked_sub(checked_mul(value, 10), c - '0');
    }
    return negative ? value : checked_sub(0, value);
}

} // namespace ascentlab
