#pragma once

#include <cstdint>
#include <string>

#include "spidergray/errors.hpp"

namespace spidergray {

// Overflow-checked 128-bit pattern counter. Counts are exact non-negative
// integers; once a computation leaves 128 bits the value becomes sticky
// "overflowed" and querying it raises CountOverflowError. Parity of a count
// is tracked independently by the analysis, so structural computations stay
// valid at sizes whose counts are astronomically large.
struct PatternCount {
    unsigned __int128 value = 0;
    bool ok = true;

    static PatternCount of(std::uint64_t v) { return PatternCount{v, true}; }
    static PatternCount one() { return of(1); }

    friend PatternCount operator*(PatternCount a, PatternCount b) {
        if (!a.ok || !b.ok) return {0, false};
        if (a.value == 0 || b.value == 0) return {0, true};
        unsigned __int128 r = a.value * b.value;
        if (r / a.value != b.value) return {0, false};
        return {r, true};
    }

    friend PatternCount operator+(PatternCount a, PatternCount b) {
        if (!a.ok || !b.ok) return {0, false};
        unsigned __int128 r = a.value + b.value;
        if (r < a.value) return {0, false};
        return {r, true};
    }

    // Decimal rendering; raises on an overflowed count.
    std::string str() const {
        if (!ok) throw CountOverflowError{};
        if (value == 0) return "0";
        std::string out;
        unsigned __int128 v = value;
        while (v != 0) {
            out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
            v /= 10;
        }
        return out;
    }

    // Checked access for callers that need the raw integer.
    unsigned __int128 get() const {
        if (!ok) throw CountOverflowError{};
        return value;
    }

    bool odd() const { return (get() & 1) != 0; }

    friend bool operator==(const PatternCount& a, const PatternCount& b) {
        return a.ok == b.ok && (!a.ok || a.value == b.value);
    }
};

}  // namespace spidergray
