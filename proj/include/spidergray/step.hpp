#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spidergray {

// Outcome of driving a generator one step: either exactly one bit changed,
// or a complete listing just finished and the stream is about to reverse.
struct StepResult {
    int vertex = 0;           // 0 means half-period end
    std::uint8_t bit = 0;     // new value of the flipped bit when vertex > 0

    static StepResult changed(int k, std::uint8_t b) { return {k, b}; }
    static StepResult half_period_end() { return {0, 0}; }

    bool is_change() const { return vertex != 0; }
    bool is_end() const { return vertex == 0; }

    friend bool operator==(const StepResult& a, const StepResult& b) {
        return a.vertex == b.vertex && (a.vertex == 0 || a.bit == b.bit);
    }
};

// A materialized listing: every pattern of one half-period, in order.
// Patterns are '0'/'1' strings over a_1..a_n in preorder position.
using GrayPath = std::vector<std::string>;

inline std::string pattern_of(const std::vector<std::uint8_t>& bits) {
    std::string s;
    s.reserve(bits.size() == 0 ? 0 : bits.size() - 1);
    for (std::size_t i = 1; i < bits.size(); ++i) s += static_cast<char>('0' + bits[i]);
    return s;
}

}  // namespace spidergray
