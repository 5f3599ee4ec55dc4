#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "spidergray/analysis.hpp"
#include "spidergray/counts.hpp"
#include "spidergray/digraph.hpp"
#include "spidergray/step.hpp"

namespace spidergray {
namespace oracle {

inline constexpr int kDefaultEnumerationCap = 24;

// Every valid pattern by exhausting all 2^n candidates, in lexicographic
// order over the original label positions. Throws CapExceededError when n
// exceeds the cap.
std::vector<std::string> enumerate_valid(const RawDigraph& g,
                                         int cap = kDefaultEnumerationCap);

// Independent two-state tree DP: per-vertex pattern counts and the forest
// total, computed without the near-set product identity.
struct DpCounts {
    std::vector<PatternCount> per_vertex;  // [0..n], slot 0 unused
    PatternCount total;
};
DpCounts count_dp_table(const SpiderForest& f);
unsigned __int128 count_dp(const SpiderForest& f);

struct VerificationReport {
    bool is_gray = false;      // all patterns valid, unit steps, no repeats
    bool is_complete = false;  // pattern set equals the full enumeration
    std::vector<int> invalid;                       // indices of invalid patterns
    std::vector<std::pair<int, int>> bad_steps;     // (step index, hamming distance)
    std::vector<int> duplicates;                    // indices of repeated patterns
    std::vector<std::string> missing, extra;        // truncated for display
    std::size_t path_size = 0;
    std::size_t expected_size = 0;

    bool all_clear() const { return is_gray && is_complete; }
    std::string to_text() const;
};

// Certifies a materialized listing against the brute-force ground truth.
// Patterns are read in the original label order of g.
VerificationReport verify_gray_path(const GrayPath& path, const RawDigraph& g,
                                    int cap = kDefaultEnumerationCap);

// Drives an engine 2N steps from a fresh state and checks the reflective
// structure: ends exactly after steps N and 2N, pattern j equals pattern
// 2N-1-j, and the state returns to its initial configuration.
template <class Engine>
bool verify_reflection(Engine& eng, std::uint64_t total) {
    if (total == 0) return false;
    std::vector<std::string> pats;
    pats.reserve(2 * total);
    pats.push_back(eng.pattern());
    for (std::uint64_t t = 1; t <= 2 * total; ++t) {
        StepResult r = eng.step();
        bool should_end = (t == total) || (t == 2 * total);
        if (r.is_end() != should_end) return false;
        if (t < 2 * total) pats.push_back(eng.pattern());
    }
    for (std::uint64_t j = 0; j < 2 * total; ++j)
        if (pats[j] != pats[2 * total - 1 - j]) return false;
    return eng.at_initial_state();
}

// Random totally acyclic digraph: each vertex v >= 2 picks a uniform
// attachment in 0..v-1 (0 starts a new component) and a random arc
// direction. Labels are "1".."n".
RawDigraph random_forest(std::mt19937& rng, int n);

}  // namespace oracle
}  // namespace spidergray
