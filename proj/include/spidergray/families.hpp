#pragma once

#include <string>
#include <vector>

#include "spidergray/digraph.hpp"
#include "spidergray/step.hpp"

namespace spidergray {

// Named digraph families used as known-answer fixtures and reduction tests.
struct FamilySpec {
    enum class Kind { unrestricted, chain, cochain, mixed_chain, multi_chain, fence };

    Kind kind;
    int n = 0;
    int m = 0;                   // mixed_chain only, 1 <= m <= n
    std::vector<int> endpoints;  // multi_chain only: 1 = e_1 < ... < e_m <= n

    static FamilySpec unrestricted(int n) { return {Kind::unrestricted, n, 0, {}}; }
    static FamilySpec chain(int n) { return {Kind::chain, n, 0, {}}; }
    static FamilySpec cochain(int n) { return {Kind::cochain, n, 0, {}}; }
    static FamilySpec mixed_chain(int m, int n) { return {Kind::mixed_chain, n, m, {}}; }
    static FamilySpec multi_chain(std::vector<int> e, int n) {
        return {Kind::multi_chain, n, 0, std::move(e)};
    }
    static FamilySpec fence(int n) { return {Kind::fence, n, 0, {}}; }
};

// Builds the digraph with labels "1".."n" chosen so that preorder numbering
// reproduces the natural indexing of the family. Throws std::invalid_argument
// on bad parameters.
RawDigraph family_digraph(const FamilySpec& spec);

// Direct recursive-descent stream over all n-bit patterns, driven from the
// low end. Equivalent to the unrestricted generator but pays O(n) per step.
class CopokeStream {
public:
    explicit CopokeStream(int n);

    StepResult step();
    const std::vector<std::uint8_t>& bits() const { return bits_; }
    std::string pattern() const { return pattern_of(bits_); }

private:
    int n_;
    std::vector<std::uint8_t> bits_;
    std::vector<int> pos_;
    std::vector<int> stack_;
};

// Sequences transcribed from reference tables, stored as versioned data
// files (one pattern per line). Available for unrestricted(2), chain(3),
// multi_chain({1,3,4},6) and fence(4). Throws NoFixtureError otherwise.
struct NoFixtureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GrayPath known_sequence(const FamilySpec& spec, const std::string& data_dir);

}  // namespace spidergray
