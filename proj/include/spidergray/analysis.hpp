#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spidergray/counts.hpp"
#include "spidergray/digraph.hpp"

namespace spidergray {

// Static data the generators run on. For every vertex k (and the virtual
// root 0), usets[k]/vsets[k] hold the positive/negative vertices near k in
// increasing order. prev links each vertex to its predecessor within the
// largest U-set (V-set) containing it, so walking prev from maxu[l] (maxv[l])
// lists U_l (V_l) in decreasing order, stopping at the first value <= l.
struct Analysis {
    int n = 0;
    std::vector<std::vector<int>> usets, vsets;  // [0..n]
    std::vector<int> maxu, maxv;                 // [0..n], 0 when the set is empty
    std::vector<int> prev;                       // [0..n], prev[0] = 0
    std::vector<int> ppro, npro;                 // [0..n], positive/negative progenitor
    std::vector<PatternCount> counts;            // [0..n]; counts[0] unused
    std::vector<std::uint8_t> count_parity;      // n_k mod 2, exact at any size
    PatternCount total;                          // product over component roots

    // Checked accessors: raise CountOverflowError instead of wrapping.
    unsigned __int128 count(int k) const { return counts[k].get(); }
    std::string count_str(int k) const { return counts[k].str(); }
    std::string total_str() const { return total.str(); }
};

enum class StartLabel : std::uint8_t { awake0, awake1 };

// Initialization tables: for every vertex k, the initial (alpha), transition
// (tau) and final (omega) bits of the Gray path of spider k, indexed by
// offset i-k for k <= i <= scope(k). tau at offset 0 is the flip position
// itself and carries no value (rendered "*"). delta_u_odd[k][idx] is the
// parity of the traversal count of the idx-th member of usets[k]; likewise
// delta_v_odd. start_bits is the launch pattern a_1..a_n and start_labels
// says where each coroutine begins.
struct InitTable {
    static constexpr std::uint8_t kNoBit = 2;

    std::vector<std::vector<std::uint8_t>> alpha, tau, omega;  // [1..n]
    std::vector<std::vector<std::uint8_t>> delta_u_odd, delta_v_odd;
    std::vector<std::uint8_t> start_bits;     // [0..n], slot 0 unused
    std::vector<StartLabel> start_labels;     // [0..n]

    std::string start_pattern() const {
        std::string s;
        for (std::size_t i = 1; i < start_bits.size(); ++i)
            s += static_cast<char>('0' + start_bits[i]);
        return s;
    }
};

Analysis analyze(const SpiderForest& f);

InitTable init_table(const SpiderForest& f, const Analysis& a);

// Number of valid patterns of the whole forest (product over components).
// Raises CountOverflowError when the result does not fit in 128 bits.
unsigned __int128 count_total(const Analysis& a);
unsigned __int128 count_total(const SpiderForest& f);
std::string count_total_str(const SpiderForest& f);

// Text tables mirroring the structural and initialization data; used by the
// CLI `analyze` subcommand.
std::string analysis_report(const SpiderForest& f, const Analysis& a, const InitTable& t);

}  // namespace spidergray
