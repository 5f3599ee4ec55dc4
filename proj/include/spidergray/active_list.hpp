#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spidergray/analysis.hpp"
#include "spidergray/digraph.hpp"
#include "spidergray/step.hpp"

namespace spidergray {

// Iterative generator over an ordered active list with sleep flags.
// Membership law: a positive child j of k is active iff k = 0 or a_k = 0;
// a negative child is active iff a_k = 1. One step:
//   (1) pick the largest nonsleeping active node k, waking every larger one;
//       if all are asleep, wake everything and report the half-period end;
//   (2) flip a_k and swap k's child families in or out of the list
//       (inserted nodes wake up);
//   (3) put k to sleep.
// Amortized cost per change is O(1); ops() exposes the elementary-operation
// counter (one unit per node examined, wake, insert, delete, and insertion
// scan advance) so the constant can be asserted.
class ActiveListEngine {
public:
    ActiveListEngine(const SpiderForest& f, const Analysis& a, const InitTable& t);

    StepResult step();

    // As CoroutineEngine::run_path; requires a fresh engine.
    GrayPath run_path();

    const std::vector<std::uint8_t>& bits() const { return bits_; }
    std::string pattern() const { return pattern_of(bits_); }

    std::vector<int> active_vertices() const;
    bool is_active(int k) const { return in_list_[k] != 0; }
    bool is_asleep(int k) const { return asleep_[k] != 0; }
    bool at_initial_state() const;

    // "pattern<TAB>active vertices", sleepers suffixed '*'.
    std::string trace_row() const;

    std::uint64_t ops() const { return ops_; }
    std::uint64_t steps() const { return steps_; }

    void set_validate(bool v) { validate_ = v; }

private:
    void insert_children(int k, const std::vector<int>& kids);
    void delete_children(const std::vector<int>& kids);
    void check_membership() const;

    int n_ = 0;
    int head_ = 0, tail_ = 0;  // sentinels; vertices are 1..n
    std::vector<int> next_, prev_;
    std::vector<std::uint8_t> in_list_, asleep_;
    std::vector<std::uint8_t> bits_, start_bits_;
    std::vector<std::vector<int>> pos_children_, neg_children_;
    std::vector<std::uint8_t> root_child_;  // active unconditionally
    std::vector<int> parent_;
    std::vector<std::uint8_t> positive_;
    std::uint64_t ops_ = 0;
    std::uint64_t steps_ = 0;
    bool validate_ = false;
};

}  // namespace spidergray
