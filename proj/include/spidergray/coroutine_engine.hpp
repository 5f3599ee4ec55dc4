#pragma once

#include <cstdint>
#include <vector>

#include "spidergray/analysis.hpp"
#include "spidergray/digraph.hpp"
#include "spidergray/step.hpp"

namespace spidergray {

// Executable semantics of the per-vertex generator coroutines, realized as an
// explicit stack plus a jump table. Each vertex owns a resumption point
// (program points p1..p10); the driver invokes the top-level generator once
// per step and reports the single flipped bit, or the half-period boundary
// when the root call comes back false.
//
// Program points:
//   p1  awake0 head: run the U-children product, else flip a_k to 1
//   p2  back from the U-product while-loop (a_k = 0)
//   p3  asleep1 head: run the V-children product
//   p4  back from the V-product while-loop (a_k = 1)
//   p5  back from the prev-chain tail call (no tail-call optimization)
//   p6  awake1 head: run the V-children product, else flip a_k to 0
//   p7  back from the V-product while-loop (a_k = 1)
//   p8  asleep0 head: run the U-children product
//   p9  back from the U-product while-loop (a_k = 0)
//   p10 back from the prev-chain tail call (no tail-call optimization)
class CoroutineEngine {
public:
    struct Options {
        bool tail_calls = true;   // collapse the prev-chain call frames
        bool multi_pop = false;   // pop through while-loop frames on true returns
        bool validate = false;    // O(n) invariant checks per step
    };

    CoroutineEngine(const SpiderForest& f, const Analysis& a, const InitTable& t, Options opt);
    CoroutineEngine(const SpiderForest& f, const Analysis& a, const InitTable& t)
        : CoroutineEngine(f, a, t, Options{}) {}

    StepResult step();

    // Emits the initial pattern plus one pattern per change until the first
    // half-period end. Must be called on a freshly constructed engine.
    GrayPath run_path();

    const std::vector<std::uint8_t>& bits() const { return bits_; }
    std::string pattern() const { return pattern_of(bits_); }
    int position(int k) const { return pos_[k]; }
    bool at_initial_state() const;

    std::uint64_t steps() const { return steps_; }
    // Coroutine activations (frames entered going down), cumulative. The mean
    // per step is the per-step cost the active list removes.
    std::uint64_t activations() const { return activations_; }
    std::size_t stack_high_water() const { return stack_high_; }

private:
    struct Frame {
        int k;
        int l;
    };

    bool ret(int next_pos, int& pc);
    void enter(int newk, int newl);

    int n_ = 0;
    int root_ = 0;  // maxu[0]
    std::vector<int> maxu_, maxv_, prev_;
    std::vector<std::uint8_t> bits_, start_bits_;
    std::vector<int> pos_, start_pos_;
    std::vector<Frame> stack_;
    std::vector<std::uint8_t> on_stack_;
    int k_ = 0;
    int l_ = 0;
    bool val_ = false;
    int changed_ = 0;
    Options opt_;
    std::uint64_t steps_ = 0;
    std::uint64_t activations_ = 0;
    std::size_t stack_high_ = 0;
};

}  // namespace spidergray
