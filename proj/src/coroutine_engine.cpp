#include "spidergray/coroutine_engine.hpp"

#include <algorithm>

namespace spidergray {

CoroutineEngine::CoroutineEngine(const SpiderForest& f, const Analysis& a, const InitTable& t,
                                 Options opt)
    : n_(f.n),
      root_(a.maxu[0]),
      maxu_(a.maxu),
      maxv_(a.maxv),
      prev_(a.prev),
      bits_(t.start_bits),
      start_bits_(t.start_bits),
      pos_(n_ + 1, 1),
      on_stack_(n_ + 1, 0),
      opt_(opt) {
    for (int k = 1; k <= n_; ++k)
        pos_[k] = (t.start_labels[k] == StartLabel::awake0) ? 1 : 6;
    start_pos_ = pos_;
    stack_.reserve(static_cast<std::size_t>(n_) + 1);
}

void CoroutineEngine::enter(int newk, int newl) {
    if (opt_.validate) {
        if (on_stack_[newk])
            throw InternalProtocolError("coroutine already on the execution stack");
        if (stack_.size() > static_cast<std::size_t>(n_) + 1)
            throw InternalProtocolError("stack depth exceeds n+1");
    }
    k_ = newk;
    l_ = newl;
    ++activations_;
}

// Suspend the current coroutine at next_pos and resume the caller. Returns
// true when control is back at the driver. With multi_pop, a true value pops
// straight through callers suspended inside their while-return loops.
bool CoroutineEngine::ret(int next_pos, int& pc) {
    pos_[k_] = next_pos;
    for (;;) {
        if (stack_.empty()) return true;
        Frame fr = stack_.back();
        stack_.pop_back();
        if (opt_.validate) on_stack_[fr.k] = 0;
        k_ = fr.k;
        l_ = fr.l;
        if (opt_.multi_pop && val_) {
            switch (pos_[k_]) {
                case 2: pos_[k_] = 1; continue;
                case 4: pos_[k_] = 3; continue;
                case 7: pos_[k_] = 6; continue;
                case 9: pos_[k_] = 8; continue;
                default: break;
            }
        }
        pc = pos_[k_];
        return false;
    }
}

StepResult CoroutineEngine::step() {
    ++steps_;
    if (root_ == 0) return StepResult::half_period_end();

    changed_ = 0;
    val_ = false;
    stack_.clear();
    enter(root_, 0);
    int pc = pos_[k_];

    auto invoke = [&](int newk, int newl, int ret_pos) {
        pos_[k_] = ret_pos;
        stack_.push_back({k_, l_});
        if (opt_.validate) on_stack_[k_] = 1;
        stack_high_ = std::max(stack_high_, stack_.size());
        enter(newk, newl);
        return pos_[k_];
    };
    auto flip = [&](std::uint8_t b) {
        if (opt_.validate && changed_ != 0)
            throw InternalProtocolError("two bits flipped in one step");
        bits_[k_] = b;
        changed_ = k_;
        val_ = true;
    };

    for (;;) {
        switch (pc) {
            case 1:  // awake0
                if (maxu_[k_] != 0) {
                    pc = invoke(maxu_[k_], k_, 2);
                    continue;
                }
                flip(1);
                if (ret(3, pc)) goto driver;
                continue;
            case 2:
                if (val_) {
                    if (ret(1, pc)) goto driver;
                    continue;
                }
                flip(1);
                if (ret(3, pc)) goto driver;
                continue;
            case 3:  // asleep1
                if (maxv_[k_] != 0) {
                    pc = invoke(maxv_[k_], k_, 4);
                    continue;
                }
                goto asleep1_tail;
            case 4:
                if (val_) {
                    if (ret(3, pc)) goto driver;
                    continue;
                }
            asleep1_tail:
                if (prev_[k_] > l_) {
                    if (opt_.tail_calls) {
                        pos_[k_] = 6;
                        enter(prev_[k_], l_);
                        pc = pos_[k_];
                    } else {
                        pc = invoke(prev_[k_], l_, 5);
                    }
                    continue;
                }
                val_ = false;
                if (ret(6, pc)) goto driver;
                continue;
            case 5:
                if (ret(6, pc)) goto driver;
                continue;
            case 6:  // awake1
                if (maxv_[k_] != 0) {
                    pc = invoke(maxv_[k_], k_, 7);
                    continue;
                }
                flip(0);
                if (ret(8, pc)) goto driver;
                continue;
            case 7:
                if (val_) {
                    if (ret(6, pc)) goto driver;
                    continue;
                }
                flip(0);
                if (ret(8, pc)) goto driver;
                continue;
            case 8:  // asleep0
                if (maxu_[k_] != 0) {
                    pc = invoke(maxu_[k_], k_, 9);
                    continue;
                }
                goto asleep0_tail;
            case 9:
                if (val_) {
                    if (ret(8, pc)) goto driver;
                    continue;
                }
            asleep0_tail:
                if (prev_[k_] > l_) {
                    if (opt_.tail_calls) {
                        pos_[k_] = 1;
                        enter(prev_[k_], l_);
                        pc = pos_[k_];
                    } else {
                        pc = invoke(prev_[k_], l_, 10);
                    }
                    continue;
                }
                val_ = false;
                if (ret(1, pc)) goto driver;
                continue;
            case 10:
                if (ret(1, pc)) goto driver;
                continue;
            default:
                throw InternalProtocolError("bad program point");
        }
    }

driver:
    if (opt_.validate) {
        // Quiescent program points split by the current bit: awake0/asleep0
        // territory holds a 0, asleep1/awake1 territory holds a 1.
        for (int k = 1; k <= n_; ++k) {
            bool zero_side = pos_[k] == 1 || pos_[k] == 2 || pos_[k] >= 8;
            if (zero_side != (bits_[k] == 0))
                throw InternalProtocolError("resumption point inconsistent with bit");
        }
        if (val_ && changed_ == 0)
            throw InternalProtocolError("true returned without a bit change");
    }
    if (!val_) return StepResult::half_period_end();
    return StepResult::changed(changed_, bits_[changed_]);
}

GrayPath CoroutineEngine::run_path() {
    if (steps_ != 0) throw InternalProtocolError("run_path requires a fresh engine");
    GrayPath path;
    path.push_back(pattern());
    for (;;) {
        StepResult r = step();
        if (r.is_end()) break;
        path.push_back(pattern());
    }
    return path;
}

bool CoroutineEngine::at_initial_state() const {
    return bits_ == start_bits_ && pos_ == start_pos_ && stack_.empty();
}

}  // namespace spidergray
