#include "spidergray/active_list.hpp"

#include <sstream>

namespace spidergray {

ActiveListEngine::ActiveListEngine(const SpiderForest& f, const Analysis& a, const InitTable& t)
    : n_(f.n),
      head_(0),
      tail_(f.n + 1),
      next_(f.n + 2, 0),
      prev_(f.n + 2, 0),
      in_list_(f.n + 2, 0),
      asleep_(f.n + 2, 0),
      bits_(t.start_bits),
      start_bits_(t.start_bits),
      pos_children_(f.n + 1),
      neg_children_(f.n + 1),
      root_child_(f.n + 1, 0),
      parent_(f.parent),
      positive_(f.n + 1, 0) {
    (void)a;
    for (int k = 1; k <= n_; ++k) positive_[k] = f.sign[k] == Sign::positive;
    for (int k = 1; k <= n_; ++k) {
        for (int c : f.children[k])
            (f.sign[c] == Sign::positive ? pos_children_[k] : neg_children_[k]).push_back(c);
    }
    for (int r : f.children[0]) root_child_[r] = 1;

    next_[head_] = tail_;
    prev_[tail_] = head_;
    int last = head_;
    for (int k = 1; k <= n_; ++k) {
        int p = f.parent[k];
        bool active = (p == 0) ||
                      (f.sign[k] == Sign::positive ? bits_[p] == 0 : bits_[p] == 1);
        if (!active) continue;
        next_[last] = k;
        prev_[k] = last;
        in_list_[k] = 1;
        last = k;
    }
    next_[last] = tail_;
    prev_[tail_] = last;
}

void ActiveListEngine::delete_children(const std::vector<int>& kids) {
    for (int c : kids) {
        if (!in_list_[c]) throw InternalProtocolError("deleting an inactive vertex");
        next_[prev_[c]] = next_[c];
        prev_[next_[c]] = prev_[c];
        in_list_[c] = 0;
        asleep_[c] = 0;
        ++ops_;
    }
}

void ActiveListEngine::insert_children(int k, const std::vector<int>& kids) {
    // All of k's children sit in (k, scope(k)], after k in the ordered list.
    // One merge walk places the whole family; skipped nodes are charged as
    // scan operations.
    int at = next_[k];
    for (int c : kids) {
        while (at != tail_ && at < c) {
            at = next_[at];
            ++ops_;
        }
        if (in_list_[c]) throw InternalProtocolError("inserting an active vertex");
        int before = prev_[at];
        next_[before] = c;
        prev_[c] = before;
        next_[c] = at;
        prev_[at] = c;
        in_list_[c] = 1;
        asleep_[c] = 0;
        ++ops_;
    }
}

StepResult ActiveListEngine::step() {
    ++steps_;

    // (1) Largest nonsleeping active node; everything larger wakes up.
    int cur = prev_[tail_];
    while (cur != head_ && asleep_[cur]) {
        asleep_[cur] = 0;
        ops_ += 2;  // examined + woken
        cur = prev_[cur];
    }
    if (cur == head_) {
        if (validate_) check_membership();
        return StepResult::half_period_end();
    }
    ++ops_;  // examined the acting node
    int k = cur;

    // (2) Flip a_k and swap the child families.
    std::uint8_t newbit = bits_[k] ? 0 : 1;
    bits_[k] = newbit;
    if (newbit == 1) {
        delete_children(pos_children_[k]);
        insert_children(k, neg_children_[k]);
    } else {
        delete_children(neg_children_[k]);
        insert_children(k, pos_children_[k]);
    }

    // (3)
    asleep_[k] = 1;

    if (validate_) check_membership();
    return StepResult::changed(k, newbit);
}

GrayPath ActiveListEngine::run_path() {
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

std::vector<int> ActiveListEngine::active_vertices() const {
    std::vector<int> out;
    for (int v = next_[head_]; v != tail_; v = next_[v]) out.push_back(v);
    return out;
}

bool ActiveListEngine::at_initial_state() const {
    if (bits_ != start_bits_) return false;
    for (int v = 1; v <= n_; ++v)
        if (asleep_[v]) return false;
    return true;
}

std::string ActiveListEngine::trace_row() const {
    std::ostringstream out;
    out << pattern() << '\t';
    bool first = true;
    for (int v = next_[head_]; v != tail_; v = next_[v]) {
        if (!first) out << ' ';
        first = false;
        out << v;
        if (asleep_[v]) out << '*';
    }
    return out.str();
}

void ActiveListEngine::check_membership() const {
    int walk = next_[head_];
    for (int v = 1; v <= n_; ++v) {
        bool should;
        if (root_child_[v]) {
            should = true;
        } else {
            int p = parent_[v];
            should = positive_[v] ? bits_[p] == 0 : bits_[p] == 1;
        }
        if (should != (in_list_[v] != 0))
            throw InternalProtocolError("membership law violated at vertex " + std::to_string(v));
        if (!in_list_[v] && asleep_[v])
            throw InternalProtocolError("sleep flag set on an inactive vertex");
        if (in_list_[v]) {
            if (walk != v) throw InternalProtocolError("active list out of order");
            walk = next_[walk];
        }
    }
    if (walk != tail_) throw InternalProtocolError("active list truncated");
}

}  // namespace spidergray
