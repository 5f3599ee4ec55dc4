#include "spidergray/families.hpp"

#include <fstream>
#include <stdexcept>

namespace spidergray {

namespace {

std::string num(int k) { return std::to_string(k); }

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

}  // namespace

RawDigraph family_digraph(const FamilySpec& spec) {
    RawDigraph g;
    require(spec.n >= 0, "family size must be nonnegative");
    for (int k = 1; k <= spec.n; ++k) g.labels.push_back(num(k));
    auto arc = [&](int a, int b) { g.arcs.emplace_back(a - 1, b - 1); };

    switch (spec.kind) {
        case FamilySpec::Kind::unrestricted:
            break;
        case FamilySpec::Kind::chain:
            for (int k = 1; k < spec.n; ++k) arc(k, k + 1);
            break;
        case FamilySpec::Kind::cochain:
            for (int k = 1; k < spec.n; ++k) arc(k + 1, k);
            break;
        case FamilySpec::Kind::mixed_chain:
            require(1 <= spec.m && spec.m <= spec.n, "mixed chain needs 1 <= m <= n");
            for (int k = 1; k < spec.m; ++k) arc(k, k + 1);
            for (int k = spec.n; k > spec.m + 1; --k) arc(k, k - 1);
            if (spec.m < spec.n) arc(spec.m + 1, 1);
            break;
        case FamilySpec::Kind::multi_chain: {
            const auto& e = spec.endpoints;
            require(!e.empty() && e.front() == 1, "endpoint set must start at 1");
            for (std::size_t i = 1; i < e.size(); ++i)
                require(e[i - 1] < e[i], "endpoints must be strictly increasing");
            require(spec.n >= 1 && e.back() <= spec.n, "endpoints must not exceed n");
            std::vector<bool> is_endpoint(spec.n + 2, false);
            for (int x : e) is_endpoint[x] = true;
            for (int k = 2; k <= spec.n; ++k)
                if (!is_endpoint[k]) arc(k - 1, k);
            break;
        }
        case FamilySpec::Kind::fence:
            for (int i = 1; 2 * i <= spec.n; ++i) {
                arc(2 * i - 1, 2 * i);
                if (2 * i + 1 <= spec.n) arc(2 * i + 1, 2 * i);
            }
            break;
    }
    return g;
}

CopokeStream::CopokeStream(int n) : n_(n), bits_(n + 1, 0), pos_(n + 1, 1) {
    if (n_ < 0) throw std::invalid_argument("negative length");
    stack_.reserve(n_);
}

// Resumption points: 1 = first descent, 2 = back from it, 3 = second
// descent, 4 = back from it. Each half of the body descends through every
// higher index before acting, which is what makes this stream O(n) per step.
StepResult CopokeStream::step() {
    if (n_ == 0) return StepResult::half_period_end();

    int k = 1;
    bool val = false;
    int changed = 0;
    stack_.clear();
    int pc = pos_[k];

    auto invoke = [&](int ret_pos) {
        pos_[k] = ret_pos;
        stack_.push_back(k);
        ++k;
        return pos_[k];
    };
    auto ret = [&](int next_pos) {
        pos_[k] = next_pos;
        if (stack_.empty()) return true;
        k = stack_.back();
        stack_.pop_back();
        return false;
    };

    for (;;) {
        switch (pc) {
            case 1:
                if (k < n_) {
                    pc = invoke(2);
                    continue;
                }
                goto flip;
            case 2:
                if (val) {
                    if (ret(1)) goto done;
                    pc = pos_[k];
                    continue;
                }
            flip:
                bits_[k] ^= 1;
                changed = k;
                val = true;
                if (ret(3)) goto done;
                pc = pos_[k];
                continue;
            case 3:
                if (k < n_) {
                    pc = invoke(4);
                    continue;
                }
                goto give_up;
            case 4:
                if (val) {
                    if (ret(3)) goto done;
                    pc = pos_[k];
                    continue;
                }
            give_up:
                val = false;
                if (ret(1)) goto done;
                pc = pos_[k];
                continue;
            default:
                throw std::logic_error("bad copoke position");
        }
    }

done:
    return val ? StepResult::changed(changed, bits_[changed]) : StepResult::half_period_end();
}

GrayPath known_sequence(const FamilySpec& spec, const std::string& data_dir) {
    std::string name;
    switch (spec.kind) {
        case FamilySpec::Kind::unrestricted:
            if (spec.n == 2) name = "fixture_unrestricted2.txt";
            break;
        case FamilySpec::Kind::chain:
            if (spec.n == 3) name = "fixture_chain3.txt";
            break;
        case FamilySpec::Kind::multi_chain:
            if (spec.n == 6 && spec.endpoints == std::vector<int>{1, 3, 4})
                name = "fixture_multichain_134_6.txt";
            break;
        case FamilySpec::Kind::fence:
            if (spec.n == 4) name = "fixture_fence4.txt";
            break;
        default:
            break;
    }
    if (name.empty()) throw NoFixtureError("no recorded sequence for this family");

    std::ifstream in(data_dir + "/" + name);
    if (!in) throw NoFixtureError("fixture file missing: " + name);
    GrayPath path;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) path.push_back(line);
    }
    return path;
}

}  // namespace spidergray
