#include "spidergray/oracle.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace spidergray {
namespace oracle {

std::vector<std::string> enumerate_valid(const RawDigraph& g, int cap) {
    const int n = g.n();
    if (n > cap || n >= 64) throw CapExceededError(n, std::min(cap, 63));
    std::vector<std::string> out;
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        bool valid = true;
        for (auto [a, b] : g.arcs) {
            std::uint64_t ba = (mask >> (n - 1 - a)) & 1;
            std::uint64_t bb = (mask >> (n - 1 - b)) & 1;
            if (ba > bb) {
                valid = false;
                break;
            }
        }
        if (!valid) continue;
        std::string s(static_cast<std::size_t>(n), '0');
        for (int i = 0; i < n; ++i)
            if ((mask >> (n - 1 - i)) & 1) s[static_cast<std::size_t>(i)] = '1';
        out.push_back(std::move(s));
    }
    return out;
}

DpCounts count_dp_table(const SpiderForest& f) {
    const int n = f.n;
    DpCounts dp;
    dp.per_vertex.assign(n + 1, PatternCount::one());
    std::vector<PatternCount> c0(n + 1, PatternCount::one());
    std::vector<PatternCount> c1(n + 1, PatternCount::one());
    // Two states per vertex: patterns of the subtree with the vertex's own
    // bit fixed. A positive child c obeys bit(parent) <= bit(c); a negative
    // child obeys bit(c) <= bit(parent).
    for (int v = n; v >= 1; --v) {
        PatternCount zero = PatternCount::one(), one = PatternCount::one();
        for (int c : f.children[v]) {
            if (f.sign[c] == Sign::positive) {
                zero = zero * (c0[c] + c1[c]);
                one = one * c1[c];
            } else {
                zero = zero * c0[c];
                one = one * (c0[c] + c1[c]);
            }
        }
        c0[v] = zero;
        c1[v] = one;
        dp.per_vertex[v] = zero + one;
    }
    dp.total = PatternCount::one();
    for (int r : f.children[0]) dp.total = dp.total * dp.per_vertex[r];
    return dp;
}

unsigned __int128 count_dp(const SpiderForest& f) { return count_dp_table(f).total.get(); }

VerificationReport verify_gray_path(const GrayPath& path, const RawDigraph& g, int cap) {
    const int n = g.n();
    VerificationReport rep;
    rep.path_size = path.size();

    auto valid_pattern = [&](const std::string& s) {
        if (static_cast<int>(s.size()) != n) return false;
        for (char c : s)
            if (c != '0' && c != '1') return false;
        for (auto [a, b] : g.arcs)
            if (s[a] > s[b]) return false;
        return true;
    };

    for (std::size_t i = 0; i < path.size(); ++i)
        if (!valid_pattern(path[i])) rep.invalid.push_back(static_cast<int>(i));

    for (std::size_t i = 1; i < path.size(); ++i) {
        if (path[i].size() != path[i - 1].size()) {
            rep.bad_steps.emplace_back(static_cast<int>(i), -1);
            continue;
        }
        int ham = 0;
        for (std::size_t j = 0; j < path[i].size(); ++j)
            if (path[i][j] != path[i - 1][j]) ++ham;
        if (ham != 1) rep.bad_steps.emplace_back(static_cast<int>(i), ham);
    }

    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < path.size(); ++i)
        if (!seen.insert(path[i]).second) rep.duplicates.push_back(static_cast<int>(i));

    auto all = enumerate_valid(g, cap);
    rep.expected_size = all.size();
    std::set<std::string> want(all.begin(), all.end());
    std::set<std::string> have(path.begin(), path.end());
    constexpr std::size_t kShow = 16;
    for (const auto& p : want)
        if (!have.count(p) && rep.missing.size() < kShow) rep.missing.push_back(p);
    for (const auto& p : have)
        if (!want.count(p) && rep.extra.size() < kShow) rep.extra.push_back(p);

    rep.is_gray =
        rep.invalid.empty() && rep.bad_steps.empty() && rep.duplicates.empty();
    rep.is_complete = want == have && path.size() == all.size();
    return rep;
}

std::string VerificationReport::to_text() const {
    std::ostringstream out;
    out << "patterns: " << path_size << " of " << expected_size << '\n';
    out << "valid: " << (invalid.empty() ? "yes" : "no");
    if (!invalid.empty()) {
        out << " (bad at";
        for (std::size_t i = 0; i < invalid.size() && i < 8; ++i) out << ' ' << invalid[i];
        out << ")";
    }
    out << '\n';
    out << "gray: " << (bad_steps.empty() ? "yes" : "no");
    if (!bad_steps.empty()) {
        out << " (bad steps";
        for (std::size_t i = 0; i < bad_steps.size() && i < 8; ++i)
            out << " (" << bad_steps[i].first << ":" << bad_steps[i].second << ")";
        out << ")";
    }
    out << '\n';
    out << "duplicates: " << (duplicates.empty() ? "none" : std::to_string(duplicates.size()))
        << '\n';
    out << "complete: " << (is_complete ? "yes" : "no");
    if (!missing.empty()) {
        out << " missing";
        for (const auto& p : missing) out << ' ' << p;
    }
    if (!extra.empty()) {
        out << " extra";
        for (const auto& p : extra) out << ' ' << p;
    }
    out << '\n';
    out << "overall: " << (all_clear() ? "PASS" : "FAIL") << '\n';
    return out.str();
}

RawDigraph random_forest(std::mt19937& rng, int n) {
    RawDigraph g;
    for (int v = 1; v <= n; ++v) g.labels.push_back(std::to_string(v));
    for (int v = 2; v <= n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        int p = pick(rng);
        if (p == 0) continue;  // v roots a new component
        bool toward_child = (rng() & 1) != 0;
        if (toward_child)
            g.arcs.emplace_back(p - 1, v - 1);
        else
            g.arcs.emplace_back(v - 1, p - 1);
    }
    return g;
}

}  // namespace oracle
}  // namespace spidergray
