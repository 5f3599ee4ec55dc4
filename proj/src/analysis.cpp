#include "spidergray/analysis.hpp"

#include <algorithm>
#include <sstream>

namespace spidergray {

Analysis analyze(const SpiderForest& f) {
    const int n = f.n;
    Analysis a;
    a.n = n;
    a.usets.assign(n + 1, {});
    a.vsets.assign(n + 1, {});
    a.maxu.assign(n + 1, 0);
    a.maxv.assign(n + 1, 0);
    a.prev.assign(n + 1, 0);
    a.ppro.assign(n + 1, 0);
    a.npro.assign(n + 1, 0);
    a.counts.assign(n + 1, PatternCount::one());
    a.count_parity.assign(n + 1, 1);

    // Progenitors. parent[k] < k in preorder, so one ascending sweep suffices.
    // The virtual root acts as a negative vertex, hence npro falls back to 0.
    for (int k = 1; k <= n; ++k) {
        int p = f.parent[k];
        a.ppro[k] = (f.sign[k] == Sign::positive) ? k : a.ppro[p];
        a.npro[k] = (f.sign[k] == Sign::negative) ? k : (p == 0 ? 0 : a.npro[p]);
    }

    // Near sets. A positive vertex u belongs to U_k exactly for k on the
    // chain parent(u), then upward through negative vertices until the first
    // positive one (or 0). Dually for negative vertices through positive
    // ancestors. Iterating u ascending keeps every set sorted.
    //
    // prev[x] is the predecessor of x inside the largest set containing x,
    // i.e. the one at the chain's terminal vertex ("home"). The stored V_0
    // stays empty by convention (the driver never consumes it), but the
    // terminal bucket still defines prev for negative vertices whose chain
    // ends at 0.
    std::vector<int> last_in_bucket_u(n + 1, 0), last_in_bucket_v(n + 1, 0);
    for (int u = 1; u <= n; ++u) {
        if (f.sign[u] == Sign::positive) {
            int v = f.parent[u];
            for (;;) {
                a.usets[v].push_back(u);
                if (v == 0 || f.sign[v] == Sign::positive) break;
                v = f.parent[v];
            }
            a.prev[u] = last_in_bucket_u[v];
            last_in_bucket_u[v] = u;
        } else {
            int k = f.parent[u];
            for (;;) {
                if (k != 0) a.vsets[k].push_back(u);
                if (k == 0 || f.sign[k] == Sign::negative) break;
                k = f.parent[k];
            }
            a.prev[u] = last_in_bucket_v[k];
            last_in_bucket_v[k] = u;
        }
    }
    for (int k = 0; k <= n; ++k) {
        if (!a.usets[k].empty()) a.maxu[k] = a.usets[k].back();
        if (!a.vsets[k].empty()) a.maxv[k] = a.vsets[k].back();
    }

    // n_k = prod over U_k + prod over V_k (empty products are 1). Members of
    // the near sets are proper descendants, so a descending sweep is enough.
    // Parity is carried exactly even when the count itself overflows.
    for (int k = n; k >= 1; --k) {
        PatternCount pu = PatternCount::one(), pv = PatternCount::one();
        int parity_u = 1, parity_v = 1;
        for (int u : a.usets[k]) {
            pu = pu * a.counts[u];
            parity_u &= a.count_parity[u];
        }
        for (int v : a.vsets[k]) {
            pv = pv * a.counts[v];
            parity_v &= a.count_parity[v];
        }
        a.counts[k] = pu + pv;
        a.count_parity[k] = static_cast<std::uint8_t>((parity_u + parity_v) & 1);
    }

    a.total = PatternCount::one();
    for (int r : f.children[0]) a.total = a.total * a.counts[r];
    return a;
}

unsigned __int128 count_total(const Analysis& a) { return a.total.get(); }

unsigned __int128 count_total(const SpiderForest& f) { return analyze(f).total.get(); }

std::string count_total_str(const SpiderForest& f) { return analyze(f).total.str(); }

namespace {

// Largest s in the sorted set with s <= i and i <= scope(s), or 0.
int covering_member(const std::vector<int>& set, const std::vector<int>& scope, int i) {
    auto it = std::upper_bound(set.begin(), set.end(), i);
    if (it == set.begin()) return 0;
    int s = *(it - 1);
    return (scope[s] >= i) ? s : 0;
}

}  // namespace

InitTable init_table(const SpiderForest& f, const Analysis& a) {
    const int n = f.n;
    InitTable t;
    t.alpha.assign(n + 1, {});
    t.tau.assign(n + 1, {});
    t.omega.assign(n + 1, {});
    t.delta_u_odd.assign(n + 1, {});
    t.delta_v_odd.assign(n + 1, {});
    t.start_bits.assign(n + 1, 0);
    t.start_labels.assign(n + 1, StartLabel::awake0);

    // Traversal-count parities: the j-th member of U_k is swept once per
    // combination of the members before it, so its parity is odd exactly when
    // every earlier member has an odd count. delta at the virtual root is
    // defined to be odd, keeping components independent.
    std::vector<std::vector<std::uint8_t>> du(n + 1), dv(n + 1);
    for (int k = 0; k <= n; ++k) {
        du[k].resize(a.usets[k].size());
        std::uint8_t odd = 1;
        for (std::size_t i = 0; i < a.usets[k].size(); ++i) {
            du[k][i] = odd;
            odd &= a.count_parity[a.usets[k][i]];
        }
        dv[k].resize(a.vsets[k].size());
        odd = 1;
        for (std::size_t i = 0; i < a.vsets[k].size(); ++i) {
            dv[k][i] = odd;
            odd &= a.count_parity[a.vsets[k][i]];
        }
    }
    t.delta_u_odd = du;
    t.delta_v_odd = dv;

    auto delta_odd_u = [&](int k, int j) -> bool {
        auto& set = a.usets[k];
        auto it = std::lower_bound(set.begin(), set.end(), j);
        if (it == set.end() || *it != j)
            throw InternalProtocolError("vertex missing from U-set during initialization");
        return du[k][static_cast<std::size_t>(it - set.begin())] != 0;
    };
    auto delta_odd_v = [&](int k, int j) -> bool {
        auto& set = a.vsets[k];
        auto it = std::lower_bound(set.begin(), set.end(), j);
        if (it == set.end() || *it != j)
            throw InternalProtocolError("vertex missing from V-set during initialization");
        return dv[k][static_cast<std::size_t>(it - set.begin())] != 0;
    };

    // Bottom-up over preorder: every child table referenced below belongs to
    // a vertex with a larger index, so a descending sweep has them ready.
    std::vector<int> child_of(n + 1, 0);       // covering child of k, per sweep
    std::vector<std::uint8_t> down(n + 1, 0);  // directed path k ->* i
    std::vector<std::uint8_t> up(n + 1, 0);    // directed path i ->* k

    for (int k = n; k >= 1; --k) {
        int width = f.scope[k] - k + 1;
        t.alpha[k].assign(width, 0);
        t.tau[k].assign(width, InitTable::kNoBit);
        t.omega[k].assign(width, 0);
        t.alpha[k][0] = 0;
        t.omega[k][0] = 1;

        for (int i = k + 1; i <= f.scope[k]; ++i) {
            int p = f.parent[i];
            bool pos = f.sign[i] == Sign::positive;
            child_of[i] = (p == k) ? i : child_of[p];
            down[i] = (p == k ? true : down[p] != 0) && pos;
            up[i] = (p == k ? true : up[p] != 0) && !pos;
        }

        for (int i = k + 1; i <= f.scope[k]; ++i) {
            int j = child_of[i];
            std::uint8_t al, ta, om;
            if (f.sign[j] == Sign::positive) {
                // The listing with a_k = 0 ends with spider j at its final
                // bits; whether it also starts there depends on how many
                // times the sub-listing was swept.
                ta = t.omega[j][i - j];
                al = delta_odd_u(k, j) ? t.alpha[j][i - j] : t.omega[j][i - j];
                if (down[i]) {
                    om = 1;
                } else {
                    int jp = covering_member(a.vsets[k], f.scope, i);
                    if (jp == 0)
                        throw InternalProtocolError("uncovered vertex in V-partition");
                    bool even = ((t.omega[j][jp - j] + (delta_odd_v(k, jp) ? 1 : 0)) & 1) == 0;
                    om = even ? t.alpha[jp][i - jp] : t.omega[jp][i - jp];
                }
            } else {
                ta = t.alpha[j][i - j];
                om = delta_odd_v(k, j) ? t.omega[j][i - j] : t.alpha[j][i - j];
                if (up[i]) {
                    al = 0;
                } else {
                    int jp = covering_member(a.usets[k], f.scope, i);
                    if (jp == 0)
                        throw InternalProtocolError("uncovered vertex in U-partition");
                    bool even = ((t.alpha[j][jp - j] + (delta_odd_u(k, jp) ? 1 : 0)) & 1) == 0;
                    al = even ? t.alpha[jp][i - jp] : t.omega[jp][i - jp];
                }
            }
            t.alpha[k][i - k] = al;
            t.tau[k][i - k] = ta;
            t.omega[k][i - k] = om;
        }
    }

    // delta at the root is odd, so every component launches at its own alpha.
    for (int r : f.children[0])
        for (int i = r; i <= f.scope[r]; ++i) t.start_bits[i] = t.alpha[r][i - r];
    for (int k = 1; k <= n; ++k)
        t.start_labels[k] = t.start_bits[k] ? StartLabel::awake1 : StartLabel::awake0;
    return t;
}

namespace {

std::string set_str(const std::vector<int>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

std::string bits_str(const std::vector<std::uint8_t>& b) {
    std::string out;
    for (auto x : b) out += (x == InitTable::kNoBit) ? '*' : static_cast<char>('0' + x);
    return out;
}

}  // namespace

std::string analysis_report(const SpiderForest& f, const Analysis& a, const InitTable& t) {
    std::ostringstream out;
    out << "k\tlabel\tscope\tU\tV\tprev\tppro\tnpro\n";
    for (int k = 1; k <= f.n; ++k) {
        out << k << '\t' << f.label_of[k] << '\t' << f.scope[k] << '\t' << set_str(a.usets[k])
            << '\t' << set_str(a.vsets[k]) << '\t' << a.prev[k] << '\t' << a.ppro[k] << '\t'
            << a.npro[k] << '\n';
    }
    out << "\nk\tn_k\talpha\ttau\tomega\n";
    for (int k = f.n; k >= 1; --k) {
        out << k << '\t' << (a.counts[k].ok ? a.counts[k].str() : std::string("overflow")) << '\t'
            << bits_str(t.alpha[k]) << '\t' << bits_str(t.tau[k]) << '\t' << bits_str(t.omega[k])
            << '\n';
    }
    out << "\nstart\t" << t.start_pattern() << '\n';
    out << "total\t" << (a.total.ok ? a.total.str() : std::string("overflow")) << '\n';
    return out.str();
}

}  // namespace spidergray
