#include "spidergray/digraph.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace spidergray {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool has_space(const std::string& s) {
    return std::any_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

RawDigraph parse_digraph(const std::string& text) {
    RawDigraph g;
    std::unordered_map<std::string, int> index;

    auto intern = [&](const std::string& label, int lineno) -> int {
        if (label.empty())
            throw ParseError("line " + std::to_string(lineno) + ": empty label");
        if (has_space(label))
            throw ParseError("line " + std::to_string(lineno) + ": label contains whitespace: '" +
                             label + "'");
        auto it = index.find(label);
        if (it != index.end()) return it->second;
        int id = g.n();
        g.labels.push_back(label);
        index.emplace(label, id);
        return id;
    };

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.rfind("node", 0) == 0 &&
            (line.size() == 4 || std::isspace(static_cast<unsigned char>(line[4])))) {
            intern(trim(line.substr(4)), lineno);
            continue;
        }

        auto arrow = line.find("->");
        if (arrow == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected '<a> -> <b>': '" +
                             line + "'");
        std::string from = trim(line.substr(0, arrow));
        std::string to = trim(line.substr(arrow + 2));
        int a = intern(from, lineno);
        int b = intern(to, lineno);
        if (a == b)
            throw ParseError("line " + std::to_string(lineno) + ": self-loop on '" + from + "'");
        g.arcs.emplace_back(a, b);
    }
    return g;
}

SpiderForest validate_and_normalize(const RawDigraph& g) {
    const int n = g.n();

    // Parallel arcs are an undirected 2-cycle regardless of orientation.
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : g.arcs) {
        auto key = std::minmax(a, b);
        if (!seen.insert(key).second)
            throw DuplicateArcError(g.labels[key.first], g.labels[key.second]);
    }

    // Undirected adjacency, neighbor order = first arc appearance.
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : g.arcs) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }

    SpiderForest f;
    f.n = n;
    f.parent.assign(n + 1, -1);
    f.sign.assign(n + 1, Sign::negative);  // virtual root counts as negative
    f.scope.assign(n + 1, 0);
    f.children.assign(n + 1, {});
    f.label_of.assign(n + 1, "");
    f.scope[0] = n;

    std::vector<int> order_of(n, 0);     // raw index -> preorder number, 0 = unvisited
    std::vector<int> tree_parent(n, -1); // raw indices, for cycle reconstruction
    int next_index = 0;

    for (int root = 0; root < n; ++root) {
        if (order_of[root] != 0) continue;

        // Iterative preorder DFS; children in adjacency (= arc) order.
        struct Item {
            int v;
            int from;  // raw parent, -1 at the root
        };
        std::vector<Item> todo{{root, -1}};
        while (!todo.empty()) {
            auto [v, from] = todo.back();
            todo.pop_back();
            if (order_of[v] != 0) continue;  // a second staging implies a cycle, thrown at first visit
            int id = ++next_index;
            order_of[v] = id;
            tree_parent[v] = from;
            f.label_of[id] = g.labels[v];
            if (from < 0) {
                f.parent[id] = 0;
                f.sign[id] = Sign::positive;
                f.children[0].push_back(id);
            } else {
                f.parent[id] = order_of[from];
                f.children[order_of[from]].push_back(id);
            }
            // Detect cycles and stage unvisited neighbors. Reverse push keeps
            // first-arc-appearance order on the preorder numbering.
            std::vector<Item> stage;
            for (int w : adj[v]) {
                if (w == from) {
                    from = -2;  // consume exactly one edge back to the parent
                    continue;
                }
                if (order_of[w] != 0) {
                    // Found a non-tree edge: reconstruct the undirected cycle.
                    std::vector<std::string> cycle;
                    std::vector<int> va, wa;
                    for (int x = v; x != -1; x = tree_parent[x]) va.push_back(x);
                    for (int x = w; x != -1; x = tree_parent[x]) wa.push_back(x);
                    std::set<int> vset(va.begin(), va.end());
                    int lca = -1;
                    for (int x : wa)
                        if (vset.count(x)) { lca = x; break; }
                    for (int x = v; x != lca; x = tree_parent[x])
                        cycle.push_back(g.labels[x]);
                    cycle.push_back(g.labels[lca]);
                    std::vector<std::string> back;
                    for (int x = w; x != lca; x = tree_parent[x])
                        back.push_back(g.labels[x]);
                    cycle.insert(cycle.end(), back.rbegin(), back.rend());
                    throw UndirectedCycleError(std::move(cycle));
                }
                stage.push_back({w, v});
            }
            for (auto it = stage.rbegin(); it != stage.rend(); ++it) todo.push_back(*it);
        }
    }

    // Signs: positive iff the arc between parent and child points at the child.
    {
        std::map<std::pair<int, int>, int> target;  // (min,max) -> raw index the arc points at
        for (auto [a, b] : g.arcs) target[std::minmax(a, b)] = b;
        for (int v = 0; v < n; ++v) {
            int p = tree_parent[v];
            if (p < 0) continue;
            f.sign[order_of[v]] =
                (target.at(std::minmax(v, p)) == v) ? Sign::positive : Sign::negative;
        }
    }

    // scope(k) = largest preorder index in k's subtree; in preorder numbering
    // a sweep from n down to 1 folding into parents computes it directly.
    for (int k = 0; k <= n; ++k) f.scope[k] = k;
    f.scope[0] = n;
    for (int k = n; k >= 1; --k) {
        int p = f.parent[k];
        if (p > 0 && f.scope[k] > f.scope[p]) f.scope[p] = f.scope[k];
    }
    return f;
}

std::string mapping_report(const SpiderForest& f) {
    std::ostringstream out;
    for (int k = 1; k <= f.n; ++k) {
        out << k << '\t' << f.label_of[k] << '\t' << "parent=" << f.parent[k] << '\t'
            << "sign=" << (f.sign[k] == Sign::positive ? '+' : '-') << '\t'
            << "scope=" << f.scope[k] << '\n';
    }
    return out.str();
}

std::string to_edge_list(const RawDigraph& g) {
    // Every vertex is declared up front so the re-parsed first-appearance
    // order (and hence the embedding) matches this digraph exactly.
    std::ostringstream out;
    for (const auto& l : g.labels) out << "node " << l << '\n';
    for (auto [a, b] : g.arcs) out << g.labels[a] << " -> " << g.labels[b] << '\n';
    return out.str();
}

std::vector<int> label_order_permutation(const SpiderForest& f, const RawDigraph& g) {
    std::unordered_map<std::string, int> where;
    for (int k = 1; k <= f.n; ++k) where[f.label_of[k]] = k;
    std::vector<int> perm(g.labels.size());
    for (std::size_t i = 0; i < g.labels.size(); ++i) perm[i] = where.at(g.labels[i]);
    return perm;
}

}  // namespace spidergray
