#include "maxplus/digraph.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "maxplus/errors.hpp"

namespace maxplus {

namespace {

void refuse_if_large(const Digraph& g, int node_limit, const char* what) {
    if (g.n > node_limit) {
        std::ostringstream os;
        os << what << " refused: " << g.n << " nodes exceeds node limit " << node_limit
           << "; raise the limit to force the exhaustive search";
        throw SizeLimitError(os.str(), g.n, node_limit);
    }
}

long long gcdll(long long a, long long b) { return std::gcd(a, b); }

}  // namespace

Digraph Digraph::from_matrix(const Matrix& a) {
    Digraph g;
    g.n = a.dim();
    g.out.assign(g.n, {});
    g.in.assign(g.n, {});
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (a.at(i, j).is_finite()) {
                g.out[i].push_back(j);
                g.in[j].push_back(i);
                g.edges.push_back({i, j, a.at(i, j)});
            }
    return g;
}

Digraph Digraph::from_edges(int n, std::vector<GraphEdge> edges) {
    Digraph g;
    g.n = n;
    g.out.assign(n, {});
    g.in.assign(n, {});
    std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    for (const auto& e : edges) {
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
            throw Error("edge endpoint out of range");
        g.out[e.from].push_back(e.to);
        g.in[e.to].push_back(e.from);
        g.edges.push_back(e);
    }
    return g;
}

Digraph Digraph::induced(const std::vector<char>& keep) const {
    std::vector<GraphEdge> kept;
    for (const auto& e : edges)
        if (keep[e.from] && keep[e.to]) kept.push_back(e);
    return from_edges(n, std::move(kept));
}

Digraph Digraph::restricted_to(const std::vector<int>& nodes) const {
    std::vector<int> local(n, -1);
    for (size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<int>(i);
    std::vector<GraphEdge> kept;
    for (const auto& e : edges)
        if (local[e.from] >= 0 && local[e.to] >= 0)
            kept.push_back({local[e.from], local[e.to], e.weight});
    return from_edges(static_cast<int>(nodes.size()), std::move(kept));
}

bool Digraph::has_edge(int i, int j) const {
    return std::binary_search(out[i].begin(), out[i].end(), j);
}

int Digraph::non_isolated_count() const {
    std::vector<char> hit(n, 0);
    for (const auto& e : edges) hit[e.from] = hit[e.to] = 1;
    return static_cast<int>(std::count(hit.begin(), hit.end(), 1));
}

SccDecomposition scc(const Digraph& g) {
    const int n = g.n;
    // Kosaraju: iterative DFS finish order, then assignment on the reverse
    // graph.
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> visited(n, 0);
    for (int s = 0; s < n; ++s) {
        if (visited[s]) continue;
        std::vector<std::pair<int, size_t>> stack{{s, 0}};
        visited[s] = 1;
        while (!stack.empty()) {
            auto& [v, idx] = stack.back();
            if (idx < g.out[v].size()) {
                int w = g.out[v][idx++];
                if (!visited[w]) {
                    visited[w] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                order.push_back(v);
                stack.pop_back();
            }
        }
    }
    std::vector<int> comp_raw(n, -1);
    int comps = 0;
    for (int k = n - 1; k >= 0; --k) {
        int s = order[k];
        if (comp_raw[s] >= 0) continue;
        std::vector<int> stack{s};
        comp_raw[s] = comps;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.in[v])
                if (comp_raw[w] < 0) {
                    comp_raw[w] = comps;
                    stack.push_back(w);
                }
        }
        ++comps;
    }

    // Renumber components by their smallest node.
    std::vector<int> min_node(comps, n);
    for (int v = 0; v < n; ++v) min_node[comp_raw[v]] = std::min(min_node[comp_raw[v]], v);
    std::vector<int> ids(comps);
    std::iota(ids.begin(), ids.end(), 0);
    std::sort(ids.begin(), ids.end(), [&](int a, int b) { return min_node[a] < min_node[b]; });
    std::vector<int> remap(comps);
    for (int i = 0; i < comps; ++i) remap[ids[i]] = i;

    SccDecomposition d;
    d.component_of.resize(n);
    d.components.assign(comps, {});
    for (int v = 0; v < n; ++v) {
        int c = remap[comp_raw[v]];
        d.component_of[v] = c;
        d.components[c].push_back(v);
    }
    d.has_cycle.assign(comps, 0);
    std::set<std::pair<int, int>> cond;
    for (const auto& e : g.edges) {
        int cu = d.component_of[e.from], cv = d.component_of[e.to];
        if (cu == cv)
            d.has_cycle[cu] = 1;  // self-loop or a >1-node component
        else
            cond.insert({cu, cv});
    }
    d.condensation_edges.assign(cond.begin(), cond.end());
    return d;
}

bool is_strongly_connected(const Digraph& g) { return scc(g).count() == 1; }

std::map<int, long long> cyclicity_per_scc(const Digraph& g, const SccDecomposition& d) {
    std::map<int, long long> out;
    for (int c = 0; c < d.count(); ++c) {
        if (!d.has_cycle[c]) continue;
        // BFS levels from the smallest node; gcd of level(u)+1-level(v) over
        // in-component edges (u,v).
        const auto& nodes = d.components[c];
        std::vector<long long> level(g.n, -1);
        std::deque<int> queue{nodes[0]};
        level[nodes[0]] = 0;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : g.out[u]) {
                if (d.component_of[v] != c || level[v] >= 0) continue;
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
        long long gg = 0;
        for (const auto& e : g.edges) {
            if (d.component_of[e.from] != c || d.component_of[e.to] != c) continue;
            gg = gcdll(gg, std::llabs(level[e.from] + 1 - level[e.to]));
        }
        if (gg == 0) throw Error("cyclicity: component marked cyclic has gcd 0");
        out[c] = gg;
    }
    return out;
}

long long cyclicity(const Digraph& g) {
    auto d = scc(g);
    auto per = cyclicity_per_scc(g, d);
    if (per.empty()) throw AcyclicError("cyclicity undefined: graph is acyclic");
    long long l = 1;
    for (const auto& [c, gam] : per) {
        long long gg = gcdll(l, gam);
        if (l / gg > std::numeric_limits<long long>::max() / gam)
            throw Error("cyclicity lcm overflow");
        l = l / gg * gam;
    }
    return l;
}

GirthInfo girth(const Digraph& g) {
    auto d = scc(g);
    GirthInfo info;
    for (int c = 0; c < d.count(); ++c) {
        if (!d.has_cycle[c]) continue;
        long long best = -1;
        for (int s : d.components[c]) {
            // Shortest cycle through s: BFS distance s -> u plus an edge u -> s.
            std::vector<long long> dist(g.n, -1);
            std::deque<int> queue{s};
            dist[s] = 0;
            while (!queue.empty()) {
                int u = queue.front();
                queue.pop_front();
                for (int v : g.out[u]) {
                    if (d.component_of[v] != c || dist[v] >= 0) continue;
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
            for (int u : g.in[s]) {
                if (d.component_of[u] != c || dist[u] < 0) continue;
                long long len = dist[u] + 1;
                if (best < 0 || len < best) best = len;
            }
        }
        info.per_scc[c] = best;
        info.max_girth = std::max(info.max_girth, best);
    }
    if (info.per_scc.empty()) throw AcyclicError("girth undefined: graph is acyclic");
    return info;
}

namespace {

// Johnson's elementary-circuit enumeration, smallest start node first,
// neighbors ascending, so the output order is reproducible.
struct JohnsonState {
    const Digraph* g;
    int start;
    std::vector<char> blocked;
    std::vector<std::set<int>> blist;
    std::vector<int> stack;
    std::vector<char> allowed;
    std::vector<std::vector<int>>* out;

    void unblock(int v) {
        blocked[v] = 0;
        for (int w : std::vector<int>(blist[v].begin(), blist[v].end())) {
            blist[v].erase(w);
            if (blocked[w]) unblock(w);
        }
    }

    bool circuit(int v) {
        bool found = false;
        stack.push_back(v);
        blocked[v] = 1;
        for (int w : g->out[v]) {
            if (!allowed[w]) continue;
            if (w == start) {
                out->push_back(stack);
                found = true;
            } else if (!blocked[w]) {
                if (circuit(w)) found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (int w : g->out[v])
                if (allowed[w]) blist[w].insert(v);
        }
        stack.pop_back();
        return found;
    }
};

}  // namespace

std::vector<std::vector<int>> enumerate_cycles(const Digraph& g, int node_limit) {
    refuse_if_large(g, node_limit, "elementary cycle enumeration");
    std::vector<std::vector<int>> cycles;
    for (int s = 0; s < g.n; ++s) {
        // Restrict to the component of s inside {s, ..., n-1}.
        std::vector<char> keep(g.n, 0);
        for (int v = s; v < g.n; ++v) keep[v] = 1;
        Digraph sub = g.induced(keep);
        auto d = scc(sub);
        JohnsonState st;
        st.g = &sub;
        st.start = s;
        st.blocked.assign(g.n, 0);
        st.blist.assign(g.n, {});
        st.allowed.assign(g.n, 0);
        for (int v = s; v < g.n; ++v)
            if (d.same(v, s)) st.allowed[v] = 1;
        st.out = &cycles;
        if (!d.has_cycle[d.component_of[s]]) continue;
        st.circuit(s);
    }
    return cycles;
}

namespace {

struct LongWalkSearch {
    const Digraph* g;
    std::vector<char> visited;
    long long best = 0;
    int min_node = 0;  // circumference mode: only nodes >= min_node, close at min_node
    bool cycle_mode = false;
    bool found_cycle = false;

    void dfs(int v, long long len) {
        int free_nodes = 0;
        for (int u = 0; u < g->n; ++u)
            if (!visited[u]) ++free_nodes;
        if (!cycle_mode && len + free_nodes <= best) return;  // cannot beat best
        for (int w : g->out[v]) {
            if (cycle_mode) {
                if (w == min_node) {
                    found_cycle = true;
                    best = std::max(best, len + 1);
                    continue;
                }
                if (w < min_node) continue;
            }
            if (visited[w]) continue;
            if (!cycle_mode) best = std::max(best, len + 1);
            visited[w] = 1;
            dfs(w, len + 1);
            visited[w] = 0;
        }
    }
};

}  // namespace

std::optional<long long> circumference_exact(const Digraph& g, int node_limit) {
    refuse_if_large(g, node_limit, "exact circumference");
    LongWalkSearch search;
    search.g = &g;
    search.cycle_mode = true;
    for (int s = 0; s < g.n; ++s) {
        search.min_node = s;
        search.visited.assign(g.n, 0);
        search.visited[s] = 1;
        search.dfs(s, 0);
    }
    if (!search.found_cycle) return std::nullopt;
    return search.best;
}

long long cabdrive_exact(const Digraph& g, int node_limit) {
    refuse_if_large(g, node_limit, "exact cab-driver diameter");
    LongWalkSearch search;
    search.g = &g;
    for (int s = 0; s < g.n; ++s) {
        search.visited.assign(g.n, 0);
        search.visited[s] = 1;
        search.dfs(s, 0);
    }
    return search.best;
}

long long circumference_bound(const Digraph& g) { return g.non_isolated_count(); }

long long cabdrive_bound(const Digraph& g) {
    return std::max<long long>(0, g.non_isolated_count() - 1);
}

long long wielandt_number(long long n) {
    if (n <= 0) throw Error("Wielandt number needs n >= 1");
    return n == 1 ? 0 : (n - 1) * (n - 1) + 1;
}

namespace {

// Boolean adjacency as bitset rows.
struct BoolMat {
    int n;
    int words;
    std::vector<uint64_t> rows;  // n * words

    explicit BoolMat(int n_) : n(n_), words((n_ + 63) / 64), rows(static_cast<size_t>(n_) * words, 0) {}

    void set(int i, int j) { rows[static_cast<size_t>(i) * words + j / 64] |= 1ULL << (j % 64); }
    bool get(int i, int j) const {
        return (rows[static_cast<size_t>(i) * words + j / 64] >> (j % 64)) & 1ULL;
    }
    friend bool operator==(const BoolMat& a, const BoolMat& b) { return a.rows == b.rows; }
};

BoolMat bool_identity(int n) {
    BoolMat m(n);
    for (int i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BoolMat bool_mul(const BoolMat& a, const BoolMat& b) {
    BoolMat out(a.n);
    for (int i = 0; i < a.n; ++i) {
        uint64_t* dst = &out.rows[static_cast<size_t>(i) * out.words];
        for (int k = 0; k < a.n; ++k) {
            if (!a.get(i, k)) continue;
            const uint64_t* src = &b.rows[static_cast<size_t>(k) * b.words];
            for (int w = 0; w < out.words; ++w) dst[w] |= src[w];
        }
    }
    return out;
}

BoolMat bool_adjacency(const Digraph& g) {
    BoolMat m(g.n);
    for (const auto& e : g.edges) m.set(e.from, e.to);
    return m;
}

}  // namespace

long long boolean_index(const Digraph& g) {
    if (!is_strongly_connected(g))
        throw ReducibleError("Boolean index needs a strongly connected digraph");
    long long gamma = cyclicity(g);  // throws AcyclicError on a single loop-free node
    long long cap = wielandt_number(g.n) + gamma;
    std::vector<BoolMat> powers;
    powers.push_back(bool_identity(g.n));
    BoolMat adj = bool_adjacency(g);
    for (long long t = 1; t <= cap; ++t) powers.push_back(bool_mul(powers.back(), adj));
    for (long long t = 0; t + gamma <= cap; ++t)
        if (powers[t] == powers[t + gamma]) return t;
    throw FalsificationError("Boolean index exceeded its Wielandt ceiling", "");
}

IndexBounds index_bounds(const Digraph& g) {
    if (!is_strongly_connected(g))
        throw ReducibleError("index bounds need a strongly connected digraph");
    long long gamma = cyclicity(g);
    long long gg = girth(g).max_girth;
    long long n = g.n;
    long long r = n / gamma, s = n % gamma;
    IndexBounds b;
    b.wielandt = wielandt_number(n);
    b.schwarz = gamma * wielandt_number(r) + s;
    b.dulmage_mendelsohn = n + (n - 2) * gg;
    b.kim = gamma * r + (r - 2) * gg + s;
    return b;
}

namespace {

std::vector<long long> exploration_penalties(const Digraph& g,
                                             const std::vector<int>& scc_nodes,
                                             long long gamma) {
    const int m = static_cast<int>(scc_nodes.size());
    if (m == 0) throw Error("exploration penalty of an empty component");
    std::vector<int> local(g.n, -1);
    for (int i = 0; i < m; ++i) local[scc_nodes[i]] = i;
    BoolMat adj(m);
    bool any_edge = false;
    for (const auto& e : g.edges)
        if (local[e.from] >= 0 && local[e.to] >= 0) {
            adj.set(local[e.from], local[e.to]);
            any_edge = true;
        }
    if (!any_edge) throw AcyclicError("exploration penalty of a trivial component");
    {
        // gamma must be a multiple of the component's cyclicity.
        std::vector<char> keep(g.n, 0);
        for (int v : scc_nodes) keep[v] = 1;
        long long cgam = cyclicity(g.induced(keep));
        if (gamma <= 0 || gamma % cgam != 0)
            throw Error("exploration penalty: gamma is not a multiple of the cyclicity");
    }
    // Diagonal of Boolean powers up to the stabilization ceiling; beyond the
    // index the achievable-length sets are periodic.
    long long ceiling = wielandt_number(m) + gamma;
    std::vector<std::vector<char>> closed(m);  // per node: achievable lengths 0..ceiling
    for (int i = 0; i < m; ++i) closed[i].assign(ceiling + 1, 0);
    BoolMat p = bool_identity(m);
    for (int i = 0; i < m; ++i) closed[i][0] = 1;  // the empty walk
    for (long long l = 1; l <= ceiling; ++l) {
        p = bool_mul(p, adj);
        for (int i = 0; i < m; ++i) closed[i][l] = p.get(i, i);
    }
    std::vector<long long> out(m);
    for (int i = 0; i < m; ++i) {
        long long last_missing = -1;
        for (long long t = 0; t <= ceiling; t += gamma)
            if (!closed[i][t]) last_missing = t;
        if (last_missing == ceiling - (ceiling % gamma))
            throw FalsificationError(
                "exploration penalty did not stabilize below its ceiling", "");
        out[i] = last_missing + 1;
    }
    return out;
}

}  // namespace

long long exploration_penalty_exact(const Digraph& g, const std::vector<int>& scc_nodes,
                                    long long gamma) {
    auto per_node = exploration_penalties(g, scc_nodes, gamma);
    return *std::max_element(per_node.begin(), per_node.end());
}

long long exploration_penalty_exact_node(const Digraph& g,
                                         const std::vector<int>& scc_nodes,
                                         long long gamma, int node) {
    auto per_node = exploration_penalties(g, scc_nodes, gamma);
    for (size_t i = 0; i < scc_nodes.size(); ++i)
        if (scc_nodes[i] == node) return per_node[i];
    throw Error("exploration penalty: node not in the component");
}

DigraphParams digraph_params(const Digraph& g, int node_limit) {
    DigraphParams p;
    p.size = g.non_isolated_count();
    try {
        p.circumference = circumference_exact(g, node_limit);
        p.circumference_exact = true;
        p.cabdrive = cabdrive_exact(g, node_limit);
        p.cabdrive_exact = true;
    } catch (const SizeLimitError&) {
        p.circumference = circumference_bound(g);
        p.circumference_exact = false;
        p.cabdrive = cabdrive_bound(g);
        p.cabdrive_exact = false;
        p.circumference_or_bound = circumference_bound(g);
        return p;
    }
    p.circumference_or_bound = p.circumference ? *p.circumference : circumference_bound(g);
    return p;
}

}  // namespace maxplus
