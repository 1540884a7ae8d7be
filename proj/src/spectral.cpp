#include "maxplus/spectral.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <set>

#include "maxplus/errors.hpp"

namespace maxplus {

namespace {

long long lcmll(long long a, long long b) {
    long long g = std::gcd(a, b);
    if (a / g > std::numeric_limits<long long>::max() / b) throw Error("lcm overflow");
    return a / g * b;
}

// Karp's maximum-mean-cycle recurrence on one strongly connected component.
mpq_class karp_component(const Matrix& a, const std::vector<int>& nodes) {
    const int m = static_cast<int>(nodes.size());
    std::vector<int> local(a.dim(), -1);
    for (int i = 0; i < m; ++i) local[nodes[i]] = i;
    // walk[k][v]: heaviest walk of length exactly k from nodes[0], inside the
    // component.
    std::vector<std::vector<Scalar>> walk(m + 1, std::vector<Scalar>(m));
    walk[0][0] = Scalar::unit();
    for (int k = 1; k <= m; ++k)
        for (int vi = 0; vi < m; ++vi) {
            Scalar best = Scalar::bottom();
            for (int ui = 0; ui < m; ++ui) {
                if (walk[k - 1][ui].is_bottom()) continue;
                const Scalar& w = a.at(nodes[ui], nodes[vi]);
                if (w.is_bottom()) continue;
                best = oplus(best, otimes(walk[k - 1][ui], w));
            }
            walk[k][vi] = best;
        }
    std::optional<mpq_class> lambda;
    for (int vi = 0; vi < m; ++vi) {
        if (walk[m][vi].is_bottom()) continue;
        std::optional<mpq_class> inner;  // min over k of (D_m - D_k)/(m-k)
        for (int k = 0; k < m; ++k) {
            if (walk[k][vi].is_bottom()) continue;
            mpq_class ratio =
                (walk[m][vi].rat() - walk[k][vi].rat()) / mpq_class(m - k);
            if (!inner || ratio < *inner) inner = ratio;
        }
        if (inner && (!lambda || *inner > *lambda)) lambda = *inner;
    }
    if (!lambda) throw Error("Karp recurrence found no cycle in a cyclic component");
    return *lambda;
}

Matrix shift(const Matrix& a, const mpq_class& delta) {
    Matrix out(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (a.at(i, j).is_finite())
                out.at(i, j) = Scalar(mpq_class(a.at(i, j).rat() + delta));
    return out;
}

}  // namespace

Scalar max_cycle_mean(const Matrix& a) {
    Digraph g = Digraph::from_matrix(a);
    auto d = scc(g);
    Scalar best = Scalar::bottom();
    for (int c = 0; c < d.count(); ++c) {
        if (!d.has_cycle[c]) continue;
        best = oplus(best, Scalar(karp_component(a, d.components[c])));
    }
    return best;
}

long long CriticalGraph::cyclicity() const {
    long long l = 1;
    for (long long g : scc_cyclicity) l = lcmll(l, g);
    return l;
}

long long CriticalGraph::max_cyclicity() const {
    return *std::max_element(scc_cyclicity.begin(), scc_cyclicity.end());
}

long long CriticalGraph::max_girth() const {
    return *std::max_element(scc_girth.begin(), scc_girth.end());
}

bool CriticalGraph::contains_node(int v) const {
    return std::binary_search(nodes.begin(), nodes.end(), v);
}

int CriticalGraph::scc_of(int v) const {
    for (int c = 0; c < scc_count(); ++c)
        if (std::binary_search(scc_nodes[c].begin(), scc_nodes[c].end(), v)) return c;
    return -1;
}

CriticalGraph critical_graph(const Matrix& a) {
    Scalar lambda = max_cycle_mean(a);
    if (lambda.is_bottom())
        throw AcyclicError("critical graph undefined: the digraph is acyclic");
    Matrix norm = shift(a, -lambda.rat());
    Matrix star = kleene_star(norm);

    CriticalGraph crit;
    crit.lambda = lambda;
    const int n = a.dim();
    std::vector<GraphEdge> crit_edges;
    std::set<int> node_set;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Scalar& w = norm.at(i, j);
            if (w.is_bottom() || star.at(j, i).is_bottom()) continue;
            if (w.rat() + star.at(j, i).rat() == 0) {
                crit_edges.push_back({i, j, w});
                crit.edges.emplace_back(i, j);
                node_set.insert(i);
                node_set.insert(j);
            }
        }
    crit.nodes.assign(node_set.begin(), node_set.end());
    crit.graph = Digraph::from_edges(n, std::move(crit_edges));

    auto d = scc(crit.graph);
    GirthInfo gi = girth(crit.graph);
    auto cyc = cyclicity_per_scc(crit.graph, d);
    for (int c = 0; c < d.count(); ++c) {
        if (!d.has_cycle[c]) continue;
        crit.scc_nodes.push_back(d.components[c]);
        crit.scc_cyclicity.push_back(cyc.at(c));
        crit.scc_girth.push_back(gi.per_scc.at(c));
    }
    return crit;
}

namespace {

// Row maxima of the Kleene star of the normalized matrix.
std::vector<mpq_class> star_row_potentials(const Matrix& norm) {
    Matrix star = kleene_star(norm);
    std::vector<mpq_class> x(norm.dim());
    for (int i = 0; i < norm.dim(); ++i) {
        Scalar best = Scalar::bottom();
        for (int j = 0; j < norm.dim(); ++j) best = oplus(best, star.at(i, j));
        x[i] = best.rat();  // star diagonal is 0, so rows are never empty
    }
    return x;
}

Matrix apply_potentials(const Matrix& norm, const std::vector<mpq_class>& x) {
    Matrix out(norm.dim());
    for (int i = 0; i < norm.dim(); ++i)
        for (int j = 0; j < norm.dim(); ++j)
            if (norm.at(i, j).is_finite())
                out.at(i, j) = Scalar(mpq_class(norm.at(i, j).rat() + x[j] - x[i]));
    return out;
}

void require_irreducible(const Matrix& a, const char* what) {
    if (!is_strongly_connected(Digraph::from_matrix(a))) {
        std::string msg = std::string(what) + " needs an irreducible matrix";
        throw ReducibleError(msg);
    }
}

}  // namespace

Scaling visualize(const Matrix& a) {
    require_irreducible(a, "visualization");
    Scalar lambda = max_cycle_mean(a);
    if (lambda.is_bottom()) throw AcyclicError("visualization needs a finite eigenvalue");
    Matrix norm = shift(a, -lambda.rat());
    auto x = star_row_potentials(norm);
    Scaling s{Vector(a.dim()), apply_potentials(norm, x)};
    for (int i = 0; i < a.dim(); ++i) s.x.at(i) = Scalar(x[i]);
    return s;
}

Scaling max_balance(const Matrix& a) {
    require_irreducible(a, "max-balancing");
    Scalar lambda = max_cycle_mean(a);
    if (lambda.is_bottom()) throw AcyclicError("max-balancing needs a finite eigenvalue");
    const int n = a.dim();
    Matrix norm = shift(a, -lambda.rat());

    std::vector<mpq_class> pot(n, mpq_class(0));
    std::vector<int> group(n);
    std::iota(group.begin(), group.end(), 0);

    while (true) {
        // Renumber the live groups.
        std::vector<int> reps;
        std::vector<int> gid(n, -1);
        for (int i = 0; i < n; ++i)
            if (gid[group[i]] < 0) {
                gid[group[i]] = static_cast<int>(reps.size());
                reps.push_back(group[i]);
            }
        const int m = static_cast<int>(reps.size());
        if (m == 1) break;

        // Contracted cross-group graph: heaviest scaled edge between groups.
        Matrix h(m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (norm.at(i, j).is_bottom() || group[i] == group[j]) continue;
                int u = gid[group[i]], v = gid[group[j]];
                Scalar w(mpq_class(norm.at(i, j).rat() + pot[j] - pot[i]));
                h.at(u, v) = oplus(h.at(u, v), w);
            }

        Scalar mu = max_cycle_mean(h);
        if (mu.is_bottom())
            throw FalsificationError("max-balancing lost strong connectivity", "");
        Matrix hn = shift(h, -mu.rat());
        auto z = star_row_potentials(hn);
        for (int i = 0; i < n; ++i) pot[i] += z[gid[group[i]]];

        // Merge the critical components of the contracted graph.
        Matrix hs = apply_potentials(hn, z);
        std::vector<GraphEdge> crit_edges;
        for (int u = 0; u < m; ++u)
            for (int v = 0; v < m; ++v)
                if (hs.at(u, v).is_finite() && hs.at(u, v).rat() == 0)
                    crit_edges.push_back({u, v, Scalar::unit()});
        Digraph cg = Digraph::from_edges(m, std::move(crit_edges));
        auto d = scc(cg);
        bool merged = false;
        for (int c = 0; c < d.count(); ++c) {
            if (!d.has_cycle[c] || d.components[c].size() < 2) continue;
            int target = reps[d.components[c][0]];
            std::set<int> members;
            for (int u : d.components[c]) members.insert(reps[u]);
            for (int i = 0; i < n; ++i)
                if (members.count(group[i])) group[i] = target;
            merged = true;
        }
        if (!merged)
            throw FalsificationError("max-balancing found no critical component to merge",
                                     "");
    }

    Scaling s{Vector(n), apply_potentials(norm, pot)};
    for (int i = 0; i < n; ++i) s.x.at(i) = Scalar(pot[i]);
    return s;
}

bool is_max_balanced(const Matrix& b) {
    Digraph g = Digraph::from_matrix(b);
    for (const auto& e : g.edges) {
        // Threshold subgraph of edges at least as heavy as e.
        std::vector<GraphEdge> heavy;
        for (const auto& f : g.edges)
            if (f.weight >= e.weight) heavy.push_back(f);
        Digraph sub = Digraph::from_edges(g.n, std::move(heavy));
        if (!scc(sub).same(e.from, e.to)) return false;
    }
    return true;
}

bool max_balance_cut_property(const Matrix& b, int limit) {
    const int n = b.dim();
    if (n > limit) throw SizeLimitError("cut-property check refused", n, limit);
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        Scalar fwd = Scalar::bottom(), bwd = Scalar::bottom();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (b.at(i, j).is_bottom()) continue;
                bool im = (mask >> i) & 1, jm = (mask >> j) & 1;
                if (im && !jm) fwd = oplus(fwd, b.at(i, j));
                if (!im && jm) bwd = oplus(bwd, b.at(i, j));
            }
        if (fwd != bwd) return false;
    }
    return true;
}

long long RepresentingSubgraph::gamma() const {
    long long l = 1;
    for (const auto& s : sccs) l = lcmll(l, s.gamma);
    return l;
}

std::vector<int> RepresentingSubgraph::all_nodes() const {
    std::vector<int> out;
    for (const auto& s : sccs) out.insert(out.end(), s.nodes.begin(), s.nodes.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool RepresentingSubgraph::contains_node(int v) const {
    for (const auto& s : sccs)
        if (std::binary_search(s.nodes.begin(), s.nodes.end(), v)) return true;
    return false;
}

bool RepresentingSubgraph::contains_edge(int i, int j) const {
    for (const auto& s : sccs)
        for (const auto& e : s.edges)
            if (e.first == i && e.second == j) return true;
    return false;
}

namespace {

// Lexicographically smallest cycle of length len through start, restricted
// to one critical component.  exact_reach[u][r]: a walk u -> start of
// exactly r edges exists inside the component.
std::optional<std::vector<int>> lex_min_cycle(const Digraph& g, const std::vector<int>& comp,
                                              int start, long long len) {
    std::vector<char> inside(g.n, 0);
    for (int v : comp) inside[v] = 1;
    std::vector<std::vector<char>> reach(g.n, std::vector<char>(len + 1, 0));
    reach[start][0] = 1;
    for (long long r = 1; r <= len; ++r)
        for (int u : comp)
            for (int w : g.out[u])
                if (inside[w] && reach[w][r - 1]) reach[u][r] = 1;
    if (!reach[start][len]) return std::nullopt;
    std::vector<int> cyc{start};
    int cur = start;
    for (long long pos = 1; pos < len; ++pos) {
        bool advanced = false;
        for (int w : g.out[cur]) {  // ascending: lexicographic choice
            if (!inside[w] || w == start) continue;
            if (reach[w][len - pos]) {
                cyc.push_back(w);
                cur = w;
                advanced = true;
                break;
            }
        }
        if (!advanced) return std::nullopt;
    }
    if (!g.has_edge(cur, start)) return std::nullopt;
    return cyc;
}

}  // namespace

RepresentingSubgraph select_representing(const CriticalGraph& crit, RepresentingMode mode) {
    if (crit.scc_count() == 0) throw Error("representing subgraph of an empty critical graph");
    RepresentingSubgraph sub;
    sub.mode = mode;
    for (int c = 0; c < crit.scc_count(); ++c) {
        RepScc piece;
        piece.crit_scc = c;
        if (mode == RepresentingMode::full) {
            piece.nodes = crit.scc_nodes[c];
            for (const auto& e : crit.edges) {
                bool from_in = std::binary_search(piece.nodes.begin(), piece.nodes.end(),
                                                  e.first);
                bool to_in =
                    std::binary_search(piece.nodes.begin(), piece.nodes.end(), e.second);
                if (from_in && to_in) piece.edges.push_back(e);
            }
            piece.gamma = crit.scc_cyclicity[c];
        } else {
            long long g = crit.scc_girth[c];
            std::optional<std::vector<int>> best;
            for (int start : crit.scc_nodes[c]) {
                best = lex_min_cycle(crit.graph, crit.scc_nodes[c], start, g);
                if (best) break;  // smallest start node with a girth-length cycle
            }
            if (!best) throw Error("no girth-length cycle found in a critical component");
            const auto& cyc = *best;
            piece.nodes = cyc;
            std::sort(piece.nodes.begin(), piece.nodes.end());
            piece.nodes.erase(std::unique(piece.nodes.begin(), piece.nodes.end()),
                              piece.nodes.end());
            for (size_t k = 0; k < cyc.size(); ++k)
                piece.edges.emplace_back(cyc[k], cyc[(k + 1) % cyc.size()]);
            std::sort(piece.edges.begin(), piece.edges.end());
            piece.edges.erase(std::unique(piece.edges.begin(), piece.edges.end()),
                              piece.edges.end());
            piece.gamma = g;
        }
        sub.sccs.push_back(std::move(piece));
    }
    return sub;
}

}  // namespace maxplus
