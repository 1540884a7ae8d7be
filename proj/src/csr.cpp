#include "maxplus/csr.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "maxplus/errors.hpp"

namespace maxplus {

namespace {

Matrix shift(const Matrix& a, const mpq_class& delta) {
    Matrix out(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (a.at(i, j).is_finite())
                out.at(i, j) = Scalar(mpq_class(a.at(i, j).rat() + delta));
    return out;
}

void validate_subgraph(const CriticalGraph& crit, const RepresentingSubgraph& sub) {
    if (static_cast<int>(sub.sccs.size()) != crit.scc_count())
        throw Error("representing subgraph must have one piece per critical component");
    std::set<std::pair<int, int>> crit_edges(crit.edges.begin(), crit.edges.end());
    std::vector<char> used(crit.scc_count(), 0);
    for (const auto& piece : sub.sccs) {
        if (piece.nodes.empty()) throw Error("empty piece in representing subgraph");
        int c = crit.scc_of(piece.nodes.front());
        if (c < 0) throw Error("representing subgraph node outside the critical graph");
        if (used[c]) throw Error("two pieces inside one critical component");
        used[c] = 1;
        for (int v : piece.nodes)
            if (crit.scc_of(v) != c)
                throw Error("representing subgraph piece spans critical components");
        for (const auto& e : piece.edges)
            if (!crit_edges.count(e))
                throw Error("representing subgraph edge is not critical");
    }
}

}  // namespace

CsrTriple csr_terms(const Matrix& a, const RepresentingSubgraph& sub,
                    long long precompute_cap) {
    Scalar lambda = max_cycle_mean(a);
    if (lambda.is_bottom())
        throw AcyclicError("CSR terms undefined: no eigenvalue, powers nilpotent");
    validate_subgraph(critical_graph(a), sub);

    const int n = a.dim();
    long long gamma = sub.gamma();
    Matrix norm = shift(a, -lambda.rat());
    Matrix m = kleene_star(mat_power(norm, gamma));

    Matrix c(n), r(n), s(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (sub.contains_node(j)) c.at(i, j) = m.at(i, j);
            if (sub.contains_node(i)) r.at(i, j) = m.at(i, j);
            if (sub.contains_edge(i, j)) s.at(i, j) = norm.at(i, j);
        }

    CsrTriple triple(std::move(c), std::move(s), std::move(r), gamma, lambda, sub);
    if (gamma * n * n <= precompute_cap) {
        triple.period.reserve(gamma);
        Matrix cs = triple.c;
        for (long long t = 0; t < gamma; ++t) {
            triple.period.push_back(mat_mul(cs, triple.r));
            if (t + 1 < gamma) cs = mat_mul(cs, triple.s);
        }
    }
    return triple;
}

Matrix csr_product(const CsrTriple& triple, long long t) {
    if (t < 0) throw Error("negative CSR product index");
    long long r = t % triple.gamma;
    if (!triple.period.empty()) return triple.period[r];
    return mat_mul(mat_mul(triple.c, mat_power(triple.s, r)), triple.r);
}

Matrix csr_walk_oracle(const Matrix& a, const std::vector<int>& through_nodes,
                       long long gamma, long long t, long long length_cap) {
    const int n = a.dim();
    if (max_cycle_mean(a) != Scalar::unit())
        throw Error("walk oracle needs a normalized matrix (lambda = 0)");
    if (gamma <= 0) throw Error("walk oracle needs gamma >= 1");
    if (length_cap < gamma * n + n)
        throw Error("walk oracle length cap too small; needs gamma*n + n");
    std::vector<char> marked(n, 0);
    for (int v : through_nodes) marked[v] = 1;

    Matrix out(n);
    for (int i = 0; i < n; ++i) {
        // free[v] / hit[v]: heaviest walk i -> v of the current length that
        // has not / has visited a marked node.
        std::vector<Scalar> free(n), hit(n);
        (marked[i] ? hit[i] : free[i]) = Scalar::unit();
        long long want = ((t % gamma) + gamma) % gamma;
        auto harvest = [&](long long len) {
            if (len % gamma != want) return;
            for (int j = 0; j < n; ++j) out.at(i, j) = oplus(out.at(i, j), hit[j]);
        };
        harvest(0);
        for (long long len = 1; len <= length_cap; ++len) {
            std::vector<Scalar> nfree(n), nhit(n);
            for (int u = 0; u < n; ++u) {
                if (free[u].is_bottom() && hit[u].is_bottom()) continue;
                for (int v = 0; v < n; ++v) {
                    const Scalar& w = a.at(u, v);
                    if (w.is_bottom()) continue;
                    nfree[v] = oplus(nfree[v], otimes(free[u], w));
                    nhit[v] = oplus(nhit[v], otimes(hit[u], w));
                }
            }
            for (int v = 0; v < n; ++v)
                if (marked[v]) {
                    nhit[v] = oplus(nhit[v], nfree[v]);
                    nfree[v] = Scalar::bottom();
                }
            free = std::move(nfree);
            hit = std::move(nhit);
            harvest(len);
        }
    }
    return out;
}

const char* scheme_name(SchemeKind k) {
    switch (k) {
        case SchemeKind::nachtigall: return "nacht";
        case SchemeKind::hartmann_arguelles: return "ha";
        case SchemeKind::cycle_threshold: return "ct";
    }
    return "?";
}

Matrix subordinate(const Matrix& a, const std::vector<int>& removed) {
    Matrix b = a;
    for (int v : removed)
        for (int k = 0; k < a.dim(); ++k) {
            b.at(v, k) = Scalar::bottom();
            b.at(k, v) = Scalar::bottom();
        }
    return b;
}

namespace {

SchemeResult finish_scheme(const Matrix& a, SchemeKind kind, std::vector<int> removed,
                           std::optional<Scalar> mu, const Scalar& lambda) {
    Matrix b = subordinate(a, removed);
    Scalar lambda_b = max_cycle_mean(b);
    if (!(lambda_b < lambda))
        throw FalsificationError("subordinate matrix kept the eigenvalue", "");
    if (mu && lambda_b != *mu)
        throw FalsificationError("threshold scheme: lambda(B) differs from mu", "");
    return SchemeResult{kind, std::move(removed), std::move(b), std::move(lambda_b),
                        std::move(mu)};
}

// Union of the components of a threshold graph that intersect the critical
// nodes.
std::vector<int> removed_from_threshold(const Digraph& thr, const CriticalGraph& crit) {
    auto d = scc(thr);
    std::vector<char> take(d.count(), 0);
    for (int v : crit.nodes) take[d.component_of[v]] = 1;
    // Only nodes that actually appear in the threshold graph count.
    std::vector<char> present(thr.n, 0);
    for (const auto& e : thr.edges) present[e.from] = present[e.to] = 1;
    std::vector<int> removed;
    for (int v = 0; v < thr.n; ++v)
        if (present[v] && take[d.component_of[v]]) removed.push_back(v);
    return removed;
}

// Does the threshold graph have a cyclic component that contains no critical
// component?  Critical edges are always inside threshold graphs at or below
// lambda, so a component contains a critical component exactly when it holds
// its smallest node.
bool has_free_component(const Digraph& thr, const CriticalGraph& crit) {
    auto d = scc(thr);
    std::vector<char> holds_crit(d.count(), 0);
    for (const auto& k : crit.scc_nodes) holds_crit[d.component_of[k.front()]] = 1;
    for (int c = 0; c < d.count(); ++c)
        if (d.has_cycle[c] && !holds_crit[c]) return true;
    return false;
}

}  // namespace

SchemeResult scheme_nachtigall(const Matrix& a) {
    CriticalGraph crit = critical_graph(a);
    return finish_scheme(a, SchemeKind::nachtigall, crit.nodes, std::nullopt, crit.lambda);
}

SchemeResult scheme_hartmann_arguelles(const Matrix& a) {
    CriticalGraph crit = critical_graph(a);
    Matrix balanced = max_balance(a).scaled;  // normalized: entries <= 0

    std::set<mpq_class> weights;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (balanced.at(i, j).is_finite()) weights.insert(balanced.at(i, j).rat());

    for (auto it = weights.rbegin(); it != weights.rend(); ++it) {
        std::vector<GraphEdge> heavy;
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j) {
                const Scalar& w = balanced.at(i, j);
                if (w.is_finite() && w.rat() >= *it) heavy.push_back({i, j, w});
            }
        Digraph thr = Digraph::from_edges(a.dim(), std::move(heavy));
        if (has_free_component(thr, crit)) {
            Scalar mu(mpq_class(*it + crit.lambda.rat()));
            return finish_scheme(a, SchemeKind::hartmann_arguelles,
                                 removed_from_threshold(thr, crit), mu, crit.lambda);
        }
    }
    // No qualifying threshold: the threshold graph is all of D(A).
    Digraph whole = Digraph::from_matrix(a);
    return finish_scheme(a, SchemeKind::hartmann_arguelles,
                         removed_from_threshold(whole, crit), Scalar::bottom(),
                         crit.lambda);
}

SchemeResult scheme_cycle_threshold(const Matrix& a, int node_limit) {
    CriticalGraph crit = critical_graph(a);
    Digraph g = Digraph::from_matrix(a);
    auto cycles = enumerate_cycles(g, node_limit);

    std::vector<mpq_class> means(cycles.size());
    std::set<mpq_class> distinct;
    for (size_t k = 0; k < cycles.size(); ++k) {
        mpq_class w(0);
        const auto& cyc = cycles[k];
        for (size_t s = 0; s < cyc.size(); ++s)
            w += a.at(cyc[s], cyc[(s + 1) % cyc.size()]).rat();
        means[k] = w / mpq_class(static_cast<long>(cyc.size()));
        distinct.insert(means[k]);
    }

    for (auto it = distinct.rbegin(); it != distinct.rend(); ++it) {
        std::set<std::pair<int, int>> edge_set;
        for (size_t k = 0; k < cycles.size(); ++k) {
            if (means[k] < *it) continue;
            const auto& cyc = cycles[k];
            for (size_t s = 0; s < cyc.size(); ++s)
                edge_set.insert({cyc[s], cyc[(s + 1) % cyc.size()]});
        }
        std::vector<GraphEdge> edges;
        for (const auto& [i, j] : edge_set) edges.push_back({i, j, a.at(i, j)});
        Digraph thr = Digraph::from_edges(a.dim(), std::move(edges));
        if (has_free_component(thr, crit)) {
            Scalar mu{mpq_class(*it)};
            return finish_scheme(a, SchemeKind::cycle_threshold,
                                 removed_from_threshold(thr, crit), mu, crit.lambda);
        }
    }
    Digraph whole = Digraph::from_matrix(a);
    return finish_scheme(a, SchemeKind::cycle_threshold,
                         removed_from_threshold(whole, crit), Scalar::bottom(),
                         crit.lambda);
}

SchemeResult run_scheme(const Matrix& a, SchemeKind kind, int node_limit) {
    switch (kind) {
        case SchemeKind::nachtigall: return scheme_nachtigall(a);
        case SchemeKind::hartmann_arguelles: return scheme_hartmann_arguelles(a);
        case SchemeKind::cycle_threshold: return scheme_cycle_threshold(a, node_limit);
    }
    throw Error("unknown scheme");
}

bool subordination_check(const SchemeResult& r1, const SchemeResult& r2) {
    if (r1.b.dim() != r2.b.dim()) throw DimensionError("scheme results of different size");
    for (int i = 0; i < r1.b.dim(); ++i)
        for (int j = 0; j < r1.b.dim(); ++j)
            if (r1.b.at(i, j).is_finite() && r2.b.at(i, j).is_bottom()) return false;
    return true;
}

Matrix CsrDecomposition::evaluate(long long t) const {
    Matrix acc(dim);
    for (const auto& term : terms)
        acc = mat_oplus(acc, scalar_times(tpow(term.lambda, t), csr_product(term.triple, t)));
    return acc;
}

CsrDecomposition csr_decomposition(const Matrix& a, int node_limit) {
    const int n = a.dim();
    CsrDecomposition dec;
    dec.dim = n;

    Matrix current = a;
    Scalar prev = Scalar::bottom();
    while (true) {
        Scalar lambda = max_cycle_mean(current);
        if (lambda.is_bottom()) break;
        if (prev.is_finite() && !(lambda < prev))
            throw FalsificationError("decomposition eigenvalues failed to decrease", "");
        prev = lambda;
        CriticalGraph crit = critical_graph(current);
        auto sub = select_representing(crit, RepresentingMode::full);
        dec.terms.push_back({lambda, csr_terms(current, sub)});
        if (static_cast<int>(dec.terms.size()) > n)
            throw FalsificationError("decomposition produced more than n terms", "");
        current = subordinate(current, crit.nodes);
    }

    if (dec.terms.empty()) {
        dec.t_min = n;  // nilpotent: powers die by t = n
        return dec;
    }
    Digraph g = Digraph::from_matrix(a);
    long long circ;
    try {
        auto c = circumference_exact(g, node_limit);
        circ = c ? *c : circumference_bound(g);
    } catch (const SizeLimitError&) {
        circ = circumference_bound(g);
    }
    dec.t_min = std::min(wielandt_number(n), (n - 2) * circ + n);
    if (dec.t_min < 0) dec.t_min = 0;
    return dec;
}

namespace {

Matrix require_normalized_star(const Matrix& a) {
    if (max_cycle_mean(a) != Scalar::unit())
        throw Error("local reductions need a normalized matrix (lambda = 0)");
    return kleene_star(a);
}

Scalar min_over_period(const CsrTriple& triple, int i, int j) {
    Scalar m;
    bool first = true;
    for (long long l = 0; l < triple.gamma; ++l) {
        Scalar v = csr_product(triple, l).at(i, j);
        if (first || v < m) m = v;
        first = false;
    }
    return m;
}

Scalar min_over_period_vec(const CsrTriple& triple, int i, const Vector& v) {
    Scalar m;
    bool first = true;
    for (long long l = 0; l < triple.gamma; ++l) {
        Scalar val = mat_vec(csr_product(triple, l), v).at(i);
        if (first || val < m) m = val;
        first = false;
    }
    return m;
}

std::vector<int> collect_below(const Matrix& star, int i, int j,
                               const Scalar& threshold) {
    std::vector<int> out;
    for (int s = 0; s < star.dim(); ++s) {
        Scalar via = otimes(star.at(i, s), star.at(s, j));
        if (via < threshold) out.push_back(s);
    }
    return out;
}

std::vector<int> collect_below_vec(const Matrix& star, int i, const Vector& v,
                                   const Scalar& threshold) {
    std::vector<int> out;
    for (int s = 0; s < star.dim(); ++s) {
        Scalar best = Scalar::bottom();
        for (int j = 0; j < star.dim(); ++j)
            best = oplus(best, otimes(otimes(star.at(i, s), star.at(s, j)), v.at(j)));
        if (best < threshold) out.push_back(s);
    }
    return out;
}

}  // namespace

std::vector<int> local_j_ij(const Matrix& a, const CsrTriple& triple, int i, int j) {
    Matrix star = require_normalized_star(a);
    return collect_below(star, i, j, min_over_period(triple, i, j));
}

std::vector<int> local_j_ijl(const Matrix& a, const CsrTriple& triple, int i, int j,
                             long long l) {
    Matrix star = require_normalized_star(a);
    return collect_below(star, i, j, csr_product(triple, l).at(i, j));
}

std::vector<int> local_j_iv(const Matrix& a, const CsrTriple& triple, int i,
                            const Vector& v) {
    Matrix star = require_normalized_star(a);
    return collect_below_vec(star, i, v, min_over_period_vec(triple, i, v));
}

std::vector<int> local_j_ilv(const Matrix& a, const CsrTriple& triple, int i, long long l,
                             const Vector& v) {
    Matrix star = require_normalized_star(a);
    return collect_below_vec(star, i, v, mat_vec(csr_product(triple, l), v).at(i));
}

LocalReduction local_reduce(const Matrix& a, const Matrix& b,
                            const std::vector<int>& j_set) {
    Matrix a_red = subordinate(a, j_set);
    Matrix b_red = subordinate(b, j_set);

    CriticalGraph crit = critical_graph(a);
    std::set<int> dropped_nodes(j_set.begin(), j_set.end());
    std::vector<int> dropped_sccs;
    for (int c = 0; c < crit.scc_count(); ++c)
        for (int v : crit.scc_nodes[c])
            if (dropped_nodes.count(v)) {
                dropped_sccs.push_back(c);
                break;
            }
    if (static_cast<int>(dropped_sccs.size()) == crit.scc_count())
        throw Error("local reduction would drop the whole critical graph");

    // Representing subgraph of the reduced matrix: full components of the
    // surviving critical graph.
    CriticalGraph crit_red = critical_graph(a_red);
    auto sub = select_representing(crit_red, RepresentingMode::full);
    LocalReduction red{csr_terms(a_red, sub), std::move(b_red), std::move(a_red),
                       std::move(dropped_sccs)};
    return red;
}

long long local_transient_agw(const LocalReduction& red, int i, int j, long long l) {
    Scalar lambda_b = max_cycle_mean(red.b);
    if (lambda_b.is_bottom()) return 0;
    if (!(lambda_b < Scalar::unit()))
        throw Error("local transient needs lambda(B~) < 0 after normalization");
    Matrix norm_b = shift(red.b, -lambda_b.rat());
    Scalar star_ij = kleene_star(norm_b).at(i, j);
    if (star_ij.is_bottom()) return 0;
    Scalar csr_ij = csr_product(red.triple, l).at(i, j);
    if (csr_ij.is_bottom())
        throw Error("local transient needs a finite CSR entry at (i, j)");
    if (star_ij <= csr_ij) return 0;
    // Least t with t*lambda + star <= csr, lambda < 0.
    mpq_class ratio = (star_ij.rat() - csr_ij.rat()) / (-lambda_b.rat());
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), ratio.get_num().get_mpz_t(), ratio.get_den().get_mpz_t());
    return q.get_si();
}

}  // namespace maxplus
