#pragma once

#include <vector>

#include "maxplus/digraph.hpp"
#include "maxplus/kernels.hpp"
#include "maxplus/matrix.hpp"

namespace maxplus {

/// Maximum cycle mean: Karp's recurrence per strongly connected component,
/// maximized over components.  Bottom when the digraph is acyclic.
Scalar max_cycle_mean(const Matrix& a);

/// Nodes and edges that lie on cycles of mean exactly lambda(A).
struct CriticalGraph {
    std::vector<int> nodes;                      // ascending
    std::vector<std::pair<int, int>> edges;      // lexicographic
    Digraph graph;                               // critical edges, normalized weights
    std::vector<std::vector<int>> scc_nodes;     // one entry per critical component
    std::vector<long long> scc_cyclicity;        // aligned with scc_nodes
    std::vector<long long> scc_girth;
    Scalar lambda;

    int node_count() const { return static_cast<int>(nodes.size()); }
    int scc_count() const { return static_cast<int>(scc_nodes.size()); }
    long long cyclicity() const;      // lcm over components
    long long max_cyclicity() const;  // gamma-hat
    long long max_girth() const;      // g-hat
    bool contains_node(int v) const;
    int scc_of(int v) const;  // -1 for non-critical nodes
};

CriticalGraph critical_graph(const Matrix& a);  // throws AcyclicError when lambda = bottom

/// Diagonal similarity scaling: x holds the diagonal potentials, scaled is
/// the normalized matrix D^- (lambda^- A) D with all entries <= 0 and
/// critical edges at 0.
struct Scaling {
    Vector x;
    Matrix scaled;
};

/// Visualization via Kleene-star row maxima.  Requires an irreducible matrix
/// with a finite eigenvalue.
Scaling visualize(const Matrix& a);

/// Max-balancing: the visualization whose scaled matrix satisfies the cycle
/// cover property.  Freezes critical edges level by level, contracting
/// critical components and recursing on the rest; at most n-1 rounds.
Scaling max_balance(const Matrix& a);

/// Cycle cover test: every edge lies on a cycle within the subgraph of edges
/// at least as heavy as it.
bool is_max_balanced(const Matrix& b);

/// Cut property, checked exhaustively over all node subsets; intended for
/// small matrices (tests cap n around 12).
bool max_balance_cut_property(const Matrix& b, int limit = 12);

enum class RepresentingMode { min_cycle, full };

struct RepScc {
    int crit_scc;                             // index into CriticalGraph::scc_nodes
    std::vector<int> nodes;                   // ascending
    std::vector<std::pair<int, int>> edges;   // lexicographic
    long long gamma;                          // cycle length / component cyclicity
};

/// Completely reducible critical subgraph with exactly one strongly
/// connected piece inside each critical component.
struct RepresentingSubgraph {
    RepresentingMode mode;
    std::vector<RepScc> sccs;

    long long gamma() const;  // lcm of the per-component gammas
    std::vector<int> all_nodes() const;
    bool contains_node(int v) const;
    bool contains_edge(int i, int j) const;
};

/// min_cycle picks one shortest cycle per critical component, breaking ties
/// by the lexicographically smallest node sequence; full keeps the whole
/// component.
RepresentingSubgraph select_representing(const CriticalGraph& crit, RepresentingMode mode);

}  // namespace maxplus
