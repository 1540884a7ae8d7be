#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "maxplus/matrix.hpp"

namespace maxplus {

// Default guard for the exponential graph searches.  Refusals are explicit
// so bound formulas can substitute |G| and |G|-1 transparently.
inline constexpr int kDefaultNodeLimit = 20;

struct GraphEdge {
    int from;
    int to;
    Scalar weight;
};

/// Weighted digraph view of a matrix: nodes 0..n-1, one edge per finite
/// entry.
struct Digraph {
    int n = 0;
    std::vector<GraphEdge> edges;
    std::vector<std::vector<int>> out;  // targets per node, ascending
    std::vector<std::vector<int>> in;   // sources per node, ascending

    static Digraph from_matrix(const Matrix& a);
    static Digraph from_edges(int n, std::vector<GraphEdge> edges);

    /// Subgraph on the nodes with keep[v] != 0; node ids are preserved.
    Digraph induced(const std::vector<char>& keep) const;

    /// Subgraph on the given nodes, renumbered to 0..|nodes|-1.
    Digraph restricted_to(const std::vector<int>& nodes) const;

    bool has_edge(int i, int j) const;
    int edge_count() const { return static_cast<int>(edges.size()); }
    int non_isolated_count() const;
};

struct SccDecomposition {
    std::vector<int> component_of;              // node -> component id
    std::vector<std::vector<int>> components;   // nodes ascending; ids ordered by smallest node
    std::vector<char> has_cycle;                // per component: >1 node or a self-loop
    std::vector<std::pair<int, int>> condensation_edges;

    int count() const { return static_cast<int>(components.size()); }
    bool same(int u, int v) const { return component_of[u] == component_of[v]; }
};

SccDecomposition scc(const Digraph& g);

bool is_strongly_connected(const Digraph& g);

/// gcd of closed-walk lengths per nontrivial component.
std::map<int, long long> cyclicity_per_scc(const Digraph& g, const SccDecomposition& d);

/// lcm over nontrivial components; throws AcyclicError when there are none.
long long cyclicity(const Digraph& g);

struct GirthInfo {
    std::map<int, long long> per_scc;  // nontrivial components only
    long long max_girth = 0;
};

GirthInfo girth(const Digraph& g);  // throws AcyclicError when no cycles

/// All elementary cycles as node sequences (each starting at its smallest
/// node), in deterministic order.  Refuses graphs above the node limit.
std::vector<std::vector<int>> enumerate_cycles(const Digraph& g,
                                               int node_limit = kDefaultNodeLimit);

/// Longest cycle length by exhaustive search; nullopt when acyclic.
std::optional<long long> circumference_exact(const Digraph& g,
                                             int node_limit = kDefaultNodeLimit);

/// Longest path length (edges) by exhaustive search.
long long cabdrive_exact(const Digraph& g, int node_limit = kDefaultNodeLimit);

// Cheap always-available companions (counted over non-isolated nodes).
long long circumference_bound(const Digraph& g);
long long cabdrive_bound(const Digraph& g);

/// Worst-case Boolean transient: 0 for n = 1, (n-1)^2 + 1 otherwise.
long long wielandt_number(long long n);

/// Least T with Boolean A^{t+gamma} = A^t for all t >= T, gamma the
/// cyclicity.  Requires a strongly connected graph with a cycle.
long long boolean_index(const Digraph& g);

struct IndexBounds {
    long long wielandt;
    long long schwarz;
    long long dulmage_mendelsohn;
    long long kim;
};

IndexBounds index_bounds(const Digraph& g);  // strongly connected with a cycle

/// Exact exploration penalty of one strongly connected component: the least
/// T such that closed walks of every multiple-of-gamma length >= T exist at
/// every node of the component.  gamma must be a multiple of the component's
/// cyclicity.
long long exploration_penalty_exact(const Digraph& g, const std::vector<int>& scc_nodes,
                                    long long gamma);

/// Same, for a single node of the component (walks still range over the
/// whole component).
long long exploration_penalty_exact_node(const Digraph& g,
                                         const std::vector<int>& scc_nodes,
                                         long long gamma, int node);

struct DigraphParams {
    long long size = 0;  // non-isolated nodes
    std::optional<long long> circumference;
    bool circumference_exact = false;
    long long circumference_or_bound = 0;
    long long cabdrive = 0;
    bool cabdrive_exact = false;
};

/// Circumference and cab-driver diameter, exact when the graph is within
/// the node limit, cheap bounds otherwise.
DigraphParams digraph_params(const Digraph& g, int node_limit = kDefaultNodeLimit);

}  // namespace maxplus
