#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maxplus/csr.hpp"

namespace maxplus {

/// One bound value.  An empty value means the formula does not apply to the
/// instance; the note says why.  Values are exact rationals; any integer at
/// least the value is a valid threshold, so the ceiling column is what gets
/// compared against the integer oracles.
struct BoundEntry {
    std::string key;     // stable name, doubles as the report tag
    std::string family;  // "t1", "t1ct", "t2", "t2v", "lit", "ep", "T"
    std::optional<mpq_class> value;
    std::string note;
    std::map<std::string, std::string> params;
    bool exact_params = true;

    std::optional<long long> ceiling() const;
};

struct BoundReport {
    std::vector<BoundEntry> entries;

    std::optional<long long> best() const;  // min applicable ceiling
    std::optional<long long> best_of(const std::string& family) const;
    const BoundEntry* find(const std::string& key) const;
};

/// Graph parameters shared by the bound formulas, with exact-vs-fallback
/// bookkeeping.
struct BoundContext {
    long long n = 0;
    long long circumference = 0;  // of D(A); fallback |G|
    bool circ_exact = false;
    long long cabdrive = 0;  // of D(A); fallback |G|-1
    bool cab_exact = false;
    long long g_hat = 0;      // max girth over critical components
    long long gamma_hat = 0;  // max cyclicity over critical components
    long long n_c = 0;        // number of critical nodes
    long long ep = 0;         // exploration penalty estimate for crit(A)
    bool ep_exact = false;
    Scalar lambda;
};

/// Collects the graph parameters the bound formulas share; exact
/// exponential searches are used up
/// to node_limit, with the |G|/|G|-1 fallbacks beyond.  exact_ep_limit caps
/// the size of critical components for which the exploration penalty is
/// computed exactly instead of bounded.
BoundContext bound_context(const Matrix& a, const CriticalGraph& crit,
                           int node_limit = kDefaultNodeLimit, int exact_ep_limit = 24);

/// 0 for n = 1, (n-1)^2 + 1 otherwise (re-exported from the graph layer).
long long wielandt(long long n);

/// The five pattern bounds on T1(A, B) shared by the Nachtigall and
/// Hartmann-Arguelles schemes.
BoundReport t1_bounds(const BoundContext& ctx, SchemeKind scheme);

/// The three pattern bounds on T1(A, B) for the cycle threshold scheme.
BoundReport t1_bounds_ct(const BoundContext& ctx);

enum class TcrKind { cbfn, ha, ha_wielandt, arith };

struct TcrParams {
    long long gamma = 1;  // the congruence modulus
    long long n = 0;      // nodes of D(A)
    long long n1 = 1;     // nodes of the subgraph (arith)
    long long c = 0;      // circumference of D(A)
    long long d = 0;      // cab-driver diameter of D(A)
    long long l = 0;      // cycle length (ha / ha_wielandt)
};

/// Closed-form cycle removal threshold bounds.
long long tcr_bound(TcrKind kind, const TcrParams& p);

/// Table presets: the combined column T_cr - gamma + 1 and the strict
/// column, per cycle (gamma = cycle length) and per component.
struct TcrTableRow {
    long long combined;  // T_cr^{l}(cycle) - l + 1
    long long strict;    // strict threshold
};
TcrTableRow tcr_table_cycle(TcrKind kind, long long l, const BoundContext& ctx);
long long tcr_table_component(TcrKind kind, long long gamma, long long scc_size,
                              const BoundContext& ctx);

/// The combiner: T1 <= max_l (tcr_l - gamma_l + 1 + ep_l) over aligned
/// per-component vectors.
long long t1_from_tcr(const std::vector<long long>& tcr,
                      const std::vector<long long>& gamma,
                      const std::vector<long long>& ep);

/// Cycle threshold variant: T1 <= max over cycles of the strict thresholds.
long long t1_from_tcr_ct(const std::vector<long long>& strict_tcr);

/// Exploration penalty bounds for one critical component; h and g_hat /
/// n_c come from the whole critical graph (aggregate bound).
BoundReport ep_bounds(const CriticalGraph& crit, int scc_index);

/// min(exact value when the component is small, bound minimum otherwise).
struct EpEstimate {
    long long value;
    bool exact;
};
EpEstimate ep_estimate(const CriticalGraph& crit, int scc_index, int exact_limit = 24);

/// Domination bounds on T2(A, B) for one scheme result.
BoundReport t2_bounds(const Matrix& a, const SchemeResult& res, const BoundContext& ctx,
                      int node_limit = kDefaultNodeLimit);

/// Domination bounds on T2(A, B, v); v must be all finite.
BoundReport t2v_bounds(const Matrix& a, const SchemeResult& res, const Vector& v,
                       const BoundContext& ctx, int node_limit = kDefaultNodeLimit);

/// Literature bounds for the comparison harness.
BoundReport literature_bounds(const Matrix& a, const SchemeResult* nacht,
                              const SchemeResult* ha, const Vector* v);

/// max(best T1, best T2) for one scheme.
std::optional<long long> combine_global(const BoundReport& t1, const BoundReport& t2);

}  // namespace maxplus
