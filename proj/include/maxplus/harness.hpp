#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxplus/bounds.hpp"
#include "maxplus/instances.hpp"
#include "maxplus/io.hpp"
#include "maxplus/oracle.hpp"

namespace maxplus {

struct AnalyzeOptions {
    bool nacht = true;
    bool ha = true;
    bool ct = true;
    bool with_oracle = true;
    int node_limit = kDefaultNodeLimit;
};

/// One scheme's slice of a report: the subordinate matrix data, the bound
/// tables, and the exact oracle values when requested.
struct SchemeReport {
    SchemeKind kind;
    std::optional<SchemeResult> result;  // empty when the scheme errored
    std::string error;
    BoundReport t1;
    BoundReport t2;
    std::optional<BoundReport> t2v;
    std::optional<long long> global;  // max(best T1, best T2)
    std::optional<TransientWitness> oracle_t1;
    std::optional<TransientWitness> oracle_t2;
    std::optional<TransientWitness> oracle_t2v;
};

struct AnalyzeReport {
    explicit AnalyzeReport(InstanceFile inst) : instance(std::move(inst)) {}

    InstanceFile instance;
    Scalar lambda;
    bool irreducible = false;
    std::vector<int> crit_nodes;
    std::vector<std::vector<int>> crit_sccs;
    long long crit_cyclicity = 0;
    std::vector<SchemeReport> schemes;
    BoundReport literature;
    std::optional<TransientWitness> oracle_t;
    std::optional<long long> best_global;
    std::vector<std::string> notes;

    std::string to_text() const;
    std::string to_json() const;
};

AnalyzeReport analyze(const InstanceFile& inst, const AnalyzeOptions& opts);

/// Per-component analysis of a reducible matrix: each nontrivial strongly
/// connected component is analyzed as its own principal submatrix.
struct PerSccReport {
    std::vector<std::pair<std::vector<int>, AnalyzeReport>> components;
    std::string to_text() const;
    std::string to_json() const;
};
PerSccReport analyze_per_scc(const InstanceFile& inst, const AnalyzeOptions& opts);

struct CompareReport {
    explicit CompareReport(AnalyzeReport a) : analysis(std::move(a)) {}

    AnalyzeReport analysis;
    std::optional<long long> ours_combined;  // max(Wielandt T1, quadratic T2) on the CT scheme
    std::optional<long long> ours_best;
    std::optional<long long> ha_literature;
    std::string verdict;

    std::string to_text() const;
    std::string to_json() const;
};

CompareReport compare(const InstanceFile& inst, const AnalyzeOptions& opts);

struct FuzzOptions {
    long long count = 100;
    int n_max = 5;
    long weight_lo = -9;
    long weight_hi = 9;
    uint64_t seed = 1;
    int node_limit = kDefaultNodeLimit;
};

struct FuzzViolation {
    long long index;
    std::string what;
    std::string instance_text;
    std::string minimized_text;
};

struct FuzzReport {
    FuzzOptions options;
    long long instances = 0;
    long long checks = 0;
    long long dominance_strict = 0;   // instances with our bound strictly under HA's
    long long dominance_defined = 0;  // instances where the HA literature bound applies
    long long max_exact_transient = 0;
    std::vector<FuzzViolation> violations;

    bool ok() const { return violations.empty(); }
    std::string to_text() const;
    std::string to_json() const;
};

FuzzReport fuzz(const FuzzOptions& opts);

/// All soundness checks for one instance; returns the violation messages
/// (empty when sound).  counts_out accumulates {checks, dominance_defined,
/// dominance_strict, max_exact_T}.
std::vector<std::string> check_instance(const Matrix& a, const Vector& v, int node_limit,
                                        long long counts_out[4]);

}  // namespace maxplus
