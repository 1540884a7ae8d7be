#pragma once

#include <optional>
#include <vector>

#include "maxplus/spectral.hpp"

namespace maxplus {

// Precomputed period tables are capped at this many scalar entries; larger
// periods fall back to on-demand products.
inline constexpr long long kCsrPrecomputeCap = 1'000'000;

/// The three matrices of the periodic regime: C and R are column/row slices
/// of ((lambda^- A)^gamma)^* on the subgraph nodes, S is the normalized
/// matrix restricted to the subgraph edges.  CS^{t+gamma}R = CS^tR for all t.
struct CsrTriple {
    Matrix c;
    Matrix s;
    Matrix r;
    long long gamma;
    Scalar lambda;
    RepresentingSubgraph subgraph;
    std::vector<Matrix> period;  // CS^tR for t in [0, gamma), when precomputed

    CsrTriple(Matrix c_, Matrix s_, Matrix r_, long long g, Scalar l,
              RepresentingSubgraph sub)
        : c(std::move(c_)), s(std::move(s_)), r(std::move(r_)), gamma(g),
          lambda(std::move(l)), subgraph(std::move(sub)) {}
};

/// Builds the CSR terms of A with respect to a representing subgraph.
/// Validates the subgraph against crit(A).
CsrTriple csr_terms(const Matrix& a, const RepresentingSubgraph& sub,
                    long long precompute_cap = kCsrPrecomputeCap);

/// CS^tR via the period table (pure periodicity), or a direct product when
/// the table was too large to precompute.
Matrix csr_product(const CsrTriple& triple, long long t);

/// Brute-force walk evaluation of CS^tR on a normalized matrix
/// (lambda(A) = 0): heaviest weight over walks i -> j through a node of
/// through_nodes with length congruent to t mod gamma, lengths capped.
/// Test oracle; the cap must be at least gamma*n + n.
Matrix csr_walk_oracle(const Matrix& a, const std::vector<int>& through_nodes,
                       long long gamma, long long t, long long length_cap);

enum class SchemeKind { nachtigall, hartmann_arguelles, cycle_threshold };

const char* scheme_name(SchemeKind k);

/// A subordinate matrix B: the rows and columns of removed_nodes set to
/// bottom.  mu is the threshold value for the HA/CT schemes.
struct SchemeResult {
    SchemeKind kind;
    std::vector<int> removed_nodes;  // ascending
    Matrix b;
    Scalar lambda_b;
    std::optional<Scalar> mu;
};

Matrix subordinate(const Matrix& a, const std::vector<int>& removed);

SchemeResult scheme_nachtigall(const Matrix& a);
SchemeResult scheme_hartmann_arguelles(const Matrix& a);
SchemeResult scheme_cycle_threshold(const Matrix& a, int node_limit = kDefaultNodeLimit);

SchemeResult run_scheme(const Matrix& a, SchemeKind kind,
                        int node_limit = kDefaultNodeLimit);

/// True iff D(r1.B) is a subgraph of D(r2.B).
bool subordination_check(const SchemeResult& r1, const SchemeResult& r2);

/// Iterated peeling of critical nodes: A^t equals the max-plus sum of the
/// terms lambda_i^t C_i S_i^t R_i for every t >= t_min, with at most n terms.
struct CsrDecomposition {
    struct Term {
        Scalar lambda;
        CsrTriple triple;
    };
    std::vector<Term> terms;
    long long t_min = 0;
    int dim = 0;

    Matrix evaluate(long long t) const;
};

CsrDecomposition csr_decomposition(const Matrix& a, int node_limit = kDefaultNodeLimit);

// Local reduction index sets: nodes whose removal cannot change the queried
// entry of the expansion.  The matrix must be normalized (lambda(A) = 0).
std::vector<int> local_j_ij(const Matrix& a, const CsrTriple& triple, int i, int j);
std::vector<int> local_j_ijl(const Matrix& a, const CsrTriple& triple, int i, int j,
                             long long l);
std::vector<int> local_j_iv(const Matrix& a, const CsrTriple& triple, int i,
                            const Vector& v);
std::vector<int> local_j_ilv(const Matrix& a, const CsrTriple& triple, int i, long long l,
                             const Vector& v);

struct LocalReduction {
    CsrTriple triple;   // rebuilt from the reduced matrix and critical graph
    Matrix b;           // B with the J rows and columns cancelled
    Matrix a_reduced;   // A with the J rows and columns cancelled
    std::vector<int> dropped_critical_sccs;
};

LocalReduction local_reduce(const Matrix& a, const Matrix& b, const std::vector<int>& j_set);

/// Closed-form entrywise transient of a local reduction: least t with
/// t*lambda(B~) + (lambda(B~)^- B~)*_ij <= (C~S~^lR~)_ij.
long long local_transient_agw(const LocalReduction& red, int i, int j, long long l);

}  // namespace maxplus
