#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "maxplus/bounds.hpp"
#include "maxplus/csr.hpp"

namespace maxplus {

/// Result of an exact scan.  value is the least threshold; violation_at is
/// the last t where the defining relation failed (value = violation_at + 1),
/// absent when the relation holds from t = 0.  The scan ceiling comes from
/// the theorem bounds; a violation past the ceiling would falsify them and
/// aborts with the instance dump.
struct TransientWitness {
    long long value = 0;
    long long gamma_used = 1;
    long long scan_ceiling = 0;
    std::optional<long long> violation_at;
};

/// Exact transient: least T with A^{t+gamma} = lambda^gamma A^t for all
/// t >= T, gamma the cyclicity of crit(A).  Requires an irreducible matrix
/// with a finite eigenvalue.  scan_ceiling must be a valid upper bound on
/// the transient (plus any slack); pass a theorem bound.
TransientWitness exact_transient(const Matrix& a, long long scan_ceiling);
TransientWitness exact_transient_with_gamma(const Matrix& a, long long gamma,
                                            long long scan_ceiling);

/// Exact weak expansion threshold: least T with
/// A^t = lambda^t CS^tR (+) B^t for all t >= T.  theorem_bound is scanned
/// past by two periods to catch falsifications.
TransientWitness exact_t1(const Matrix& a, const SchemeResult& res, const CsrTriple& triple,
                          long long theorem_bound);

/// Exact domination threshold: least T with lambda^t CS^tR >= B^t for all
/// t >= T.
TransientWitness exact_t2(const Matrix& a, const SchemeResult& res, const CsrTriple& triple,
                          long long theorem_bound);

/// Vector variant: least T with lambda^t CS^tR v >= B^t v for all t >= T.
TransientWitness exact_t2v(const Matrix& a, const SchemeResult& res,
                           const CsrTriple& triple, const Vector& v,
                           long long theorem_bound);

/// Exact exploration penalty of one critical component (Boolean
/// closed-walk-length sets); gamma must be a multiple of the component's
/// cyclicity.
long long exact_ep(const CriticalGraph& crit, int scc_index, long long gamma);

struct WeakCsrReport {
    std::vector<std::tuple<long long, int, int>> violations;  // (t, i, j)
};

/// Entrywise check of A^t = lambda^t CS^tR (+) B^t over [t_from, t_to].
WeakCsrReport verify_weak_csr(const Matrix& a, const SchemeResult& res,
                              const CsrTriple& triple, long long t_from, long long t_to);

// Scan direction cross-check handles (exposed for tests): both must agree.
long long scan_t1_upward(const Matrix& a, const SchemeResult& res, const CsrTriple& triple,
                         long long hi);
long long scan_t1_downward(const Matrix& a, const SchemeResult& res,
                           const CsrTriple& triple, long long hi);

}  // namespace maxplus
