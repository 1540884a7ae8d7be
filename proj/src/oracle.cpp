#include "maxplus/oracle.hpp"

#include <sstream>

#include "maxplus/errors.hpp"
#include "maxplus/io.hpp"

namespace maxplus {

namespace {

[[noreturn]] void falsify(const char* what, const Matrix& a, long long t) {
    std::ostringstream os;
    os << what << " still violated at t = " << t
       << ", past the theorem ceiling; this would falsify the bound. Instance:\n"
       << serialize_matrix(a);
    throw FalsificationError(os.str(), serialize_matrix(a));
}

}  // namespace

TransientWitness exact_transient_with_gamma(const Matrix& a, long long gamma,
                                            long long scan_ceiling) {
    if (!is_strongly_connected(Digraph::from_matrix(a)))
        throw ReducibleError("exact transient needs an irreducible matrix");
    Scalar lambda = max_cycle_mean(a);
    if (lambda.is_bottom()) throw AcyclicError("exact transient needs an eigenvalue");
    Scalar shift = tpow(lambda, gamma);

    // Rolling window of gamma+1 consecutive powers.
    std::vector<Matrix> window;
    window.reserve(gamma + 1);
    window.push_back(Matrix::identity(a.dim()));
    for (long long k = 0; k < gamma; ++k) window.push_back(mat_mul(window.back(), a));

    TransientWitness w;
    w.gamma_used = gamma;
    w.scan_ceiling = scan_ceiling;
    for (long long t = 0;; ++t) {
        if (window[(t + gamma) % (gamma + 1)] == scalar_times(shift, window[t % (gamma + 1)])) {
            w.value = t;
            if (t > 0) w.violation_at = t - 1;
            return w;
        }
        if (t >= scan_ceiling) falsify("periodicity relation", a, t);
        window[t % (gamma + 1)] = mat_mul(window[(t + gamma) % (gamma + 1)], a);
    }
}

TransientWitness exact_transient(const Matrix& a, long long scan_ceiling) {
    if (!is_strongly_connected(Digraph::from_matrix(a)))
        throw ReducibleError("exact transient needs an irreducible matrix");
    CriticalGraph crit = critical_graph(a);
    return exact_transient_with_gamma(a, crit.cyclicity(), scan_ceiling);
}

namespace {

enum class ScanKind { weak_equality, domination, domination_vec };

// Shared scan: walks t upward over [0, hi], recording the last t where the
// relation fails.  theorem_bound marks the falsification ceiling.
TransientWitness scan(ScanKind kind, const Matrix& a, const SchemeResult& res,
                      const CsrTriple& triple, const Vector* vec, long long theorem_bound) {
    const long long hi = theorem_bound + 2 * triple.gamma;
    TransientWitness w;
    w.gamma_used = triple.gamma;
    w.scan_ceiling = hi;

    Matrix apow = Matrix::identity(a.dim());
    Matrix bpow = Matrix::identity(a.dim());
    Vector bv = vec ? *vec : Vector(1);
    Scalar lpow = Scalar::unit();
    std::optional<long long> last_violation;

    for (long long t = 0; t <= hi; ++t) {
        bool ok = true;
        switch (kind) {
            case ScanKind::weak_equality: {
                Matrix rhs =
                    mat_oplus(scalar_times(lpow, csr_product(triple, t)), bpow);
                ok = apow == rhs;
                break;
            }
            case ScanKind::domination:
                ok = mat_leq(bpow, scalar_times(lpow, csr_product(triple, t)));
                break;
            case ScanKind::domination_vec:
                ok = vec_leq(bv, scalar_times(lpow, mat_vec(csr_product(triple, t), *vec)));
                break;
        }
        if (!ok) {
            last_violation = t;
            if (t >= theorem_bound)
                falsify(kind == ScanKind::weak_equality ? "weak expansion"
                                                        : "CSR domination",
                        a, t);
        }
        if (t == hi) break;
        if (kind == ScanKind::weak_equality) apow = mat_mul(apow, a);
        if (kind == ScanKind::domination_vec)
            bv = mat_vec(res.b, bv);
        else
            bpow = mat_mul(bpow, res.b);
        lpow = otimes(lpow, triple.lambda);
    }
    if (last_violation) {
        w.violation_at = last_violation;
        w.value = *last_violation + 1;
    }
    return w;
}

}  // namespace

TransientWitness exact_t1(const Matrix& a, const SchemeResult& res, const CsrTriple& triple,
                          long long theorem_bound) {
    return scan(ScanKind::weak_equality, a, res, triple, nullptr, theorem_bound);
}

TransientWitness exact_t2(const Matrix& a, const SchemeResult& res, const CsrTriple& triple,
                          long long theorem_bound) {
    return scan(ScanKind::domination, a, res, triple, nullptr, theorem_bound);
}

TransientWitness exact_t2v(const Matrix& a, const SchemeResult& res,
                           const CsrTriple& triple, const Vector& v,
                           long long theorem_bound) {
    if (v.dim() != a.dim()) throw DimensionError("vector/matrix dimension mismatch");
    for (int i = 0; i < v.dim(); ++i)
        if (v.at(i).is_bottom()) throw Error("exact T2(A,B,v) needs a finite vector");
    return scan(ScanKind::domination_vec, a, res, triple, &v, theorem_bound);
}

long long exact_ep(const CriticalGraph& crit, int scc_index, long long gamma) {
    if (scc_index < 0 || scc_index >= crit.scc_count())
        throw Error("exact_ep: component index out of range");
    return exploration_penalty_exact(crit.graph, crit.scc_nodes[scc_index], gamma);
}

WeakCsrReport verify_weak_csr(const Matrix& a, const SchemeResult& res,
                              const CsrTriple& triple, long long t_from, long long t_to) {
    WeakCsrReport rep;
    if (t_from < 0 || t_to < t_from) throw Error("bad verification window");
    Matrix apow = mat_power(a, t_from);
    Matrix bpow = mat_power(res.b, t_from);
    Scalar lpow = tpow(triple.lambda, t_from);
    for (long long t = t_from; t <= t_to; ++t) {
        Matrix rhs = mat_oplus(scalar_times(lpow, csr_product(triple, t)), bpow);
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j)
                if (apow.at(i, j) != rhs.at(i, j)) rep.violations.emplace_back(t, i, j);
        if (t == t_to) break;
        apow = mat_mul(apow, a);
        bpow = mat_mul(bpow, res.b);
        lpow = otimes(lpow, triple.lambda);
    }
    return rep;
}

long long scan_t1_upward(const Matrix& a, const SchemeResult& res, const CsrTriple& triple,
                         long long hi) {
    Matrix apow = Matrix::identity(a.dim());
    Matrix bpow = Matrix::identity(a.dim());
    Scalar lpow = Scalar::unit();
    long long value = 0;
    for (long long t = 0; t <= hi; ++t) {
        Matrix rhs = mat_oplus(scalar_times(lpow, csr_product(triple, t)), bpow);
        if (apow != rhs) value = t + 1;
        if (t == hi) break;
        apow = mat_mul(apow, a);
        bpow = mat_mul(bpow, res.b);
        lpow = otimes(lpow, triple.lambda);
    }
    return value;
}

long long scan_t1_downward(const Matrix& a, const SchemeResult& res,
                           const CsrTriple& triple, long long hi) {
    std::vector<Matrix> apows{Matrix::identity(a.dim())};
    std::vector<Matrix> bpows{Matrix::identity(a.dim())};
    for (long long t = 1; t <= hi; ++t) {
        apows.push_back(mat_mul(apows.back(), a));
        bpows.push_back(mat_mul(bpows.back(), res.b));
    }
    for (long long t = hi; t >= 0; --t) {
        Matrix rhs = mat_oplus(
            scalar_times(tpow(triple.lambda, t), csr_product(triple, t)), bpows[t]);
        if (apows[t] != rhs) return t + 1;
    }
    return 0;
}

}  // namespace maxplus
