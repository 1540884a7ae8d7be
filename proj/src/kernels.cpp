#include "maxplus/kernels.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace maxplus {

namespace {

void require_same_dim(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << "dimension mismatch: " << a.dim() << " vs " << b.dim();
        throw DimensionError(os.str());
    }
}

void product_row(const Matrix& a, const Matrix& b, Matrix& out, int i) {
    const int n = a.dim();
    for (int k = 0; k < n; ++k) {
        const Scalar& aik = a.at(i, k);
        if (aik.is_bottom()) continue;
        for (int j = 0; j < n; ++j) {
            const Scalar& bkj = b.at(k, j);
            if (bkj.is_bottom()) continue;
            mpq_class cand = aik.rat() + bkj.rat();
            Scalar& dst = out.at(i, j);
            if (dst.is_bottom() || dst.rat() < cand) dst = Scalar(std::move(cand));
        }
    }
}

}  // namespace

Matrix mat_mul_serial(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b);
    Matrix out(a.dim());
    for (int i = 0; i < a.dim(); ++i) product_row(a, b, out, i);
    return out;
}

Matrix mat_mul_parallel(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b);
    const int n = a.dim();
    Matrix out(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < n; ++i) product_row(a, b, out, i);
    return out;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.dim() >= kParallelThreshold) return mat_mul_parallel(a, b);
    return mat_mul_serial(a, b);
}

Matrix mat_power(const Matrix& a, long long t) {
    if (t < 0) throw Error("negative matrix power");
    Matrix result = Matrix::identity(a.dim());
    Matrix base = a;
    while (t > 0) {
        if (t & 1) result = mat_mul(result, base);
        t >>= 1;
        if (t > 0) base = mat_mul(base, base);
    }
    return result;
}

Matrix mat_power_iterative(const Matrix& a, long long t) {
    if (t < 0) throw Error("negative matrix power");
    Matrix result = Matrix::identity(a.dim());
    for (long long s = 0; s < t; ++s) result = mat_mul(result, a);
    return result;
}

Vector mat_vec(const Matrix& a, const Vector& v) {
    if (a.dim() != v.dim()) throw DimensionError("matrix/vector dimension mismatch");
    const int n = a.dim();
    Vector out(n);
    for (int i = 0; i < n; ++i) {
        Scalar acc = Scalar::bottom();
        for (int j = 0; j < n; ++j) acc = oplus(acc, otimes(a.at(i, j), v.at(j)));
        out.at(i) = acc;
    }
    return out;
}

Vector orbit(const Matrix& a, const Vector& v, long long t) {
    if (t < 0) throw Error("negative orbit length");
    Vector x = v;
    for (long long s = 0; s < t; ++s) x = mat_vec(a, x);
    return x;
}

namespace {

// Reconstructs an elementary positive cycle from a positive closed walk at
// node i of length len (found on the diagonal of A^len).
std::pair<std::vector<int>, mpq_class> extract_positive_cycle(const Matrix& a, int i,
                                                              int len) {
    const int n = a.dim();
    // best[s][v]: heaviest walk i -> v with s edges, with predecessor.
    std::vector<std::vector<Scalar>> best(len + 1, std::vector<Scalar>(n));
    std::vector<std::vector<int>> pred(len + 1, std::vector<int>(n, -1));
    best[0][i] = Scalar::unit();
    for (int s = 1; s <= len; ++s) {
        for (int u = 0; u < n; ++u) {
            if (best[s - 1][u].is_bottom()) continue;
            for (int v = 0; v < n; ++v) {
                Scalar cand = otimes(best[s - 1][u], a.at(u, v));
                if (cand.is_bottom()) continue;
                if (best[s][v].is_bottom() || best[s][v] < cand) {
                    best[s][v] = cand;
                    pred[s][v] = u;
                }
            }
        }
    }
    std::vector<int> walk(len + 1);
    walk[len] = i;
    for (int s = len; s > 0; --s) walk[s - 1] = pred[s][walk[s]];

    // Peel elementary cycles off the closed walk until a positive one shows
    // up; removing nonpositive ones keeps the total weight positive.
    while (true) {
        std::vector<int> seen_at(n, -1);
        int lo = -1, hi = -1;
        for (int s = 0; s < static_cast<int>(walk.size()); ++s) {
            if (seen_at[walk[s]] >= 0) {
                lo = seen_at[walk[s]];
                hi = s;
                break;
            }
            seen_at[walk[s]] = s;
        }
        if (lo < 0) throw Error("closed walk without an elementary cycle");
        mpq_class w(0);
        for (int s = lo; s < hi; ++s) w += a.at(walk[s], walk[s + 1]).rat();
        if (w > 0) {
            std::vector<int> cyc(walk.begin() + lo, walk.begin() + hi);
            mpq_class mean = w / mpq_class(hi - lo);
            return {cyc, mean};
        }
        walk.erase(walk.begin() + lo, walk.begin() + hi);
    }
}

}  // namespace

std::optional<std::pair<std::vector<int>, mpq_class>> find_positive_cycle(const Matrix& a) {
    const int n = a.dim();
    Matrix p = Matrix::identity(n);
    for (int len = 1; len <= n; ++len) {
        p = mat_mul(p, a);
        for (int i = 0; i < n; ++i) {
            const Scalar& d = p.at(i, i);
            if (d.is_finite() && d.rat() > 0) return extract_positive_cycle(a, i, len);
        }
    }
    return std::nullopt;
}

Matrix kleene_star(const Matrix& a) {
    const int n = a.dim();
    Matrix d = a;
    // Floyd-Warshall closure over (max, +).
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            const Scalar& dik = d.at(i, k);
            if (dik.is_bottom()) continue;
            for (int j = 0; j < n; ++j) {
                const Scalar& dkj = d.at(k, j);
                if (dkj.is_bottom()) continue;
                mpq_class cand = dik.rat() + dkj.rat();
                Scalar& dst = d.at(i, j);
                if (dst.is_bottom() || dst.rat() < cand) dst = Scalar(std::move(cand));
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        const Scalar& dii = d.at(i, i);
        if (dii.is_finite() && dii.rat() > 0) {
            auto wit = find_positive_cycle(a);
            if (!wit) throw Error("divergence detected but no witness cycle found");
            std::ostringstream os;
            os << "Kleene star diverges: cycle of mean " << wit->second.get_str()
               << " through nodes";
            for (int v : wit->first) os << ' ' << (v + 1);
            throw DivergenceError(os.str(), wit->first, wit->second.get_str());
        }
    }
    for (int i = 0; i < n; ++i) d.at(i, i) = oplus(d.at(i, i), Scalar::unit());
    return d;
}

Scalar matrix_norm(const Matrix& a) {
    Scalar lo, hi;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            const Scalar& s = a.at(i, j);
            if (s.is_bottom()) continue;
            if (lo.is_bottom() || s < lo) lo = s;
            if (hi.is_bottom() || hi < s) hi = s;
        }
    if (lo.is_bottom()) throw Error("matrix norm of all-bottom matrix");
    return Scalar(mpq_class(hi.rat() - lo.rat()));
}

std::vector<int> support_indices(const Matrix& a) {
    const int n = a.dim();
    std::vector<char> hit(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a.at(i, j).is_finite()) hit[i] = hit[j] = 1;
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (hit[i]) out.push_back(i);
    return out;
}

int support_size(const Matrix& a) { return static_cast<int>(support_indices(a).size()); }

Scalar vector_norm(const Vector& v) {
    Scalar lo, hi;
    for (int i = 0; i < v.dim(); ++i) {
        const Scalar& s = v.at(i);
        if (s.is_bottom()) throw Error("vector norm needs all-finite entries");
        if (i == 0 || s < lo) lo = s;
        if (i == 0 || hi < s) hi = s;
    }
    return Scalar(mpq_class(hi.rat() - lo.rat()));
}

Matrix mat_oplus(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b);
    Matrix out(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) out.at(i, j) = oplus(a.at(i, j), b.at(i, j));
    return out;
}

Matrix scalar_times(const Scalar& s, const Matrix& a) {
    Matrix out(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) out.at(i, j) = otimes(s, a.at(i, j));
    return out;
}

Vector vec_oplus(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) throw DimensionError("vector dimension mismatch");
    Vector out(a.dim());
    for (int i = 0; i < a.dim(); ++i) out.at(i) = oplus(a.at(i), b.at(i));
    return out;
}

Vector scalar_times(const Scalar& s, const Vector& v) {
    Vector out(v.dim());
    for (int i = 0; i < v.dim(); ++i) out.at(i) = otimes(s, v.at(i));
    return out;
}

bool is_all_bottom(const Matrix& a) {
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (a.at(i, j).is_finite()) return false;
    return true;
}

bool mat_leq(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (!(a.at(i, j) <= b.at(i, j))) return false;
    return true;
}

bool vec_leq(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) throw DimensionError("vector dimension mismatch");
    for (int i = 0; i < a.dim(); ++i)
        if (!(a.at(i) <= b.at(i))) return false;
    return true;
}

}  // namespace maxplus
