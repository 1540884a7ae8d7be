#pragma once

#include <vector>

#include "maxplus/scalar.hpp"

namespace maxplus {

/// Dense square max-plus matrix.  The dimension is fixed at construction;
/// entries default to bottom.
class Matrix {
public:
    explicit Matrix(int n) : n_(n), e_(static_cast<size_t>(n) * n) {
        if (n <= 0) throw DimensionError("matrix dimension must be positive");
    }

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::unit();
        return m;
    }

    int dim() const { return n_; }

    Scalar& at(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
    const Scalar& at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    int n_;
    std::vector<Scalar> e_;
};

class Vector {
public:
    explicit Vector(int n) : e_(static_cast<size_t>(n)) {
        if (n <= 0) throw DimensionError("vector dimension must be positive");
    }

    static Vector zeros(int n) {
        Vector v(n);
        for (auto& s : v.e_) s = Scalar::unit();
        return v;
    }

    int dim() const { return static_cast<int>(e_.size()); }
    Scalar& at(int i) { return e_[static_cast<size_t>(i)]; }
    const Scalar& at(int i) const { return e_[static_cast<size_t>(i)]; }

    friend bool operator==(const Vector& a, const Vector& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Vector& a, const Vector& b) { return !(a == b); }

private:
    std::vector<Scalar> e_;
};

}  // namespace maxplus
