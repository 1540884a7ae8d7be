#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "maxplus/errors.hpp"

namespace maxplus {

/// One element of the max-plus semiring: either bottom (-infinity, the
/// additive zero) or an exact rational.  Semiring addition is max, semiring
/// multiplication is ordinary +, and bottom absorbs multiplication.
/// Rationals are kept in canonical reduced form, so equality is structural.
class Scalar {
public:
    Scalar() : finite_(false) {}
    Scalar(long v) : finite_(true), q_(v) {}  // NOLINT: implicit by design
    explicit Scalar(mpq_class q) : finite_(true), q_(std::move(q)) { q_.canonicalize(); }
    Scalar(long num, long den);

    static Scalar bottom() { return Scalar(); }
    static Scalar unit() { return Scalar(0L); }

    bool is_bottom() const { return !finite_; }
    bool is_finite() const { return finite_; }

    /// The rational value; only valid on finite scalars.
    const mpq_class& rat() const;

    std::string str() const;  // "-inf" for bottom, "p/q" or integer otherwise

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.q_ == b.q_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    // Total order with bottom below every finite value.
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (!a.finite_) return b.finite_;
        if (!b.finite_) return false;
        return a.q_ < b.q_;
    }
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

private:
    bool finite_;
    mpq_class q_;
};

/// Semiring addition: max, with bottom neutral.
Scalar oplus(const Scalar& a, const Scalar& b);

/// Semiring multiplication: +, with bottom absorbing.
Scalar otimes(const Scalar& a, const Scalar& b);

/// t-fold semiring power of a scalar: t * value.  t = 0 yields the unit
/// even for bottom.
Scalar tpow(const Scalar& a, long long t);

/// Max-plus inverse of a finite scalar: -value.
Scalar oinv(const Scalar& a);

}  // namespace maxplus
