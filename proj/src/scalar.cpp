#include "maxplus/scalar.hpp"

namespace maxplus {

Scalar::Scalar(long num, long den) : finite_(true), q_(num, den) {
    if (den == 0) throw Error("rational with zero denominator");
    q_.canonicalize();
}

const mpq_class& Scalar::rat() const {
    if (!finite_) throw Error("rat() on bottom scalar");
    return q_;
}

std::string Scalar::str() const {
    if (!finite_) return "-inf";
    return q_.get_str();
}

Scalar oplus(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

Scalar otimes(const Scalar& a, const Scalar& b) {
    if (a.is_bottom() || b.is_bottom()) return Scalar::bottom();
    return Scalar(mpq_class(a.rat() + b.rat()));
}

Scalar tpow(const Scalar& a, long long t) {
    if (t < 0) throw Error("negative scalar power");
    if (t == 0) return Scalar::unit();
    if (a.is_bottom()) return Scalar::bottom();
    return Scalar(mpq_class(a.rat() * mpq_class(static_cast<long>(t))));
}

Scalar oinv(const Scalar& a) {
    if (a.is_bottom()) throw Error("bottom has no max-plus inverse");
    return Scalar(mpq_class(-a.rat()));
}

}  // namespace maxplus
