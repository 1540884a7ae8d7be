#include "maxplus/instances.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "maxplus/csr.hpp"
#include "maxplus/errors.hpp"

namespace maxplus {

Matrix wielandt_digraph(int n) {
    if (n < 3) throw Error("the Wielandt digraph needs n >= 3");
    Matrix a(n);
    for (int i = 0; i < n; ++i) a.at(i, (i + 1) % n) = Scalar::unit();
    a.at(0, 2) = Scalar::unit();  // chord: a second cycle of length n-1
    return a;
}

Matrix boolean_cycle(int n) {
    Matrix a(n);
    for (int i = 0; i < n; ++i) a.at(i, (i + 1) % n) = Scalar::unit();
    return a;
}

FuzzInstance random_irreducible(uint64_t seed, int n_max, long wlo, long whi) {
    if (n_max < 1 || wlo > whi) throw Error("bad fuzz parameters");
    Rng rng(seed);
    const int n = 1 + static_cast<int>(rng.below(n_max));
    Matrix a(n);

    const uint64_t mode = rng.below(10);
    const bool constant_weights = mode == 0;
    const bool all_finite = mode >= 1 && mode <= 3;
    const long cw = constant_weights ? rng.int_in(wlo, whi) : 0;
    auto weight = [&] { return Scalar(constant_weights ? cw : rng.int_in(wlo, whi)); };

    // Random Hamiltonian cycle keeps the digraph strongly connected.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.below(static_cast<uint64_t>(i + 1))]);
    for (int i = 0; i < n; ++i) a.at(perm[i], perm[(i + 1) % n]) = weight();

    const uint64_t density_pct = 20 + rng.below(60);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (a.at(i, j).is_finite()) continue;
            if (all_finite || rng.below(100) < density_pct) a.at(i, j) = weight();
        }

    Vector v(n);
    for (int i = 0; i < n; ++i) v.at(i) = Scalar(rng.int_in(wlo, whi));
    return {std::move(a), std::move(v)};
}

Matrix random_strongly_connected_boolean(uint64_t seed, int n_max) {
    FuzzInstance inst = random_irreducible(seed, n_max, 0, 0);
    return inst.a;
}

namespace {

struct Blocks {
    std::array<int, 4> first;  // first node of each block
    int n;
};

Blocks layout(const SeparatorParams& p) {
    Blocks b;
    int at = 0;
    for (int k = 0; k < 4; ++k) {
        if (p.sizes[k] < 1) throw GenerationError("every block needs at least one node");
        b.first[k] = at;
        at += p.sizes[k];
    }
    b.n = at;
    return b;
}

Matrix build_separator(const SeparatorParams& p, const mpq_class& delta_ha,
                       const mpq_class& delta_ct) {
    Blocks b = layout(p);
    Matrix a(b.n);
    for (int k = 0; k < 4; ++k)
        for (int i = b.first[k]; i < b.first[k] + p.sizes[k]; ++i)
            for (int j = b.first[k]; j < b.first[k] + p.sizes[k]; ++j)
                a.at(i, j) = Scalar(p.lambdas[k]);

    const int c1 = b.first[0], n1 = b.first[1], h1 = b.first[2], t1 = b.first[3];
    const mpq_class delta_n = p.lambdas[1];
    a.at(c1, n1) = Scalar(delta_n);
    a.at(n1, c1) = Scalar(delta_n);
    a.at(n1, h1) = Scalar(delta_ha);
    a.at(h1, c1) = Scalar(delta_ha);
    a.at(h1, t1) = Scalar(delta_ct);
    a.at(t1, c1) = Scalar(delta_ct);
    return a;
}

}  // namespace

Matrix gen_scheme_separator(const SeparatorParams& p) {
    for (int k = 0; k + 1 < 4; ++k)
        if (!(p.lambdas[k] > p.lambdas[k + 1]))
            throw GenerationError(
                "block eigenvalues must be strictly decreasing; the connector "
                "inequality has no solution otherwise");
    Blocks b = layout(p);
    const mpq_class lam_n = p.lambdas[1], lam_ha = p.lambdas[2], lam_ct = p.lambdas[3];

    // Connector into the HA block sits just below lambda_ha, close enough
    // that the bridging cycle still has mean >= lambda_ha.
    const mpq_class s = (lam_n - lam_ha) / 2;
    const mpq_class delta_ha = lam_ha - s;

    // Connector into the CT block: low enough that every cycle leaving the
    // block has mean strictly below lambda_ct.
    mpq_class delta_ct =
        mpq_class((mpq_class(b.n) * lam_ct - mpq_class(b.n - 2) * p.lambdas[0]) / 2 - 1);
    delta_ct = std::min(delta_ct, mpq_class(delta_ha - 1));

    for (int attempt = 0; attempt < 8; ++attempt, delta_ct -= 1) {
        Matrix a = build_separator(p, delta_ha, delta_ct);
        try {
            SchemeResult nacht = scheme_nachtigall(a);
            SchemeResult ha = scheme_hartmann_arguelles(a);
            SchemeResult ct = scheme_cycle_threshold(a, std::max(b.n, kDefaultNodeLimit));
            if (nacht.lambda_b == Scalar(lam_n) && ha.lambda_b == Scalar(lam_ha) &&
                ct.lambda_b == Scalar(lam_ct))
                return a;
        } catch (const Error&) {
            // retry with a lower CT connector
        }
    }
    throw GenerationError("could not realize the requested scheme eigenvalues");
}

}  // namespace maxplus
