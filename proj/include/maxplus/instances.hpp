#pragma once

#include <array>
#include <cstdint>

#include "maxplus/io.hpp"

namespace maxplus {

/// Deterministic generator (splitmix64); identical seeds give identical
/// instances on every platform.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, k), k >= 1.
    uint64_t below(uint64_t k) {
        uint64_t bound = UINT64_MAX - UINT64_MAX % k;
        uint64_t v;
        do {
            v = next();
        } while (v >= bound);
        return v % k;
    }

    long int_in(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }
};

/// Boolean n-cycle plus a chord that shortens it by one; the classic
/// worst-case digraph whose Boolean transient is (n-1)^2 + 1.
Matrix wielandt_digraph(int n);

Matrix boolean_cycle(int n);

/// Strongly connected random matrix: a random Hamiltonian cycle plus extra
/// edges, integer weights in [wlo, whi].  Roughly a tenth of the instances
/// have all weights equal (Boolean-like) and a third have no bottom entries.
struct FuzzInstance {
    Matrix a;
    Vector v;  // random all-finite vector in the same weight range
};

FuzzInstance random_irreducible(uint64_t seed, int n_max, long wlo, long whi);

/// Strongly connected random digraph with unit weights (for graph tests).
Matrix random_strongly_connected_boolean(uint64_t seed, int n_max);

/// Four-block instance in which the three subordinate schemes peel off one
/// block each: lambda(B) per scheme equals the given block eigenvalues.
struct SeparatorParams {
    std::array<int, 4> sizes{2, 1, 1, 1};                      // |N_c|, |N_n|, |N_ha|, |N_ct|
    std::array<mpq_class, 4> lambdas{mpq_class(0), mpq_class(-1), mpq_class(-2),
                                     mpq_class(-3)};
};

/// Builds and verifies the instance; the connector weights are retried until
/// the three schemes reproduce the requested eigenvalues.  Throws
/// GenerationError for infeasible parameters.
Matrix gen_scheme_separator(const SeparatorParams& params);

}  // namespace maxplus
