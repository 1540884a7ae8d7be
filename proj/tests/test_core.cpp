#include <doctest.h>

#include "maxplus/kernels.hpp"
#include "test_util.hpp"

using namespace maxplus;
using namespace testutil;

TEST_SUITE_BEGIN("core");

TEST_CASE("scalar semiring basics") {
    Scalar bot = Scalar::bottom();
    Scalar three(3L);
    CHECK(oplus(bot, three) == three);
    CHECK(otimes(bot, three).is_bottom());
    CHECK(oplus(three, Scalar(5L)) == Scalar(5L));
    CHECK(otimes(three, Scalar(5L)) == Scalar(8L));
    CHECK(Scalar(1, 2) == Scalar(2, 4));  // canonical form
    CHECK(Scalar(-7, 4).str() == "-7/4");
    CHECK(tpow(three, 4) == Scalar(12L));
    CHECK(tpow(bot, 0) == Scalar::unit());
    CHECK(tpow(bot, 3).is_bottom());
    CHECK(bot < Scalar(-1000L));
    CHECK_THROWS_AS(bot.rat(), Error);
    CHECK_THROWS_AS(oinv(bot), Error);
    CHECK(oinv(Scalar(1, 2)) == Scalar(-1, 2));
}

TEST_CASE("product against the identity and a fixed idempotent") {
    Matrix a = golden5();
    CHECK(mat_mul(Matrix::identity(5), a) == a);
    CHECK(mat_mul(a, Matrix::identity(5)) == a);

    Matrix u(2);
    u.at(0, 0) = Scalar(0L);
    u.at(0, 1) = Scalar(-1L);
    u.at(1, 1) = Scalar(0L);
    CHECK(mat_mul(u, u) == u);
}

TEST_CASE("squared golden matrix matches the walk enumeration") {
    Matrix a = golden5();
    Matrix sq = mat_mul(a, a);
    // Walk 1 -> 3 -> 4 (1-based) weighs -1 + -3; nothing beats it.
    CHECK(sq.at(0, 3) == bf_walk_weight(a, 0, 3, 2));
    CHECK(sq.at(0, 3) == Scalar(-4L));
    CHECK(sq == bf_power(a, 2));
}

TEST_CASE("dimension mismatch is refused") {
    CHECK_THROWS_AS(mat_mul(Matrix(2), Matrix(3)), DimensionError);
    CHECK_THROWS_AS(mat_vec(Matrix(2), Vector(3)), DimensionError);
}

TEST_CASE("parallel kernel agrees with the serial reference") {
    for (uint64_t seed : {1u, 2u}) {
        Matrix a = random_matrix(seed, 64, -50, 50, 60);
        Matrix b = random_matrix(seed + 10, 64, -50, 50, 60);
        CHECK(mat_mul_parallel(a, b) == mat_mul_serial(a, b));
        CHECK(mat_mul(a, b) == mat_mul_serial(a, b));
    }
}

TEST_CASE("powers: base cases and squaring vs iteration") {
    Matrix bot(3);
    CHECK(mat_power(bot, 0) == Matrix::identity(3));

    Matrix one(1);
    one.at(0, 0) = Scalar(3L);
    CHECK(mat_power(one, 4).at(0, 0) == Scalar(12L));

    for (uint64_t seed = 0; seed < 6; ++seed) {
        Matrix a = random_matrix(seed, 4, -9, 9, 55);
        Matrix acc = Matrix::identity(4);
        for (long long t = 0; t <= 64; ++t) {
            if (t == 0 || t == 1 || t == 7 || t == 31 || t == 64)
                CHECK(mat_power(a, t) == (t == 0 ? Matrix::identity(4) : acc));
            if (t < 64) acc = mat_mul(acc, a);
        }
        CHECK(mat_power_iterative(a, 9) == mat_power(a, 9));
    }
}

TEST_CASE("walk semantics of small powers") {
    for (uint64_t seed = 0; seed < 8; ++seed) {
        int n = 2 + static_cast<int>(seed % 4);
        Matrix a = random_matrix(seed + 100, n, -5, 5, 50);
        for (int t = 0; t <= 5; ++t) CHECK(mat_power(a, t) == bf_power(a, t));
    }
}

TEST_CASE("orbit never forms the matrix power but matches it") {
    Matrix a = golden5();
    Vector v = Vector::zeros(5);
    CHECK(orbit(a, v, 0) == v);
    CHECK(orbit(Matrix::identity(5), v, 7) == v);
    CHECK(orbit(a, v, 3) == mat_vec(mat_power(a, 3), v));
}

TEST_CASE("kleene star: fixed cases") {
    Matrix bot(3);
    CHECK(kleene_star(bot) == Matrix::identity(3));

    Matrix e(2);
    e.at(0, 1) = Scalar(-1L);
    Matrix star = kleene_star(e);
    CHECK(star.at(0, 0) == Scalar(0L));
    CHECK(star.at(0, 1) == Scalar(-1L));
    CHECK(star.at(1, 0).is_bottom());
    CHECK(star.at(1, 1) == Scalar(0L));

    Matrix a = golden5();
    CHECK(kleene_star(a).at(3, 0) == Scalar(-3L));  // direct edge beats all detours
    CHECK(kleene_star(a) == bf_star(a));
}

TEST_CASE("kleene star diverges with a positive cycle witness") {
    Matrix a(3);
    a.at(0, 1) = Scalar(2L);
    a.at(1, 0) = Scalar(-1L);
    a.at(2, 2) = Scalar(-1L);
    try {
        kleene_star(a);
        FAIL("expected divergence");
    } catch (const DivergenceError& e) {
        REQUIRE(e.cycle.size() == 2);
        CHECK(e.mean == "1/2");
    }
}

TEST_CASE("kleene star properties on nonpositive random matrices") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        int n = 2 + static_cast<int>(seed % 4);
        Matrix a = random_matrix(seed + 300, n, -9, 0, 60);
        Matrix star = kleene_star(a);
        CHECK(star == bf_star(a));
        CHECK(mat_mul(star, star) == star);
        CHECK(mat_oplus(Matrix::identity(n), mat_mul(a, star)) == star);
    }
}

TEST_CASE("matrix norm and support") {
    Matrix a = golden5();
    CHECK(matrix_norm(a) == Scalar(7L));

    Matrix c(2);
    c.at(0, 0) = Scalar(1L);
    c.at(1, 0) = Scalar(-2L);
    c.at(1, 1) = Scalar(0L);
    CHECK(matrix_norm(c) == Scalar(3L));

    Matrix same(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) same.at(i, j) = Scalar(4L);
    CHECK(matrix_norm(same) == Scalar(0L));

    CHECK_THROWS_AS(matrix_norm(Matrix(2)), Error);
    CHECK(support_size(Matrix(4)) == 0);

    Matrix nacht_like = golden5();
    for (int v : {0, 1})
        for (int k = 0; k < 5; ++k) {
            nacht_like.at(v, k) = Scalar::bottom();
            nacht_like.at(k, v) = Scalar::bottom();
        }
    CHECK(support_size(nacht_like) == 3);
    CHECK(support_indices(nacht_like) == std::vector<int>{2, 3, 4});

    Matrix diag(3);
    diag.at(1, 1) = Scalar(5L);
    CHECK(support_size(diag) == 1);
}

TEST_CASE("associativity and identity over random instances") {
    int checked = 0;
    for (uint64_t seed = 0; seed < 110; ++seed) {
        int n = 1 + static_cast<int>(seed % 6);
        Matrix a = random_matrix(seed * 3 + 1, n, -9, 9, 55);
        Matrix b = random_matrix(seed * 3 + 2, n, -9, 9, 55);
        Matrix c = random_matrix(seed * 3 + 3, n, -9, 9, 55);
        CHECK(mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)));
        CHECK(mat_mul(Matrix::identity(n), a) == a);
        CHECK(mat_mul(a, Matrix::identity(n)) == a);
        ++checked;
    }
    CHECK(checked >= 100);
}

TEST_SUITE_END();
