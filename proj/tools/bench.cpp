// Kernel benchmark: serial reference vs OpenMP product, plus the closure.
// Run manually; not part of the test suite.

#include <chrono>
#include <cstdio>
#include <vector>

#include "maxplus/instances.hpp"
#include "maxplus/kernels.hpp"

using namespace maxplus;

namespace {

Matrix random_dense(uint64_t seed, int n) {
    Rng rng(seed);
    Matrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a.at(i, j) = Scalar(rng.int_in(-1000, 1000));
    return a;
}

template <typename F>
double time_best_of(int reps, F&& fn) {
    double best = 1e100;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main() {
    std::printf("%6s %12s %12s %9s %12s\n", "n", "serial[s]", "parallel[s]", "speedup",
                "star[s]");
    for (int n : {32, 64, 128, 192, 256}) {
        Matrix a = random_dense(42, n);
        Matrix b = random_dense(43, n);
        long long sink = 0;
        double ts = time_best_of(3, [&] { sink += mat_mul_serial(a, b).dim(); });
        double tp = time_best_of(3, [&] { sink += mat_mul_parallel(a, b).dim(); });
        // Normalize so the closure converges.
        Matrix neg = a;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                neg.at(i, j) = Scalar(mpq_class(a.at(i, j).rat() - 1001));
        double tstar = time_best_of(3, [&] { sink += kleene_star(neg).dim(); });
        std::printf("%6d %12.4f %12.4f %8.2fx %12.4f\n", n, ts, tp, ts / tp, tstar);
        if (sink < 0) std::printf("unreachable %lld\n", sink);
    }
    return 0;
}
