// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Criterion 3's corpus is shared by criteria 4, 6, 8 and 9; the
// per-instance checker tags its findings and the lines below filter by tag.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "maxplus/harness.hpp"

using namespace maxplus;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool has_tag(const FuzzReport& rep, const char* tag) {
    for (const auto& v : rep.violations)
        if (v.what.find(tag) != std::string::npos) return true;
    return false;
}

const SchemeReport* scheme_of(const AnalyzeReport& rep, SchemeKind kind) {
    for (const auto& sr : rep.schemes)
        if (sr.kind == kind) return &sr;
    return nullptr;
}

void criterion_1_golden(const std::string& fixtures) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    try {
        InstanceFile inst = read_instance_file(fixtures + "/separator_5x5.mp");
        AnalyzeReport rep = analyze(inst, AnalyzeOptions{});
        ok = ok && rep.lambda == Scalar::unit();
        const SchemeReport* nacht = scheme_of(rep, SchemeKind::nachtigall);
        const SchemeReport* ha = scheme_of(rep, SchemeKind::hartmann_arguelles);
        const SchemeReport* ct = scheme_of(rep, SchemeKind::cycle_threshold);
        ok = ok && nacht && ha && ct;
        ok = ok && nacht->result->lambda_b == Scalar(-1L);
        ok = ok && ha->result->lambda_b == Scalar(-2L);
        ok = ok && ct->result->lambda_b == Scalar(-3L);
        ok = ok && nacht->oracle_t1->value == 2;
        ok = ok && ha->oracle_t1->value == 3;
        ok = ok && ct->oracle_t1->value == 4;
        ok = ok && nacht->oracle_t2->value == 5;
        ok = ok && ha->oracle_t2->value == 5;
        ok = ok && ct->oracle_t2->value == 5;
        ok = ok && rep.oracle_t && rep.oracle_t->value == 5;
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string(" (") + e.what() + ")";
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "golden fixture: lambda 0, lambda(B) -1/-2/-3, T1 2/3/4, T = T2 = 5 "
                  "(%.3fs)%s",
                  dt, detail.c_str());
    report(1, ok, buf);
}

void criterion_2_wielandt() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int n : {3, 4, 5}) {
        Matrix a = wielandt_digraph(n);
        long long want = wielandt(n);
        TransientWitness w = exact_transient(a, want + 2);
        ok = ok && w.value == want;
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "Wielandt digraphs reach (n-1)^2+1 exactly for n = 3,4,5 (%.3fs)", dt);
    report(2, ok, buf);
}

FuzzReport criterion_3_soundness() {
    auto t0 = std::chrono::steady_clock::now();
    FuzzOptions opts;
    opts.count = 500;
    opts.n_max = 6;
    opts.weight_lo = -9;
    opts.weight_hi = 9;
    opts.seed = 1;
    FuzzReport rep = fuzz(opts);
    double dt = seconds_since(t0);
    bool ok = !has_tag(rep, "soundness:") && !has_tag(rep, "falsification:") &&
              !has_tag(rep, "error:") && dt < 300.0;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "soundness fuzz: 500 seeded instances, n <= 6, weights [-9,9], %lld "
                  "checks, every bound ceiling >= its oracle (%.1fs)",
                  rep.checks, dt);
    report(3, ok, buf);
    if (!rep.ok())
        for (const auto& v : rep.violations)
            std::printf("  violation at %lld: %s\n%s", v.index, v.what.c_str(),
                        v.minimized_text.c_str());
    return rep;
}

void criterion_5_walk_oracle() {
    bool ok = true;
    int done = 0;
    for (uint64_t seed = 0; done < 100; ++seed) {
        Matrix a = random_irreducible(seed * 31 + 5, 5, -9, 9).a;
        Scalar lambda = max_cycle_mean(a);
        Matrix an(a.dim());
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j)
                if (a.at(i, j).is_finite())
                    an.at(i, j) = Scalar(mpq_class(a.at(i, j).rat() - lambda.rat()));
        CriticalGraph crit = critical_graph(an);
        CsrTriple triple =
            csr_terms(an, select_representing(crit, RepresentingMode::full));
        std::vector<int> marks;
        for (const auto& comp : crit.scc_nodes) marks.push_back(comp.front());
        long long cap = triple.gamma * an.dim() + an.dim();
        for (long long t = 0; t <= 2 * triple.gamma; ++t)
            ok = ok && csr_walk_oracle(an, marks, triple.gamma, t, cap) ==
                           csr_product(triple, t);
        ++done;
    }
    report(5, ok,
           "walk-set evaluation equals CS^tR on 100 random instances, t = 0..2*gamma");
}

void criterion_7_max_balance() {
    bool ok = true;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        Matrix a = random_irreducible(seed * 17 + 3, 10, -9, 9).a;
        Scaling s = max_balance(a);
        ok = ok && is_max_balanced(s.scaled);
        ok = ok && max_balance_cut_property(s.scaled, 10);
    }
    report(7, ok,
           "max-balancing: cycle cover on 100 random instances, cut property over all "
           "cuts up to n = 10");
}

void criterion_8_dominance(const FuzzReport& rep, const std::string& fixtures) {
    bool ok = !has_tag(rep, "dominance:") && rep.dominance_defined >= 1 &&
              rep.dominance_strict >= 1;
    std::string detail;
    try {
        CompareReport cmp =
            compare(read_instance_file(fixtures + "/separator_5x5.mp"), AnalyzeOptions{});
        ok = ok && cmp.ours_combined && cmp.ha_literature &&
             *cmp.ours_combined < *cmp.ha_literature;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "combined bound at or below the Hartmann-Arguelles bound wherever "
                  "defined (%lld instances), strictly below on %lld and on the golden "
                  "fixture %s",
                  rep.dominance_defined, rep.dominance_strict, detail.c_str());
    report(8, ok, buf);
}

}  // namespace

int main(int argc, char** argv) {
    std::string fixtures = argc > 1 ? argv[1] : "fixtures";

    criterion_1_golden(fixtures);
    criterion_2_wielandt();
    FuzzReport rep = criterion_3_soundness();
    report(4, !has_tag(rep, "weak:"),
           "weak expansion A^t = lambda^t CS^tR (+) B^t exact from the best T1 bound "
           "through bound + 2*gamma, all schemes, full corpus");
    criterion_5_walk_oracle();
    report(6, !has_tag(rep, "chain:"),
           "scheme chain: removed-node inclusion, subordination and "
           "lambda(B^ct) <= lambda(B^ha) <= lambda(B^nacht) < lambda(A), full corpus");
    criterion_7_max_balance();
    criterion_8_dominance(rep, fixtures);
    report(9, !has_tag(rep, "decomp:"),
           "iterated decomposition equals A^t on [t_min, t_min + 2*gamma] with at most "
           "n terms, full corpus");
    std::printf("[SKIP] criterion 10: asymptotic worst-case growth is excluded by "
                "design; covered by the soundness property of criterion 3\n");

    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
