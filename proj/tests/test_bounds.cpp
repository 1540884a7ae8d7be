#include <doctest.h>

#include <numeric>

#include "maxplus/bounds.hpp"
#include "maxplus/oracle.hpp"
#include "test_util.hpp"

using namespace maxplus;
using namespace testutil;

namespace {

BoundContext golden_ctx() {
    Matrix a = golden5();
    return bound_context(a, critical_graph(a));
}

long long ceil_of(const BoundReport& rep, const char* key) {
    const BoundEntry* e = rep.find(key);
    REQUIRE(e != nullptr);
    REQUIRE(e->value.has_value());
    return *e->ceiling();
}

}  // namespace

TEST_SUITE_BEGIN("bounds");

TEST_CASE("wielandt numbers") {
    CHECK(wielandt(1) == 0);
    CHECK(wielandt(2) == 2);
    CHECK(wielandt(5) == 17);
}

TEST_CASE("bound context of the golden matrix") {
    BoundContext ctx = golden_ctx();
    CHECK(ctx.n == 5);
    CHECK(ctx.circumference == 5);
    CHECK(ctx.circ_exact);
    CHECK(ctx.cabdrive == 4);
    CHECK(ctx.g_hat == 1);
    CHECK(ctx.gamma_hat == 1);
    CHECK(ctx.n_c == 2);
    CHECK(ctx.ep == 0);
    CHECK(ctx.ep_exact);
}

TEST_CASE("pattern bounds on T1 for the shared schemes") {
    BoundReport rep = t1_bounds(golden_ctx(), SchemeKind::nachtigall);
    CHECK(ceil_of(rep, "t1.wielandt") == 17);
    CHECK(ceil_of(rep, "t1.girth_linear") == 8);
    CHECK(ceil_of(rep, "t1.cycle_cover") == 8);
    CHECK(ceil_of(rep, "t1.cyclicity_ep") == 7);
    CHECK(ceil_of(rep, "t1.cycle_cover_ep") == 8);
    CHECK(*rep.best() == 7);
    CHECK_THROWS_AS(t1_bounds(golden_ctx(), SchemeKind::cycle_threshold), Error);
}

TEST_CASE("pattern bounds on T1 for the cycle threshold scheme") {
    BoundReport rep = t1_bounds_ct(golden_ctx());
    CHECK(ceil_of(rep, "t1ct.wielandt") == 17);
    CHECK(ceil_of(rep, "t1ct.circ_linear") == 25);
    CHECK(ceil_of(rep, "t1ct.circ_quadratic") == 45);
    CHECK(*rep.best() == 17);
}

TEST_CASE("cycle removal threshold formulas") {
    TcrParams p;
    p.gamma = 1;
    p.n = 6;
    p.n1 = 6;
    p.c = 4;
    p.d = 5;
    CHECK(tcr_bound(TcrKind::arith, p) == 6 + 6 - 6 - 1);  // gamma*n + n - n1 - 1
    CHECK(tcr_bound(TcrKind::cbfn, p) == 2 * 5);           // gamma = 1: 2d

    TcrParams q;
    q.gamma = 6;
    q.l = 6;
    q.n = 6;
    q.c = 4;
    q.d = 5;
    CHECK(tcr_bound(TcrKind::ha, q) == (6 - 1) * 4 + 5 + 6);  // (n-1-l+gamma)c + d + l
    CHECK(tcr_bound(TcrKind::ha_wielandt, q) == 31);          // n^2 - n + 1
    q.l = 4;
    CHECK_THROWS_AS(tcr_bound(TcrKind::ha, TcrParams{3, 6, 1, 4, 5, 4}), Error);
    CHECK_THROWS_AS(tcr_bound(TcrKind::ha_wielandt, q), Error);
}

TEST_CASE("table rows reproduce the theorem bounds on the golden matrix") {
    BoundContext ctx = golden_ctx();
    CriticalGraph crit = critical_graph(golden5());
    // One critical component with girth 1.
    long long g = crit.scc_girth[0];
    CHECK(tcr_table_cycle(TcrKind::arith, g, ctx).combined == 8);   // matches t1.girth_linear
    CHECK(tcr_table_cycle(TcrKind::cbfn, g, ctx).combined == 8);    // matches t1.cycle_cover
    CHECK(tcr_table_component(TcrKind::cbfn, crit.scc_cyclicity[0],
                              static_cast<long long>(crit.scc_nodes[0].size()), ctx) == 8);

    // The combiner with ep = 0 and gamma = 1 passes raw values through.
    TcrParams p;
    p.gamma = 1;
    p.n = ctx.n;
    p.n1 = 1;
    p.c = ctx.circumference;
    p.d = ctx.cabdrive;
    long long raw = tcr_bound(TcrKind::arith, p);
    CHECK(t1_from_tcr({raw}, {1}, {0}) == raw);
    CHECK(t1_from_tcr({2 * ctx.cabdrive}, {1}, {0}) == 2 * ctx.cabdrive);
    CHECK(t1_from_tcr_ct({3, 9, 5}) == 9);
}

TEST_CASE("exploration penalty bounds") {
    CriticalGraph crit = critical_graph(golden5());
    BoundReport rep = ep_bounds(crit, 0);
    // 2(g/gamma)|G| - g/gamma - 2g + gamma with g = gamma = 1, |G| = 2.
    const BoundEntry* wp = rep.find("ep.walk_patching");
    REQUIRE(wp != nullptr);
    CHECK(*wp->ceiling() == 2);
    CHECK(*rep.find("ep.aggregate")->ceiling() == 2);  // n_c + (n_c - 2h) g-hat
    EpEstimate est = ep_estimate(crit, 0);
    CHECK(est.exact);
    CHECK(est.value == 0);

    // A single critical loop: the walk-patching bound is already zero.
    Matrix one(1);
    one.at(0, 0) = Scalar(0L);
    BoundReport rep1 = ep_bounds(critical_graph(one), 0);
    CHECK(*rep1.find("ep.walk_patching")->ceiling() == 0);

    // A critical cycle with gamma equal to its length: exact value is zero.
    Matrix cyc = boolean_cycle(4);
    EpEstimate ec = ep_estimate(critical_graph(cyc), 0);
    CHECK(ec.value == 0);
    CHECK(ec.exact);
}

TEST_CASE("domination bounds on the golden matrix") {
    Matrix a = golden5();
    BoundContext ctx = golden_ctx();
    SchemeResult nacht = scheme_nachtigall(a);
    BoundReport rep = t2_bounds(a, nacht, ctx);
    // (n^2-n+1) ||A|| / gap + d_B with gap 1, norm 7, d_B = 2.
    CHECK(ceil_of(rep, "t2.quadratic_short") == 21 * 7 + 2);
    const BoundEntry* lon = rep.find("t2.quadratic_long");
    REQUIRE(lon->value.has_value());
    CHECK(*rep.find("t2.quadratic_short")->value >= *lon->value);
    // gamma-hat (n-1) + n = 9; cycle cover numerator: 0*c + 2*d = 8.
    CHECK(ceil_of(rep, "t2.cyclicity_short") == 9 * 7 + 2);
    CHECK(ceil_of(rep, "t2.cycle_cover_short") == 8 * 7 + 2);
    // The golden matrix has bottom entries: finite-only rows are off.
    CHECK(!rep.find("t2.finite_long")->value.has_value());
    CHECK(!rep.find("t2.finite_syk_short")->value.has_value());
}

TEST_CASE("domination bounds with an acyclic subordinate matrix") {
    Matrix a = boolean_cycle(4);
    BoundContext ctx = bound_context(a, critical_graph(a));
    SchemeResult nacht = scheme_nachtigall(a);
    REQUIRE(nacht.lambda_b.is_bottom());
    BoundReport rep = t2_bounds(a, nacht, ctx);
    CHECK(ceil_of(rep, "t2.acyclic_path") == 1);  // empty B: d_B + 1
    CHECK(!rep.find("t2.acyclic_support")->value.has_value());  // n_B = 0

    // Nonempty acyclic B: chain d_B + 1 <= n_B holds.
    Matrix m(3);
    m.at(0, 0) = Scalar(0L);
    m.at(0, 1) = Scalar(-1L);
    m.at(1, 2) = Scalar(-1L);
    m.at(2, 0) = Scalar(-1L);
    SchemeResult r = scheme_nachtigall(m);
    REQUIRE(r.lambda_b.is_bottom());
    CHECK(support_size(r.b) == 2);
    BoundReport rep2 = t2_bounds(m, r, bound_context(m, critical_graph(m)));
    CHECK(ceil_of(rep2, "t2.acyclic_path") == 2);
    CHECK(ceil_of(rep2, "t2.acyclic_support") == 2);
}

TEST_CASE("all-finite domination bounds") {
    Matrix a(3);
    long vals[3][3] = {{0, -1, -2}, {-1, -3, -2}, {-2, -1, -4}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a.at(i, j) = Scalar(vals[i][j]);
    BoundContext ctx = bound_context(a, critical_graph(a));
    SchemeResult nacht = scheme_nachtigall(a);
    REQUIRE(nacht.lambda_b.is_finite());
    BoundReport rep = t2_bounds(a, nacht, ctx);
    for (const char* key : {"t2.finite_long", "t2.finite_short", "t2.finite_syk_long",
                            "t2.finite_syk_short"})
        CHECK(rep.find(key)->value.has_value());
    CHECK(*rep.find("t2.finite_short")->value >= *rep.find("t2.finite_long")->value);
    CHECK(*rep.find("t2.finite_syk_short")->value >=
          *rep.find("t2.finite_syk_long")->value);
}

TEST_CASE("vector domination bounds") {
    Matrix a = golden5();
    BoundContext ctx = golden_ctx();
    SchemeResult nacht = scheme_nachtigall(a);
    Vector v = Vector::zeros(5);
    BoundReport rep = t2v_bounds(a, nacht, v, ctx);
    CHECK(ceil_of(rep, "t2v.norm_ratio") == 28);  // (0 + 4*7) / 1

    Vector bad(5);
    CHECK_THROWS_AS(t2v_bounds(a, nacht, bad, ctx), Error);
}

TEST_CASE("literature bounds") {
    Matrix a = golden5();
    SchemeResult nacht = scheme_nachtigall(a);
    SchemeResult ha = scheme_hartmann_arguelles(a);
    Vector v = Vector::zeros(5);
    BoundReport rep = literature_bounds(a, &nacht, &ha, &v);
    CHECK(ceil_of(rep, "lit.ha_matrix") == 175);  // max(50, 2*25*7/2)
    CHECK(rep.find("lit.ha_vector")->value.has_value());
    CHECK(!rep.find("lit.syk_finite")->value.has_value());  // bottom entries

    // Boolean matrix: ratio bounds inapplicable.
    Matrix b = boolean_cycle(3);
    SchemeResult bn = scheme_nachtigall(b);
    SchemeResult bh = scheme_hartmann_arguelles(b);
    BoundReport brep = literature_bounds(b, &bn, &bh, nullptr);
    CHECK(!brep.find("lit.ha_matrix")->value.has_value());
    CHECK(!brep.find("lit.syk_finite")->value.has_value());

    // All-finite matrix populates the Soto y Koelemeijer column.
    Matrix f(3);
    long vals[3][3] = {{0, -1, -2}, {-1, -3, -2}, {-2, -1, -4}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) f.at(i, j) = Scalar(vals[i][j]);
    SchemeResult fn = scheme_nachtigall(f);
    SchemeResult fh = scheme_hartmann_arguelles(f);
    BoundReport frep = literature_bounds(f, &fn, &fh, nullptr);
    CHECK(frep.find("lit.syk_finite")->value.has_value());
}

TEST_CASE("global combination") {
    Matrix a = golden5();
    BoundContext ctx = golden_ctx();
    for (auto kind : {SchemeKind::nachtigall, SchemeKind::hartmann_arguelles,
                      SchemeKind::cycle_threshold}) {
        SchemeResult res = run_scheme(a, kind);
        BoundReport t1 = kind == SchemeKind::cycle_threshold
                             ? t1_bounds_ct(ctx)
                             : t1_bounds(ctx, kind);
        BoundReport t2 = t2_bounds(a, res, ctx);
        auto global = combine_global(t1, t2);
        REQUIRE(global.has_value());
        CHECK(*global >= 5);  // the exact transient
    }

    // One-node loop: best T1 is 0, the acyclic clause adds 1.
    Matrix one(1);
    one.at(0, 0) = Scalar(3L);
    BoundContext c1 = bound_context(one, critical_graph(one));
    SchemeResult r1 = scheme_nachtigall(one);
    auto g1 = combine_global(t1_bounds(c1, SchemeKind::nachtigall), t2_bounds(one, r1, c1));
    REQUIRE(g1.has_value());
    CHECK(*g1 == 1);
}

TEST_CASE("per-family minima") {
    BoundReport rep = t1_bounds(golden_ctx(), SchemeKind::hartmann_arguelles);
    CHECK(rep.best_of("t1") == rep.best());
    CHECK(!rep.best_of("t2").has_value());
    CHECK(rep.find("nope") == nullptr);
}

TEST_CASE("girth bound tightness witnesses") {
    // When the greatest critical girth is coprime with n, the linear girth
    // bound can be attained; the chord digraphs are witnesses (girth n-1).
    for (int n : {3, 4, 5}) {
        Matrix a = wielandt_digraph(n);
        CriticalGraph crit = critical_graph(a);
        REQUIRE(std::gcd(crit.max_girth(), static_cast<long long>(n)) == 1);
        BoundContext ctx = bound_context(a, crit);
        BoundReport rep = t1_bounds(ctx, SchemeKind::nachtigall);
        long long exact = exact_transient(a, *rep.find("t1.wielandt")->ceiling()).value;
        CHECK(*rep.find("t1.girth_linear")->ceiling() == exact);
        CHECK(*rep.find("t1.wielandt")->ceiling() == exact);
    }
}

TEST_CASE("fallback parameters never shrink a bound") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        Matrix a = random_irreducible(seed + 2700, 6, -9, 9).a;
        CriticalGraph crit = critical_graph(a);
        BoundContext exact = bound_context(a, crit);
        BoundContext fb = bound_context(a, crit, 0, 0);
        BoundReport re = t1_bounds(exact, SchemeKind::nachtigall);
        BoundReport rf = t1_bounds(fb, SchemeKind::nachtigall);
        for (const auto& e : rf.entries) {
            const BoundEntry* ex = re.find(e.key);
            REQUIRE(e.value.has_value());
            CHECK(*e.value >= *ex->value);
        }
    }
}

TEST_SUITE_END();
